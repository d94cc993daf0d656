//! Shared test support: direct-definition brute-force oracles for every
//! metric, kept deliberately independent of the library's computation paths
//! (no Walsh butterflies, no in-place Möbius, no spectrum-derived tables).

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

fn parity(v: u8) -> u8 {
    (v.count_ones() & 1) as u8
}

fn bit(v: u8, i: usize) -> u8 {
    (v >> i) & 1
}

/// Truth table of `parity(mask & S(x))`, by definition.
pub fn component_direct(table: &[u8], mask: u8) -> Vec<u8> {
    table.iter().map(|&v| parity(mask & v)).collect()
}

/// Walsh coefficient by the definitional double loop.
pub fn walsh_direct(bits: &[u8], omega: usize) -> i32 {
    (0..bits.len())
        .map(|x| {
            let sign = bits[x] ^ parity((omega & x) as u8);
            1 - 2 * i32::from(sign)
        })
        .sum()
}

/// Nonlinearity as the minimum Hamming distance to every affine function —
/// no Walsh transform involved.
pub fn nl_direct_bits(bits: &[u8]) -> u32 {
    let len = bits.len();
    let mut best = u32::MAX;
    for a in 0..len {
        for c in 0..2u8 {
            let dist = (0..len)
                .filter(|&x| bits[x] != parity((a & x) as u8) ^ c)
                .count() as u32;
            best = best.min(dist);
        }
    }
    best
}

/// Per-output-bit nonlinearities via the affine-distance definition.
pub fn nl_direct(table: &[u8]) -> Vec<u32> {
    let n = table.len().trailing_zeros() as usize;
    (0..n)
        .map(|i| nl_direct_bits(&component_direct(table, 1 << i)))
        .collect()
}

/// SAC flip counts straight from the definition.
pub fn sac_direct(table: &[u8]) -> Vec<Vec<u32>> {
    let n = table.len().trailing_zeros() as usize;
    let mut counts = vec![vec![0u32; n]; n];
    for i in 0..n {
        for x in 0..table.len() {
            let diff = table[x] ^ table[x ^ (1 << i)];
            for j in 0..n {
                counts[i][j] += u32::from(bit(diff, j));
            }
        }
    }
    counts
}

/// BIC nonlinearity: affine-distance NL of each pair XOR function.
pub fn bic_nl_direct(table: &[u8]) -> Vec<Vec<u32>> {
    let n = table.len().trailing_zeros() as usize;
    let mut m = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let bits: Vec<u8> = table.iter().map(|&v| bit(v, i) ^ bit(v, j)).collect();
            let nl = nl_direct_bits(&bits);
            m[i][j] = nl;
            m[j][i] = nl;
        }
    }
    m
}

/// BIC-SAC flip counts (summed over all single-bit input flips) from the
/// definition.
pub fn bic_sac_direct(table: &[u8]) -> Vec<Vec<u32>> {
    let n = table.len().trailing_zeros() as usize;
    let mut m = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let g = |v: u8| bit(v, i) ^ bit(v, j);
            let mut total = 0u32;
            for k in 0..n {
                for x in 0..table.len() {
                    total += u32::from(g(table[x]) ^ g(table[x ^ (1 << k)]));
                }
            }
            m[i][j] = total;
            m[j][i] = total;
        }
    }
    m
}

/// LAT by the definitional triple loop (match counting, not Walsh).
pub fn lat_direct(table: &[u8]) -> Vec<Vec<i32>> {
    let len = table.len();
    let half = (len / 2) as i32;
    let mut lat = vec![vec![0i32; len]; len];
    for (a, row) in lat.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            let matches = (0..len)
                .filter(|&x| parity((a & x) as u8) == parity(b as u8 & table[x]))
                .count() as i32;
            *cell = matches - half;
        }
    }
    lat
}

/// DDT by the definitional double loop.
pub fn ddt_direct(table: &[u8]) -> Vec<Vec<u32>> {
    let len = table.len();
    let mut ddt = vec![vec![0u32; len]; len];
    for dx in 0..len {
        for x in 0..len {
            ddt[dx][(table[x] ^ table[x ^ dx]) as usize] += 1;
        }
    }
    ddt
}

/// ANF coefficient by the subset XOR-sum definition (no in-place butterfly):
/// coef(u) = ⊕_{x ⊆ u} f(x).
pub fn anf_coef_direct(bits: &[u8], u: usize) -> u8 {
    let mut acc = bits[0]; // x = 0 is a subset of every u
    let mut x = u;
    while x != 0 {
        acc ^= bits[x];
        x = (x - 1) & u;
    }
    acc
}

/// Degree from the subset-sum ANF.
pub fn degree_direct_bits(bits: &[u8]) -> u32 {
    (0..bits.len())
        .filter(|&u| anf_coef_direct(bits, u) != 0)
        .map(|u| u.count_ones())
        .max()
        .unwrap_or(0)
}

pub fn degrees_direct(table: &[u8]) -> Vec<u32> {
    let n = table.len().trailing_zeros() as usize;
    (0..n)
        .map(|i| degree_direct_bits(&component_direct(table, 1 << i)))
        .collect()
}

/// Random permutation of 0..len via shuffle.
pub fn random_permutation<R: Rng>(rng: &mut R, len: usize) -> Vec<u8> {
    let mut p: Vec<u8> = (0..len).map(|v| v as u8).collect();
    p.shuffle(rng);
    p
}

/// Random (not necessarily bijective) table.
pub fn random_table<R: Rng>(rng: &mut R, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.random_range(0..len) as u8).collect()
}
