//! Cryptanalytic metrics for substitution tables.
//!
//! Every function here works on a square n-bit table presented as a slice of
//! `2^n` octets with entries below `2^n` (4 ≤ n ≤ 8 in practice; the 8-bit
//! domain types wrap these in [`crate::report`]). Component functions are the
//! single-output Boolean functions `x ↦ parity(mask & S(x))`, represented as
//! truth-table bit vectors.
//!
//! All computation is exact integer arithmetic; probabilities surface as
//! counts over fixed denominators.

/// Bit width n of a table of length 2^n; panics on malformed shapes since a
/// wrong-size slice is a programming error, not an input error.
fn table_bits(table: &[u8]) -> u32 {
    let len = table.len();
    assert!(
        len.is_power_of_two() && (4..=256).contains(&len),
        "table length must be a power of two in 4..=256, got {len}"
    );
    let n = len.trailing_zeros();
    assert!(
        table.iter().all(|&v| (v as usize) < len),
        "table entries must be below {len}"
    );
    n
}

fn parity(v: u8) -> u8 {
    (v.count_ones() & 1) as u8
}

/// Truth table of the component function `x ↦ parity(mask & S(x))`.
///
/// Mask 0 yields the constant-zero function; cryptographic use starts at
/// nonzero masks.
pub fn component_bits(table: &[u8], mask: u8) -> Vec<u8> {
    table_bits(table);
    table.iter().map(|&v| parity(mask & v)).collect()
}

/// In-place Walsh–Hadamard butterfly over a ±1 sign vector.
fn fwht(signs: &mut [i32]) {
    let n = signs.len();
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (signs[i], signs[i + h]);
                signs[i] = a + b;
                signs[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Walsh spectrum `W(ω) = Σ_x (−1)^(f(x) ⊕ parity(ω & x))` for all ω.
///
/// Computed with the fast butterfly; every spectrum is checked against
/// Parseval's identity `Σ W(ω)² = 2^(2n)` before being returned.
pub fn walsh_spectrum(bits: &[u8]) -> Vec<i32> {
    let n = bits.len();
    assert!(n.is_power_of_two(), "truth table length must be a power of two");
    let mut signs: Vec<i32> = bits.iter().map(|&b| 1 - 2 * (b as i32)).collect();
    fwht(&mut signs);
    let energy: u64 = signs.iter().map(|&w| (w as i64 * w as i64) as u64).sum();
    assert_eq!(
        energy,
        (n as u64) * (n as u64),
        "Parseval check failed: spectrum energy {energy} for table of {n}"
    );
    signs
}

/// Per-output-bit nonlinearities and their minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonlinearityProfile {
    /// `NL_i = 2^(n−1) − max_ω |W_i(ω)| / 2` for output bit i.
    pub per_bit: Vec<u32>,
    pub min: u32,
}

/// Nonlinearity of every coordinate function, maximum taken over the whole
/// spectrum including ω = 0.
pub fn nonlinearity(table: &[u8]) -> NonlinearityProfile {
    let n = table_bits(table);
    let len = table.len() as u32;
    let per_bit: Vec<u32> = (0..n)
        .map(|i| {
            let spectrum = walsh_spectrum(&component_bits(table, 1 << i));
            let max_abs = spectrum.iter().map(|w| w.unsigned_abs()).max().unwrap();
            (len - max_abs) / 2
        })
        .collect();
    let min = *per_bit.iter().min().unwrap();
    NonlinearityProfile { per_bit, min }
}

/// Strict-avalanche flip counts: entry (i, j) counts inputs x for which
/// flipping input bit i flips output bit j. Probability = count / 2^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SacMatrix {
    pub counts: Vec<Vec<u32>>,
    /// Denominator for a single entry (the table size 2^n).
    pub denominator: u32,
}

impl SacMatrix {
    pub fn probability(&self, flipped_input: usize, output: usize) -> f64 {
        self.counts[flipped_input][output] as f64 / self.denominator as f64
    }

    /// Arithmetic mean over all n² entries, as (numerator, denominator).
    pub fn mean_fraction(&self) -> (u64, u64) {
        let n = self.counts.len() as u64;
        let total: u64 = self
            .counts
            .iter()
            .flat_map(|row| row.iter())
            .map(|&c| c as u64)
            .sum();
        (total, n * n * self.denominator as u64)
    }

    pub fn mean(&self) -> f64 {
        let (num, den) = self.mean_fraction();
        num as f64 / den as f64
    }
}

/// SAC matrix: rows index the flipped input bit, columns the observed output
/// bit.
pub fn sac_matrix(table: &[u8]) -> SacMatrix {
    let n = table_bits(table) as usize;
    let len = table.len();
    let mut counts = vec![vec![0u32; n]; n];
    for (i, row) in counts.iter_mut().enumerate() {
        for x in 0..len {
            let diff = table[x] ^ table[x ^ (1 << i)];
            for (j, cell) in row.iter_mut().enumerate() {
                *cell += u32::from((diff >> j) & 1);
            }
        }
    }
    SacMatrix {
        counts,
        denominator: len as u32,
    }
}

/// Bit-independence nonlinearity: entry (i, j), i ≠ j, is the nonlinearity
/// of `bit_i(S(x)) ⊕ bit_j(S(x))` — the component of mask `2^i | 2^j`.
/// Symmetric, diagonal unused (0).
pub fn bic_nonlinearity(table: &[u8]) -> (Vec<Vec<u32>>, u32) {
    let n = table_bits(table) as usize;
    let len = table.len() as u32;
    let mut matrix = vec![vec![0u32; n]; n];
    let mut min = u32::MAX;
    for i in 0..n {
        for j in (i + 1)..n {
            let mask = (1u8 << i) | (1u8 << j);
            let spectrum = walsh_spectrum(&component_bits(table, mask));
            let max_abs = spectrum.iter().map(|w| w.unsigned_abs()).max().unwrap();
            let nl = (len - max_abs) / 2;
            matrix[i][j] = nl;
            matrix[j][i] = nl;
            min = min.min(nl);
        }
    }
    (matrix, min)
}

/// Bit-independence SAC: entry (i, j), i ≠ j, is the flip count of the pair
/// function `bit_i(S(·)) ⊕ bit_j(S(·))` summed over all single-bit input
/// flips. Probability = count / (n · 2^n). Diagonal fixed at 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicSacMatrix {
    pub counts: Vec<Vec<u32>>,
    /// Denominator for a single entry (n · 2^n).
    pub denominator: u32,
}

impl BicSacMatrix {
    pub fn probability(&self, i: usize, j: usize) -> f64 {
        self.counts[i][j] as f64 / self.denominator as f64
    }

    /// Average over the n² − n off-diagonal entries, as (num, den).
    pub fn average_fraction(&self) -> (u64, u64) {
        let n = self.counts.len() as u64;
        let total: u64 = self
            .counts
            .iter()
            .flat_map(|row| row.iter())
            .map(|&c| c as u64)
            .sum();
        (total, n * (n - 1) * self.denominator as u64)
    }

    pub fn average(&self) -> f64 {
        let (num, den) = self.average_fraction();
        num as f64 / den as f64
    }
}

pub fn bic_sac_matrix(table: &[u8]) -> BicSacMatrix {
    let n = table_bits(table) as usize;
    let len = table.len();
    let mut counts = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let bits = component_bits(table, (1u8 << i) | (1u8 << j));
            let mut total = 0u32;
            for k in 0..n {
                for x in 0..len {
                    total += u32::from(bits[x] ^ bits[x ^ (1 << k)]);
                }
            }
            counts[i][j] = total;
            counts[j][i] = total;
        }
    }
    BicSacMatrix {
        counts,
        denominator: (n * len) as u32,
    }
}

/// Linear approximation table:
/// `LAT(a, b) = #{x : parity(a & x) = parity(b & S(x))} − 2^(n−1)`,
/// derived from the Walsh spectra (`LAT(a, b) = W_b(a) / 2`).
pub fn lat(table: &[u8]) -> Vec<Vec<i32>> {
    let len = table.len();
    table_bits(table);
    let mut out = vec![vec![0i32; len]; len];
    for b in 0..len {
        let spectrum = walsh_spectrum(&component_bits(table, b as u8));
        for (a, row) in out.iter_mut().enumerate() {
            row[b] = spectrum[a] / 2;
        }
    }
    out
}

/// Maximum |LAT| over all (a, b) ≠ (0, 0); LAP = this value / 2^n.
pub fn max_absolute_bias(table: &[u8]) -> u32 {
    max_absolute_bias_threaded(table, 1)
}

/// Same scan, with the output masks split across up to `threads` workers.
/// The fold is a maximum, so the result is identical for any schedule.
pub fn max_absolute_bias_threaded(table: &[u8], threads: usize) -> u32 {
    let len = table.len();
    table_bits(table);
    let worker = |masks: std::ops::Range<usize>| -> u32 {
        let mut best = 0u32;
        for b in masks {
            let spectrum = walsh_spectrum(&component_bits(table, b as u8));
            let start = usize::from(b == 0); // skip (0, 0)
            for &w in &spectrum[start..] {
                best = best.max(w.unsigned_abs() / 2);
            }
        }
        best
    };
    let threads = threads.clamp(1, len);
    if threads == 1 {
        return worker(0..len);
    }
    let chunk = len.div_ceil(threads);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let range = t * chunk..((t + 1) * chunk).min(len);
                scope.spawn(move || worker(range))
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).max().unwrap()
    })
}

/// Difference distribution table:
/// `DDT(Δin, Δout) = #{x : S(x ⊕ Δin) ⊕ S(x) = Δout}`.
pub fn ddt(table: &[u8]) -> Vec<Vec<u32>> {
    let len = table.len();
    table_bits(table);
    let mut out = vec![vec![0u32; len]; len];
    for (dx, row) in out.iter_mut().enumerate() {
        for x in 0..len {
            row[(table[x] ^ table[x ^ dx]) as usize] += 1;
        }
    }
    out
}

/// Maximum DDT entry over Δin ≠ 0 (the trivial (0, 0) = 2^n is excluded).
/// DAP = this value / 2^n.
pub fn differential_uniformity(table: &[u8]) -> u32 {
    let len = table.len();
    table_bits(table);
    let mut best = 0u32;
    let mut counts = vec![0u32; len];
    for dx in 1..len {
        counts.fill(0);
        for x in 0..len {
            counts[(table[x] ^ table[x ^ dx]) as usize] += 1;
        }
        best = best.max(*counts.iter().max().unwrap());
    }
    best
}

/// Algebraic normal form coefficients of a truth table, via the in-place
/// binary Möbius transform.
pub fn anf_coefficients(bits: &[u8]) -> Vec<u8> {
    let n = bits.len();
    assert!(n.is_power_of_two());
    let mut coeffs = bits.to_vec();
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for i in block..block + h {
                coeffs[i + h] ^= coeffs[i];
            }
        }
        h *= 2;
    }
    coeffs
}

/// Degree of the ANF: the largest Hamming weight of a monomial index with a
/// nonzero coefficient (0 for constant functions).
pub fn anf_degree(bits: &[u8]) -> u32 {
    anf_coefficients(bits)
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(idx, _)| idx.count_ones())
        .max()
        .unwrap_or(0)
}

/// Per-output-bit algebraic degrees and their minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub per_bit: Vec<u32>,
    pub min: u32,
}

pub fn algebraic_degrees(table: &[u8]) -> DegreeProfile {
    let n = table_bits(table);
    let per_bit: Vec<u32> = (0..n)
        .map(|i| anf_degree(&component_bits(table, 1 << i)))
        .collect();
    let min = *per_bit.iter().min().unwrap();
    DegreeProfile { per_bit, min }
}
