//! Key-dependent S-box construction.
//!
//! The keyed chaotic stream drives everything: each iterate of the map
//! yields one candidate octet `round(x·b) mod 256`. Initial generation keeps
//! the first occurrence of each octet until all 256 are placed, so the
//! result is bijective by construction. Refinement then walks transpositions
//! proposed by further draws of the same stream, accepting a swap only when
//! it removes a fixed point without lowering the minimum coordinate
//! nonlinearity, or strictly raises it — so bijectivity is preserved exactly
//! and the minimum nonlinearity is monotone across the pass.

use thiserror::Error;

use crate::chaos::{ChaosState, MapParams};
use crate::metrics;
use crate::table::{SBox, TABLE_SIZE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("generation stalled: {draws} draws produced only {distinct} distinct octets (degenerate key)")]
    Stalled { draws: usize, distinct: usize },
    #[error("refinement failed: {0}")]
    RefinementFailed(String),
    #[error("max_iterations must be at least 256, got {0}")]
    BudgetTooSmall(usize),
}

/// Generation budget and refinement switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    /// Cap on chaotic draws during initial generation.
    pub max_iterations: usize,
    /// Run the refinement pass after initial generation.
    pub refine: bool,
    /// Cap on refinement passes.
    pub refine_max_passes: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            max_iterations: 10_000_000,
            refine: true,
            refine_max_passes: 64,
        }
    }
}

impl GenConfig {
    fn validate(&self) -> Result<(), GenerateError> {
        if self.max_iterations < TABLE_SIZE {
            return Err(GenerateError::BudgetTooSmall(self.max_iterations));
        }
        Ok(())
    }
}

/// Octet stream drawn from the keyed map: advance one step, then extract
/// `round(x·b) mod 256` (round half away from zero; x·b is nonnegative).
#[derive(Debug, Clone)]
pub struct ByteStream {
    state: ChaosState,
    params: MapParams,
}

impl ByteStream {
    pub fn new(params: &MapParams) -> Self {
        Self {
            state: params.initial_state(),
            params: *params,
        }
    }

    pub fn next_byte(&mut self) -> u8 {
        self.state = self.state.step(&self.params);
        ((self.state.value() * self.params.b()).round() as u64 % 256) as u8
    }
}

impl Iterator for ByteStream {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        Some(self.next_byte())
    }
}

/// Draws octets from the keyed stream, keeping the first occurrence of each,
/// until all 256 distinct values are placed.
///
/// Deterministic in the key; fails with [`GenerateError::Stalled`] once
/// `max_iterations` draws pass without completing the permutation (a short
/// periodic orbit or a degenerate scale can starve the stream of fresh
/// octets).
pub fn generate_initial(key: &MapParams, cfg: &GenConfig) -> Result<SBox, GenerateError> {
    cfg.validate()?;
    let mut stream = ByteStream::new(key);
    let mut seen = [false; TABLE_SIZE];
    let mut values = [0u8; TABLE_SIZE];
    let mut placed = 0usize;
    let mut draws = 0usize;
    while placed < TABLE_SIZE {
        if draws >= cfg.max_iterations {
            return Err(GenerateError::Stalled {
                draws,
                distinct: placed,
            });
        }
        let v = stream.next_byte();
        draws += 1;
        if !seen[v as usize] {
            seen[v as usize] = true;
            values[placed] = v;
            placed += 1;
        }
    }
    Ok(SBox::from_slice(&values).expect("first-occurrence construction places every octet once"))
}

/// Improvement proposals attempted per refinement pass.
const PROPOSALS_PER_PASS: usize = 128;

/// Stream draws tried per fixed point before falling back to a full sweep.
const FIXED_POINT_DRAW_BUDGET: usize = 256;

/// Deterministic keyed hill-climb over transpositions.
///
/// Each pass first retires fixed points (candidate partners come from the
/// stream, then from an exhaustive ascending sweep), then makes
/// [`PROPOSALS_PER_PASS`] stream-driven swap proposals. A swap is accepted
/// only if it lowers the fixed-point count without dropping the minimum
/// nonlinearity, or strictly raises the minimum nonlinearity. Stops early
/// after a pass with no accepted swap; fails if fixed points survive the
/// pass budget or no pass can make progress.
pub fn refine(sbox: &SBox, cfg: &GenConfig, key: &MapParams) -> Result<SBox, GenerateError> {
    cfg.validate()?;
    let mut stream = ByteStream::new(key);
    let mut current = sbox.clone();
    let mut current_min = metrics::nonlinearity(current.values()).min;
    let input_min = current_min;

    for _ in 0..cfg.refine_max_passes {
        let mut accepted_any = false;

        // Phase A: retire fixed points without lowering the minimum NL.
        loop {
            let fixed = current.as_raw().fixed_points();
            let Some(&p) = fixed.first() else { break };
            let partner = find_fixed_point_partner(&current, p, current_min, &mut stream);
            match partner {
                Some((j, new_min)) => {
                    current.swap_positions(p, j);
                    debug_assert!(new_min >= current_min);
                    current_min = new_min;
                    accepted_any = true;
                }
                None => {
                    return Err(GenerateError::RefinementFailed(format!(
                        "no transposition removes the fixed point at {p} without lowering min NL {current_min}"
                    )));
                }
            }
        }

        // Phase B: stream-driven proposals that strictly raise the minimum NL.
        for _ in 0..PROPOSALS_PER_PASS {
            let i = stream.next_byte();
            let j = stream.next_byte();
            if i == j {
                continue;
            }
            let mut candidate = current.clone();
            candidate.swap_positions(i, j);
            let cand_min = metrics::nonlinearity(candidate.values()).min;
            if cand_min > current_min {
                current = candidate;
                current_min = cand_min;
                accepted_any = true;
            }
        }

        if !accepted_any {
            break;
        }
    }

    let fixed = current.as_raw().fixed_points();
    if !fixed.is_empty() {
        return Err(GenerateError::RefinementFailed(format!(
            "fixed points {fixed:?} survived the pass budget"
        )));
    }
    debug_assert!(current_min >= input_min);
    Ok(current)
}

/// Finds a partner position whose swap strictly reduces the fixed-point
/// count while keeping min NL, trying stream draws first and then every
/// position in ascending order. Returns the partner and the candidate's min
/// NL.
fn find_fixed_point_partner(
    current: &SBox,
    p: u8,
    current_min: u32,
    stream: &mut ByteStream,
) -> Option<(u8, u32)> {
    let fixed_count = current.as_raw().fixed_points().len();
    let check = |j: u8| -> Option<(u8, u32)> {
        // Swapping S[p] = p with S[j] leaves the fixed point in place when
        // S[j] = p, and removes it otherwise (it cannot create one at j).
        if j == p || current.apply(j) == p {
            return None;
        }
        let mut candidate = current.clone();
        candidate.swap_positions(p, j);
        if candidate.as_raw().fixed_points().len() >= fixed_count {
            return None;
        }
        let cand_min = metrics::nonlinearity(candidate.values()).min;
        (cand_min >= current_min).then_some((j, cand_min))
    };
    for _ in 0..FIXED_POINT_DRAW_BUDGET {
        let j = stream.next_byte();
        if let Some(hit) = check(j) {
            return Some(hit);
        }
    }
    (0..=255u8).find_map(check)
}

/// The full pipeline: initial generation, then refinement when configured.
pub fn generate(key: &MapParams, cfg: &GenConfig) -> Result<SBox, GenerateError> {
    let initial = generate_initial(key, cfg)?;
    if cfg.refine {
        refine(&initial, cfg, key)
    } else {
        Ok(initial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaos::MapMode;
    use crate::reference::aes_sbox;

    fn key(x0: f64, a: f64, mode: MapMode) -> MapParams {
        MapParams::new(x0, a, 1e6, mode).unwrap()
    }

    #[test]
    fn initial_generation_is_bijective_and_deterministic() {
        for &mode in &[MapMode::Product, MapMode::Piecewise] {
            let k = key(0.4123, 1.37, mode);
            let cfg = GenConfig::default();
            let a = generate_initial(&k, &cfg).unwrap();
            let b = generate_initial(&k, &cfg).unwrap();
            assert_eq!(a, b);
            assert!(a.as_raw().is_bijective());
        }
    }

    #[test]
    fn perturbed_keys_give_unrelated_tables() {
        for &mode in &[MapMode::Product, MapMode::Piecewise] {
            let cfg = GenConfig::default();
            let a = generate_initial(&key(0.412300000, 1.37, mode), &cfg).unwrap();
            let b = generate_initial(&key(0.412300001, 1.37, mode), &cfg).unwrap();
            let agreement = a.as_raw().agreement(b.as_raw());
            assert!(
                agreement <= 13,
                "{mode:?}: perturbed keys agree at {agreement}/256 positions"
            );
        }
    }

    #[test]
    fn degenerate_scale_stalls_instead_of_looping() {
        // b = 1 can only ever produce the octets 0 and 1.
        let k = MapParams::new(0.4123, 1.37, 1.0, MapMode::Product).unwrap();
        let cfg = GenConfig {
            max_iterations: 10_000,
            ..GenConfig::default()
        };
        match generate_initial(&k, &cfg) {
            Err(GenerateError::Stalled { draws, distinct }) => {
                assert_eq!(draws, 10_000);
                assert!(distinct <= 2);
            }
            other => panic!("expected stall, got {other:?}"),
        }
    }

    #[test]
    fn exact_fixed_point_of_the_map_stalls() {
        // An exact f64 fixed point of the tan branch (found by scanning the
        // bisection neighborhood): step(x*) == x* bit for bit, so the byte
        // stream is constant and generation can never finish. Exactness
        // depends on the platform's tan rounding, so the premise is checked
        // first; the degenerate-scale test above covers the stall path
        // unconditionally.
        let a = f64::from_bits(0x3fe00b780346dc5d); // ≈ 0.5014
        let x_star = f64::from_bits(0x3fe8c2808a30335c); // ≈ 0.7737429331769863
        let key = MapParams::new(x_star, a, 1e6, MapMode::Piecewise).unwrap();
        if ChaosState::new(x_star).step(&key).value() != x_star {
            return; // this libm rounds tan differently; premise gone
        }
        let cfg = GenConfig {
            max_iterations: 4096,
            ..GenConfig::default()
        };
        match generate_initial(&key, &cfg) {
            Err(GenerateError::Stalled { distinct, .. }) => assert_eq!(distinct, 1),
            other => panic!("expected stall on a fixed-point orbit, got {other:?}"),
        }
    }

    #[test]
    fn budget_below_table_size_is_rejected() {
        let cfg = GenConfig {
            max_iterations: 255,
            ..GenConfig::default()
        };
        assert!(matches!(
            generate_initial(&key(0.4123, 1.37, MapMode::Product), &cfg),
            Err(GenerateError::BudgetTooSmall(255))
        ));
    }

    #[test]
    fn refine_removes_fixed_points_and_keeps_min_nl() {
        let cfg = GenConfig::default();
        // Walk keys until one generates a table with fixed points, so the
        // test genuinely exercises phase A regardless of libm flavor.
        let mut exercised = false;
        for i in 0..32 {
            let k = key(0.31 + 0.017 * i as f64, 1.37, MapMode::Product);
            let initial = generate_initial(&k, &cfg).unwrap();
            let before = metrics::nonlinearity(initial.values()).min;
            let had_fixed = !initial.as_raw().fixed_points().is_empty();
            let refined = refine(&initial, &cfg, &k).unwrap();
            assert!(refined.as_raw().is_bijective());
            assert!(refined.as_raw().fixed_points().is_empty());
            let after = metrics::nonlinearity(refined.values()).min;
            assert!(after >= before, "min NL dropped {before} -> {after}");
            if had_fixed {
                exercised = true;
                break;
            }
        }
        assert!(exercised, "no key in the sweep produced a fixed point");
    }

    #[test]
    fn refine_leaves_local_maximum_unchanged() {
        // AES: no fixed points, and no single transposition raises the
        // minimum NL above 112, so no proposal is ever accepted.
        let aes = aes_sbox();
        let refined = refine(&aes, &GenConfig::default(), &key(0.4123, 1.37, MapMode::Product))
            .unwrap();
        assert_eq!(refined, aes);
    }

    #[test]
    fn generate_composes_the_two_stages() {
        let k = key(0.275, 1.61, MapMode::Product);
        let unrefined_cfg = GenConfig {
            refine: false,
            ..GenConfig::default()
        };
        assert_eq!(
            generate(&k, &unrefined_cfg).unwrap(),
            generate_initial(&k, &unrefined_cfg).unwrap()
        );

        let refined = generate(&k, &GenConfig::default()).unwrap();
        assert!(refined.as_raw().is_bijective());
        assert!(refined.as_raw().fixed_points().is_empty());
    }
}
