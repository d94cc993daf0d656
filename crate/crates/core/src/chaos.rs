//! The trigonometric chaotic map and its diagnostics.
//!
//! The map is a one-dimensional discrete system on the unit interval with a
//! control parameter `a` and two update rules:
//!
//! - [`MapMode::Piecewise`]: `x' = wrap(0.52 + x + sin²(a·x))` for `x < 0.5`,
//!   `x' = wrap(1.5 + a/2 − tan(x))` otherwise;
//! - [`MapMode::Product`]: `x' = wrap(W·Y)` where
//!   `W = 1 − cos(x)/x + (3 + a)/x` and `Y = √sin(x) / (0.5 + a·x)`.
//!
//! `wrap` reduces to the fractional part and clamps up to [`STATE_FLOOR`],
//! keeping the state inside `[ε, 1)` where the divisions by `x` and the
//! square root are well defined.
//!
//! Besides stepping, this module estimates the largest Lyapunov exponent by
//! co-evolving two nearby trajectories, and sweeps the control parameter to
//! produce bifurcation-diagram samples.

use thiserror::Error;

/// Lower clamp for the map state; keeps `1/x` and `√sin(x)` finite.
pub const STATE_FLOOR: f64 = 1e-12;

/// Initial separation of the two trajectories in the Lyapunov estimator.
pub const LYAPUNOV_DELTA: f64 = 1e-9;

/// Minimum iteration count for a Lyapunov estimate to be considered reliable.
pub const MIN_LYAPUNOV_ITERATIONS: usize = 1000;

/// Errors from parameter validation and the diagnostic scans.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChaosError {
    #[error("initial state x0 must lie in (0, 1), got {0}")]
    InitialStateOutOfRange(f64),
    #[error("control parameter a must lie in (0, 2), got {0}")]
    ControlOutOfRange(f64),
    #[error("scale b must lie in (0, 1e9], got {0}")]
    ScaleOutOfRange(f64),
    #[error("parameter range must satisfy 0 < a_min < a_max < 2, got [{0}, {1}]")]
    BadParameterRange(f64, f64),
    #[error("bifurcation scan needs at least 2 parameter steps, got {0}")]
    TooFewSteps(usize),
    #[error("bifurcation scan needs at least 1 sample per parameter value")]
    NoSamples,
    #[error("lyapunov estimate needs at least {MIN_LYAPUNOV_ITERATIONS} iterations, got {0}")]
    TooFewIterations(usize),
}

/// Which update rule drives the map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapMode {
    /// Branchy closed form: `0.52 + x + sin²(a·x)` below 0.5, `1.5 + a/2 − tan(x)` otherwise.
    Piecewise,
    /// Product recurrence `x' = wrap(W·Y)` of the two intermediate quantities.
    Product,
}

/// The secret key of the generator: initial state, control parameter,
/// byte-extraction scale, and the update rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParams {
    x0: f64,
    a: f64,
    b: f64,
    mode: MapMode,
}

impl MapParams {
    /// Validates `0 < x0 < 1`, `0 < a < 2`, `0 < b ≤ 1e9`.
    ///
    /// NaN fails every comparison and is rejected along with out-of-range
    /// values.
    pub fn new(x0: f64, a: f64, b: f64, mode: MapMode) -> Result<Self, ChaosError> {
        if !(x0 > 0.0 && x0 < 1.0) {
            return Err(ChaosError::InitialStateOutOfRange(x0));
        }
        if !(a > 0.0 && a < 2.0) {
            return Err(ChaosError::ControlOutOfRange(a));
        }
        if !(b > 0.0 && b <= 1e9) {
            return Err(ChaosError::ScaleOutOfRange(b));
        }
        Ok(Self { x0, a, b, mode })
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn mode(&self) -> MapMode {
        self.mode
    }

    /// The state the orbit starts from (x0, clamped onto the state domain).
    pub fn initial_state(&self) -> ChaosState {
        ChaosState::new(self.x0)
    }
}

/// Current state of the map, confined to `[STATE_FLOOR, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChaosState {
    x: f64,
}

impl ChaosState {
    /// Builds a state from any finite real by fractional-part reduction and
    /// clamping, the same normalization every step applies.
    pub fn new(x: f64) -> Self {
        Self { x: wrap_unit(x) }
    }

    pub fn value(&self) -> f64 {
        self.x
    }

    /// Advances one iteration under the given parameters.
    pub fn step(self, params: &MapParams) -> ChaosState {
        let x = self.x;
        let v = match params.mode {
            MapMode::Piecewise => {
                // Strictly-less: at exactly x = 0.5 the tan branch applies.
                if x < 0.5 {
                    let s = (params.a * x).sin();
                    0.52 + x + s * s
                } else {
                    1.5 + params.a / 2.0 - x.tan()
                }
            }
            MapMode::Product => {
                let m = self.intermediates(params);
                m.w * m.y
            }
        };
        ChaosState { x: wrap_unit(v) }
    }

    /// The two intermediate quantities of the product rule.
    ///
    /// Finite for every state: `x ≥ STATE_FLOOR` guards the divisions, and
    /// `sin(x) ≥ 0` on `(0, 1)` keeps the square root real.
    pub fn intermediates(self, params: &MapParams) -> Intermediates {
        let x = self.x;
        let w = 1.0 - x.cos() / x + (3.0 + params.a) / x;
        let y = x.sin().sqrt() / (0.5 + params.a * x);
        Intermediates { w, y }
    }
}

/// Intermediate quantities of the product update rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intermediates {
    pub w: f64,
    pub y: f64,
}

/// Fractional-part reduction onto `[STATE_FLOOR, 1)`.
fn wrap_unit(v: f64) -> f64 {
    let mut w = v - v.floor();
    // v − floor(v) rounds up to exactly 1.0 for tiny negative v.
    if w >= 1.0 {
        w -= 1.0;
    }
    if w < STATE_FLOOR {
        STATE_FLOOR
    } else {
        w
    }
}

/// Iterates the map from `x0`, discards `transient` states, then returns the
/// next `n` states in order.
pub fn trajectory(params: &MapParams, n: usize, transient: usize) -> Vec<f64> {
    let mut state = params.initial_state();
    for _ in 0..transient {
        state = state.step(params);
    }
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        state = state.step(params);
        out.push(state.value());
    }
    out
}

/// One sampled point of a bifurcation diagram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BifurcationRecord {
    /// Swept control parameter.
    pub a: f64,
    /// Post-transient state sample, in `[0, 1)`.
    pub x: f64,
}

/// Sweep description for a bifurcation diagram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BifurcationScan {
    pub a_min: f64,
    pub a_max: f64,
    pub a_steps: usize,
    pub x0: f64,
    pub samples: usize,
    pub transient: usize,
    pub mode: MapMode,
}

impl BifurcationScan {
    /// Runs the sweep: for each of `a_steps` evenly spaced parameter values
    /// (endpoints included), discards `transient` iterates and records the
    /// next `samples` states. Output is ordered by `a`, then iterate index,
    /// with exactly `a_steps × samples` records.
    pub fn run(&self) -> Result<Vec<BifurcationRecord>, ChaosError> {
        if !(self.a_min > 0.0 && self.a_min < self.a_max && self.a_max < 2.0) {
            return Err(ChaosError::BadParameterRange(self.a_min, self.a_max));
        }
        if self.a_steps < 2 {
            return Err(ChaosError::TooFewSteps(self.a_steps));
        }
        if self.samples == 0 {
            return Err(ChaosError::NoSamples);
        }
        if !(self.x0 > 0.0 && self.x0 < 1.0) {
            return Err(ChaosError::InitialStateOutOfRange(self.x0));
        }
        let span = self.a_max - self.a_min;
        let mut records = Vec::with_capacity(self.a_steps * self.samples);
        for i in 0..self.a_steps {
            let a = self.a_min + span * i as f64 / (self.a_steps - 1) as f64;
            // b is irrelevant to the orbit; any valid value works here.
            let params = MapParams::new(self.x0, a, 1.0, self.mode)?;
            let mut state = params.initial_state();
            for _ in 0..self.transient {
                state = state.step(&params);
            }
            for _ in 0..self.samples {
                state = state.step(&params);
                records.push(BifurcationRecord {
                    a,
                    x: state.value(),
                });
            }
        }
        Ok(records)
    }
}

/// How a Lyapunov estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LyapunovMethod {
    /// Benettin-style co-evolution of two trajectories with per-step
    /// renormalization of their separation.
    TwoTrajectory,
}

/// Estimated largest Lyapunov exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovEstimate {
    /// Average log divergence rate per iteration; positive means chaos.
    pub value: f64,
    /// Requested iteration count.
    pub iterations: usize,
    pub method: LyapunovMethod,
}

/// Two-trajectory estimate of the largest Lyapunov exponent.
///
/// Co-evolves `x` and a companion displaced by [`LYAPUNOV_DELTA`]; each step
/// accumulates `ln(|δ'| / δ₀)` and renormalizes the separation back to `δ₀`.
/// Steps where the pair straddles the branch point `x = 0.5` in piecewise
/// mode measure the discontinuity rather than local divergence, so they are
/// skipped and excluded from the divisor (as are the measure-zero steps
/// where both states collapse to the same float).
pub fn lyapunov(params: &MapParams, n: usize) -> Result<LyapunovEstimate, ChaosError> {
    if n < MIN_LYAPUNOV_ITERATIONS {
        return Err(ChaosError::TooFewIterations(n));
    }
    let delta = LYAPUNOV_DELTA;
    let mut main = params.initial_state();
    let mut shadow = displace(main.value(), delta, true);
    let mut acc = 0.0;
    let mut counted = 0usize;
    for _ in 0..n {
        let straddle = params.mode == MapMode::Piecewise
            && (main.value() < 0.5) != (shadow.value() < 0.5);
        let next_main = main.step(params);
        let next_shadow = shadow.step(params);
        let sep = next_shadow.value() - next_main.value();
        if !straddle && sep != 0.0 {
            acc += (sep.abs() / delta).ln();
            counted += 1;
        }
        main = next_main;
        shadow = displace(main.value(), delta, sep >= 0.0);
    }
    Ok(LyapunovEstimate {
        value: acc / counted as f64,
        iterations: n,
        method: LyapunovMethod::TwoTrajectory,
    })
}

/// Places the shadow trajectory `delta` away from `x`, preferring the side
/// the separation currently points to, flipping when that leaves `[ε, 1)`.
fn displace(x: f64, delta: f64, positive: bool) -> ChaosState {
    let candidate = if positive { x + delta } else { x - delta };
    let x2 = if (STATE_FLOOR..1.0).contains(&candidate) {
        candidate
    } else if positive {
        x - delta
    } else {
        x + delta
    };
    ChaosState { x: x2 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(x0: f64, a: f64, mode: MapMode) -> MapParams {
        MapParams::new(x0, a, 1e6, mode).unwrap()
    }

    #[test]
    fn param_validation_rejects_out_of_range() {
        assert!(matches!(
            MapParams::new(0.0, 1.0, 1.0, MapMode::Product),
            Err(ChaosError::InitialStateOutOfRange(_))
        ));
        assert!(matches!(
            MapParams::new(1.0, 1.0, 1.0, MapMode::Product),
            Err(ChaosError::InitialStateOutOfRange(_))
        ));
        assert!(matches!(
            MapParams::new(0.5, 2.0, 1.0, MapMode::Product),
            Err(ChaosError::ControlOutOfRange(_))
        ));
        assert!(matches!(
            MapParams::new(0.5, 1.0, 0.0, MapMode::Product),
            Err(ChaosError::ScaleOutOfRange(_))
        ));
        assert!(matches!(
            MapParams::new(0.5, 1.0, 1.1e9, MapMode::Product),
            Err(ChaosError::ScaleOutOfRange(_))
        ));
        assert!(matches!(
            MapParams::new(f64::NAN, 1.0, 1.0, MapMode::Product),
            Err(ChaosError::InitialStateOutOfRange(_))
        ));
        assert!(MapParams::new(0.5, 1.0, 1e9, MapMode::Product).is_ok());
    }

    #[test]
    fn piecewise_step_matches_closed_form() {
        // wrap(0.52 + 0.25 + sin²(1.0·0.25)) — no reduction needed.
        let p = params(0.25, 1.0, MapMode::Piecewise);
        let next = ChaosState::new(0.25).step(&p);
        assert!((next.value() - 0.831_208_719_054_813_6).abs() < 1e-12);

        // Branch correctness within 1 ulp of the closed form.
        let s = (1.0f64 * 0.25).sin();
        let expect = 0.52 + 0.25 + s * s;
        assert!((next.value() - expect).abs() <= f64::EPSILON * expect.abs());
    }

    #[test]
    fn piecewise_branch_boundary_is_strict() {
        // At exactly x = 0.5 the tan branch applies: wrap(1.5 + 0.5 − tan(0.5)).
        let p = params(0.5, 1.0, MapMode::Piecewise);
        let next = ChaosState::new(0.5).step(&p);
        let expect = (1.5 + 0.5 - 0.5f64.tan()).fract();
        assert_eq!(next.value(), expect);
        assert!((next.value() - 0.453_697_510_156_209_5).abs() < 1e-12);
    }

    #[test]
    fn product_step_matches_oracle_values() {
        let p = params(0.5, 1.0, MapMode::Product);
        let state = ChaosState::new(0.5);
        let m = state.intermediates(&p);
        assert!((m.w - 7.244_834_876_219_254_5).abs() < 1e-12);
        assert!((m.y - 0.692_405_617_109_077_9).abs() < 1e-12);
        let next = state.step(&p);
        assert!((next.value() - 0.016_364_363_321_963).abs() < 1e-12);
    }

    #[test]
    fn intermediates_finite_at_state_floor() {
        let p = params(0.5, 1.0, MapMode::Product);
        let m = ChaosState::new(STATE_FLOOR).intermediates(&p);
        assert!(m.w.is_finite());
        assert!(m.y.is_finite());
        // 1/x dominates near zero, so W is huge but finite.
        assert!(m.w > 1e9);
    }

    #[test]
    fn intermediates_example_high_a_x() {
        let p = params(0.9, 0.1, MapMode::Product);
        let m = ChaosState::new(0.9).intermediates(&p);
        assert!((m.w - 3.753_766_701_921_484).abs() < 1e-12);
        assert!((m.y - 1.500_097_583_369_430_8).abs() < 1e-12);
    }

    #[test]
    fn wrap_handles_negative_and_large_values() {
        assert!((ChaosState::new(-0.3).value() - 0.7).abs() < 1e-15);
        assert!((ChaosState::new(3.25).value() - 0.25).abs() < 1e-15);
        assert_eq!(ChaosState::new(2.0).value(), STATE_FLOOR);
        assert_eq!(ChaosState::new(-1e-18).value(), STATE_FLOOR);
    }

    #[test]
    fn trajectory_indexing() {
        let p = params(0.33, 1.1, MapMode::Product);
        let single = trajectory(&p, 1, 0);
        assert_eq!(single.len(), 1);
        assert_eq!(single[0], p.initial_state().step(&p).value());

        // n = 3, transient = 2 → iterates 3, 4, 5 of x0.
        let full = trajectory(&p, 5, 0);
        let tail = trajectory(&p, 3, 2);
        assert_eq!(tail, full[2..].to_vec());
    }

    #[test]
    fn trajectory_is_deterministic() {
        let p = params(0.77, 0.9, MapMode::Piecewise);
        assert_eq!(trajectory(&p, 64, 10), trajectory(&p, 64, 10));
    }

    #[test]
    fn state_stays_confined() {
        for &mode in &[MapMode::Piecewise, MapMode::Product] {
            let p = params(0.617, 1.93 % 2.0, mode);
            let mut s = p.initial_state();
            for _ in 0..100_000 {
                s = s.step(&p);
                assert!(s.value() >= STATE_FLOOR && s.value() < 1.0);
            }
        }
    }

    #[test]
    fn bifurcation_scan_cardinality_and_range() {
        let recs = BifurcationScan {
            a_min: 0.2,
            a_max: 1.8,
            a_steps: 2,
            x0: 0.4,
            samples: 3,
            transient: 5,
            mode: MapMode::Product,
        }
        .run()
        .unwrap();
        assert_eq!(recs.len(), 6);
        assert!(recs.iter().all(|r| r.x >= 0.0 && r.x < 1.0));
        assert_eq!(recs[0].a, 0.2);
        assert_eq!(recs[5].a, 1.8);
    }

    #[test]
    fn bifurcation_scan_rejects_bad_ranges() {
        let base = BifurcationScan {
            a_min: 1.0,
            a_max: 0.5,
            a_steps: 10,
            x0: 0.4,
            samples: 2,
            transient: 0,
            mode: MapMode::Product,
        };
        assert!(matches!(
            base.run(),
            Err(ChaosError::BadParameterRange(..))
        ));
        let equal = BifurcationScan {
            a_min: 0.5,
            a_max: 0.5,
            ..base
        };
        assert!(equal.run().is_err());
        let one_step = BifurcationScan {
            a_min: 0.2,
            a_max: 0.9,
            a_steps: 1,
            ..base
        };
        assert!(matches!(one_step.run(), Err(ChaosError::TooFewSteps(1))));
        let no_samples = BifurcationScan {
            a_min: 0.2,
            a_max: 0.9,
            samples: 0,
            ..base
        };
        assert!(matches!(no_samples.run(), Err(ChaosError::NoSamples)));
    }

    #[test]
    fn lyapunov_rejects_short_runs() {
        let p = params(0.33, 1.0, MapMode::Product);
        assert!(matches!(
            lyapunov(&p, 999),
            Err(ChaosError::TooFewIterations(999))
        ));
    }

    #[test]
    fn lyapunov_positive_in_chaotic_regime_and_deterministic() {
        let p = params(0.33, 1.0, MapMode::Product);
        let e1 = lyapunov(&p, 20_000).unwrap();
        let e2 = lyapunov(&p, 20_000).unwrap();
        assert!(e1.value > 0.0, "expected chaos, got {}", e1.value);
        assert_eq!(e1.value.to_bits(), e2.value.to_bits());
        assert_eq!(e1.iterations, 20_000);
        assert_eq!(e1.method, LyapunovMethod::TwoTrajectory);
    }
}
