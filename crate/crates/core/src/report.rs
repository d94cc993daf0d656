//! Assembled security report over a 256-entry table, with exact arithmetic.
//!
//! Probabilities are carried as unreduced integer fractions over their
//! natural denominators (counts over 256, 2048, …) so regression diffs stay
//! exact; JSON emits each as both a 6-place decimal string and the exact
//! `numerator/denominator` string.

use std::env;
use std::fmt;
use std::num::NonZeroUsize;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::metrics;
use crate::table::RawTable;

/// Exact unreduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        debug_assert!(den > 0);
        Self { num, den }
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Ratio", 2)?;
        s.serialize_field("decimal", &format!("{:.6}", self.as_f64()))?;
        s.serialize_field("exact", &self.to_string())?;
        s.end()
    }
}

/// Every security criterion of the evaluation suite, computed over one
/// table. Metrics are defined for any 256-entry table; non-bijective inputs
/// are analyzed rather than rejected, with the `bijective` flag left for
/// callers to gate on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub bijective: bool,
    pub fixed_point_count: u32,
    pub nl_per_bit: [u32; 8],
    pub nl_min: u32,
    /// Row = flipped input bit, column = observed output bit; counts over 256.
    pub sac: [[Ratio; 8]; 8],
    pub sac_mean: Ratio,
    /// Symmetric, diagonal unused.
    pub bic_nl: [[u32; 8]; 8],
    pub bic_nl_min: u32,
    /// Symmetric, diagonal fixed at 0; counts over 8·256.
    pub bic_sac: [[Ratio; 8]; 8],
    pub bic_sac_avg: Ratio,
    /// max |LAT| / 256 over (a, b) ≠ (0, 0).
    pub lap: Ratio,
    /// max DDT / 256 over Δin ≠ 0.
    pub dap: Ratio,
    pub differential_uniformity: u32,
    pub algebraic_degree_per_bit: [u32; 8],
    pub degree_min: u32,
}

impl MetricsReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

/// Worker cap for the internally parallel scans: the `SBOX_FORGE_THREADS`
/// environment variable when set (minimum 1), otherwise the available
/// parallelism capped at 8.
pub fn thread_cap() -> usize {
    if let Ok(raw) = env::var("SBOX_FORGE_THREADS") {
        if let Ok(n) = raw.trim().parse::<usize>() {
            return n.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(NonZeroUsize::get)
        .unwrap_or(1)
        .min(8)
}

/// Computes the full report with the default worker cap ([`thread_cap`]).
pub fn full_report(table: &RawTable) -> MetricsReport {
    full_report_threaded(table, thread_cap())
}

/// Computes the full report with an explicit worker cap. The assembled
/// report is identical for every cap; only the schedule differs.
pub fn full_report_threaded(table: &RawTable, threads: usize) -> MetricsReport {
    let t = table.values().as_slice();

    let nl = metrics::nonlinearity(t);
    let sac = metrics::sac_matrix(t);
    let (bic_nl_vec, bic_nl_min) = metrics::bic_nonlinearity(t);
    let bic_sac = metrics::bic_sac_matrix(t);
    let max_bias = metrics::max_absolute_bias_threaded(t, threads);
    let du = metrics::differential_uniformity(t);
    let degrees = metrics::algebraic_degrees(t);

    let mut sac_ratios = [[Ratio::new(0, 256); 8]; 8];
    let mut bic_sac_ratios = [[Ratio::new(0, 2048); 8]; 8];
    let mut bic_nl_arr = [[0u32; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            sac_ratios[i][j] = Ratio::new(sac.counts[i][j] as u64, 256);
            bic_sac_ratios[i][j] = Ratio::new(bic_sac.counts[i][j] as u64, 2048);
            bic_nl_arr[i][j] = bic_nl_vec[i][j];
        }
    }
    let (sac_total, sac_den) = sac.mean_fraction();
    let (bs_total, bs_den) = bic_sac.average_fraction();

    MetricsReport {
        bijective: table.is_bijective(),
        fixed_point_count: table.fixed_points().len() as u32,
        nl_per_bit: nl.per_bit.clone().try_into().expect("8 output bits"),
        nl_min: nl.min,
        sac: sac_ratios,
        sac_mean: Ratio::new(sac_total, sac_den),
        bic_nl: bic_nl_arr,
        bic_nl_min,
        bic_sac: bic_sac_ratios,
        bic_sac_avg: Ratio::new(bs_total, bs_den),
        lap: Ratio::new(max_bias as u64, 256),
        dap: Ratio::new(du as u64, 256),
        differential_uniformity: du,
        algebraic_degree_per_bit: degrees.per_bit.clone().try_into().expect("8 output bits"),
        degree_min: degrees.min,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::SBox;

    #[test]
    fn identity_report() {
        let report = full_report(SBox::identity().as_raw());
        assert!(report.bijective);
        assert_eq!(report.fixed_point_count, 256);
        assert_eq!(report.nl_min, 0);
        assert_eq!(report.lap, Ratio::new(128, 256));
        assert_eq!(report.dap, Ratio::new(256, 256));
        assert_eq!(report.differential_uniformity, 256);
        assert_eq!(report.degree_min, 1);
    }

    #[test]
    fn non_bijective_tables_are_analyzed_not_rejected() {
        let report = full_report(&RawTable::new([0u8; 256]));
        assert!(!report.bijective);
        assert_eq!(report.fixed_point_count, 1);
        assert_eq!(report.nl_min, 0);
        assert_eq!(report.dap, Ratio::new(256, 256));
    }

    #[test]
    fn report_is_schedule_independent() {
        let table = crate::reference::final_sbox();
        let a = full_report_threaded(&table, 1);
        let b = full_report_threaded(&table, 7);
        assert_eq!(a, b);
    }

    #[test]
    fn ratio_json_shape() {
        let r = Ratio::new(112, 256);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"decimal":"0.437500","exact":"112/256"}"#);
    }

    #[test]
    fn report_json_is_deterministic_and_ordered() {
        let report = full_report(SBox::identity().as_raw());
        let a = report.to_json();
        let b = report.to_json();
        assert_eq!(a, b);
        let bij = a.find("\"bijective\"").unwrap();
        let nl = a.find("\"nl_per_bit\"").unwrap();
        let deg = a.find("\"degree_min\"").unwrap();
        assert!(bij < nl && nl < deg);
    }
}
