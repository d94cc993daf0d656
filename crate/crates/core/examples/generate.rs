//! Generate a key-dependent S-box and print it with its headline metrics.
//!
//! Run with: `cargo run --example generate`

use sbox_forge::chaos::{MapMode, MapParams};
use sbox_forge::formats::{write_table, TableFormat};
use sbox_forge::generate::{generate, GenConfig};
use sbox_forge::report::full_report;

fn main() {
    // The key: initial state, control parameter, byte-extraction scale, rule.
    let key = MapParams::new(0.3141, 1.5, 1e6, MapMode::Product).expect("key in range");
    let cfg = GenConfig::default(); // refinement on

    let sbox = generate(&key, &cfg).expect("generation succeeds for non-degenerate keys");

    let hex = write_table(sbox.as_raw(), TableFormat::Hex);
    println!("{}", String::from_utf8(hex).unwrap());

    let report = full_report(sbox.as_raw());
    println!("bijective:              {}", report.bijective);
    println!("fixed points:           {}", report.fixed_point_count);
    println!("min nonlinearity:       {}", report.nl_min);
    println!("nl per output bit:      {:?}", report.nl_per_bit);
    println!("SAC mean:               {:.6}", report.sac_mean.as_f64());
    println!("BIC-SAC average:        {:.6}", report.bic_sac_avg.as_f64());
    println!("LAP:                    {} = {:.6}", report.lap, report.lap.as_f64());
    println!("differential uniformity: {}", report.differential_uniformity);
    println!("min algebraic degree:   {}", report.degree_min);
}
