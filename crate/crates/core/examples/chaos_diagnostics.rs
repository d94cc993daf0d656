//! Chaos diagnostics of the map: a bifurcation sweep written as plot-ready
//! CSV, and Lyapunov exponent estimates for both update rules.
//!
//! Run with: `cargo run --example chaos_diagnostics`

use std::fs;

use sbox_forge::chaos::{lyapunov, BifurcationScan, MapMode, MapParams};
use sbox_forge::formats::bifurcation_csv;

fn main() {
    for mode in [MapMode::Product, MapMode::Piecewise] {
        let params = MapParams::new(0.33, 1.0, 1e6, mode).expect("params in range");
        let estimate = lyapunov(&params, 200_000).expect("enough iterations");
        println!(
            "{mode:?}: Lyapunov exponent ≈ {:+.4} over {} iterations ({})",
            estimate.value,
            estimate.iterations,
            if estimate.value > 0.0 { "chaotic" } else { "not chaotic" },
        );
    }

    let scan = BifurcationScan {
        a_min: 0.1,
        a_max: 1.9,
        a_steps: 400,
        x0: 0.33,
        samples: 100,
        transient: 200,
        mode: MapMode::Product,
    };
    let records = scan.run().expect("valid sweep");
    let path = "bifurcation.csv";
    fs::write(path, bifurcation_csv(&records)).expect("write csv");
    println!(
        "\nwrote {} samples ({} parameter values × {}) to {path}",
        records.len(),
        scan.a_steps,
        scan.samples
    );
    println!("plot x against a to see the bifurcation structure.");
}
