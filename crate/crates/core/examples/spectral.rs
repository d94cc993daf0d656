//! Spectral view of a table: Walsh spectrum of one component, the linear
//! and differential profiles, and how a generated box compares to AES.
//!
//! Run with: `cargo run --example spectral`

use sbox_forge::chaos::{MapMode, MapParams};
use sbox_forge::generate::{generate, GenConfig};
use sbox_forge::metrics::{
    component_bits, ddt, differential_uniformity, max_absolute_bias, nonlinearity, walsh_spectrum,
};
use sbox_forge::reference::aes_sbox;

fn profile(name: &str, table: &[u8]) {
    let nl = nonlinearity(table);
    let bias = max_absolute_bias(table);
    let du = differential_uniformity(table);
    println!(
        "{name:<12} min NL {:>3}   max |LAT| {:>3} (LAP {:.4})   DU {:>3} (DAP {:.4})",
        nl.min,
        bias,
        bias as f64 / 256.0,
        du,
        du as f64 / 256.0
    );
}

fn main() {
    let key = MapParams::new(0.2718, 0.9, 1e6, MapMode::Product).unwrap();
    let generated = generate(&key, &GenConfig::default()).unwrap();
    let aes = aes_sbox();

    profile("generated", generated.values());
    profile("aes", aes.values());

    // Walsh spectrum of the first coordinate of the generated box.
    let bits = component_bits(generated.values(), 0x01);
    let spectrum = walsh_spectrum(&bits);
    let max_abs = spectrum.iter().map(|w| w.abs()).max().unwrap();
    let peaks: Vec<usize> = spectrum
        .iter()
        .enumerate()
        .filter(|(_, w)| w.abs() == max_abs)
        .map(|(omega, _)| omega)
        .collect();
    println!(
        "\ncomponent mask 0x01: spectrum peaks |W| = {max_abs} at ω ∈ {peaks:?} → NL = {}",
        (256 - max_abs) / 2
    );

    // Differential profile summary: distribution of DDT entries.
    let table = ddt(generated.values());
    let mut histogram = std::collections::BTreeMap::new();
    for row in table.iter().skip(1) {
        for &entry in row {
            *histogram.entry(entry).or_insert(0u32) += 1;
        }
    }
    println!("DDT entry histogram (Δin ≠ 0): {histogram:?}");
}
