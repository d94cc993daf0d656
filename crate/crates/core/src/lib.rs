//! # sbox-forge
//!
//! Key-dependent substitution-box generation driven by a trigonometric
//! chaotic map, paired with a complete cryptanalytic evaluation suite.
//!
//! The pipeline: a secret key ([`chaos::MapParams`]) seeds the map, whose
//! orbit is quantized into an octet stream; collecting the first occurrence
//! of every octet yields a bijective initial S-box, and a keyed hill-climb
//! over transpositions removes fixed points and raises the minimum
//! nonlinearity ([`generate`]). The evaluation side ([`metrics`],
//! [`report`]) computes nonlinearity, avalanche and bit-independence
//! criteria, linear and differential profiles, and algebraic degrees — in
//! exact integer arithmetic. Chaos diagnostics (bifurcation sweeps, Lyapunov
//! estimates) live in [`chaos`]; published reference tables and their
//! regression audit in [`reference`]; file formats in [`formats`]; the
//! command-line front end in [`cli`].
//!
//! See the `examples/` directory for one runnable walkthrough per
//! capability.

pub mod chaos;
pub mod cli;
pub mod formats;
pub mod generate;
pub mod metrics;
pub mod reference;
pub mod report;
pub mod table;

pub use chaos::{ChaosState, MapMode, MapParams};
pub use generate::{generate, generate_initial, refine, GenConfig, GenerateError};
pub use report::{full_report, MetricsReport};
pub use table::{RawTable, SBox};
