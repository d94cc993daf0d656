//! Command-line front end: generation, analysis, chaos diagnostics, the
//! efficiency benchmark, and fixture export.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 malformed input file,
//! 4 generation stalled or refinement failed.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::chaos::{BifurcationScan, ChaosError, MapMode, MapParams};
use crate::formats::{self, TableFormat};
use crate::generate::{generate, generate_initial, GenConfig, GenerateError};
use crate::reference;
use crate::report::full_report;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BAD_INPUT: i32 = 3;
pub const EXIT_GENERATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "sbox-forge",
    about = "Key-dependent S-box generation and cryptanalytic evaluation",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an S-box from a key.
    Generate(GenerateArgs),
    /// Compute the full security report for a table read from a file.
    Analyze(AnalyzeArgs),
    /// Sweep the control parameter and emit bifurcation samples as CSV.
    Bifurcate(BifurcateArgs),
    /// Estimate the largest Lyapunov exponent of the keyed map.
    Lyapunov(LyapunovArgs),
    /// Time the generation of many initial S-boxes.
    Bench(BenchArgs),
    /// Export an embedded reference fixture, or audit it against its
    /// published metric values.
    Fixtures(FixturesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Branchy sin²/tan update rule.
    #[value(alias = "eq1")]
    Piecewise,
    /// W·Y product update rule.
    #[value(alias = "alg1")]
    Product,
}

impl From<ModeArg> for MapMode {
    fn from(m: ModeArg) -> MapMode {
        match m {
            ModeArg::Piecewise => MapMode::Piecewise,
            ModeArg::Product => MapMode::Product,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Hex,
    Bin,
    Json,
}

impl From<FormatArg> for TableFormat {
    fn from(f: FormatArg) -> TableFormat {
        match f {
            FormatArg::Hex => TableFormat::Hex,
            FormatArg::Bin => TableFormat::Bin,
            FormatArg::Json => TableFormat::Json,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Initial state, in (0, 1).
    #[arg(long)]
    pub x0: f64,
    /// Control parameter, in (0, 2).
    #[arg(long)]
    pub a: f64,
    /// Byte-extraction scale, in (0, 1e9].
    #[arg(long)]
    pub b: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Product)]
    pub mode: ModeArg,
    /// Run the refinement pass (removes fixed points, may raise min NL).
    #[arg(long)]
    pub refine: bool,
    /// Cap on chaotic draws during initial generation.
    #[arg(long, default_value_t = 10_000_000)]
    pub max_iterations: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Hex)]
    pub format: FormatArg,
    /// Output path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Table file in hex, bin, or json format (autodetected).
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Report format; only json is defined.
    #[arg(long, value_enum, default_value_t = ReportFormatArg::Json)]
    pub format: ReportFormatArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormatArg {
    Json,
}

#[derive(Debug, Args)]
pub struct BifurcateArgs {
    #[arg(long, default_value_t = 0.1)]
    pub a_min: f64,
    #[arg(long, default_value_t = 1.9)]
    pub a_max: f64,
    /// Number of evenly spaced control-parameter values.
    #[arg(long, default_value_t = 400)]
    pub steps: usize,
    #[arg(long, default_value_t = 0.33)]
    pub x0: f64,
    /// Samples recorded per parameter value.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Iterates discarded before sampling.
    #[arg(long, default_value_t = 200)]
    pub transient: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Product)]
    pub mode: ModeArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LyapunovArgs {
    #[arg(long)]
    pub x0: f64,
    #[arg(long)]
    pub a: f64,
    #[arg(long, default_value_t = 1_000_000.0)]
    pub b: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Product)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 100_000)]
    pub iterations: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Number of S-boxes to generate.
    #[arg(long, default_value_t = 100_000)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Product)]
    pub mode: ModeArg,
    /// Also run the refinement pass on every box.
    #[arg(long)]
    pub refine: bool,
}

#[derive(Debug, Args)]
pub struct FixturesArgs {
    /// Which fixture to export.
    #[arg(long, default_value = "final")]
    pub name: String,
    #[arg(long, value_enum, default_value_t = FormatArg::Hex)]
    pub format: FormatArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Compare the fixture's computed metrics against its published values
    /// and print the findings instead of exporting the table.
    #[arg(long)]
    pub audit: bool,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<ChaosError> for Failure {
    fn from(e: ChaosError) -> Self {
        Failure::new(EXIT_USAGE, e.to_string())
    }
}

impl From<GenerateError> for Failure {
    fn from(e: GenerateError) -> Self {
        let code = match e {
            GenerateError::BudgetTooSmall(_) => EXIT_USAGE,
            GenerateError::Stalled { .. } | GenerateError::RefinementFailed(_) => EXIT_GENERATION,
        };
        Failure::new(code, e.to_string())
    }
}

/// Executes a parsed invocation; returns the process exit code and prints a
/// one-line diagnostic to stderr on failure.
pub fn run(cli: Cli) -> i32 {
    match execute(cli) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Generate(args) => run_generate(args),
        Command::Analyze(args) => run_analyze(args),
        Command::Bifurcate(args) => run_bifurcate(args),
        Command::Lyapunov(args) => run_lyapunov(args),
        Command::Bench(args) => run_bench(args),
        Command::Fixtures(args) => run_fixtures(args),
    }
}

fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, bytes)
            .map_err(|e| Failure::new(1, format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|()| stdout.flush())
                .map_err(|e| Failure::new(1, format!("cannot write to stdout: {e}")))
        }
    }
}

fn run_generate(args: GenerateArgs) -> Result<(), Failure> {
    let key = MapParams::new(args.x0, args.a, args.b, args.mode.into())?;
    let cfg = GenConfig {
        max_iterations: args.max_iterations,
        refine: args.refine,
        ..GenConfig::default()
    };
    let sbox = generate(&key, &cfg)?;
    emit(
        args.out.as_ref(),
        &formats::write_table(sbox.as_raw(), args.format.into()),
    )
}

fn run_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let bytes = fs::read(&args.input)
        .map_err(|e| Failure::new(EXIT_BAD_INPUT, format!("cannot read {}: {e}", args.input.display())))?;
    let table = formats::read_table(&bytes)
        .map_err(|e| Failure::new(EXIT_BAD_INPUT, format!("{}: {e}", args.input.display())))?;
    let report = full_report(&table);
    let mut json = report.to_json();
    json.push('\n');
    emit(args.out.as_ref(), json.as_bytes())
}

fn run_bifurcate(args: BifurcateArgs) -> Result<(), Failure> {
    let records = BifurcationScan {
        a_min: args.a_min,
        a_max: args.a_max,
        a_steps: args.steps,
        x0: args.x0,
        samples: args.samples,
        transient: args.transient,
        mode: args.mode.into(),
    }
    .run()?;
    emit(args.out.as_ref(), formats::bifurcation_csv(&records).as_bytes())
}

fn run_lyapunov(args: LyapunovArgs) -> Result<(), Failure> {
    let params = MapParams::new(args.x0, args.a, args.b, args.mode.into())?;
    let estimate = crate::chaos::lyapunov(&params, args.iterations)?;
    emit(args.out.as_ref(), formats::lyapunov_json(&estimate).as_bytes())
}

fn run_bench(args: BenchArgs) -> Result<(), Failure> {
    if args.count == 0 {
        return Err(Failure::new(EXIT_USAGE, "bench count must be at least 1"));
    }
    let cfg = GenConfig {
        refine: args.refine,
        ..GenConfig::default()
    };
    let mode: MapMode = args.mode.into();
    let mut failures = 0usize;
    let started = Instant::now();
    for i in 0..args.count {
        let key = bench_key(i, mode);
        let produced = if args.refine {
            generate(&key, &cfg).map(|_| ())
        } else {
            generate_initial(&key, &cfg).map(|_| ())
        };
        if produced.is_err() {
            failures += 1;
        }
    }
    let elapsed = started.elapsed();
    let mean_us = elapsed.as_secs_f64() * 1e6 / args.count as f64;
    let kind = if args.refine { "refined" } else { "initial" };
    println!(
        "generated {} {kind} s-boxes in {:.3} s ({:.1} µs mean, {failures} failures)",
        args.count,
        elapsed.as_secs_f64(),
        mean_us
    );
    Ok(())
}

/// Deterministic distinct keys for the benchmark: two low-discrepancy Weyl
/// sequences spread x0 and a over their domains.
fn bench_key(i: usize, mode: MapMode) -> MapParams {
    const PHI_CONJ: f64 = 0.618_033_988_749_894_9;
    const SQRT2_FRAC: f64 = 0.414_213_562_373_095_1;
    let x0 = 0.05 + 0.9 * ((0.137 + i as f64 * PHI_CONJ).fract());
    let a = 0.1 + 1.8 * ((0.555 + i as f64 * SQRT2_FRAC).fract());
    MapParams::new(x0, a, 1e6, mode).expect("bench keys are in range by construction")
}

fn run_fixtures(args: FixturesArgs) -> Result<(), Failure> {
    let fixtures = reference::fixtures();
    let fixture = fixtures
        .iter()
        .find(|f| f.name == args.name)
        .ok_or_else(|| {
            let names: Vec<&str> = fixtures.iter().map(|f| f.name).collect();
            Failure::new(
                EXIT_USAGE,
                format!("unknown fixture {:?}; available: {names:?}", args.name),
            )
        })?;
    if args.audit {
        let outcome = reference::audit_fixture(fixture);
        let mut json = outcome.to_json();
        json.push('\n');
        return emit(args.out.as_ref(), json.as_bytes());
    }
    emit(
        args.out.as_ref(),
        &formats::write_table(&fixture.table, args.format.into()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn mode_aliases_parse() {
        let cli = Cli::try_parse_from([
            "sbox-forge", "generate", "--x0", "0.5", "--a", "1.0", "--b", "1000", "--mode", "alg1",
        ])
        .unwrap();
        match cli.command {
            Command::Generate(args) => assert_eq!(args.mode, ModeArg::Product),
            _ => panic!("wrong subcommand"),
        }
        let cli = Cli::try_parse_from([
            "sbox-forge", "lyapunov", "--x0", "0.5", "--a", "1.0", "--mode", "eq1",
        ])
        .unwrap();
        match cli.command {
            Command::Lyapunov(args) => assert_eq!(args.mode, ModeArg::Piecewise),
            _ => panic!("wrong subcommand"),
        }
    }

    #[test]
    fn bench_keys_are_valid_and_distinct() {
        let a = bench_key(0, MapMode::Product);
        let b = bench_key(1, MapMode::Product);
        assert_ne!(a.x0(), b.x0());
        for i in 0..1000 {
            let k = bench_key(i, MapMode::Product);
            assert!(k.x0() > 0.0 && k.x0() < 1.0);
            assert!(k.a() > 0.0 && k.a() < 2.0);
        }
    }

    #[test]
    fn out_of_range_key_maps_to_usage_exit() {
        let cli = Cli::try_parse_from([
            "sbox-forge", "generate", "--x0", "1.5", "--a", "1.0", "--b", "1000",
        ])
        .unwrap();
        assert_eq!(run(cli), EXIT_USAGE);
    }
}
