//! Command-line front end. Results go to stdout as JSON, diagnostics to stderr.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::{IntPolynomial, NumberField};
use crate::bounds::{system_box_at, Precision};
use crate::error::{Error, Result};
use crate::model::{parse_system, system_to_json};
use crate::reductions::{
    encode_3partition, encode_partition, partition_sidecar, three_partition_sidecar, PartitionInstance,
    Sidecar, ThreePartitionInstance,
};
use crate::solve::{decide_with, Limits, Strategy};
use crate::structure::enumerate_semilinear;
use crate::verify::{parse_solution, report_to_json, verify_report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Environment variable overriding the default candidate budget.
pub const BUDGET_ENV: &str = "EXPODIO_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "expodio", version, about = "Solve systems of algebraic equations with integer exponents")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
struct SearchArgs {
    /// Maximum number of search nodes (default 1e8, or $EXPODIO_BUDGET).
    #[arg(long)]
    budget: Option<u64>,
    /// Wall-clock limit in seconds.
    #[arg(long, default_value_t = 60.0)]
    time_limit: f64,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Replace the certified search box; unsound below the certified value.
    #[arg(long)]
    box_limit: Option<BigInt>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Clustered)]
    strategy: StrategyArg,
    /// Bits of precision for logarithm enclosures.
    #[arg(long, default_value_t = 53)]
    precision: u32,
    /// Largest accepted number of variables.
    #[arg(long, default_value_t = 12)]
    max_vars: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StrategyArg {
    Clustered,
    Scan,
    ScanPruned,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide solvability and print a witness.
    Solve {
        /// Instance file, or - for stdin.
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check a candidate solution.
    Verify { input: PathBuf, solution: PathBuf },
    /// Print the certified search bounds.
    Bounds {
        input: PathBuf,
        #[arg(long, default_value_t = 53)]
        precision: u32,
    },
    /// Print the full solution set as a union of cosets.
    Enumerate {
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Encode a PARTITION instance over an n-th root of unity.
    GenPartition {
        /// Comma-separated positive integers.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<u64>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Instance output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Sidecar output path; defaults to <out>.sidecar.json.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Encode a 3-PARTITION instance over a non-root-of-unity base.
    #[command(name = "gen-3partition")]
    Gen3partition {
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<u64>,
        /// Minimal polynomial coefficients of the base, low to high.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-2,1")]
        base: Vec<BigInt>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Report whether a base is a root of unity.
    Rou {
        /// Minimal polynomial coefficients, low to high, comma-separated.
        #[arg(allow_hyphen_values = true, value_delimiter = ',', required = true)]
        coeffs: Vec<BigInt>,
    },
}

/// Runs the command line `argv` (including the program name) and returns
/// the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(value) => {
            let mut out = std::io::stdout().lock();
            let text = serde_json::to_string_pretty(&value).expect("JSON values always serialize");
            if writeln!(out, "{text}").is_err() {
                return EXIT_INTERNAL;
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("expodio: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimitExceeded(_) | Error::TooManyVariables { .. } => EXIT_RESOURCE,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
    }
}

fn write_file(path: &Path, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    std::fs::write(path, text + "\n").map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
}

fn precision(bits: u32) -> Result<Precision> {
    if bits < Precision::DEFAULT.bits() {
        return Err(Error::Parse(format!("precision must be at least {} bits", Precision::DEFAULT.bits())));
    }
    Ok(Precision::new(bits))
}

fn limits(args: &SearchArgs) -> Result<Limits> {
    let mut limits = Limits::default();
    let env_budget = match std::env::var(BUDGET_ENV) {
        Ok(v) => Some(v.trim().parse::<u64>().map_err(|_| Error::Parse(format!("{BUDGET_ENV}={v} is not a count")))?),
        Err(_) => None,
    };
    if let Some(b) = args.budget.or(env_budget) {
        limits.max_candidates = b;
    }
    if !(args.time_limit.is_finite() && args.time_limit > 0.0) {
        return Err(Error::Parse("time limit must be positive".into()));
    }
    limits.time_limit = Duration::from_secs_f64(args.time_limit);
    limits.jobs = args.jobs.max(1);
    limits.max_vars = args.max_vars;
    limits.precision = precision(args.precision)?;
    limits.strategy = match args.strategy {
        StrategyArg::Clustered => Strategy::Clustered,
        StrategyArg::Scan => Strategy::BoxScan { prune: false },
        StrategyArg::ScanPruned => Strategy::BoxScan { prune: true },
    };
    limits.box_override = args.box_limit.clone();
    Ok(limits)
}

fn warn_box_override(system: &crate::model::ExpSystem, limits: &Limits) -> Result<()> {
    if let Some(b) = &limits.box_override {
        let hom = system.homogenize();
        let report = system_box_at(&hom.inner().clear_denominators(), limits.precision)?;
        if *b < report.box_limit {
            eprintln!(
                "expodio: warning: box limit {b} is below the certified bound {}; unsat answers are not certified",
                report.box_limit
            );
        }
    }
    Ok(())
}

fn emit_generated(instance: Value, sidecar: &Sidecar, out: Option<PathBuf>, sidecar_path: Option<PathBuf>) -> Result<Value> {
    match out {
        Some(out) => {
            write_file(&out, &instance)?;
            let side = sidecar_path.unwrap_or_else(|| {
                let mut name = out.clone().into_os_string();
                name.push(".sidecar.json");
                PathBuf::from(name)
            });
            write_file(&side, &sidecar.to_json())?;
            Ok(json!({ "instance": out.display().to_string(), "sidecar": side.display().to_string() }))
        }
        None => {
            if let Some(side) = sidecar_path {
                write_file(&side, &sidecar.to_json())?;
            }
            Ok(instance)
        }
    }
}

fn execute(command: Command) -> Result<Value> {
    match command {
        Command::Solve { input, search } => {
            let system = parse_system(&read_input(&input)?)?;
            let limits = limits(&search)?;
            warn_box_override(&system, &limits)?;
            let result = decide_with(&system, &limits)?;
            eprintln!(
                "expodio: {} after {} candidates in {:.3}s",
                result.status.as_str(),
                result.stats.candidates_tested,
                result.stats.elapsed.as_secs_f64()
            );
            Ok(result.to_json())
        }
        Command::Verify { input, solution } => {
            let system = parse_system(&read_input(&input)?)?;
            let x = parse_solution(&read_input(&solution)?)?;
            Ok(report_to_json(&verify_report(&system, &x)?))
        }
        Command::Bounds { input, precision: bits } => {
            let system = parse_system(&read_input(&input)?)?;
            let hom = system.homogenize();
            let report = system_box_at(&hom.inner().clear_denominators(), precision(bits)?)?;
            Ok(report.to_json())
        }
        Command::Enumerate { input, search } => {
            let system = parse_system(&read_input(&input)?)?;
            let limits = limits(&search)?;
            warn_box_override(&system, &limits)?;
            Ok(enumerate_semilinear(&system, &limits)?.to_json())
        }
        Command::GenPartition { values, n, out, sidecar } => {
            let inst = PartitionInstance::new(values)?;
            let system = encode_partition(&inst, n)?;
            emit_generated(system_to_json(&system), &partition_sidecar(&inst), out, sidecar)
        }
        Command::Gen3partition { values, base, out, sidecar } => {
            let inst = ThreePartitionInstance::new(values)?;
            let field = NumberField::new(IntPolynomial::new(base), 0)?;
            let enc = encode_3partition(&inst, &field)?;
            emit_generated(system_to_json(&enc.system), &three_partition_sidecar(&enc), out, sidecar)
        }
        Command::Rou { coeffs } => {
            let field = NumberField::new(IntPolynomial::new(coeffs), 0)?;
            let order = field.root_of_unity_order();
            Ok(json!({ "root_of_unity": order.is_some(), "order": order }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        std::iter::once("expodio".to_string()).chain(s.split_whitespace().map(String::from)).collect()
    }

    #[test]
    fn parses_flags() {
        let cli = Cli::try_parse_from(args("solve x.json --budget 10 --jobs 3 --strategy scan-pruned --box-limit 7"))
            .unwrap();
        let Command::Solve { search, .. } = cli.command else { panic!() };
        let l = limits(&search).unwrap();
        assert_eq!(l.max_candidates, 10);
        assert_eq!(l.jobs, 3);
        assert_eq!(l.strategy, Strategy::BoxScan { prune: true });
        assert_eq!(l.box_override, Some(BigInt::from(7)));
    }

    #[test]
    fn negative_coefficients() {
        let cli = Cli::try_parse_from(args("rou -1,0,1")).unwrap();
        let Command::Rou { coeffs } = cli.command else { panic!() };
        assert_eq!(coeffs, vec![BigInt::from(-1), BigInt::from(0), BigInt::from(1)]);
        let cli = Cli::try_parse_from(args("gen-3partition --values 5,5,6 --base -3,1")).unwrap();
        assert!(matches!(cli.command, Command::Gen3partition { .. }));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(args("frobnicate")), EXIT_INPUT);
        assert_eq!(run(args("solve /nonexistent/file.json")), EXIT_INPUT);
        assert_eq!(exit_code(&Error::ResourceLimitExceeded("x".into())), EXIT_RESOURCE);
        assert_eq!(exit_code(&Error::Internal("x".into())), EXIT_INTERNAL);
    }
}
