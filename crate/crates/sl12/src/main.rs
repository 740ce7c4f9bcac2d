//! Thin command-line front end: `gen`, `verify`, `sweep`.
//!
//! Exit codes: 0 when every conclusion is `generates` (or
//! `excluded_diagnostic` without `--strict`), 1 when any check or
//! verification fails, 2 for usage and budget errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use num_bigint::BigUint;
use sl12::{Conclusion, Error, OmegaMode};

#[derive(Parser)]
#[command(
    name = "sl12",
    version,
    about = "Explicit (2,3)-generators of SL_12(q) with re-verifiable certificates"
)]
struct Cli {
    /// Treat the excluded fields q = 2 and q = 4 as failures (exit 1).
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a certificate for one prime power q = p^m.
    Gen(GenArgs),
    /// Re-verify a stored certificate from its inputs alone.
    Verify {
        /// Path to a certificate JSON file.
        file: PathBuf,
    },
    /// Generate and re-verify across a list of prime powers.
    Sweep(SweepArgs),
}

#[derive(Args)]
#[command(group = ArgGroup::new("field").required(true).args(["q", "p"]))]
struct GenArgs {
    /// Prime power q, split into p and m automatically.
    #[arg(long, conflicts_with_all = ["p", "m"])]
    q: Option<u64>,

    /// Field characteristic (use together with --m).
    #[arg(long, requires = "m")]
    p: Option<u64>,

    /// Extension degree of GF(q) over GF(p) (use together with --p).
    #[arg(long, requires = "p")]
    m: Option<u64>,

    /// Seed a reproducible random search for omega instead of the
    /// deterministic ascending scan.
    #[arg(long, value_name = "SEED")]
    omega_seed: Option<u64>,

    /// Write the certificate to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated prime powers, e.g. --q 3,5,7,8,9.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    q: Vec<u64>,

    /// Emit the rows as a JSON array.
    #[arg(long, conflicts_with = "table")]
    json: bool,

    /// Emit a fixed-width text table (the default).
    #[arg(long)]
    table: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Gen(args) => run_gen(args, cli.strict),
        Command::Verify { file } => run_verify(&file, cli.strict),
        Command::Sweep(args) => run_sweep(&args, cli.strict),
    };
    ExitCode::from(code)
}

/// Usage and budget problems exit 2; broken invariants exit 1.
fn error_exit(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_) | Error::FactorBudget { .. } => 2,
        Error::Consistency { .. } | Error::Malformed(_) => 1,
    }
}

fn conclusion_exit(c: &Conclusion, strict: bool) -> u8 {
    match c {
        Conclusion::Generates => 0,
        Conclusion::ExcludedDiagnostic => u8::from(strict),
        Conclusion::NotEstablished { .. } => 1,
    }
}

fn run_gen(args: GenArgs, strict: bool) -> u8 {
    let (p, m) = match args.q {
        Some(q) => match sl12::split_prime_power(&BigUint::from(q)) {
            Ok((p, m)) => (p, m as usize),
            Err(e) => {
                eprintln!("error: {e}");
                return error_exit(&e);
            }
        },
        // clap guarantees both present when --q is absent
        None => (args.p.unwrap(), args.m.unwrap() as usize),
    };
    let mode = match args.omega_seed {
        Some(seed) => OmegaMode::Seeded(seed),
        None => OmegaMode::Deterministic,
    };

    let cert = match sl12::generate(p, m, &mode) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return error_exit(&e);
        }
    };
    let text = match sl12::canonical_json(&cert) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return error_exit(&e);
        }
    };

    if let Some(path) = &args.out {
        if let Err(e) = fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 2;
        }
        eprintln!("wrote {}", path.display());
    } else {
        print!("{text}");
    }

    let verdict = &cert.reports.verdict;
    let passed = verdict.checks.values().filter(|&&ok| ok).count();
    eprintln!(
        "q = {} (p = {}, m = {}): Q = {}, conclusion = {}, checks {passed}/{}",
        cert.q,
        cert.p,
        cert.m,
        cert.q_order,
        conclusion_word(&verdict.conclusion),
        verdict.checks.len(),
    );
    conclusion_exit(&verdict.conclusion, strict)
}

fn conclusion_word(c: &Conclusion) -> &'static str {
    match c {
        Conclusion::Generates => "generates",
        Conclusion::NotEstablished { .. } => "not_established",
        Conclusion::ExcludedDiagnostic => "excluded_diagnostic",
    }
}

fn run_verify(file: &PathBuf, strict: bool) -> u8 {
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return 2;
        }
    };
    let (cert, report) = match sl12::verify_json(&text) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return error_exit(&e);
        }
    };
    if report.passed() {
        println!(
            "OK: certificate for q = {} re-verified ({})",
            cert.q,
            conclusion_word(&cert.reports.verdict.conclusion)
        );
        conclusion_exit(&cert.reports.verdict.conclusion, strict)
    } else {
        for f in &report.failures {
            println!("FAIL {}: {}", f.check, f.detail);
        }
        println!(
            "verification failed: {} check(s) did not hold",
            report.failures.len()
        );
        1
    }
}

fn run_sweep(args: &SweepArgs, strict: bool) -> u8 {
    let rows = sl12::sweep(&args.q);

    if args.json {
        match serde_json::to_string_pretty(&rows) {
            Ok(s) => println!("{s}"),
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        }
    } else {
        println!(
            "{:>6} {:>6} {:>3} {:>22} {:>6} {:<20} {:>6} {:>8}  error",
            "q", "p", "m", "Q", "halved", "conclusion", "verify", "ms"
        );
        for r in &rows {
            println!(
                "{:>6} {:>6} {:>3} {:>22} {:>6} {:<20} {:>6} {:>8}  {}",
                r.q,
                opt(&r.p),
                opt(&r.m),
                opt(&r.q_order),
                opt(&r.halved),
                r.conclusion.as_deref().unwrap_or("-"),
                opt(&r.verify_passed),
                r.wall_ms,
                r.error.as_deref().unwrap_or(""),
            );
        }
    }

    let mut code = 0u8;
    for r in &rows {
        if r.error.is_some() {
            return 2;
        }
        let ok = r.verify_passed == Some(true)
            && match r.conclusion.as_deref() {
                Some("generates") => true,
                Some("excluded_diagnostic") => !strict,
                _ => false,
            };
        if !ok {
            code = 1;
        }
    }
    code
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    match v {
        Some(x) => x.to_string(),
        None => "-".to_string(),
    }
}
