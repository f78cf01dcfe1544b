//! `minpair`: analyse scenario files, run the curated suite, or run the
//! randomized invariant harness.
//!
//! Exit codes: 0 when every verdict is as expected, 1 on a theorem-level
//! failure, 2 on input or certification errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use minpair_core::harness::{self, HarnessConfig};
use minpair_core::report::analyze;
use minpair_core::scenario::Scenario;
use minpair_core::suite::{bundle_dir, run_suite};

#[derive(Parser)]
#[command(name = "minpair", version, about = "Exact invariants of minimal pairs and their valuations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse one scenario file and emit its report as JSON.
    Analyze {
        path: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the bundled scenarios (or $MINPAIR_SCENARIO_DIR) and print the verdict table.
    Suite {
        /// Only show verdicts whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
        /// Also write all reports as a JSON array.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate random certified scenarios and check every invariant on them.
    Proptest {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Also write the summary as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_out(path: &Path, text: &str) -> Result<(), ExitCode> {
    std::fs::write(path, text).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn cmd_analyze(path: &Path, out: Option<&Path>) -> Result<ExitCode, ExitCode> {
    let report = Scenario::load(path).and_then(|sc| analyze(&sc)).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })?;
    let json = report.to_json();
    match out {
        Some(p) => write_out(p, &json)?,
        // a closed pipe (e.g. `| head`) is not an error worth reporting
        None => drop(writeln!(std::io::stdout(), "{json}")),
    }
    for m in &report.expectation_mismatches {
        eprintln!("expectation mismatch: {m}");
    }
    for v in report.verdicts.iter().filter(|v| !v.as_expected()) {
        eprintln!("{} {}: {}", v.name, v.status, v.message);
    }
    Ok(if report.as_expected() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_suite(filter: Option<&str>, out: Option<&Path>) -> Result<ExitCode, ExitCode> {
    let dir = bundle_dir();
    let summary = run_suite(&dir, filter).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })?;
    print!("{}", summary.table());
    let unexpected = summary.unexpected();
    println!(
        "{} scenarios, {} verdicts, {} unexpected",
        summary.entries.len(),
        summary.rows().len(),
        unexpected.len()
    );
    for u in &unexpected {
        println!("unexpected: {u}");
    }
    if let Some(p) = out {
        let reports: Vec<_> = summary.entries.iter().filter_map(|e| e.outcome.as_ref().ok()).collect();
        write_out(p, &serde_json::to_string_pretty(&reports).expect("reports serialize"))?;
    }
    Ok(ExitCode::from(summary.exit_code() as u8))
}

fn cmd_proptest(seed: u64, count: usize, out: Option<&Path>) -> Result<ExitCode, ExitCode> {
    let summary = harness::run(HarnessConfig::new(seed, count));
    print!("{}", summary.render());
    if let Some(p) = out {
        write_out(p, &serde_json::to_string_pretty(&summary).expect("summary serializes"))?;
    }
    Ok(if summary.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { path, out } => cmd_analyze(path, out.as_deref()),
        Command::Suite { filter, out } => cmd_suite(filter.as_deref(), out.as_deref()),
        Command::Proptest { seed, count, out } => cmd_proptest(*seed, *count, out.as_deref()),
    };
    result.unwrap_or_else(|code| code)
}
