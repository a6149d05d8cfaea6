use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pgcl::error::CliError;
use pgcl::manifest::{Constructor, SweepManifest};
use pgcl::parse::parse_expr;
use pgcl::report::{report_expr, ReportOptions};
use pgcl::selftest::{format_table, run_selftest, GoldenStatus, SelftestOptions, DEFAULT_GOLDEN};
use pgcl::sweep::{run_sweep, write_artifacts};
use pgcl_core::group::MAX_ORDER;
use pgcl_core::multiplier::{MultiplierOracle, DEFAULT_HOMOLOGY_BOUND, MAX_HOMOLOGY_BOUND};

#[derive(Parser)]
#[command(name = "pgcl", version, about = "Capability of p-groups with derived subgroup of order p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, multiplier, epicenter and classification of one group.
    Report {
        expr: String,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, env = "PGCL_HOMOLOGY_BOUND", default_value_t = DEFAULT_HOMOLOGY_BOUND)]
        homology_bound: usize,
        /// Test every cyclic normal subgroup, not only central ones.
        #[arg(long)]
        strict: bool,
        /// Include wall-clock timings.
        #[arg(long)]
        timing: bool,
    },
    /// Classify every in-class group a manifest describes.
    Sweep {
        #[arg(long = "p", value_delimiter = ',', default_values_t = [2u64, 3])]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 64)]
        max_order: usize,
        #[arg(long, env = "PGCL_HOMOLOGY_BOUND", default_value_t = DEFAULT_HOMOLOGY_BOUND)]
        homology_bound: usize,
        #[arg(long, default_value = "sweep-out")]
        out: PathBuf,
        #[arg(long, env = "PGCL_WORKERS", default_value_t = 1)]
        workers: usize,
        /// Comma-separated subset of extraspecial, extraspecial-times-elem-ab, central-cyclic.
        #[arg(long, value_delimiter = ',')]
        constructors: Option<Vec<String>>,
    },
    /// Run the acceptance checks and compare the sweep against the golden file.
    Selftest {
        #[arg(long, default_value_t = pgcl::acceptance::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value = DEFAULT_GOLDEN)]
        golden: PathBuf,
        #[arg(long)]
        write_golden: bool,
        #[arg(long, env = "PGCL_HOMOLOGY_BOUND", default_value_t = MAX_HOMOLOGY_BOUND)]
        homology_bound: usize,
        #[arg(long, env = "PGCL_WORKERS", default_value_t = 1)]
        workers: usize,
    },
    /// Build a group and write its multiplication table as JSON.
    Build {
        expr: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Report { expr, json, homology_bound, strict, timing } => {
            let report = report_expr(&expr, ReportOptions { homology_bound, strict, timing })?;
            let text = serde_json::to_string_pretty(&report)? + "\n";
            match json {
                Some(path) => fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Sweep { primes, max_order, homology_bound, out, workers, constructors } => {
            let constructors = match constructors {
                None => Constructor::ALL.to_vec(),
                Some(names) => names
                    .iter()
                    .map(|n| {
                        Constructor::from_name(n).ok_or_else(|| CliError::Manifest(format!("unknown constructor {n}")))
                    })
                    .collect::<Result<_, _>>()?,
            };
            let manifest =
                SweepManifest { primes, max_order, homology_bound, constructors, out_dir: Some(out.clone()), workers };
            manifest.validate().map_err(CliError::Manifest)?;
            let oracle = MultiplierOracle::new(homology_bound)?;
            let outcome = run_sweep(&manifest, &oracle)?;
            write_artifacts(&outcome, &out)?;
            let s = &outcome.summary;
            println!(
                "{} groups, {} with oracle, {} prediction mismatches, {} failures, {} tagged; wrote {}",
                s.groups,
                s.with_oracle,
                s.t7_mismatches,
                s.failures,
                s.tagged,
                out.display()
            );
            if s.t7_mismatches > 0 {
                return Err(CliError::T7Mismatch(s.t7_mismatches));
            }
            Ok(())
        }
        Command::Selftest { seed, golden, write_golden, homology_bound, workers } => {
            let outcome =
                run_selftest(&SelftestOptions { seed, homology_bound, workers, golden: golden.clone(), write_golden })?;
            print!("{}", format_table(&outcome.results));
            match &outcome.golden {
                Ok(GoldenStatus::Matched) => println!("golden {}: matched", golden.display()),
                Ok(GoldenStatus::Written) => println!("golden {}: written", golden.display()),
                Ok(GoldenStatus::NotCompared) => println!("golden: not compared (homology bound {homology_bound})"),
                Err(e) => println!("golden {}: {e}", golden.display()),
            }
            outcome.into_result()
        }
        Command::Build { expr, out } => {
            let g = parse_expr(&expr)?.build(MAX_ORDER)?;
            fs::write(&out, g.to_json()? + "\n")?;
            println!("{} (order {}) -> {}", g.construction(), g.order(), out.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
