//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;

use pgcl::acceptance::{run_all, AcceptanceConfig, Status};

fn main() -> ExitCode {
    let cfg = AcceptanceConfig::default();
    let (results, _) = match run_all(&cfg) {
        Ok(r) => r,
        Err(e) => {
            println!("acceptance: could not build the corpus: {e}");
            return ExitCode::FAILURE;
        }
    };
    println!("\nrunning {} acceptance criteria", results.len());
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| r.status == Status::Fail).count();
    let skipped = results.iter().filter(|r| r.status == Status::Skipped).count();
    println!("\nacceptance result: {} passed; {failed} failed; {skipped} skipped\n", results.len() - failed - skipped);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
