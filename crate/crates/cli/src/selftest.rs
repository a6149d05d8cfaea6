use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use pgcl_core::group::SCHEMA;

use crate::acceptance::{run_all, AcceptanceConfig, CheckResult, Status, CORPUS_MAX_ORDER, DEFAULT_SEED};
use crate::error::CliError;
use crate::sweep::to_csv;

/// Golden file shipped with the crate.
pub const DEFAULT_GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/golden/selftest.json");

#[derive(Debug, Clone)]
pub struct SelftestOptions {
    pub seed: u64,
    pub homology_bound: usize,
    pub workers: usize,
    pub golden: PathBuf,
    pub write_golden: bool,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            seed: DEFAULT_SEED,
            homology_bound: pgcl_core::multiplier::MAX_HOMOLOGY_BOUND,
            workers: 1,
            golden: PathBuf::from(DEFAULT_GOLDEN),
            write_golden: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Golden {
    pub schema: String,
    pub sweep_csv: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GoldenStatus {
    Matched,
    Written,
    /// The corpus needs a larger homology bound than was configured.
    NotCompared,
}

#[derive(Debug)]
pub struct SelftestOutcome {
    pub results: Vec<CheckResult>,
    pub golden: Result<GoldenStatus, CliError>,
    pub t7_mismatches: usize,
}

impl SelftestOutcome {
    /// Worst failure first: golden mismatch, then prediction mismatches, then
    /// any failed check.
    pub fn into_result(self) -> Result<(), CliError> {
        self.golden?;
        if self.t7_mismatches > 0 {
            return Err(CliError::T7Mismatch(self.t7_mismatches));
        }
        match self.results.iter().filter(|r| r.status == Status::Fail).count() {
            0 => Ok(()),
            n => Err(CliError::ChecksFailed(n)),
        }
    }
}

fn first_difference(want: &str, got: &str) -> String {
    let line = want.lines().zip(got.lines()).position(|(a, b)| a != b);
    match line {
        Some(i) => format!(
            "line {}: expected {:?}, got {:?}",
            i + 1,
            want.lines().nth(i).unwrap_or(""),
            got.lines().nth(i).unwrap_or("")
        ),
        None => format!("{} expected lines, {} produced", want.lines().count(), got.lines().count()),
    }
}

pub fn compare_golden(path: &Path, sweep_csv: &str) -> Result<GoldenStatus, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::GoldenMismatch(format!("{}: {e}", path.display())))?;
    let golden: Golden = serde_json::from_str(&text)
        .map_err(|e| CliError::GoldenMismatch(format!("{} is corrupt: {e}", path.display())))?;
    if golden.schema != SCHEMA {
        return Err(CliError::GoldenMismatch(format!("schema {} != {SCHEMA}", golden.schema)));
    }
    if golden.sweep_csv != sweep_csv {
        return Err(CliError::GoldenMismatch(first_difference(&golden.sweep_csv, sweep_csv)));
    }
    Ok(GoldenStatus::Matched)
}

pub fn write_golden(path: &Path, sweep_csv: &str) -> Result<(), CliError> {
    let golden = Golden { schema: SCHEMA.to_string(), sweep_csv: sweep_csv.to_string() };
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, serde_json::to_string_pretty(&golden)? + "\n")?;
    Ok(())
}

pub fn run_selftest(opts: &SelftestOptions) -> Result<SelftestOutcome, CliError> {
    let cfg = AcceptanceConfig { homology_bound: opts.homology_bound, seed: opts.seed, workers: opts.workers };
    let (results, corpus) = run_all(&cfg)?;
    let csv = to_csv(&corpus.outcome)?;
    let golden = if opts.write_golden {
        write_golden(&opts.golden, &csv).map(|_| GoldenStatus::Written)
    } else if opts.homology_bound < CORPUS_MAX_ORDER {
        Ok(GoldenStatus::NotCompared)
    } else {
        compare_golden(&opts.golden, &csv)
    };
    Ok(SelftestOutcome { results, golden, t7_mismatches: corpus.outcome.summary.t7_mismatches })
}

fn truncate(s: &str, width: usize) -> String {
    if s.chars().count() <= width {
        s.to_string()
    } else {
        let mut t: String = s.chars().take(width - 3).collect();
        t.push_str("...");
        t
    }
}

/// Fixed-width table followed by the notes of every failed check.
pub fn format_table(results: &[CheckResult]) -> String {
    let mut out = format!("{:<36} {:<48} {:<40} {}\n", "check", "expected", "got", "status");
    for r in results {
        out.push_str(&format!(
            "{:<36} {:<48} {:<40} {}\n",
            truncate(&format!("{}. {}", r.id, r.name), 36),
            truncate(&r.expected, 48),
            truncate(&r.got, 40),
            r.status
        ));
    }
    for r in results.iter().filter(|r| !r.notes.is_empty()) {
        for n in &r.notes {
            out.push_str(&format!("  [{}] {n}\n", r.id));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_round_trip_and_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.json");
        write_golden(&path, "a\nb\n").unwrap();
        assert_eq!(compare_golden(&path, "a\nb\n").unwrap(), GoldenStatus::Matched);
        let err = compare_golden(&path, "a\nc\n").unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn corrupt_golden_is_a_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.json");
        fs::write(&path, "{ not json").unwrap();
        assert!(matches!(compare_golden(&path, ""), Err(CliError::GoldenMismatch(_))));
        assert!(matches!(compare_golden(&dir.path().join("missing.json"), ""), Err(CliError::GoldenMismatch(_))));
    }

    #[test]
    fn exit_precedence() {
        let failed = CheckResult {
            id: 1,
            name: "x",
            expected: String::new(),
            got: String::new(),
            status: Status::Fail,
            notes: vec![],
            elapsed: Default::default(),
        };
        let outcome = |golden, t7| SelftestOutcome { results: vec![failed.clone()], golden, t7_mismatches: t7 };
        assert_eq!(outcome(Err(CliError::GoldenMismatch("g".into())), 1).into_result().unwrap_err().exit_code(), 3);
        assert_eq!(outcome(Ok(GoldenStatus::Matched), 1).into_result().unwrap_err().exit_code(), 2);
        assert_eq!(outcome(Ok(GoldenStatus::Matched), 0).into_result().unwrap_err().exit_code(), 1);
    }

    #[test]
    fn table_lists_every_check() {
        let r = CheckResult {
            id: 8,
            name: "linear algebra oracle",
            expected: "e".into(),
            got: "g".into(),
            status: Status::Pass,
            notes: vec![],
            elapsed: Default::default(),
        };
        let t = format_table(&[r]);
        assert_eq!(t.lines().count(), 2);
        assert!(t.lines().nth(1).unwrap().ends_with("PASS"));
    }
}
