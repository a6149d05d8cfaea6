use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use pgcl_core::classifier::{in_class, verify, ClassificationReport};
use pgcl_core::group::{GroupExpr, Sign, MAX_ORDER, SCHEMA};
use pgcl_core::multiplier::MultiplierOracle;

use crate::error::CliError;
use crate::manifest::{Constructor, SweepManifest};

/// Extraspecial factor as it is written in sweep expressions.
fn extraspecial_expr(p: usize, m: u32, sign: Sign) -> GroupExpr {
    match (p, m, sign) {
        (2, 1, Sign::Plus) => GroupExpr::D8,
        (2, 1, Sign::Minus) => GroupExpr::Q8,
        _ => GroupExpr::Es(p, m, sign),
    }
}

fn elem_ab_expr(p: usize, k: u32) -> GroupExpr {
    if k == 1 {
        GroupExpr::Cyc(p)
    } else {
        GroupExpr::ElemAb(p, k)
    }
}

/// Every expression the manifest asks for, in a fixed order.
pub fn enumerate(manifest: &SweepManifest) -> Vec<GroupExpr> {
    let mut constructors = manifest.constructors.clone();
    constructors.sort();
    constructors.dedup();
    let max = manifest.max_order as u128;
    let mut out = Vec::new();
    for &p in &manifest.primes {
        let p = p as usize;
        for &c in &constructors {
            let mut m = 1;
            while (p as u128).pow(2 * m + 1) <= max {
                let h_order = (p as u128).pow(2 * m + 1);
                for sign in [Sign::Plus, Sign::Minus] {
                    let h = extraspecial_expr(p, m, sign);
                    match c {
                        Constructor::Extraspecial => out.push(h),
                        Constructor::ExtraspecialTimesElemAb => {
                            let mut k = 1;
                            while h_order * (p as u128).pow(k) <= max {
                                out.push(GroupExpr::dir(h.clone(), elem_ab_expr(p, k)));
                                k += 1;
                            }
                        }
                        Constructor::CentralCyclic => {
                            let base = GroupExpr::cprod(h.clone(), GroupExpr::Cyc(p * p));
                            let mut k = 0;
                            while h_order * (p as u128).pow(k + 1) <= max {
                                out.push(if k == 0 {
                                    base.clone()
                                } else {
                                    GroupExpr::dir(base.clone(), elem_ab_expr(p, k))
                                });
                                k += 1;
                            }
                        }
                    }
                }
                m += 1;
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum SweepEntry {
    Report(Box<ClassificationReport>),
    Failed { expr: String, error: String },
}

impl SweepEntry {
    pub fn expr(&self) -> &str {
        match self {
            SweepEntry::Report(r) => &r.expr,
            SweepEntry::Failed { expr, .. } => expr,
        }
    }

    pub fn report(&self) -> Option<&ClassificationReport> {
        match self {
            SweepEntry::Report(r) => Some(r),
            SweepEntry::Failed { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub groups: usize,
    pub with_oracle: usize,
    pub t7_mismatches: usize,
    pub failures: usize,
    pub tagged: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepOutcome {
    pub schema: String,
    pub manifest: SweepManifest,
    pub summary: SweepSummary,
    pub entries: Vec<SweepEntry>,
}

fn run_one(expr: &GroupExpr, oracle: &MultiplierOracle) -> SweepEntry {
    let result = expr.build(MAX_ORDER).and_then(|g| {
        if !in_class(&g) {
            return Err(pgcl_core::Error::PreconditionViolated("outside the class".into()));
        }
        verify(&g, oracle)
    });
    match result {
        Ok(r) => SweepEntry::Report(Box::new(r)),
        Err(e) => SweepEntry::Failed { expr: expr.to_string(), error: e.to_string() },
    }
}

/// Runs the classifier on every enumerated group with `manifest.workers`
/// threads. Results keep enumeration order.
pub fn run_sweep(manifest: &SweepManifest, oracle: &MultiplierOracle) -> Result<SweepOutcome, CliError> {
    manifest.validate().map_err(CliError::Manifest)?;
    let exprs = enumerate(manifest);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(manifest.workers)
        .build()
        .map_err(|e| CliError::Manifest(e.to_string()))?;
    let entries: Vec<SweepEntry> = pool.install(|| exprs.par_iter().map(|e| run_one(e, oracle)).collect());
    let reports = entries.iter().filter_map(SweepEntry::report);
    let summary = SweepSummary {
        groups: entries.len(),
        with_oracle: reports.clone().filter(|r| r.oracle_capable.is_some()).count(),
        t7_mismatches: reports.clone().filter(|r| r.tags().contains(&"t7-mismatch")).count(),
        failures: entries.iter().filter(|e| e.report().is_none()).count(),
        tagged: reports.filter(|r| !r.discrepancies.is_empty()).count(),
    };
    Ok(SweepOutcome { schema: SCHEMA.to_string(), manifest: manifest.clone(), summary, entries })
}

pub const CSV_HEADER: [&str; 9] =
    ["expr", "p", "n", "case", "predicted", "oracle", "|M(G)|", "t8_formula", "discrepancy_tags"];

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

pub fn to_csv(outcome: &SweepOutcome) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for e in &outcome.entries {
        match e {
            SweepEntry::Report(r) => w.write_record([
                r.expr.clone(),
                r.p.to_string(),
                r.n.to_string(),
                r.case.name().to_string(),
                r.predicted_capable.to_string(),
                opt(r.oracle_capable),
                opt(r.multiplier_order),
                opt(r.t8_formula_order),
                r.tags().join(";"),
            ])?,
            SweepEntry::Failed { expr, .. } => w.write_record([expr.as_str(), "", "", "", "", "", "", "", "error"])?,
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn to_json(outcome: &SweepOutcome) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(outcome)? + "\n")
}

/// Writes `sweep.csv` and `sweep.json` into `dir`.
pub fn write_artifacts(outcome: &SweepOutcome, dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("sweep.csv"), to_csv(outcome)?)?;
    fs::write(dir.join("sweep.json"), to_json(outcome)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(m: &SweepManifest) -> Vec<String> {
        enumerate(m).iter().map(|e| e.to_string()).collect()
    }

    #[test]
    fn two_groups_up_to_32() {
        let m = SweepManifest { primes: vec![2], max_order: 32, ..Default::default() };
        let n = names(&m);
        for want in [
            "D8",
            "Q8",
            "ES(2,2,+)",
            "ES(2,2,-)",
            "D8 x Cyc(2)",
            "Q8 x Cyc(2)",
            "D8 . Cyc(4)",
            "D8 . Cyc(4) x Cyc(2)",
            "D8 x ElemAb(2,2)",
        ] {
            assert!(n.contains(&want.to_string()), "{want} missing from {n:?}");
        }
        assert!(n.iter().all(|s| !s.contains("ElemAb(2,3)")));
    }

    #[test]
    fn three_groups_up_to_81() {
        let m = SweepManifest { primes: vec![3], max_order: 81, homology_bound: 81, ..Default::default() };
        let n = names(&m);
        assert_eq!(
            n,
            vec![
                "ES(3,1,+)",
                "ES(3,1,-)",
                "ES(3,1,+) x Cyc(3)",
                "ES(3,1,-) x Cyc(3)",
                "ES(3,1,+) . Cyc(9)",
                "ES(3,1,-) . Cyc(9)"
            ]
        );
    }

    #[test]
    fn empty_constructor_set_gives_header_only() {
        let m = SweepManifest { constructors: vec![], ..Default::default() };
        let oracle = MultiplierOracle::new(m.homology_bound).unwrap();
        let out = run_sweep(&m, &oracle).unwrap();
        assert_eq!(out.summary.groups, 0);
        assert_eq!(to_csv(&out).unwrap(), "expr,p,n,case,predicted,oracle,|M(G)|,t8_formula,discrepancy_tags\n");
    }
}
