use serde::Serialize;

use pgcl_core::capability::{is_capable_with, CapabilityOptions, CapabilityReport};
use pgcl_core::classifier::{in_class, verify, ClassificationReport};
use pgcl_core::group::{
    abelian_invariants, center, derived_subgroup, subgroup_as_group, AbelianInvariants, Group, MAX_ORDER, SCHEMA,
};
use pgcl_core::multiplier::{abelianization, MultiplierOracle, MultiplierResult};

use crate::error::CliError;
use crate::parse::parse_expr;

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    pub homology_bound: usize,
    pub strict: bool,
    /// Keep wall-clock timings in the output (breaks byte-for-byte determinism).
    pub timing: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { homology_bound: pgcl_core::multiplier::DEFAULT_HOMOLOGY_BOUND, strict: false, timing: false }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Invariants {
    pub center: AbelianInvariants,
    pub abelianization: AbelianInvariants,
    pub derived_order: usize,
    pub exponent: usize,
    pub abelian: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FullReport {
    pub schema: String,
    pub expr: String,
    pub order: usize,
    pub in_class: bool,
    pub invariants: Invariants,
    pub multiplier: Option<MultiplierResult>,
    pub capability: Option<CapabilityReport>,
    pub classification: Option<ClassificationReport>,
    pub notes: Vec<String>,
}

pub fn report_group(g: &Group, opts: ReportOptions) -> Result<FullReport, CliError> {
    let oracle = MultiplierOracle::new(opts.homology_bound)?;
    let invariants = Invariants {
        center: abelian_invariants(&subgroup_as_group(g, &center(g))?)?,
        abelianization: abelianization(g)?,
        derived_order: derived_subgroup(g).order(),
        exponent: g.exponent(),
        abelian: g.is_abelian(),
    };
    let mut notes = Vec::new();
    let (multiplier, capability) = if oracle.within_bound(g) {
        let mut m = oracle.multiplier(g)?;
        if !opts.timing {
            m.elapsed_ms = None;
        }
        let cap = is_capable_with(g, &oracle, CapabilityOptions { strict: opts.strict })?;
        (Some(m), Some(cap))
    } else {
        notes.push(format!("order {} is above the homology bound {}", g.order(), opts.homology_bound));
        (None, None)
    };
    let class = in_class(g);
    let classification = if class { Some(verify(g, &oracle)?) } else { None };
    Ok(FullReport {
        schema: SCHEMA.to_string(),
        expr: g.construction().to_string(),
        order: g.order(),
        in_class: class,
        invariants,
        multiplier,
        capability,
        classification,
        notes,
    })
}

pub fn report_expr(text: &str, opts: ReportOptions) -> Result<FullReport, CliError> {
    let g = parse_expr(text)?.build(MAX_ORDER)?;
    report_group(&g, opts)
}
