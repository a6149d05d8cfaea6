//! The nine acceptance checks. `pgcl selftest` and the `acceptance` test
//! target both run them through [`run_all`].

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use pgcl_core::capability::is_capable;
use pgcl_core::classifier::Case;
use pgcl_core::group::{
    cyclic, direct_product, elementary_abelian, extraspecial, AbelianInvariants, Group, GroupExpr, Sign, MAX_ORDER,
};
use pgcl_core::linalg::{homology_at, smith_normal_form_with, SparseIntMatrix, Strategy};
use pgcl_core::multiplier::{
    bar_boundaries, check_frattini_bound, multiplier_abelian, multiplier_extraspecial_formula, multiplier_ganea,
    schur_multiplier_brute, MultiplierOracle, MAX_HOMOLOGY_BOUND,
};

use crate::error::CliError;
use crate::manifest::SweepManifest;
use crate::sweep::{enumerate, run_sweep, to_csv, to_json, SweepOutcome};

/// Per-run wall-clock limit for the extraspecial multiplier check.
pub const EXTRASPECIAL_RUN_LIMIT: Duration = Duration::from_secs(60);
/// Wall-clock limit for the linear algebra check.
pub const LINALG_LIMIT: Duration = Duration::from_secs(10);
pub const RANDOM_MATRICES: usize = 200;
pub const DEFAULT_SEED: u64 = 0x5eed_2024;
/// Largest order in the sweep corpus.
pub const CORPUS_MAX_ORDER: usize = 81;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub expected: String,
    pub got: String,
    pub status: Status,
    /// Per-instance failures and remarks.
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckResult {
    fn new(id: u8, name: &'static str, expected: impl Into<String>) -> Self {
        CheckResult {
            id,
            name,
            expected: expected.into(),
            got: String::new(),
            status: Status::Pass,
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn fail(&mut self, note: impl Into<String>) {
        self.status = Status::Fail;
        self.notes.push(note.into());
    }

    fn skipped(mut self, needed: usize, bound: usize) -> Self {
        self.status = Status::Skipped;
        self.got = format!("needs homology bound {needed}, configured {bound}");
        self
    }

    /// One-line summary.
    pub fn line(&self) -> String {
        let mut s = format!(
            "[{}] {}. {}: expected {}; got {} ({:.1}s)",
            self.status,
            self.id,
            self.name,
            self.expected,
            self.got,
            self.elapsed.as_secs_f64()
        );
        if !self.notes.is_empty() {
            s.push_str(" | ");
            s.push_str(&self.notes.join("; "));
        }
        s
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AcceptanceConfig {
    pub homology_bound: usize,
    pub seed: u64,
    pub workers: usize,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        AcceptanceConfig { homology_bound: MAX_HOMOLOGY_BOUND, seed: DEFAULT_SEED, workers: 1 }
    }
}

/// The sweep corpus shared by the prediction, formula audit, sequence
/// and Frattini checks.
pub struct Corpus {
    pub manifest: SweepManifest,
    pub exprs: Vec<GroupExpr>,
    pub outcome: SweepOutcome,
    pub oracle: MultiplierOracle,
}

pub fn corpus_manifest(cfg: &AcceptanceConfig) -> SweepManifest {
    SweepManifest {
        primes: vec![2, 3],
        max_order: CORPUS_MAX_ORDER,
        homology_bound: cfg.homology_bound,
        workers: cfg.workers,
        ..Default::default()
    }
}

pub fn build_corpus(cfg: &AcceptanceConfig) -> Result<Corpus, CliError> {
    let manifest = corpus_manifest(cfg);
    let oracle = MultiplierOracle::new(cfg.homology_bound)?;
    let outcome = run_sweep(&manifest, &oracle)?;
    Ok(Corpus { exprs: enumerate(&manifest), manifest, outcome, oracle })
}

fn timed(mut f: impl FnMut() -> CheckResult) -> CheckResult {
    let t = Instant::now();
    let mut r = f();
    r.elapsed = t.elapsed();
    r
}

/// Runs every check in order.
pub fn run_all(cfg: &AcceptanceConfig) -> Result<(Vec<CheckResult>, Corpus), CliError> {
    let corpus = build_corpus(cfg)?;
    let results = vec![
        timed(|| check_extraspecial_multipliers(cfg)),
        timed(|| check_ganea(cfg)),
        timed(|| check_abelian(cfg)),
        timed(|| check_capability_prediction(cfg, &corpus)),
        timed(|| check_t8_formula(cfg, &corpus)),
        timed(|| check_exact_sequences(cfg, &corpus)),
        timed(|| check_frattini(cfg, &corpus)),
        timed(|| check_linear_algebra(cfg)),
        timed(|| check_determinism(cfg, &corpus)),
    ];
    Ok((results, corpus))
}

fn es(p: usize, m: u32, s: Sign) -> Group {
    extraspecial(p, m, s).expect("valid extraspecial parameters")
}

/// 1. Brute-force multipliers of extraspecial groups against the quoted orders.
pub fn check_extraspecial_multipliers(cfg: &AcceptanceConfig) -> CheckResult {
    let mut r = CheckResult::new(
        1,
        "extraspecial multipliers",
        "ES(p,1,+) -> p^2 (p=2,3,5); ES(p,1,-) -> 1 (p=3,5); ES(2,2,+/-) -> 2^5; each <= 60 s",
    );
    if cfg.homology_bound < 125 {
        return r.skipped(125, cfg.homology_bound);
    }
    let cases: [(usize, u32, Sign, u64); 7] = [
        (2, 1, Sign::Plus, 4),
        (3, 1, Sign::Plus, 9),
        (5, 1, Sign::Plus, 25),
        (3, 1, Sign::Minus, 1),
        (5, 1, Sign::Minus, 1),
        (2, 2, Sign::Plus, 32),
        (2, 2, Sign::Minus, 32),
    ];
    let mut got = Vec::new();
    for (p, m, s, want) in cases {
        let name = format!("ES({p},{m},{})", s.symbol());
        let t = Instant::now();
        match schur_multiplier_brute(&es(p, m, s), cfg.homology_bound) {
            Ok(res) => {
                let took = t.elapsed();
                got.push(format!("{name}={}", res.order));
                if res.order != want {
                    r.fail(format!(
                        "{name}: expected |M| = {want}, brute force gives {} ({})",
                        res.order, res.invariants
                    ));
                }
                if took > EXTRASPECIAL_RUN_LIMIT {
                    r.fail(format!("{name}: took {:.1}s", took.as_secs_f64()));
                }
            }
            Err(e) => r.fail(format!("{name}: {e}")),
        }
    }
    r.got = got.join(" ");
    r
}

#[derive(Clone)]
enum Factor {
    Ab(Vec<u64>),
    Es(usize, u32, Sign),
}

impl Factor {
    fn group(&self) -> Group {
        match self {
            Factor::Ab(d) => abelian_group(d),
            Factor::Es(p, m, s) => es(*p, *m, *s),
        }
    }

    /// Multiplier from the closed formulas, independent of the homology code.
    fn formula(&self) -> AbelianInvariants {
        match self {
            Factor::Ab(d) => multiplier_abelian(&invariants(d)).invariants,
            Factor::Es(p, m, s) => multiplier_extraspecial_formula(*p as u64, *m, *s).expect("valid").invariants,
        }
    }
}

fn invariants(d: &[u64]) -> AbelianInvariants {
    if d.is_empty() {
        AbelianInvariants::trivial()
    } else {
        AbelianInvariants::new(d.to_vec()).expect("divisibility chain")
    }
}

fn abelian_group(d: &[u64]) -> Group {
    d.iter().fold(Group::trivial(), |acc, &q| {
        let c = cyclic(q as usize).expect("positive order");
        if acc.order() == 1 {
            c
        } else {
            direct_product(&acc, &c).expect("small product")
        }
    })
}

fn ganea_pairs() -> Vec<(Factor, Factor)> {
    use Factor::{Ab, Es};
    let (p, m) = (Sign::Plus, Sign::Minus);
    vec![
        (Ab(vec![2]), Ab(vec![2])),
        (Ab(vec![2]), Ab(vec![4])),
        (Ab(vec![4]), Ab(vec![4])),
        (Ab(vec![2]), Ab(vec![3])),
        (Ab(vec![3]), Ab(vec![3])),
        (Ab(vec![5]), Ab(vec![5])),
        (Ab(vec![2, 2]), Ab(vec![2])),
        (Ab(vec![2, 2]), Ab(vec![4])),
        (Ab(vec![2, 2]), Ab(vec![2, 2])),
        (Ab(vec![6]), Ab(vec![4])),
        (Ab(vec![8]), Ab(vec![8])),
        (Es(2, 1, p), Ab(vec![2])),
        (Es(2, 1, p), Ab(vec![4])),
        (Es(2, 1, p), Ab(vec![2, 2])),
        (Es(2, 1, p), Ab(vec![3])),
        (Es(2, 1, p), Ab(vec![8])),
        (Es(2, 1, m), Ab(vec![2])),
        (Es(2, 1, m), Ab(vec![4])),
        (Es(2, 1, m), Ab(vec![3])),
        (Es(2, 1, p), Es(2, 1, p)),
        (Es(2, 1, p), Es(2, 1, m)),
        (Es(2, 1, m), Es(2, 1, m)),
        (Es(3, 1, p), Ab(vec![2])),
        (Es(3, 1, m), Ab(vec![2])),
        (Es(2, 2, p), Ab(vec![2])),
        (Es(2, 2, m), Ab(vec![2])),
    ]
}

/// 2. Brute-force multiplier of a direct product against the product formula.
pub fn check_ganea(cfg: &AcceptanceConfig) -> CheckResult {
    let pairs = ganea_pairs();
    let mut r = CheckResult::new(2, "product formula", format!("brute M(a x b) = formula for {} pairs", pairs.len()));
    if cfg.homology_bound < 64 {
        return r.skipped(64, cfg.homology_bound);
    }
    let mut agree = 0;
    for (a, b) in &pairs {
        let (ga, gb) = (a.group(), b.group());
        let name = format!("{} x {}", ga.construction(), gb.construction());
        let outcome = direct_product(&ga, &gb)
            .and_then(|g| schur_multiplier_brute(&g, cfg.homology_bound))
            .and_then(|brute| Ok((brute, multiplier_ganea(&ga, &gb, &a.formula(), &b.formula())?)));
        match outcome {
            Ok((brute, formula)) if brute.invariants == formula.invariants => agree += 1,
            Ok((brute, formula)) => {
                r.fail(format!("{name}: brute {} vs formula {}", brute.invariants, formula.invariants))
            }
            Err(e) => r.fail(format!("{name}: {e}")),
        }
    }
    r.got = format!("{agree}/{} pairs agree", pairs.len());
    r
}

/// Invariant-factor chains `d1 | d2 | …` with product at most `max`.
pub fn abelian_chains(max: u64) -> Vec<Vec<u64>> {
    fn grow(chain: &mut Vec<u64>, product: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        out.push(chain.clone());
        let last = chain.last().copied();
        let mut d = last.unwrap_or(2);
        while product * d <= max {
            if last.is_none_or(|l| d % l == 0) {
                chain.push(d);
                grow(chain, product * d, max, out);
                chain.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), 1, max, &mut out);
    out
}

/// 3. Brute-force multipliers of all abelian groups of order at most 32.
pub fn check_abelian(cfg: &AcceptanceConfig) -> CheckResult {
    let chains = abelian_chains(32);
    let mut r = CheckResult::new(
        3,
        "abelian multipliers",
        format!("brute = sum of C_gcd(di,dj) for all {} abelian groups of order <= 32", chains.len()),
    );
    if cfg.homology_bound < 32 {
        return r.skipped(32, cfg.homology_bound);
    }
    let mut agree = 0;
    for d in &chains {
        let g = abelian_group(d);
        let formula = multiplier_abelian(&invariants(d)).invariants;
        match schur_multiplier_brute(&g, cfg.homology_bound) {
            Ok(b) if b.invariants == formula => agree += 1,
            Ok(b) => r.fail(format!("{}: brute {} vs formula {formula}", invariants(d), b.invariants)),
            Err(e) => r.fail(format!("{}: {e}", invariants(d))),
        }
    }
    r.got = format!("{agree}/{} agree", chains.len());
    r
}

/// Named instances with their expected capability.
const NAMED_CAPABILITY: [(&str, bool); 9] = [
    ("D8 x Cyc(2)", true),
    ("Q8 x Cyc(2)", false),
    ("ES(3,1,+) x Cyc(3)", true),
    ("ES(3,1,-) x Cyc(3)", false),
    ("ES(2,2,+) x Cyc(2)", false),
    ("ES(2,2,-) x Cyc(2)", false),
    ("D8 . Cyc(4)", false),
    ("D8 . Cyc(4) x Cyc(2)", false),
    ("ES(3,1,+) . Cyc(9)", false),
];

/// 4. Predicted capability equals the oracle on the whole corpus.
pub fn check_capability_prediction(cfg: &AcceptanceConfig, corpus: &Corpus) -> CheckResult {
    let mut r = CheckResult::new(
        4,
        "capability prediction vs oracle",
        "0 mismatches over the p=2 (<= 64) and p=3 (<= 81) corpus; named instances as listed",
    );
    if cfg.homology_bound < CORPUS_MAX_ORDER {
        return r.skipped(CORPUS_MAX_ORDER, cfg.homology_bound);
    }
    let (mut checked, mut mismatches) = (0, 0);
    for e in &corpus.outcome.entries {
        let Some(rep) = e.report() else {
            r.fail(format!("{}: classification failed", e.expr()));
            continue;
        };
        match rep.oracle_capable {
            Some(o) => {
                checked += 1;
                if o != rep.predicted_capable {
                    mismatches += 1;
                    r.fail(format!("{}: predicted {}, oracle {o}", rep.expr, rep.predicted_capable));
                }
            }
            None => r.fail(format!("{}: no oracle verdict", rep.expr)),
        }
    }
    for (name, want) in NAMED_CAPABILITY {
        match corpus.outcome.entries.iter().find(|e| e.expr() == name).and_then(|e| e.report()) {
            Some(rep) if rep.oracle_capable == Some(want) && rep.predicted_capable == want => {}
            Some(rep) => r.fail(format!(
                "{name}: expected capable={want}, predicted {} oracle {:?}",
                rep.predicted_capable, rep.oracle_capable
            )),
            None => r.fail(format!("{name}: missing from corpus")),
        }
    }
    r.got = format!("{checked} groups checked, {mismatches} mismatches");
    r
}

/// 5. The multiplier-order formula for cyclic centers of order at least p².
pub fn check_t8_formula(cfg: &AcceptanceConfig, corpus: &Corpus) -> CheckResult {
    let mut r = CheckResult::new(
        5,
        "cyclic-center multiplier formula",
        "|M(G)| = p^((n-1)(n-2)/2-1) when Z(G) cyclic of order >= p^2; n=3 capable cases tagged as exceptions",
    );
    if cfg.homology_bound < CORPUS_MAX_ORDER {
        return r.skipped(CORPUS_MAX_ORDER, cfg.homology_bound);
    }
    let (mut matched, mut exceptions) = (0, Vec::new());
    for rep in corpus.outcome.entries.iter().filter_map(|e| e.report()) {
        let Case::CyclicCenter { t } = rep.case else { continue };
        let tagged = rep.tags().contains(&"t8-scope-exception");
        if t >= 1 {
            if rep.multiplier_order == rep.t8_formula_order && rep.multiplier_order.is_some() {
                matched += 1;
            } else {
                r.fail(format!("{}: |M| = {:?}, formula {:?}", rep.expr, rep.multiplier_order, rep.t8_formula_order));
            }
        } else if rep.n == 3 && rep.h_params.capable() {
            if tagged {
                exceptions.push(rep.expr.clone());
            } else {
                r.fail(format!("{}: n = 3 exception not tagged", rep.expr));
            }
        } else if tagged {
            r.fail(format!("{}: unexpected scope exception", rep.expr));
        }
    }
    r.got = format!("{matched} in-scope instances match; exceptions tagged: [{}]", exceptions.join(", "));
    r
}

/// 6. Exact-sequence arithmetic and the order-jump criterion on the corpus.
pub fn check_exact_sequences(cfg: &AcceptanceConfig, corpus: &Corpus) -> CheckResult {
    let mut r = CheckResult::new(
        6,
        "exact-sequence arithmetic",
        "every ker_alpha a positive integer; order jump by p implies N in Z*(G); 0 violations",
    );
    if cfg.homology_bound < CORPUS_MAX_ORDER {
        return r.skipped(CORPUS_MAX_ORDER, cfg.homology_bound);
    }
    let (mut sequences, mut hypotheses) = (0, 0);
    for (expr, entry) in corpus.exprs.iter().zip(&corpus.outcome.entries) {
        let g = match expr.build(MAX_ORDER) {
            Ok(g) => g,
            Err(e) => {
                r.fail(format!("{expr}: {e}"));
                continue;
            }
        };
        match is_capable(&g, &corpus.oracle) {
            Ok(cap) => {
                for ev in &cap.evidence {
                    sequences += 1;
                    if ev.orders.ker_alpha < 1 {
                        r.fail(format!("{expr}: ker_alpha = {} at {}", ev.orders.ker_alpha, ev.element_label));
                    }
                }
            }
            Err(e) => r.fail(format!("{expr}: {e}")),
        }
        if let Some(l) = entry.report().and_then(|rep| rep.lemma_on_derived.as_ref()) {
            if l.hypothesis {
                hypotheses += 1;
            }
            if !l.confirmed() {
                r.fail(format!("{expr}: order jumps by p but G' is not in Z*(G)"));
            }
        }
    }
    r.got = format!("{sequences} sequences, {hypotheses} order-jump instances, {} violations", r.notes.len());
    r
}

/// 7. `|M(G/Φ(G))| ≤ |M(G)|·|Φ(G) ∩ G'|` on every p-group of the corpus.
pub fn check_frattini(cfg: &AcceptanceConfig, corpus: &Corpus) -> CheckResult {
    let mut r = CheckResult::new(
        7,
        "Frattini quotient bound",
        "|M(G/Phi)| <= |M(G)|.|Phi cap G'| on every corpus p-group; 0 violations",
    );
    if cfg.homology_bound < CORPUS_MAX_ORDER {
        return r.skipped(CORPUS_MAX_ORDER, cfg.homology_bound);
    }
    let mut groups: Vec<Group> = corpus.exprs.iter().filter_map(|e| e.build(MAX_ORDER).ok()).collect();
    for d in abelian_chains(32) {
        let g = abelian_group(&d);
        if g.order() > 1 && g.prime_power().is_some() {
            groups.push(g);
        }
    }
    groups.push(elementary_abelian(3, 3).expect("small"));
    let mut checked = 0;
    for g in &groups {
        match check_frattini_bound(g, &corpus.oracle) {
            Ok(b) => {
                checked += 1;
                if !b.holds {
                    r.fail(format!("{}: {} > {}", g.construction(), b.lhs, b.rhs));
                }
            }
            Err(e) => r.fail(format!("{}: {e}", g.construction())),
        }
    }
    r.got = format!("{checked} groups, {} violations", r.notes.len());
    r
}

/// Determinant by fraction-free elimination.
fn det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for mut rest in combinations(n, k - 1) {
            if rest.first().is_none_or(|&r| r > first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Invariant factors as quotients of successive gcds of k×k minors.
pub fn minor_gcd_factors(m: &[Vec<i64>]) -> Vec<i128> {
    let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in combinations(rows, k) {
            for cs in combinations(cols, k) {
                let sub = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect()).collect();
                g = gcd(g, det(sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

pub fn random_matrix(rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let rows = rng.gen_range(1..=6);
    let cols = rng.gen_range(1..=6);
    let mut m: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(-9..=9) }).collect())
        .collect();
    if rows >= 3 && rng.gen_bool(0.25) {
        // Force a dependent row.
        let last: Vec<i64> = (0..cols).map(|j| 2 * m[0][j] - 3 * m[1][j]).collect();
        m[rows - 1] = last;
    }
    m
}

/// 8. Smith forms against gcds of minors, and trivial H2 for C2 and C3.
pub fn check_linear_algebra(cfg: &AcceptanceConfig) -> CheckResult {
    let start = Instant::now();
    let mut r = CheckResult::new(
        8,
        "linear algebra oracle",
        format!("SNF = minor gcds on {RANDOM_MATRICES} random matrices (both engines); H2(C2) = H2(C3) = 0; <= 10 s"),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut agree = 0;
    for i in 0..RANDOM_MATRICES {
        let m = random_matrix(&mut rng);
        let want: Vec<BigInt> = minor_gcd_factors(&m).into_iter().map(BigInt::from).collect();
        let sm = SparseIntMatrix::from_dense(&m);
        let mut ok = true;
        for strategy in [Strategy::Dense, Strategy::Sparse] {
            let got = smith_normal_form_with(&sm, strategy);
            if got.factors != want || got.rank != want.len() {
                ok = false;
                r.fail(format!("matrix {i} ({strategy:?}): {:?} vs minors {:?}", got.factors, want));
            }
        }
        agree += ok as usize;
    }
    for q in [2, 3] {
        let g = cyclic(q).expect("small");
        let (d2, d3) = bar_boundaries(&g);
        match homology_at(&d3, &d2) {
            Ok(h) if h.torsion.is_trivial() && h.free_rank == 0 => {}
            Ok(h) => r.fail(format!("H2(C{q}) = {} + Z^{}", h.torsion, h.free_rank)),
            Err(e) => r.fail(format!("H2(C{q}): {e}")),
        }
    }
    let took = start.elapsed();
    if took > LINALG_LIMIT {
        r.fail(format!("took {:.1}s", took.as_secs_f64()));
    }
    r.got = format!("{agree}/{RANDOM_MATRICES} matrices agree; seed {:#x}", cfg.seed);
    r
}

/// 9. Sweeps with different worker counts produce identical artifacts.
pub fn check_determinism(cfg: &AcceptanceConfig, corpus: &Corpus) -> CheckResult {
    let other_workers = if cfg.workers == 1 { 3 } else { 1 };
    let mut r = CheckResult::new(
        9,
        "determinism",
        format!("byte-identical sweep.csv and sweep.json with {} and {other_workers} workers", cfg.workers),
    );
    let compare = || -> Result<bool, CliError> {
        let manifest = SweepManifest { workers: other_workers, ..corpus.manifest.clone() };
        let oracle = MultiplierOracle::new(manifest.homology_bound)?;
        let second = run_sweep(&manifest, &oracle)?;
        let dirs = [tempfile::tempdir()?, tempfile::tempdir()?];
        crate::sweep::write_artifacts(&corpus.outcome, dirs[0].path())?;
        crate::sweep::write_artifacts(&second, dirs[1].path())?;
        let mut same = to_csv(&corpus.outcome)? == to_csv(&second)? && to_json(&corpus.outcome)? == to_json(&second)?;
        for f in ["sweep.csv", "sweep.json"] {
            same &= std::fs::read(dirs[0].path().join(f))? == std::fs::read(dirs[1].path().join(f))?;
        }
        Ok(same)
    };
    match compare() {
        Ok(true) => r.got = format!("identical ({} rows)", corpus.outcome.entries.len()),
        Ok(false) => {
            r.got = "outputs differ".into();
            r.fail("artifacts differ between worker counts");
        }
        Err(e) => {
            r.got = "error".into();
            r.fail(e.to_string());
        }
    }
    r
}
