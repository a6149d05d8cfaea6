//! Structure and capability of p-groups with derived subgroup of order p and
//! elementary abelian abelianization: decomposition `G = H·Z(G)` with `H`
//! extraspecial, the case split on how `G'` sits in `Z(G)`, the capability
//! prediction, and reconciliation with the epicenter oracle.

use serde::{Deserialize, Serialize};

use crate::capability::{is_capable, lemma_l1_instance, LemmaCheck};
use crate::error::{Error, Result};
use crate::group::{
    abelian_invariants, center, central_product_canonical, compare_structure, cyclic, derived_subgroup, direct_product,
    quotient, subgroup_as_group, subgroup_generated, AbelianInvariants, Group, IsoVerdict, Sign, Subgroup, SCHEMA,
};
use crate::multiplier::MultiplierOracle;

/// Largest abelian group for the exhaustive complement search.
pub const COMPLEMENT_SEARCH_LIMIT: usize = 64;

/// Whether `|G|` is a prime power, `|G'| = p` and `G/G'` is elementary abelian.
pub fn in_class(g: &Group) -> bool {
    let Some((p, _)) = g.prime_power() else { return false };
    let d = derived_subgroup(g);
    if d.order() as u64 != p {
        return false;
    }
    (0..g.order()).all(|x| d.contains(g.pow(x, p)))
}

/// How `G'` sits inside `Z(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Case {
    /// `Z(G) = G' ⊕ K`, so `G = H × K`.
    Case1 { k: AbelianInvariants },
    /// `Z(G) = C_{p^{t+1}} ⊕ K` with `G'` inside the cyclic factor.
    Case2 { t: u32, k: AbelianInvariants },
    /// `Z(G) = C_{p^{t+1}}`.
    CyclicCenter { t: u32 },
}

impl Case {
    pub fn name(&self) -> &'static str {
        match self {
            Case::Case1 { .. } => "case1",
            Case::Case2 { .. } => "case2",
            Case::CyclicCenter { .. } => "cyclic-center",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraspecialParams {
    pub p: u64,
    pub m: u32,
    pub sign: Sign,
}

impl ExtraspecialParams {
    /// Capable exactly for order `p³` of the `+` type (exponent p, or D8).
    pub fn capable(&self) -> bool {
        self.m == 1 && self.sign == Sign::Plus
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub p: u64,
    pub n: u32,
    pub h_params: ExtraspecialParams,
    pub h: Subgroup,
    pub center: Subgroup,
    pub derived: Subgroup,
    /// Cyclic direct factor of `Z(G)` containing `G'` (`G'` itself in case 1).
    pub cyclic_factor: Subgroup,
    /// Complement of `cyclic_factor` in `Z(G)`.
    pub k: Subgroup,
    pub case: Case,
    /// Lifts `(e_i, f_i)` of a symplectic basis of `G/Z(G)` with `[e_i, f_i]`
    /// the chosen generator of `G'`.
    pub symplectic_pairs: Vec<(usize, usize)>,
}

impl Decomposition {
    pub fn gprime_is_summand(&self) -> bool {
        matches!(self.case, Case::Case1 { .. }) || self.center.order() as u64 == self.p
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::DecompositionFailed(msg.into())
}

fn log_p(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

pub fn decompose(g: &Group) -> Result<Decomposition> {
    if !in_class(g) {
        return Err(Error::PreconditionViolated(format!("{} is outside the class", g.construction())));
    }
    let (p, n) = g.prime_power().expect("in class");
    let derived = derived_subgroup(g);
    let z = center(g);
    let d = derived.generators()[0];
    // dlog[d^k] = k
    let mut dlog = vec![None; g.order()];
    let mut y = g.identity();
    for k in 0..p {
        dlog[y] = Some(k);
        y = g.mul(y, d);
    }
    let omega =
        |a: usize, b: usize| -> Result<u64> { dlog[g.commutator(a, b)].ok_or_else(|| fail("commutator outside G'")) };

    // Basis of G/Z(G), greedy in index order.
    let q = quotient(g, &z)?;
    let mut basis = Vec::new();
    let mut span = vec![q.group.identity()];
    for x in 0..g.order() {
        if span.binary_search(&q.projection[x]).is_err() {
            basis.push(x);
            let imgs: Vec<usize> = basis.iter().map(|&b| q.projection[b]).collect();
            span = subgroup_generated(&q.group, &imgs)?.elements().to_vec();
        }
    }

    // Symplectic reduction under the commutator form.
    let mut pairs = Vec::new();
    let mut rest = basis;
    while let Some(e) = rest.first().copied() {
        rest.remove(0);
        let pos = rest
            .iter()
            .map(|&w| omega(e, w))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .position(|&v| v != 0)
            .ok_or_else(|| fail("commutator form is degenerate on G/Z(G)"))?;
        let f0 = rest.remove(pos);
        let c = omega(e, f0)?;
        let f = g.pow(f0, inverse_mod(c, p));
        let mut next = Vec::with_capacity(rest.len());
        for &w in &rest {
            // w' = w · e^{-ω(w,f)} · f^{ω(w,e)} is orthogonal to e and f.
            let a = (p - omega(w, f)?) % p;
            let b = omega(w, e)?;
            next.push(g.mul(g.mul(w, g.pow(e, a)), g.pow(f, b)));
        }
        rest = next;
        pairs.push((e, f));
    }

    let lifts: Vec<usize> = pairs.iter().flat_map(|&(e, f)| [e, f]).chain([d]).collect();
    let h = subgroup_generated(g, &lifts)?;
    let m = pairs.len() as u32;
    let hg = subgroup_as_group(g, &h)?;
    if h.order() as u64 != p.pow(2 * m + 1) {
        return Err(fail(format!("H has order {}, expected p^{}", h.order(), 2 * m + 1)));
    }
    if center(&hg).order() as u64 != p || derived_subgroup(&hg).order() as u64 != p {
        return Err(fail("H is not extraspecial"));
    }
    if h.intersection(g, &z) != derived || h.order() * z.order() / derived.order() != g.order() {
        return Err(fail("G is not H·Z(G) with H ∩ Z(G) = G'"));
    }
    let sign = extraspecial_sign(&hg, p, m);

    let zb = abelian_basis(g, &z)?;
    let coords = coordinates(g, &zb);
    let dc = coords[d].as_ref().ok_or_else(|| fail("G' not inside Z(G)"))?;
    let orders: Vec<u64> = zb.iter().map(|&b| g.element_order(b).unwrap() as u64).collect();
    // Basis vector with nonzero coordinate of d and smallest order.
    let i =
        (0..zb.len()).filter(|&i| dc[i] != 0).min_by_key(|&i| (orders[i], i)).ok_or_else(|| fail("G' is trivial"))?;
    let e_i = orders[i] / p;
    // b' with b'^{e_i} = d, exchanged for the i-th basis vector.
    let mut b = g.identity();
    for j in 0..zb.len() {
        if dc[j] != 0 {
            b = g.mul(b, g.pow(zb[j], dc[j] / e_i));
        }
    }
    let cyclic_factor = subgroup_generated(g, &[b])?;
    let others: Vec<usize> = (0..zb.len()).filter(|&j| j != i).map(|j| zb[j]).collect();
    let k = subgroup_generated(g, &others)?;
    if cyclic_factor.order() * k.order() != z.order() || !cyclic_factor.contains(d) {
        return Err(fail("center basis exchange failed"));
    }
    let t = log_p(orders[i], p) - 1;
    let k_inv = abelian_invariants(&subgroup_as_group(g, &k)?)?;
    let case = if k.is_trivial() {
        Case::CyclicCenter { t }
    } else if t == 0 {
        Case::Case1 { k: k_inv }
    } else {
        Case::Case2 { t, k: k_inv }
    };
    Ok(Decomposition {
        p,
        n,
        h_params: ExtraspecialParams { p, m, sign },
        h,
        center: z,
        derived,
        cyclic_factor,
        k,
        case,
        symplectic_pairs: pairs,
    })
}

fn inverse_mod(c: u64, p: u64) -> u64 {
    (1..p).find(|&x| x * c % p == 1).expect("p is prime and c is nonzero")
}

/// `+` iff exponent p for odd p; for p = 2 by the number of square roots of 1,
/// which is `2^{2m} + 2^m` for the `+` type and `2^{2m} − 2^m` otherwise.
fn extraspecial_sign(h: &Group, p: u64, m: u32) -> Sign {
    if p == 2 {
        let roots = (0..h.order()).filter(|&x| h.mul(x, x) == h.identity()).count();
        if roots > 1 << (2 * m) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    } else if h.exponent() as u64 == p {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Elements `b_1, …, b_r` of the abelian subgroup `a` with `a = ⊕ ⟨b_i⟩`.
pub fn abelian_basis(g: &Group, a: &Subgroup) -> Result<Vec<usize>> {
    let mut basis = Vec::new();
    let mut span = Subgroup::trivial(g);
    while span.order() < a.order() {
        // Element of largest order modulo the current span.
        let (q, x) = a
            .elements()
            .iter()
            .map(|&x| {
                let mut q = 1;
                let mut y = x;
                while !span.contains(y) {
                    y = g.mul(y, x);
                    q += 1;
                }
                (q, x)
            })
            .max_by_key(|&(q, x)| (q, std::cmp::Reverse(x)))
            .expect("nonempty");
        let target = g.pow(x, q as u64);
        let s = span
            .elements()
            .iter()
            .copied()
            .find(|&s| g.pow(s, q as u64) == target)
            .ok_or_else(|| fail("no pure lift while splitting an abelian group"))?;
        basis.push(g.mul(x, g.inv(s)));
        span = subgroup_generated(g, &basis)?;
    }
    let prod: usize = basis.iter().map(|&b| g.element_order(b).unwrap()).product();
    if prod != a.order() {
        return Err(fail("abelian basis is not independent"));
    }
    Ok(basis)
}

/// Coordinates of every element of `⟨basis⟩` (None outside it).
fn coordinates(g: &Group, basis: &[usize]) -> Vec<Option<Vec<u64>>> {
    let mut out = vec![None; g.order()];
    let mut frontier = vec![(g.identity(), vec![0u64; basis.len()])];
    for (i, &b) in basis.iter().enumerate() {
        let ord = g.element_order(b).unwrap() as u64;
        let mut next = Vec::new();
        for (x, c) in frontier {
            let mut y = x;
            for k in 0..ord {
                let mut c2 = c.clone();
                c2[i] = k;
                next.push((y, c2));
                y = g.mul(y, b);
            }
        }
        frontier = next;
    }
    for (x, c) in frontier {
        out[x] = Some(c);
    }
    out
}

/// Whether the order-p subgroup `n` of the abelian group `a` is a direct
/// summand: true iff its generator is not a p-th power.
pub fn is_direct_summand(a: &Group, n: &Subgroup) -> Result<bool> {
    check_summand_input(a, n)?;
    let p = n.order() as u64;
    let x = n.generators()[0];
    Ok((0..a.order()).all(|y| a.pow(y, p) != x))
}

fn check_summand_input(a: &Group, n: &Subgroup) -> Result<()> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if n.parent_order() != a.order() {
        return Err(Error::PreconditionViolated("subgroup belongs to another group".into()));
    }
    if !crate::group::is_prime(n.order() as u64) {
        let expected = a.prime_power().map_or(0, |(p, _)| p as usize);
        return Err(Error::WrongOrder { expected, got: n.order() });
    }
    Ok(())
}

/// Exhaustive search for a complement of `n` in the abelian group `a`.
pub fn has_complement_exhaustive(a: &Group, n: &Subgroup) -> Result<bool> {
    check_summand_input(a, n)?;
    if a.order() > COMPLEMENT_SEARCH_LIMIT {
        return Err(Error::SizeExceeded { order: a.order(), bound: COMPLEMENT_SEARCH_LIMIT });
    }
    let target = a.order() / n.order();
    let nmask = n.elements().iter().fold(0u64, |m, &x| m | 1 << x);
    let identity = 1u64 << a.identity();
    // Every subgroup of a complement meets `n` trivially, so the search never
    // leaves that family.
    let mut seen = std::collections::HashSet::from([identity]);
    let mut stack = vec![identity];
    while let Some(s) = stack.pop() {
        if s.count_ones() as usize == target {
            return Ok(true);
        }
        for x in 0..a.order() {
            if s >> x & 1 == 0 {
                let t = abelian_join(a, s, x);
                if t & nmask == identity && seen.insert(t) {
                    stack.push(t);
                }
            }
        }
    }
    Ok(false)
}

/// `⟨S, x⟩ = ∪ S·x^k` for a subgroup mask `S` of an abelian group.
fn abelian_join(a: &Group, s: u64, x: usize) -> u64 {
    let elems: Vec<usize> = (0..a.order()).filter(|&e| s >> e & 1 == 1).collect();
    let mut t = s;
    let mut y = x;
    while t >> y & 1 == 0 {
        t |= elems.iter().fold(0u64, |m, &e| m | 1 << a.mul(e, y));
        y = a.mul(y, x);
    }
    t
}

/// Capable iff `H` is capable and `G'` is a direct summand of `Z(G)`.
pub fn predict_capable(dec: &Decomposition) -> bool {
    dec.h_params.capable() && dec.gprime_is_summand()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub tag: String,
    pub fatal: bool,
    pub detail: String,
}

/// One attempt at rebuilding `G` from its case data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reconstruction {
    /// `"p^t"` or `"p^(t+1)"` for the central cyclic factor; `"direct"` in case 1.
    pub reading: String,
    pub cyclic_order: u64,
    pub verdict: IsoVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema: String,
    pub expr: String,
    pub p: u64,
    pub n: u32,
    pub case: Case,
    pub h_params: ExtraspecialParams,
    pub center: AbelianInvariants,
    pub gprime_is_summand: bool,
    /// Exhaustive complement search on `Z(G)` when it is small enough.
    pub summand_search: Option<bool>,
    pub predicted_capable: bool,
    pub oracle_capable: Option<bool>,
    pub epicenter_order: Option<u64>,
    pub multiplier_order: Option<u64>,
    pub t8_formula_order: Option<u64>,
    pub reconstructions: Vec<Reconstruction>,
    pub lemma_on_derived: Option<LemmaCheck>,
    pub discrepancies: Vec<Discrepancy>,
}

impl ClassificationReport {
    pub fn has_fatal(&self) -> bool {
        self.discrepancies.iter().any(|d| d.fatal)
    }

    pub fn tags(&self) -> Vec<&str> {
        self.discrepancies.iter().map(|d| d.tag.as_str()).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// `p^{(n−1)(n−2)/2 − 1}`.
pub fn t8_formula(p: u64, n: u32) -> u64 {
    let e = (n as u64 - 1) * (n as u64 - 2) / 2;
    p.pow(e.saturating_sub(1) as u32)
}

fn rebuild(g: &Group, dec: &Decomposition) -> Result<Vec<Reconstruction>> {
    let hg = subgroup_as_group(g, &dec.h)?.with_construction("H");
    let kg = subgroup_as_group(g, &dec.k)?.with_construction("K");
    let with_k = |x: Group| -> Result<Group> {
        if dec.k.is_trivial() {
            Ok(x)
        } else {
            direct_product(&x, &kg)
        }
    };
    let mut out = Vec::new();
    match dec.case {
        Case::Case1 { .. } => {
            let r = direct_product(&hg, &kg)?;
            out.push(Reconstruction { reading: "direct".into(), cyclic_order: 1, verdict: compare_structure(&r, g) });
        }
        Case::Case2 { t, .. } | Case::CyclicCenter { t } => {
            for (reading, e) in [("p^t", t), ("p^(t+1)", t + 1)] {
                let q = dec.p.pow(e);
                let r = if q == 1 { hg.clone() } else { central_product_canonical(&hg, &cyclic(q as usize)?)? };
                out.push(Reconstruction {
                    reading: reading.into(),
                    cyclic_order: q,
                    verdict: compare_structure(&with_k(r)?, g),
                });
            }
        }
    }
    Ok(out)
}

/// Runs the decomposition, prediction and, within the oracle's bound, the
/// brute-force capability check, collecting every disagreement.
pub fn verify(g: &Group, oracle: &MultiplierOracle) -> Result<ClassificationReport> {
    let dec = decompose(g)?;
    let p = dec.p;
    let zg = subgroup_as_group(g, &dec.center)?;
    let center_inv = abelian_invariants(&zg)?;
    let summand_search = if zg.order() <= COMPLEMENT_SEARCH_LIMIT {
        let pos: Vec<usize> =
            dec.derived.elements().iter().map(|x| dec.center.elements().binary_search(x).unwrap()).collect();
        let n_in_z = Subgroup::from_elements(&zg, pos)?;
        Some(has_complement_exhaustive(&zg, &n_in_z)?)
    } else {
        None
    };
    let predicted = predict_capable(&dec);
    let mut discrepancies = Vec::new();
    let mut note = |tag: &str, fatal: bool, detail: String| {
        discrepancies.push(Discrepancy { tag: tag.into(), fatal, detail });
    };
    if let Some(s) = summand_search {
        if s != dec.gprime_is_summand() {
            note("summand-criterion-disagrees", true, format!("criterion {} vs search {s}", dec.gprime_is_summand()));
        }
    }

    let reconstructions = rebuild(g, &dec)?;
    let consistent = match dec.case {
        Case::Case1 { .. } => "direct",
        _ => "p^(t+1)",
    };
    if !reconstructions.iter().any(|r| r.reading == consistent && r.verdict.agrees()) {
        note("t6-reconstruction-failed", false, format!("{consistent} reading does not rebuild G"));
    }

    let (mut oracle_capable, mut epicenter_order, mut multiplier_order, mut lemma) = (None, None, None, None);
    if oracle.within_bound(g) {
        let cap = is_capable(g, oracle)?;
        oracle_capable = Some(cap.capable);
        epicenter_order = Some(cap.epicenter.order() as u64);
        multiplier_order = Some(oracle.multiplier(g)?.order);
        let l = lemma_l1_instance(g, &dec.derived, oracle)?;
        if !l.confirmed() {
            note("l1-violation", true, format!("{:?}", l.orders));
        }
        lemma = Some(l);
        if cap.capable != predicted {
            note("t7-mismatch", true, format!("predicted {predicted}, oracle {}", cap.capable));
        }
        if let Case::Case1 { .. } = dec.case {
            let derived_outside = !dec.derived.is_subset_of(&cap.epicenter);
            if derived_outside != dec.h_params.capable() {
                note(
                    "t9-branch-mismatch",
                    true,
                    format!("G' outside Z*(G): {derived_outside}; H capable: {}", dec.h_params.capable()),
                );
            }
        }
    }

    let t8_formula_order = match dec.case {
        Case::CyclicCenter { .. } => Some(t8_formula(p, dec.n)),
        _ => None,
    };
    if let (Some(f), Some(m)) = (t8_formula_order, multiplier_order) {
        let capable = oracle_capable.unwrap_or(predicted);
        if dec.center.order() as u64 == p {
            if f != m || capable {
                note("t8-scope-exception", false, format!("|Z(G)| = p: formula {f}, |M(G)| = {m}, capable {capable}"));
            }
        } else if f != m {
            note("t8-formula-mismatch", false, format!("formula {f}, |M(G)| = {m}"));
        }
    }

    Ok(ClassificationReport {
        schema: SCHEMA.to_string(),
        expr: g.construction().to_string(),
        p,
        n: dec.n,
        case: dec.case.clone(),
        h_params: dec.h_params,
        center: center_inv,
        gprime_is_summand: dec.gprime_is_summand(),
        summand_search,
        predicted_capable: predicted,
        oracle_capable,
        epicenter_order,
        multiplier_order,
        t8_formula_order,
        reconstructions,
        lemma_on_derived: lemma,
        discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{dihedral8, elementary_abelian, extraspecial, quaternion8};

    fn es(p: usize, m: u32, s: Sign) -> Group {
        extraspecial(p, m, s).unwrap()
    }

    #[test]
    fn membership() {
        assert!(!in_class(&cyclic(4).unwrap()));
        assert!(in_class(&es(2, 2, Sign::Minus)));
        assert!(!in_class(&direct_product(&es(3, 1, Sign::Plus), &cyclic(9).unwrap()).unwrap()));
        assert!(!in_class(&cyclic(6).unwrap()));
        assert!(in_class(&direct_product(&dihedral8(), &cyclic(2).unwrap()).unwrap()));
    }

    #[test]
    fn extraspecial_parameters_are_recovered() {
        for (p, m, s) in [
            (2, 1, Sign::Plus),
            (2, 1, Sign::Minus),
            (3, 1, Sign::Plus),
            (3, 1, Sign::Minus),
            (2, 2, Sign::Plus),
            (2, 2, Sign::Minus),
        ] {
            let dec = decompose(&es(p, m, s)).unwrap();
            assert_eq!(dec.h_params, ExtraspecialParams { p: p as u64, m, sign: s });
            assert_eq!(dec.case, Case::CyclicCenter { t: 0 });
        }
    }

    #[test]
    fn case1_example() {
        let g = direct_product(&es(3, 1, Sign::Plus), &cyclic(3).unwrap()).unwrap();
        let dec = decompose(&g).unwrap();
        assert_eq!(dec.case, Case::Case1 { k: AbelianInvariants::new(vec![3]).unwrap() });
        assert_eq!(dec.h_params.sign, Sign::Plus);
        assert!(predict_capable(&dec));
    }

    #[test]
    fn central_product_cases() {
        let g = central_product_canonical(&dihedral8(), &cyclic(4).unwrap()).unwrap();
        let dec = decompose(&g).unwrap();
        assert_eq!(dec.case, Case::CyclicCenter { t: 1 });
        assert_eq!(dec.cyclic_factor.order(), 4);
        assert!(!predict_capable(&dec));
        let g2 = direct_product(&g, &cyclic(2).unwrap()).unwrap();
        let dec = decompose(&g2).unwrap();
        assert_eq!(dec.case, Case::Case2 { t: 1, k: AbelianInvariants::new(vec![2]).unwrap() });
        assert_eq!(dec.cyclic_factor.order(), 4);
    }

    #[test]
    fn summand_examples() {
        let a = direct_product(&cyclic(2).unwrap(), &cyclic(4).unwrap()).unwrap();
        // Elements are x*4 + y for (x, y) in C2 x C4.
        let first = subgroup_generated(&a, &[4]).unwrap();
        let inside = subgroup_generated(&a, &[2]).unwrap();
        assert!(is_direct_summand(&a, &first).unwrap());
        assert!(!is_direct_summand(&a, &inside).unwrap());
        assert!(has_complement_exhaustive(&a, &first).unwrap());
        assert!(!has_complement_exhaustive(&a, &inside).unwrap());
        let c4 = cyclic(4).unwrap();
        let two = subgroup_generated(&c4, &[2]).unwrap();
        assert!(!is_direct_summand(&c4, &two).unwrap());
        assert_eq!(is_direct_summand(&dihedral8(), &center(&dihedral8())), Err(Error::NotAbelian));
        assert!(matches!(is_direct_summand(&a, &Subgroup::whole(&a)), Err(Error::WrongOrder { .. })));
    }

    #[test]
    fn abelian_basis_splits() {
        let a = direct_product(&cyclic(4).unwrap(), &elementary_abelian(2, 2).unwrap()).unwrap();
        let b = abelian_basis(&a, &Subgroup::whole(&a)).unwrap();
        let mut orders: Vec<usize> = b.iter().map(|&x| a.element_order(x).unwrap()).collect();
        orders.sort();
        assert_eq!(orders, vec![2, 2, 4]);
    }

    #[test]
    fn verify_examples() {
        let o = MultiplierOracle::new(64).unwrap();
        let g = central_product_canonical(&dihedral8(), &cyclic(4).unwrap()).unwrap();
        let r = verify(&g, &o).unwrap();
        assert_eq!(r.t8_formula_order, Some(4));
        assert_eq!(r.oracle_capable, Some(false));
        assert!(!r.predicted_capable);
        assert!(!r.has_fatal());

        let r = verify(&es(3, 1, Sign::Plus), &o).unwrap();
        assert_eq!(r.tags(), vec!["t8-scope-exception"]);
        assert_eq!(r.oracle_capable, Some(true));

        let g = direct_product(&es(2, 2, Sign::Plus), &cyclic(2).unwrap()).unwrap();
        let r = verify(&g, &o).unwrap();
        assert!(matches!(r.case, Case::Case1 { .. }));
        assert_eq!((r.predicted_capable, r.oracle_capable), (false, Some(false)));
        assert!(r.discrepancies.is_empty(), "{:?}", r.discrepancies);

        let r = verify(&quaternion8(), &o).unwrap();
        assert!(!r.predicted_capable);
        assert!(r.discrepancies.is_empty());
        let back: ClassificationReport = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn case2_reading_with_larger_cyclic_factor_rebuilds() {
        let g =
            direct_product(&central_product_canonical(&dihedral8(), &cyclic(4).unwrap()).unwrap(), &cyclic(2).unwrap())
                .unwrap();
        let r = verify(&g, &MultiplierOracle::new(64).unwrap()).unwrap();
        let by = |s: &str| r.reconstructions.iter().find(|x| x.reading == s).unwrap().verdict;
        assert_eq!(by("p^(t+1)"), IsoVerdict::Isomorphic);
        assert_eq!(by("p^t"), IsoVerdict::NotIsomorphic);
    }

    #[test]
    fn t8_formula_values() {
        assert_eq!(t8_formula(2, 4), 4);
        assert_eq!(t8_formula(3, 3), 1);
        assert_eq!(t8_formula(2, 5), 32);
    }
}
