//! Epicenter and capability through order arithmetic on the exact sequence
//! `M(G) → M(G/N) → N ∩ G' → 1` for central `N`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{center, derived_subgroup, is_normal, quotient, subgroup_generated, Group, Subgroup};
use crate::multiplier::MultiplierOracle;

/// Orders along `M(G) --α--> M(G/N) --β--> N ∩ G'` for a normal subgroup `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfSequenceOrders {
    pub m_g: u64,
    pub m_q: u64,
    pub n_cap_derived: u64,
    /// `|ker α| = m_g · n_cap_derived / m_q`, or the same divided by
    /// `n_comm` when `N` is not central.
    pub ker_alpha: u64,
    /// `|[N, G]|`; 1 for central `N`.
    #[serde(skip_serializing_if = "is_one", default = "one")]
    pub n_comm: u64,
}

fn is_one(x: &u64) -> bool {
    *x == 1
}

fn one() -> u64 {
    1
}

impl HopfSequenceOrders {
    /// Derives `|ker α|` and checks that it is a positive integer.
    pub fn new(m_g: u64, m_q: u64, n_cap_derived: u64, n_comm: u64) -> Result<Self> {
        let num = m_g as u128 * n_cap_derived as u128;
        let den = m_q as u128 * n_comm as u128;
        if den == 0 || !num.is_multiple_of(den) || num < den {
            return Err(Error::SequenceArithmetic(format!(
                "|M(G)|·|N∩G'| = {num} is not a positive multiple of |M(G/N)|·|[N,G]| = {den}"
            )));
        }
        let ker_alpha = u64::try_from(num / den).map_err(|_| Error::Overflow((num / den).to_string()))?;
        Ok(HopfSequenceOrders { m_g, m_q, n_cap_derived, ker_alpha, n_comm })
    }

    pub fn alpha_is_mono(&self) -> bool {
        self.ker_alpha == 1
    }
}

fn cyclic_sub(g: &Group, x: usize) -> Result<Subgroup> {
    subgroup_generated(g, &[x])
}

/// Sequence orders for a normal subgroup `n`.
pub fn hopf_orders(g: &Group, n: &Subgroup, oracle: &MultiplierOracle) -> Result<HopfSequenceOrders> {
    let m_g = oracle.multiplier(g)?.order;
    let q = quotient(g, n)?;
    let m_q = oracle.multiplier(&q.group)?.order;
    let n_cap = n.intersection(g, &derived_subgroup(g)).order() as u64;
    let mut comms = Vec::new();
    for &a in n.generators() {
        for y in 0..g.order() {
            comms.push(g.commutator(a, y));
        }
    }
    let n_comm = subgroup_generated(g, &comms)?.order() as u64;
    HopfSequenceOrders::new(m_g, m_q, n_cap, n_comm)
}

/// Whether `x ∈ Z*(G)`, decided by injectivity of `M(G) → M(G/⟨x⟩)`.
/// Non-central elements are never in the epicenter and return `None`.
pub fn epicenter_contains(
    g: &Group,
    x: usize,
    oracle: &MultiplierOracle,
) -> Result<(bool, Option<HopfSequenceOrders>)> {
    g.check_index(x)?;
    if !oracle.within_bound(g) {
        return Err(Error::SizeExceeded { order: g.order(), bound: oracle.homology_bound() });
    }
    if (0..g.order()).any(|y| g.mul(x, y) != g.mul(y, x)) {
        return Ok((false, None));
    }
    let orders = hopf_orders(g, &cyclic_sub(g, x)?, oracle)?;
    Ok((orders.alpha_is_mono(), Some(orders)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub element_label: String,
    #[serde(skip)]
    pub element: usize,
    #[serde(flatten)]
    pub orders: HopfSequenceOrders,
    pub in_epicenter: bool,
    /// Set in strict mode for candidates outside the center.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub central: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapabilityReport {
    pub expr: String,
    pub capable: bool,
    #[serde(serialize_with = "subgroup_order")]
    #[serde(rename = "epicenter_order")]
    pub epicenter: Subgroup,
    pub evidence: Vec<Evidence>,
    /// Strict mode only: non-central cyclic normal subgroups whose
    /// multiplier map is injective anyway.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub strict_anomalies: Vec<String>,
}

fn subgroup_order<S: Serializer>(s: &Subgroup, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_u64(s.order() as u64)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CapabilityOptions {
    /// Also examine every cyclic normal subgroup outside the center instead
    /// of taking `Z*(G) ⊆ Z(G)` for granted.
    pub strict: bool,
}

fn evidence_for(g: &Group, xs: &[usize], oracle: &MultiplierOracle) -> Result<Vec<Evidence>> {
    // Prime the cache so workers only compute quotient multipliers.
    oracle.multiplier(g)?;
    xs.par_iter()
        .map(|&x| {
            let central = (0..g.order()).all(|y| g.mul(x, y) == g.mul(y, x));
            let orders = hopf_orders(g, &cyclic_sub(g, x)?, oracle)?;
            Ok(Evidence {
                element_label: g.label(x),
                element: x,
                orders,
                in_epicenter: central && orders.alpha_is_mono(),
                central: (!central).then_some(false),
            })
        })
        .collect()
}

/// `Z*(G)` as the set of central `x` with `M(G) → M(G/⟨x⟩)` injective.
pub fn epicenter(g: &Group, oracle: &MultiplierOracle) -> Result<Subgroup> {
    Ok(is_capable_with(g, oracle, CapabilityOptions::default())?.epicenter)
}

pub fn is_capable(g: &Group, oracle: &MultiplierOracle) -> Result<CapabilityReport> {
    is_capable_with(g, oracle, CapabilityOptions::default())
}

pub fn is_capable_with(g: &Group, oracle: &MultiplierOracle, opts: CapabilityOptions) -> Result<CapabilityReport> {
    if !oracle.within_bound(g) {
        return Err(Error::SizeExceeded { order: g.order(), bound: oracle.homology_bound() });
    }
    let z = center(g);
    let candidates: Vec<usize> = if opts.strict {
        (0..g.order()).filter(|&x| z.contains(x) || cyclic_sub(g, x).is_ok_and(|n| is_normal(g, &n))).collect()
    } else {
        z.elements().to_vec()
    };
    let evidence = evidence_for(g, &candidates, oracle)?;
    let members: Vec<usize> = evidence.iter().filter(|e| e.in_epicenter).map(|e| e.element).collect();
    let epicenter = Subgroup::from_elements(g, members)
        .map_err(|e| Error::NotASubgroup(format!("epicenter of {}: {e}", g.construction())))?;
    let strict_anomalies = evidence
        .iter()
        .filter(|e| e.central == Some(false) && e.orders.alpha_is_mono())
        .map(|e| e.element_label.clone())
        .collect();
    Ok(CapabilityReport {
        expr: g.construction().to_string(),
        capable: epicenter.is_trivial(),
        epicenter,
        evidence,
        strict_anomalies,
    })
}

/// Outcome of testing "if `|M(G/N)| = p·|M(G)|` then `N ⊆ Z*(G)`" on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub hypothesis: bool,
    pub n_in_epicenter: bool,
    pub orders: HopfSequenceOrders,
}

impl LemmaCheck {
    pub fn confirmed(&self) -> bool {
        !self.hypothesis || self.n_in_epicenter
    }
}

/// Checks the order-jump criterion for `n ⊆ Z(G) ∩ G'` of prime order.
pub fn lemma_l1_instance(g: &Group, n: &Subgroup, oracle: &MultiplierOracle) -> Result<LemmaCheck> {
    let p = n.order() as u64;
    if !crate::group::is_prime(p) {
        return Err(Error::PreconditionViolated(format!("|N| = {p} is not prime")));
    }
    if !n.is_subset_of(&center(g).intersection(g, &derived_subgroup(g))) {
        return Err(Error::PreconditionViolated("N is not inside Z(G) ∩ G'".into()));
    }
    let orders = hopf_orders(g, n, oracle)?;
    let hypothesis = orders.m_q == p * orders.m_g;
    Ok(LemmaCheck { hypothesis, n_in_epicenter: orders.alpha_is_mono(), orders })
}

pub fn lemma_l1_check(g: &Group, n: &Subgroup, oracle: &MultiplierOracle) -> Result<bool> {
    Ok(lemma_l1_instance(g, n, oracle)?.confirmed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{central_product_canonical, cyclic, dihedral8, direct_product, extraspecial, quaternion8, Sign};

    fn oracle() -> MultiplierOracle {
        MultiplierOracle::new(64).unwrap()
    }

    #[test]
    fn identity_is_always_in() {
        let g = extraspecial(3, 1, Sign::Plus).unwrap();
        let (inside, orders) = epicenter_contains(&g, g.identity(), &oracle()).unwrap();
        assert!(inside);
        let o = orders.unwrap();
        assert_eq!((o.m_g, o.m_q, o.n_cap_derived), (9, 9, 1));
    }

    #[test]
    fn quaternion_center_is_epicenter() {
        let g = quaternion8();
        let z = center(&g);
        let x = *z.elements().iter().find(|&&x| x != g.identity()).unwrap();
        let (inside, o) = epicenter_contains(&g, x, &oracle()).unwrap();
        let o = o.unwrap();
        assert!(inside);
        assert_eq!((o.m_g, o.m_q, o.n_cap_derived, o.ker_alpha), (1, 2, 2, 1));
        let r = is_capable(&g, &oracle()).unwrap();
        assert!(!r.capable);
        assert_eq!(r.epicenter.order(), 2);
    }

    #[test]
    fn extraspecial_exponent_p_is_capable() {
        let g = extraspecial(3, 1, Sign::Plus).unwrap();
        for &x in center(&g).elements().iter().filter(|&&x| x != g.identity()) {
            let (inside, o) = epicenter_contains(&g, x, &oracle()).unwrap();
            assert!(!inside);
            assert_eq!(o.unwrap().ker_alpha, 9);
        }
        assert!(is_capable(&g, &oracle()).unwrap().capable);
    }

    #[test]
    fn small_verdicts() {
        let o = oracle();
        assert!(is_capable(&dihedral8(), &o).unwrap().capable);
        assert!(is_capable(&Group::trivial(), &o).unwrap().capable);
        assert!(!is_capable(&extraspecial(2, 2, Sign::Plus).unwrap(), &o).unwrap().capable);
        let c5 = cyclic(5).unwrap();
        assert_eq!(epicenter(&c5, &o).unwrap().order(), 5);
        let c2 = cyclic(2).unwrap();
        assert!(is_capable(&direct_product(&c2, &c2).unwrap(), &o).unwrap().capable);
    }

    #[test]
    fn non_central_elements_are_rejected() {
        let g = dihedral8();
        let (inside, orders) = epicenter_contains(&g, 1, &oracle()).unwrap();
        assert!(!inside);
        assert!(orders.is_none());
    }

    #[test]
    fn report_json_shape() {
        let r = is_capable(&quaternion8(), &oracle()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["epicenter_order"], 2);
        assert_eq!(v["capable"], false);
        let e = &v["evidence"][0];
        for k in ["element_label", "m_g", "m_q", "n_cap_derived", "ker_alpha", "in_epicenter"] {
            assert!(e.get(k).is_some(), "{k}");
        }
        assert!(e.get("n_comm").is_none());
    }

    #[test]
    fn strict_mode_agrees_on_small_groups() {
        let o = oracle();
        let strict = CapabilityOptions { strict: true };
        for g in [dihedral8(), quaternion8(), extraspecial(3, 1, Sign::Minus).unwrap()] {
            let a = is_capable(&g, &o).unwrap();
            let b = is_capable_with(&g, &o, strict).unwrap();
            assert_eq!(a.epicenter, b.epicenter);
            assert!(b.evidence.len() >= a.evidence.len());
        }
    }

    #[test]
    fn lemma_examples() {
        let o = oracle();
        let q8 = quaternion8();
        let n = center(&q8);
        let c = lemma_l1_instance(&q8, &n, &o).unwrap();
        assert!(c.hypothesis && c.n_in_epicenter);
        let es = extraspecial(3, 1, Sign::Plus).unwrap();
        let c = lemma_l1_instance(&es, &derived_subgroup(&es), &o).unwrap();
        assert!(!c.hypothesis && c.confirmed());
        let g = central_product_canonical(&dihedral8(), &cyclic(4).unwrap()).unwrap();
        let c = lemma_l1_instance(&g, &derived_subgroup(&g), &o).unwrap();
        assert!(c.hypothesis && c.n_in_epicenter);
        assert!(lemma_l1_check(&q8, &Subgroup::whole(&q8), &o).is_err());
    }

    #[test]
    fn bad_sequence_orders_are_rejected() {
        assert!(HopfSequenceOrders::new(1, 4, 2, 1).is_err());
        assert_eq!(HopfSequenceOrders::new(9, 3, 3, 1).unwrap().ker_alpha, 9);
    }
}
