//! Schur multipliers: second integral homology through the normalized bar
//! resolution, closed formulas for direct products, abelian and extraspecial
//! groups, and the Frattini-quotient bound.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{
    abelian_invariants, derived_subgroup, frattini, is_prime, quotient, AbelianInvariants, Group, Sign, Subgroup,
};
use crate::linalg::{homology_at, SparseIntMatrix};

/// Default largest order handed to the brute-force homology.
pub const DEFAULT_HOMOLOGY_BOUND: usize = 64;
/// Hard ceiling for the homology bound.
pub const MAX_HOMOLOGY_BOUND: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Brute,
    Ganea,
    ExtraspecialFormula,
    AbelianFormula,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierResult {
    pub expr: String,
    pub invariants: AbelianInvariants,
    pub order: u64,
    pub method: Method,
    /// Wall time of the computation; left out of deterministic artifacts.
    pub elapsed_ms: Option<u64>,
}

impl MultiplierResult {
    fn new(expr: impl Into<String>, invariants: AbelianInvariants, method: Method) -> Self {
        MultiplierResult { expr: expr.into(), order: invariants.order(), invariants, method, elapsed_ms: None }
    }
}

/// Boundary maps `d2: C2 → C1` and `d3: C3 → C2` of the normalized bar
/// complex with trivial integer coefficients. `C_k` is free on k-tuples of
/// non-identity elements; tuples containing the identity are zero.
pub fn bar_boundaries(g: &Group) -> (SparseIntMatrix, SparseIntMatrix) {
    let all: Vec<usize> = (0..g.order()).filter(|&x| x != g.identity()).collect();
    (bar_d2(g), bar_d3_restricted(g, &all))
}

/// Position of each non-identity element in the basis of `C1`.
fn basis_index(g: &Group) -> Vec<Option<u32>> {
    let mut k = 0;
    (0..g.order())
        .map(|x| {
            (x != g.identity()).then(|| {
                k += 1;
                k - 1
            })
        })
        .collect()
}

pub fn bar_d2(g: &Group) -> SparseIntMatrix {
    let index = basis_index(g);
    let elems: Vec<usize> = (0..g.order()).filter(|&x| x != g.identity()).collect();
    let mut cols = Vec::with_capacity(elems.len() * elems.len());
    for &a in &elems {
        for &b in &elems {
            // d[a|b] = [b] - [ab] + [a]
            let mut col = vec![(index[b].unwrap(), 1), (index[a].unwrap(), 1)];
            if let Some(ab) = index[g.mul(a, b)] {
                col.push((ab, -1));
            }
            cols.push(col);
        }
    }
    SparseIntMatrix::from_columns(elems.len(), cols).expect("bar d2")
}

/// Columns `d[a|b|c]` of the normalized `d3` with `a` restricted to `first`.
///
/// When `first` generates `G` these columns span the whole image of `d3`:
/// from `d3·d4[a|b|c|d] = 0`,
/// `d3[ab|c|d] = d3([b|c|d] + [a|bc|d] − [a|b|cd] + [a|b|c])`,
/// so every column reduces, by induction on word length of its first
/// entry, to columns whose first entry is a generator.
pub fn bar_d3_restricted(g: &Group, first: &[usize]) -> SparseIntMatrix {
    let index = basis_index(g);
    let elems: Vec<usize> = (0..g.order()).filter(|&x| x != g.identity()).collect();
    let m = elems.len() as u32;
    let pair = |a: usize, b: usize| -> Option<u32> { Some(index[a]? * m + index[b]?) };
    let mut cols = Vec::with_capacity(first.len() * elems.len() * elems.len());
    for &a in first.iter().filter(|&&a| a != g.identity()) {
        for &b in &elems {
            let ab = g.mul(a, b);
            for &c in &elems {
                // d[a|b|c] = [b|c] - [ab|c] + [a|bc] - [a|b]
                let bc = g.mul(b, c);
                let mut col = Vec::with_capacity(4);
                col.push((pair(b, c).unwrap(), 1));
                if let Some(k) = pair(ab, c) {
                    col.push((k, -1));
                }
                if let Some(k) = pair(a, bc) {
                    col.push((k, 1));
                }
                col.push((pair(a, b).unwrap(), -1));
                cols.push(col);
            }
        }
    }
    SparseIntMatrix::from_columns(elems.len() * elems.len(), cols).expect("bar d3")
}

/// `M(G) = H2(G; Z)` from the normalized bar complex.
pub fn schur_multiplier_brute(g: &Group, homology_bound: usize) -> Result<MultiplierResult> {
    if homology_bound > MAX_HOMOLOGY_BOUND {
        return Err(Error::SizeExceeded { order: homology_bound, bound: MAX_HOMOLOGY_BOUND });
    }
    if g.order() > homology_bound {
        return Err(Error::SizeExceeded { order: g.order(), bound: homology_bound });
    }
    if g.order() > DEFAULT_HOMOLOGY_BOUND {
        warn!("bar complex of order {} is large; expect a long run", g.order());
    }
    let start = Instant::now();
    let d2 = bar_d2(g);
    let d3 = bar_d3_restricted(g, Subgroup::whole(g).generators());
    let h = homology_at(&d3, &d2)?;
    if h.free_rank != 0 {
        return Err(Error::InfiniteHomology(h.free_rank));
    }
    let mut r = MultiplierResult::new(g.construction(), h.torsion, Method::Brute);
    r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(r)
}

/// `G / G'` as invariant factors.
pub fn abelianization(g: &Group) -> Result<AbelianInvariants> {
    let q = quotient(g, &derived_subgroup(g))?;
    abelian_invariants(&q.group)
}

/// `M(A × B) = M(A) ⊕ M(B) ⊕ (A/A' ⊗ B/B')`, given multipliers of the factors.
pub fn multiplier_ganea(
    a: &Group,
    b: &Group,
    mult_a: &AbelianInvariants,
    mult_b: &AbelianInvariants,
) -> Result<MultiplierResult> {
    let tensor = abelianization(a)?.tensor(&abelianization(b)?);
    let inv = mult_a.direct_sum(mult_b).direct_sum(&tensor);
    Ok(MultiplierResult::new(format!("{} x {}", paren(a.construction()), paren(b.construction())), inv, Method::Ganea))
}

fn paren(s: &str) -> String {
    if s.contains(' ') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

/// `M(⊕ C_{d_i}) = ⊕_{i<j} C_{gcd(d_i, d_j)}`.
pub fn multiplier_abelian(inv: &AbelianInvariants) -> MultiplierResult {
    let d = inv.factors();
    let mut orders = Vec::new();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            orders.push(num_integer::gcd(d[i], d[j]));
        }
    }
    MultiplierResult::new(inv.to_string(), AbelianInvariants::from_cyclic_orders(orders), Method::AbelianFormula)
}

/// Order of the multiplier of the extraspecial group of order `p^{2m+1}`.
///
/// For `m = 1` and odd `p`: `p²` for exponent `p`, trivial for exponent `p²`.
/// For `p = 2`, `m = 1`: `M(D8) = C2` and `M(Q8) = 1`. For `m > 1` both types
/// have order `p^{2m² − m − 1}`.
pub fn multiplier_extraspecial_formula(p: u64, m: u32, sign: Sign) -> Result<MultiplierResult> {
    if !is_prime(p) || m == 0 {
        return Err(Error::PreconditionViolated(format!("need p prime and m >= 1, got ({p}, {m})")));
    }
    let exponent = match (m, sign) {
        (1, Sign::Plus) if p == 2 => 1,
        (1, Sign::Plus) => 2,
        (1, Sign::Minus) => 0,
        _ => 2 * m * m - m - 1,
    };
    // The multiplier is elementary abelian in every case.
    let inv = AbelianInvariants::from_cyclic_orders(std::iter::repeat_n(p, exponent as usize));
    Ok(MultiplierResult::new(format!("ES({p},{m},{})", sign.symbol()), inv, Method::ExtraspecialFormula))
}

/// Both sides of `|M(G/Φ(G))| ≤ |M(G)|·|Φ(G) ∩ G'|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrattiniBound {
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
}

pub fn check_frattini_bound(g: &Group, oracle: &MultiplierOracle) -> Result<FrattiniBound> {
    if g.order() > 1 && g.prime_power().is_none() {
        return Err(Error::NotPGroup(g.order()));
    }
    let phi = frattini(g)?;
    let q = quotient(g, &phi)?;
    let lhs = oracle.multiplier(&q.group)?.order;
    let m = oracle.multiplier(g)?.order;
    let rhs = m * phi.intersection(g, &derived_subgroup(g)).order() as u64;
    Ok(FrattiniBound { lhs, rhs, holds: lhs <= rhs })
}

/// Brute-force multiplier with a memo table keyed by the multiplication table.
/// Safe to share between threads; the cache never changes an answer.
#[derive(Debug)]
pub struct MultiplierOracle {
    homology_bound: usize,
    cache: Mutex<HashMap<Vec<u16>, Arc<AbelianInvariants>>>,
}

impl MultiplierOracle {
    pub fn new(homology_bound: usize) -> Result<Self> {
        if homology_bound > MAX_HOMOLOGY_BOUND {
            return Err(Error::SizeExceeded { order: homology_bound, bound: MAX_HOMOLOGY_BOUND });
        }
        Ok(MultiplierOracle { homology_bound, cache: Mutex::new(HashMap::new()) })
    }

    pub fn homology_bound(&self) -> usize {
        self.homology_bound
    }

    pub fn within_bound(&self, g: &Group) -> bool {
        g.order() <= self.homology_bound
    }

    pub fn multiplier(&self, g: &Group) -> Result<MultiplierResult> {
        let key = g.table().to_vec();
        if let Some(inv) = self.cache.lock().unwrap().get(&key) {
            return Ok(MultiplierResult::new(g.construction(), (**inv).clone(), Method::Brute));
        }
        let r = schur_multiplier_brute(g, self.homology_bound)?;
        self.cache.lock().unwrap().insert(key, Arc::new(r.invariants.clone()));
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral8, direct_product, extraspecial, quaternion8};

    fn brute(g: &Group) -> AbelianInvariants {
        schur_multiplier_brute(g, 64).unwrap().invariants
    }

    #[test]
    fn bar_complex_is_a_complex() {
        for g in [cyclic(3).unwrap(), dihedral8(), cyclic(1).unwrap()] {
            let (d2, d3) = bar_boundaries(&g);
            assert!(d2.composes_to_zero(&d3).unwrap());
        }
    }

    #[test]
    fn generator_columns_span_the_full_image() {
        let groups = [
            dihedral8(),
            quaternion8(),
            extraspecial(3, 1, Sign::Plus).unwrap(),
            direct_product(&cyclic(2).unwrap(), &cyclic(4).unwrap()).unwrap(),
            crate::group::elementary_abelian(2, 3).unwrap(),
        ];
        for g in groups {
            let (d2, full) = bar_boundaries(&g);
            let small = bar_d3_restricted(&g, Subgroup::whole(&g).generators());
            assert!(small.cols() < full.cols());
            assert_eq!(homology_at(&full, &d2).unwrap(), homology_at(&small, &d2).unwrap(), "{}", g.construction());
        }
    }

    #[test]
    fn cyclic_multipliers_are_trivial() {
        for n in 1..=16 {
            assert!(brute(&cyclic(n).unwrap()).is_trivial(), "Cyc({n})");
        }
    }

    #[test]
    fn small_nonabelian() {
        assert_eq!(brute(&dihedral8()).factors(), &[2]);
        assert!(brute(&quaternion8()).is_trivial());
        assert_eq!(brute(&extraspecial(3, 1, Sign::Plus).unwrap()).factors(), &[3, 3]);
        assert!(brute(&extraspecial(3, 1, Sign::Minus).unwrap()).is_trivial());
    }

    #[test]
    fn bound_is_enforced() {
        let g = cyclic(65).unwrap();
        assert!(matches!(schur_multiplier_brute(&g, 64), Err(Error::SizeExceeded { .. })));
        assert!(MultiplierOracle::new(200).is_err());
    }

    #[test]
    fn abelian_formula_examples() {
        let m = |v: Vec<u64>| multiplier_abelian(&AbelianInvariants::new(v).unwrap()).invariants;
        assert!(m(vec![7]).is_trivial());
        assert_eq!(m(vec![2, 2, 2]).factors(), &[2, 2, 2]);
        assert_eq!(m(vec![2, 4]).factors(), &[2]);
    }

    #[test]
    fn extraspecial_formula_examples() {
        assert_eq!(multiplier_extraspecial_formula(3, 1, Sign::Plus).unwrap().order, 9);
        assert_eq!(multiplier_extraspecial_formula(5, 1, Sign::Minus).unwrap().order, 1);
        assert_eq!(multiplier_extraspecial_formula(2, 2, Sign::Plus).unwrap().order, 32);
        assert_eq!(multiplier_extraspecial_formula(2, 2, Sign::Minus).unwrap().order, 32);
        assert!(multiplier_extraspecial_formula(4, 1, Sign::Plus).is_err());
    }

    #[test]
    fn ganea_examples() {
        let c2 = cyclic(2).unwrap();
        let t = AbelianInvariants::trivial();
        let r = multiplier_ganea(&c2, &c2, &t, &t).unwrap();
        assert_eq!(r.invariants.factors(), &[2]);
        let h = extraspecial(3, 1, Sign::Plus).unwrap();
        let mh = AbelianInvariants::new(vec![3, 3]).unwrap();
        let r = multiplier_ganea(&h, &cyclic(3).unwrap(), &mh, &t).unwrap();
        assert_eq!(r.order, 81);
        let r =
            multiplier_ganea(&dihedral8(), &Group::trivial(), &AbelianInvariants::new(vec![2]).unwrap(), &t).unwrap();
        assert_eq!(r.invariants.factors(), &[2]);
        let g = direct_product(&c2, &c2).unwrap();
        assert_eq!(brute(&g).factors(), &[2]);
    }

    #[test]
    fn frattini_bound_examples() {
        let oracle = MultiplierOracle::new(64).unwrap();
        let b = check_frattini_bound(&extraspecial(3, 1, Sign::Plus).unwrap(), &oracle).unwrap();
        assert_eq!((b.lhs, b.rhs, b.holds), (3, 27, true));
        let b = check_frattini_bound(&crate::group::elementary_abelian(2, 3).unwrap(), &oracle).unwrap();
        assert_eq!((b.lhs, b.rhs, b.holds), (8, 8, true));
        assert!(check_frattini_bound(&cyclic(6).unwrap(), &oracle).is_err());
    }

    #[test]
    fn oracle_cache_is_transparent() {
        let oracle = MultiplierOracle::new(64).unwrap();
        let g = dihedral8();
        let a = oracle.multiplier(&g).unwrap();
        let b = oracle.multiplier(&g).unwrap();
        assert_eq!(a.invariants, b.invariants);
    }
}
