use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::subgroup::{quotient, subgroup_generated};
use super::Group;
use crate::error::{Error, Result};

/// Invariant factors `d1 | d2 | … | dk` (each ≥ 2) of a finite abelian group.
/// The empty list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianInvariants(Vec<u64>);

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants(Vec::new())
    }

    /// Validates an invariant-factor chain.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::PreconditionViolated("invariant factors must be at least 2".into()));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::PreconditionViolated(format!("{factors:?} is not a divisibility chain")));
        }
        Ok(AbelianInvariants(factors))
    }

    /// Normalises an arbitrary list of cyclic orders `⊕ C_{n_i}` into
    /// invariant-factor form (orders 0 are not allowed, 1s are dropped).
    pub fn from_cyclic_orders(orders: impl IntoIterator<Item = u64>) -> Self {
        // prime -> exponents of the primary components
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for n in orders {
            assert!(n > 0, "cyclic order must be positive");
            for (p, e) in factorize(n) {
                primary.entry(p).or_default().push(e);
            }
        }
        let len = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for (p, mut exps) in primary {
            exps.sort_unstable();
            // Largest exponents go to the last invariant factors.
            for (slot, e) in factors.iter_mut().rev().zip(exps.iter().rev()) {
                *slot *= p.pow(*e);
            }
        }
        AbelianInvariants(factors)
    }

    pub fn factors(&self) -> &[u64] {
        &self.0
    }

    pub fn order(&self) -> u64 {
        self.0.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn direct_sum(&self, other: &AbelianInvariants) -> AbelianInvariants {
        AbelianInvariants::from_cyclic_orders(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `A ⊗ B = ⊕_{i,j} C_{gcd(a_i, b_j)}`.
    pub fn tensor(&self, other: &AbelianInvariants) -> AbelianInvariants {
        let mut orders = Vec::new();
        for &a in &self.0 {
            for &b in &other.0 {
                orders.push(num_integer::gcd(a, b));
            }
        }
        AbelianInvariants::from_cyclic_orders(orders)
    }

    /// True when every factor is a power of `p`.
    pub fn is_p_group(&self, p: u64) -> bool {
        self.0.iter().all(|&d| {
            let mut d = d;
            while d % p == 0 {
                d /= p;
            }
            d == 1
        })
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|d| format!("C{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factors of an abelian group, found by repeatedly splitting off a
/// cyclic direct factor generated by an element of maximal order.
pub fn abelian_invariants(g: &Group) -> Result<AbelianInvariants> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let mut factors = Vec::new();
    let mut current = g.clone();
    while current.order() > 1 {
        let orders = current.element_orders();
        let (x, &d) =
            orders.iter().enumerate().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))).expect("nonempty group");
        factors.push(d as u64);
        let c = subgroup_generated(&current, &[x])?;
        current = quotient(&current, &c)?.group;
    }
    factors.reverse();
    AbelianInvariants::new(factors)
}
