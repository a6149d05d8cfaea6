//! Isomorphism testing by backtracking over generator images.

use serde::{Deserialize, Serialize};

use super::subgroup::{center, derived_subgroup, Subgroup};
use super::Group;
use crate::error::{Error, Result};

/// Largest order for which exact isomorphism search is attempted.
pub const ISO_BUDGET: usize = 64;

/// Per-element invariant preserved by every isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct ElementClass {
    order: usize,
    centralizer: usize,
    in_derived: bool,
    square_roots: usize,
}

fn element_classes(g: &Group) -> Vec<ElementClass> {
    let n = g.order();
    let d = derived_subgroup(g);
    let mut roots = vec![0usize; n];
    for y in 0..n {
        roots[g.mul(y, y)] += 1;
    }
    (0..n)
        .map(|x| ElementClass {
            order: g.element_order(x).unwrap(),
            centralizer: (0..n).filter(|&y| g.mul(x, y) == g.mul(y, x)).count(),
            in_derived: d.contains(x),
            square_roots: roots[x],
        })
        .collect()
}

/// Structural summary used for quick rejection and, above the search budget,
/// as a stand-in for isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    pub center_order: usize,
    pub derived_order: usize,
    pub exponent: usize,
    /// Sorted multiset of (element order, centralizer order, in G', #square roots).
    pub order_profile: Vec<(usize, usize, bool, usize)>,
}

pub fn fingerprint(g: &Group) -> Fingerprint {
    let mut profile: Vec<(usize, usize, bool, usize)> =
        element_classes(g).into_iter().map(|c| (c.order, c.centralizer, c.in_derived, c.square_roots)).collect();
    profile.sort_unstable();
    Fingerprint {
        order: g.order(),
        center_order: center(g).order(),
        derived_order: derived_subgroup(g).order(),
        exponent: g.exponent(),
        order_profile: profile,
    }
}

/// Exact isomorphism test for groups of order at most [`ISO_BUDGET`].
///
/// Returns a witness `phi` with `phi[x]` the image of `x` when the groups are
/// isomorphic.
pub fn is_isomorphic(a: &Group, b: &Group) -> Result<Option<Vec<usize>>> {
    let n = a.order();
    if n > ISO_BUDGET || b.order() > ISO_BUDGET {
        return Err(Error::SizeExceeded { order: n.max(b.order()), bound: ISO_BUDGET });
    }
    if n != b.order() {
        return Ok(None);
    }
    let ca = element_classes(a);
    let cb = element_classes(b);
    let mut sa = ca.clone();
    let mut sb = cb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(None);
    }

    let gens = Subgroup::whole(a).generators().to_vec();
    let candidates: Vec<Vec<usize>> = gens.iter().map(|&x| (0..n).filter(|&y| cb[y] == ca[x]).collect()).collect();

    let mut search =
        Search { a, b, gens: &gens, phi: vec![usize::MAX; n], used: vec![false; n], domain: vec![a.identity()] };
    search.phi[a.identity()] = b.identity();
    search.used[b.identity()] = true;
    if search.extend(0, &candidates) {
        Ok(Some(search.phi))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    a: &'a Group,
    b: &'a Group,
    gens: &'a [usize],
    phi: Vec<usize>,
    used: Vec<bool>,
    domain: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self, level: usize, candidates: &[Vec<usize>]) -> bool {
        if level == self.gens.len() {
            return self.domain.len() == self.a.order();
        }
        for &y in &candidates[level] {
            let mark = self.domain.len();
            if self.try_assign(level, y) && self.extend(level + 1, candidates) {
                return true;
            }
            self.rollback(mark);
        }
        false
    }

    /// Grows the partial map to ⟨gens[..=level]⟩ with `gens[level] ↦ y`,
    /// checking every Cayley-graph edge for consistency and injectivity.
    fn try_assign(&mut self, level: usize, y: usize) -> bool {
        let active = &self.gens[..=level];
        let targets: Vec<usize> =
            active.iter().enumerate().map(|(i, &g)| if i == level { y } else { self.phi[g] }).collect();
        let mut i = 0;
        while i < self.domain.len() {
            let u = self.domain[i];
            for (&g, &t) in active.iter().zip(&targets) {
                let ug = self.a.mul(u, g);
                let vt = self.b.mul(self.phi[u], t);
                if self.phi[ug] == usize::MAX {
                    if self.used[vt] {
                        return false;
                    }
                    self.phi[ug] = vt;
                    self.used[vt] = true;
                    self.domain.push(ug);
                } else if self.phi[ug] != vt {
                    return false;
                }
            }
            i += 1;
        }
        true
    }

    fn rollback(&mut self, mark: usize) {
        for &u in &self.domain[mark..] {
            self.used[self.phi[u]] = false;
            self.phi[u] = usize::MAX;
        }
        self.domain.truncate(mark);
    }
}

/// Outcome of a structural comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    /// Above the search budget the fingerprints agree; not a proof.
    FingerprintMatch,
    FingerprintMismatch,
}

impl IsoVerdict {
    pub fn agrees(self) -> bool {
        matches!(self, IsoVerdict::Isomorphic | IsoVerdict::FingerprintMatch)
    }

    pub fn fingerprint_only(self) -> bool {
        matches!(self, IsoVerdict::FingerprintMatch | IsoVerdict::FingerprintMismatch)
    }
}

/// Exact search within the budget, fingerprint comparison above it.
pub fn compare_structure(a: &Group, b: &Group) -> IsoVerdict {
    if a.order() <= ISO_BUDGET && b.order() <= ISO_BUDGET {
        match is_isomorphic(a, b) {
            Ok(Some(_)) => IsoVerdict::Isomorphic,
            _ => IsoVerdict::NotIsomorphic,
        }
    } else if fingerprint(a) == fingerprint(b) {
        IsoVerdict::FingerprintMatch
    } else {
        IsoVerdict::FingerprintMismatch
    }
}
