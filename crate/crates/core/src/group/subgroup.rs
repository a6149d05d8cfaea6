use super::Group;
use crate::error::{Error, Result};

/// A subgroup of some parent group, stored as a sorted list of the parent's
/// element indices together with a witness generating set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent_order: usize,
    elements: Vec<usize>,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, g: &Group, other: &Subgroup) -> Subgroup {
        let elems: Vec<usize> = self.elements.iter().copied().filter(|&x| other.contains(x)).collect();
        Subgroup::from_closed_set(g, elems)
    }

    /// Wraps a set already known to be closed; generators are recomputed.
    pub(crate) fn from_closed_set(g: &Group, mut elements: Vec<usize>) -> Subgroup {
        elements.sort_unstable();
        elements.dedup();
        let generators = minimal_generators(g, &elements);
        Subgroup { parent_order: g.order(), elements, generators }
    }

    /// Validates that `elements` is a subgroup of `g` and wraps it.
    pub fn from_elements(g: &Group, elements: Vec<usize>) -> Result<Subgroup> {
        for &x in &elements {
            g.check_index(x)?;
        }
        let mut sorted = elements;
        sorted.sort_unstable();
        sorted.dedup();
        let mut member = vec![false; g.order()];
        for &x in &sorted {
            member[x] = true;
        }
        if !member[g.identity()] {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        for &a in &sorted {
            if !member[g.inv(a)] {
                return Err(Error::NotASubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &sorted {
                if !member[g.mul(a, b)] {
                    return Err(Error::NotASubgroup(format!("not closed at ({a}, {b})")));
                }
            }
        }
        if !g.order().is_multiple_of(sorted.len()) {
            return Err(Error::NotASubgroup("order does not divide the group order".into()));
        }
        Ok(Subgroup::from_closed_set(g, sorted))
    }

    pub fn trivial(g: &Group) -> Subgroup {
        Subgroup { parent_order: g.order(), elements: vec![g.identity()], generators: vec![] }
    }

    pub fn whole(g: &Group) -> Subgroup {
        Subgroup::from_closed_set(g, (0..g.order()).collect())
    }
}

/// Closure of `gens` under multiplication (orbit algorithm over the Cayley graph).
fn closure(g: &Group, gens: &[usize]) -> Vec<usize> {
    let mut member = vec![false; g.order()];
    let mut out = vec![g.identity()];
    member[g.identity()] = true;
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for &s in gens {
            let y = g.mul(x, s);
            if !member[y] {
                member[y] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Greedy irredundant generating set: repeatedly adds the smallest-index
/// element of largest order not yet covered.
fn minimal_generators(g: &Group, elements: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = vec![g.identity()];
    if elements.len() <= 1 {
        return gens;
    }
    let mut by_order: Vec<(usize, usize)> = elements.iter().map(|&x| (g.element_order(x).unwrap(), x)).collect();
    by_order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for (_, x) in by_order {
        if current.len() == elements.len() {
            break;
        }
        if current.binary_search(&x).is_err() {
            gens.push(x);
            current = closure(g, &gens);
        }
    }
    gens
}

pub fn subgroup_generated(g: &Group, elems: &[usize]) -> Result<Subgroup> {
    for &x in elems {
        g.check_index(x)?;
    }
    let elements = closure(g, elems);
    let mut generators: Vec<usize> = elems.iter().copied().filter(|&x| x != g.identity()).collect();
    generators.dedup();
    Ok(Subgroup { parent_order: g.order(), elements, generators })
}

pub fn is_central(g: &Group, s: &Subgroup) -> bool {
    s.generators().iter().all(|&x| (0..g.order()).all(|y| g.mul(x, y) == g.mul(y, x)))
}

pub fn is_normal(g: &Group, s: &Subgroup) -> bool {
    s.generators().iter().all(|&x| (0..g.order()).all(|y| s.contains(g.mul(g.mul(g.inv(y), x), y))))
}

pub fn center(g: &Group) -> Subgroup {
    let elems = (0..g.order()).filter(|&x| (0..g.order()).all(|y| g.mul(x, y) == g.mul(y, x))).collect();
    Subgroup::from_closed_set(g, elems)
}

pub fn derived_subgroup(g: &Group) -> Subgroup {
    let mut comms: Vec<usize> = Vec::new();
    let mut seen = vec![false; g.order()];
    for a in 0..g.order() {
        for b in 0..g.order() {
            let c = g.commutator(a, b);
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    let elems = closure(g, &comms);
    Subgroup::from_closed_set(g, elems)
}

/// Frattini subgroup of a p-group, generated by commutators and p-th powers.
pub fn frattini(g: &Group) -> Result<Subgroup> {
    let (p, _) = match g.prime_power() {
        Some(pp) => pp,
        None if g.order() == 1 => return Ok(Subgroup::trivial(g)),
        None => return Err(Error::NotPGroup(g.order())),
    };
    let mut gens: Vec<usize> = derived_subgroup(g).elements().to_vec();
    gens.extend((0..g.order()).map(|x| g.pow(x, p)));
    gens.sort_unstable();
    gens.dedup();
    let elems = closure(g, &gens);
    Ok(Subgroup::from_closed_set(g, elems))
}

/// A quotient group together with its projection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: Group,
    /// `projection[x]` is the coset index of `x`.
    pub projection: Vec<usize>,
    /// A representative of each coset (the smallest index in it).
    pub representatives: Vec<usize>,
}

pub fn quotient(g: &Group, n: &Subgroup) -> Result<Quotient> {
    if n.parent_order() != g.order() {
        return Err(Error::PreconditionViolated("subgroup belongs to another group".into()));
    }
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let mut projection = vec![usize::MAX; g.order()];
    let mut representatives = Vec::new();
    for x in 0..g.order() {
        if projection[x] != usize::MAX {
            continue;
        }
        let k = representatives.len();
        representatives.push(x);
        for &y in n.elements() {
            projection[g.mul(x, y)] = k;
        }
    }
    let q = representatives.len();
    let labels = g.labels().map(|_| representatives.iter().map(|&r| format!("{}N", g.label(r))).collect());
    let group = Group::from_fn(
        q,
        |a, b| projection[g.mul(representatives[a], representatives[b])],
        labels,
        format!("({}) / N[{}]", g.construction(), n.order()),
    )?;
    Ok(Quotient { group, projection, representatives })
}

/// The subgroup as a standalone group; element `i` of the result is
/// `s.elements()[i]`.
pub fn subgroup_as_group(g: &Group, s: &Subgroup) -> Result<Group> {
    let elems = s.elements();
    let mut index = vec![usize::MAX; g.order()];
    for (i, &x) in elems.iter().enumerate() {
        index[x] = i;
    }
    let labels = g.labels().map(|_| elems.iter().map(|&x| g.label(x)).collect());
    Group::from_fn(
        elems.len(),
        |a, b| index[g.mul(elems[a], elems[b])],
        labels,
        format!("subgroup of {}", g.construction()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian_invariants, cyclic, dihedral8, direct_product, extraspecial, quaternion8, Sign};

    #[test]
    fn empty_generating_set_gives_trivial_subgroup() {
        let g = dihedral8();
        let s = subgroup_generated(&g, &[]).unwrap();
        assert!(s.is_trivial());
        assert!(subgroup_generated(&g, &[8]).is_err());
    }

    #[test]
    fn center_of_cyclic_is_everything() {
        let g = cyclic(8).unwrap();
        assert_eq!(center(&g).order(), 8);
    }

    #[test]
    fn q8_derived_and_quotient() {
        let q8 = extraspecial(2, 1, Sign::Minus).unwrap();
        let d = derived_subgroup(&q8);
        assert_eq!(d.order(), 2);
        let z = center(&q8);
        let q = quotient(&q8, &z).unwrap();
        assert_eq!(abelian_invariants(&q.group).unwrap().factors(), &[2, 2]);
    }

    #[test]
    fn frattini_of_heisenberg_is_derived() {
        let g = extraspecial(3, 1, Sign::Plus).unwrap();
        assert_eq!(frattini(&g).unwrap(), derived_subgroup(&g));
    }

    #[test]
    fn frattini_requires_p_group() {
        let g = cyclic(6).unwrap();
        assert_eq!(frattini(&g), Err(Error::NotPGroup(6)));
    }

    #[test]
    fn quotient_by_trivial_and_nonnormal() {
        let g = dihedral8();
        let q = quotient(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(q.group.order(), 8);
        // A reflection generates a non-normal subgroup of D8.
        let refl = (0..8).find(|&x| g.element_order(x).unwrap() == 2 && !center(&g).contains(x)).unwrap();
        let s = subgroup_generated(&g, &[refl]).unwrap();
        assert_eq!(quotient(&g, &s).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn quotient_of_c4_by_order_two() {
        let g = cyclic(4).unwrap();
        let s = subgroup_generated(&g, &[2]).unwrap();
        let q = quotient(&g, &s).unwrap();
        assert_eq!(q.group.order(), 2);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(q.projection[g.mul(a, b)], q.group.mul(q.projection[a], q.projection[b]));
            }
        }
    }

    #[test]
    fn quotient_projection_is_homomorphism_on_products() {
        let g = direct_product(&quaternion8(), &cyclic(4).unwrap()).unwrap();
        let z = center(&g);
        let q = quotient(&g, &z).unwrap();
        assert_eq!(q.group.order(), 4);
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(q.projection[g.mul(a, b)], q.group.mul(q.projection[a], q.projection[b]));
            }
        }
    }

    #[test]
    fn from_elements_validates_closure() {
        let g = cyclic(6).unwrap();
        assert!(Subgroup::from_elements(&g, vec![0, 2, 4]).is_ok());
        assert!(Subgroup::from_elements(&g, vec![0, 1]).is_err());
        assert!(Subgroup::from_elements(&g, vec![2, 4]).is_err());
    }
}
