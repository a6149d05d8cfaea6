//! Finite groups stored as explicit multiplication tables.
//!
//! A [`Group`] is immutable once built. Every constructor funnels through
//! [`Group::from_table`], which checks the group axioms exhaustively, so any
//! `Group` value in the program is known to be a group.

mod abelian;
mod construct;
mod expr;
mod iso;
mod subgroup;

pub use abelian::{abelian_invariants, AbelianInvariants};
pub use construct::{
    central_product, central_product_canonical, cyclic, dihedral8, direct_product, elementary_abelian, extraspecial,
    quaternion8, Sign,
};
pub use expr::{GroupExpr, Identification};
pub use iso::{compare_structure, fingerprint, is_isomorphic, Fingerprint, IsoVerdict, ISO_BUDGET};
pub use subgroup::{
    center, derived_subgroup, frattini, is_central, is_normal, quotient, subgroup_as_group, subgroup_generated,
    Quotient, Subgroup,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order for which tables are accepted (associativity is checked
/// exhaustively up to here).
pub const MAX_ORDER: usize = 256;

/// Default configured order bound for constructions.
pub const DEFAULT_ORDER_BOUND: usize = 128;

/// Schema tag carried by every serialized document.
pub const SCHEMA: &str = "pgcl/1";

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Group {
    order: usize,
    identity: usize,
    table: Vec<u16>,
    inverses: Vec<u16>,
    labels: Option<Vec<String>>,
    construction: String,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group").field("order", &self.order).field("construction", &self.construction).finish()
    }
}

impl Group {
    /// Builds a group from a row-major table (`table[a * n + b]` is `a·b`).
    ///
    /// Fails unless the table is a Latin square with a two-sided identity and
    /// the operation is associative on every triple.
    pub fn from_table(
        order: usize,
        table: Vec<usize>,
        labels: Option<Vec<String>>,
        construction: impl Into<String>,
    ) -> Result<Group> {
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::SizeExceeded { order, bound: MAX_ORDER });
        }
        if table.len() != order * order {
            return Err(Error::InvalidTable(format!("expected {} entries, found {}", order * order, table.len())));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::IndexOutOfRange { index: bad, order });
        }
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(Error::InvalidTable("label count differs from order".into()));
            }
        }
        let table: Vec<u16> = table.into_iter().map(|x| x as u16).collect();

        // Latin square.
        let mut seen = vec![0usize; order];
        for a in 0..order {
            for b in 0..order {
                let x = table[a * order + b] as usize;
                if seen[x] == 2 * a + 1 {
                    return Err(Error::InvalidTable(format!("row {a} repeats {x}")));
                }
                seen[x] = 2 * a + 1;
            }
        }
        for b in 0..order {
            for a in 0..order {
                let x = table[a * order + b] as usize;
                if seen[x] == 2 * b + 2 * order + 2 {
                    return Err(Error::InvalidTable(format!("column {b} repeats {x}")));
                }
                seen[x] = 2 * b + 2 * order + 2;
            }
        }

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;

        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b] as usize;
                let row_ab = &table[ab * order..(ab + 1) * order];
                let row_b = &table[b * order..(b + 1) * order];
                let row_a = &table[a * order..(a + 1) * order];
                for c in 0..order {
                    if row_ab[c] != row_a[row_b[c] as usize] {
                        return Err(Error::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }

        let mut inverses = vec![0u16; order];
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| table[a * order + b] as usize == identity)
                .expect("latin square row contains the identity");
            if table[inv * order + a] as usize != identity {
                return Err(Error::InvalidTable(format!("{a} has no two-sided inverse")));
            }
            inverses[a] = inv as u16;
        }

        Ok(Group { order, identity, table, inverses, labels, construction: construction.into() })
    }

    /// Builds a group from a closed operation on `0..order`.
    pub fn from_fn(
        order: usize,
        op: impl Fn(usize, usize) -> usize,
        labels: Option<Vec<String>>,
        construction: impl Into<String>,
    ) -> Result<Group> {
        if order > MAX_ORDER {
            return Err(Error::SizeExceeded { order, bound: MAX_ORDER });
        }
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(op(a, b));
            }
        }
        Group::from_table(order, table, labels, construction)
    }

    pub fn trivial() -> Group {
        Group::from_table(1, vec![0], None, "Cyc(1)").expect("trivial group")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut result = self.identity;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn construction(&self) -> &str {
        &self.construction
    }

    pub fn with_construction(mut self, construction: impl Into<String>) -> Group {
        self.construction = construction.into();
        self
    }

    /// Raw table in row-major order.
    pub fn table(&self) -> &[u16] {
        &self.table
    }

    pub fn check_index(&self, x: usize) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: x, order: self.order })
        }
    }

    pub fn element_order(&self, x: usize) -> Result<usize> {
        self.check_index(x)?;
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        Ok(k)
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|x| self.element_order(x).unwrap()).collect()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.element_orders().into_iter().fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `Some((p, n))` when the order is `p^n` with `n ≥ 1`.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        prime_power(self.order as u64)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&GroupDocument::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Group> {
        let doc: GroupDocument = serde_json::from_str(text)?;
        doc.into_group()
    }
}

/// Serialized form of a [`Group`].
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupDocument {
    pub schema: String,
    pub order: usize,
    pub identity: usize,
    pub table: Vec<usize>,
    pub labels: Option<Vec<String>>,
    pub construction: String,
}

impl From<&Group> for GroupDocument {
    fn from(g: &Group) -> Self {
        GroupDocument {
            schema: SCHEMA.to_string(),
            order: g.order,
            identity: g.identity,
            table: g.table.iter().map(|&x| x as usize).collect(),
            labels: g.labels.clone(),
            construction: g.construction.clone(),
        }
    }
}

impl GroupDocument {
    pub fn into_group(self) -> Result<Group> {
        if self.schema != SCHEMA {
            return Err(Error::Serialization(format!("unsupported schema {:?}", self.schema)));
        }
        let g = Group::from_table(self.order, self.table, self.labels, self.construction)?;
        if g.identity != self.identity {
            return Err(Error::InvalidTable(format!(
                "declared identity {} but the table's identity is {}",
                self.identity, g.identity
            )));
        }
        Ok(g)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}
