use std::fmt;

use serde::{Deserialize, Serialize};

use super::construct::{
    central_product, central_product_canonical, cyclic, dihedral8, direct_product, elementary_abelian, extraspecial,
    quaternion8, Sign,
};
use super::{prime_power, Group};
use crate::error::{Error, Result};

/// How the two factors of a central product are amalgamated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Identification {
    /// Left derived subgroup onto the order-p subgroup of a cyclic right factor.
    Canonical,
    /// Explicit generator pairs `(left element, right element)`.
    Pairs(Vec<(usize, usize)>),
}

/// Syntax tree of a group construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupExpr {
    Cyc(usize),
    ElemAb(usize, u32),
    Es(usize, u32, Sign),
    D8,
    Q8,
    Dir(Box<GroupExpr>, Box<GroupExpr>),
    CProd(Box<GroupExpr>, Box<GroupExpr>, Identification),
}

impl GroupExpr {
    pub fn dir(a: GroupExpr, b: GroupExpr) -> GroupExpr {
        GroupExpr::Dir(Box::new(a), Box::new(b))
    }

    pub fn cprod(a: GroupExpr, b: GroupExpr) -> GroupExpr {
        GroupExpr::CProd(Box::new(a), Box::new(b), Identification::Canonical)
    }

    fn precedence(&self) -> u8 {
        match self {
            GroupExpr::Dir(..) => 1,
            GroupExpr::CProd(..) => 2,
            _ => 3,
        }
    }

    /// Order of the group the expression denotes, without building it.
    /// `None` for explicit identifications (their kernel size is only known
    /// after construction).
    pub fn predicted_order(&self) -> Option<u128> {
        Some(match self {
            GroupExpr::Cyc(q) => *q as u128,
            GroupExpr::ElemAb(p, k) => (*p as u128).checked_pow(*k)?,
            GroupExpr::Es(p, m, _) => (*p as u128).checked_pow(2 * m + 1)?,
            GroupExpr::D8 | GroupExpr::Q8 => 8,
            GroupExpr::Dir(a, b) => a.predicted_order()?.checked_mul(b.predicted_order()?)?,
            GroupExpr::CProd(a, b, Identification::Canonical) => {
                let (p, _) = prime_power(b.predicted_order()? as u64)?;
                a.predicted_order()?.checked_mul(b.predicted_order()?)? / p as u128
            }
            GroupExpr::CProd(_, _, Identification::Pairs(_)) => return None,
        })
    }

    /// Canonical central products need a nontrivial cyclic p-group on the right.
    pub fn check_semantics(&self) -> Result<()> {
        match self {
            GroupExpr::Dir(a, b) => {
                a.check_semantics()?;
                b.check_semantics()
            }
            GroupExpr::CProd(a, b, ident) => {
                a.check_semantics()?;
                b.check_semantics()?;
                if *ident == Identification::Canonical {
                    match **b {
                        GroupExpr::Cyc(q) if prime_power(q as u64).is_some() => Ok(()),
                        _ => Err(Error::PreconditionViolated(format!(
                            "canonical central product needs a cyclic p-group on the right, found {b}"
                        ))),
                    }
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Builds the group, refusing any intermediate of order above `bound`.
    pub fn build(&self, bound: usize) -> Result<Group> {
        if let Some(n) = self.predicted_order() {
            if n > bound as u128 {
                return Err(Error::SizeExceeded { order: n.min(usize::MAX as u128) as usize, bound });
            }
        }
        let g = match self {
            GroupExpr::Cyc(q) => cyclic(*q)?,
            GroupExpr::ElemAb(p, k) => elementary_abelian(*p, *k)?,
            GroupExpr::Es(p, m, s) => extraspecial(*p, *m, *s)?,
            GroupExpr::D8 => dihedral8(),
            GroupExpr::Q8 => quaternion8(),
            GroupExpr::Dir(a, b) => direct_product(&a.build(bound)?, &b.build(bound)?)?,
            GroupExpr::CProd(a, b, Identification::Canonical) => {
                self.check_semantics()?;
                central_product_canonical(&a.build(bound)?, &b.build(bound)?)?
            }
            GroupExpr::CProd(a, b, Identification::Pairs(pairs)) => {
                central_product(&a.build(bound)?, &b.build(bound)?, pairs)?
            }
        };
        if g.order() > bound {
            return Err(Error::SizeExceeded { order: g.order(), bound });
        }
        Ok(g.with_construction(self.to_string()))
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, e: &GroupExpr, min: u8| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            GroupExpr::Cyc(q) => write!(f, "Cyc({q})"),
            GroupExpr::ElemAb(p, k) => write!(f, "ElemAb({p},{k})"),
            GroupExpr::Es(p, m, s) => write!(f, "ES({p},{m},{})", s.symbol()),
            GroupExpr::D8 => write!(f, "D8"),
            GroupExpr::Q8 => write!(f, "Q8"),
            GroupExpr::Dir(a, b) => {
                child(f, a, 1)?;
                write!(f, " x ")?;
                child(f, b, 2)
            }
            GroupExpr::CProd(a, b, ident) => {
                child(f, a, 2)?;
                match ident {
                    Identification::Canonical => write!(f, " . ")?,
                    Identification::Pairs(pairs) => {
                        let list: Vec<String> = pairs.iter().map(|(x, y)| format!("{x}:{y}")).collect();
                        write!(f, " .[{}] ", list.join(","))?
                    }
                }
                child(f, b, 3)
            }
        }
    }
}
