use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer arithmetic used by the elimination engines. Fixed-width
/// implementations report overflow by returning `None`; the caller then
/// reruns the whole elimination with [`BigInt`].
pub(crate) trait Coeff: Clone + PartialEq + Debug {
    fn from_i64(v: i64) -> Self;
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `|self| < |other|`
    fn magnitude_lt(&self, other: &Self) -> bool;
    /// Truncating division: `self = q·d + r` with `|r| < |d|`.
    fn div_rem(&self, d: &Self) -> Option<(Self, Self)>;
    /// `self - q·b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Coeff for i64 {
    #[inline]
    fn from_i64(v: i64) -> Self {
        v
    }
    #[inline]
    fn zero() -> Self {
        0
    }
    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    #[inline]
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    #[inline]
    fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        Some((self.checked_div(*d)?, self.checked_rem(*d)?))
    }
    #[inline]
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        Some(Integer::div_rem(self, d))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_width_reports_overflow() {
        assert_eq!(i64::MAX.sub_mul(&-1, &1), None);
        assert_eq!(Coeff::div_rem(&i64::MIN, &-1), None);
        assert_eq!(Coeff::div_rem(&-7i64, &2), Some((-3, -1)));
    }

    #[test]
    fn bigint_matches_i64_on_small_values() {
        for a in -20i64..20 {
            for d in [-7i64, -3, -1, 1, 2, 5] {
                let (q, r) = Coeff::div_rem(&a, &d).unwrap();
                let (bq, br) = Coeff::div_rem(&BigInt::from(a), &BigInt::from(d)).unwrap();
                assert_eq!((BigInt::from(q), BigInt::from(r)), (bq, br));
            }
        }
    }
}
