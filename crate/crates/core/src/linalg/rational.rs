//! Exact rationals with a machine-word fast path.
//!
//! Khovanov differentials have coefficients in {-1, 0, 1} before reduction and
//! stay small in practice, so values live in `Ratio<i64>` and are promoted to
//! `BigRational` only when a checked operation overflows.

use alloc::string::ToString;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub enum Rational {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Rational {
    pub fn from_integer(n: i64) -> Self {
        Rational::Small(Ratio::from_integer(n))
    }

    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational::Small(Ratio::new(numer, denom))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_zero(),
            Rational::Big(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_one(),
            Rational::Big(r) => r.is_one(),
        }
    }

    /// True for +1 and -1, the preferred cancellation pivots.
    pub fn is_unit_magnitude(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_integer() && r.numer().abs() == 1,
            Rational::Big(r) => r.is_integer() && r.numer().abs().is_one(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_integer(),
            Rational::Big(r) => r.is_integer(),
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        match self {
            Rational::Small(r) => match r.numer().checked_abs() {
                Some(_) => Rational::Small(r.recip()),
                None => Rational::Big(to_big(r).recip()),
            },
            Rational::Big(r) => Rational::Big(r.recip()).shrink(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_negative(),
            Rational::Big(r) => r.is_negative(),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(r) => to_big(r),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational::Big(r).shrink()
    }

    /// The value as an `i64`, if it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Rational::Small(r) if r.is_integer() => Some(*r.numer()),
            Rational::Big(r) if r.is_integer() => r.numer().to_i64(),
            _ => None,
        }
    }

    fn shrink(self) -> Self {
        match self {
            Rational::Big(r) => match (r.numer().to_i64(), r.denom().to_i64()) {
                (Some(n), Some(d)) => Rational::Small(Ratio::new_raw(n, d)),
                _ => Rational::Big(r),
            },
            small => small,
        }
    }

    fn binop(
        &self,
        rhs: &Self,
        small: impl Fn(&Ratio<i64>, &Ratio<i64>) -> Option<Ratio<i64>>,
        big: impl Fn(BigRational, BigRational) -> BigRational,
    ) -> Self {
        if let (Rational::Small(a), Rational::Small(b)) = (self, rhs) {
            if let Some(r) = small(a, b) {
                return Rational::Small(r);
            }
        }
        Rational::Big(big(self.to_big(), rhs.to_big())).shrink()
    }
}

fn to_big(r: &Ratio<i64>) -> BigRational {
    Ratio::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rational::Small(a), Rational::Small(b)) => a == b,
            _ => self.to_big() == other.to_big(),
        }
    }
}

impl Eq for Rational {}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a), Rational::Small(b)) => {
                // Cross-multiplication in i128 cannot overflow for i64 parts.
                let l = *a.numer() as i128 * *b.denom() as i128;
                let r = *b.numer() as i128 * *a.denom() as i128;
                l.cmp(&r)
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        self.binop(rhs, |a, b| a.checked_add(b), |a, b| a + b)
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        self.binop(rhs, |a, b| a.checked_sub(b), |a, b| a - b)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        self.binop(rhs, |a, b| a.checked_mul(b), |a, b| a * b)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        self.binop(rhs, |a, b| a.checked_div(b), |a, b| a / b)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(r) => match r.numer().checked_neg() {
                Some(n) => Rational::Small(Ratio::new_raw(n, *r.denom())),
                None => Rational::Big(-to_big(&r)),
            },
            Rational::Big(r) => Rational::Big(-r).shrink(),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(r) => f.write_str(&r.to_string()),
            Rational::Big(r) => f.write_str(&r.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_integer(i64::MAX);
        let sum = &big + &Rational::one();
        assert!(matches!(sum, Rational::Big(_)));
        let back = &sum - &Rational::one();
        assert!(matches!(back, Rational::Small(_)));
        assert_eq!(back, big);
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Rational::new(1, 3);
        let b = Rational::new(1, 6);
        assert_eq!(&a + &b, Rational::new(1, 2));
        assert_eq!(&a / &b, Rational::from_integer(2));
        assert_eq!(-(&a * &b), Rational::new(-1, 18));
        assert!(Rational::from_integer(-1).is_unit_magnitude());
        assert!(!Rational::new(1, 2).is_unit_magnitude());
    }

    #[test]
    fn min_value_negation() {
        let m = Rational::from_integer(i64::MIN);
        let n = -m.clone();
        assert_eq!(n.to_big(), -m.to_big());
        assert!(n > Rational::zero());
    }
}
