//! Laurent polynomials in `q` with integer coefficients.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, exp);
        p
    }

    /// `q + q^-1`, the value on a single circle.
    pub fn circle() -> Self {
        Self::monomial(1, 1) + Self::monomial(1, -1)
    }

    pub fn add_term(&mut self, coeff: i64, exp: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.coeffs.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    /// Substitutes `q -> q^-1`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            out.add_term(c * k, e);
        }
        out
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(c, e);
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (&e, &c)) in self.coeffs.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match k {
                0 if c < 0 => f.write_str("-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            let m = c.unsigned_abs();
            match (e, m) {
                (0, _) => write!(f, "{m}")?,
                (1, 1) => f.write_str("q")?,
                (1, _) => write!(f, "{m}q")?,
                (_, 1) => write!(f, "q^{e}")?,
                _ => write!(f, "{m}q^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn display() {
        let p = LaurentPoly::monomial(-1, -3) + LaurentPoly::monomial(2, 0) + LaurentPoly::monomial(1, 1) + LaurentPoly::monomial(-3, 4);
        assert_eq!(p.to_string(), "-q^-3 + 2 + q - 3q^4");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn circle_squared() {
        let u2 = LaurentPoly::circle().pow(2);
        assert_eq!(u2.coeff(2), 1);
        assert_eq!(u2.coeff(0), 2);
        assert_eq!(u2.coeff(-2), 1);
        assert_eq!(u2.terms().count(), 3);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = LaurentPoly::monomial(3, 2) - LaurentPoly::monomial(3, 2);
        assert!(p.is_zero());
        assert_eq!(LaurentPoly::circle().invert_variable(), LaurentPoly::circle());
    }
}
