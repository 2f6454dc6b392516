//! Laurent polynomials: a `Poly` together with a minimum-exponent offset.
//!
//! The stored value is `q^offset * base` with the canonical form requiring a
//! nonzero constant term in `base` (offset 0 and zero base for the zero
//! value). Negative offsets house objects like q^r with r < 0 and the
//! q-integer [m] of a negative index.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::{rat_pow, BigRat};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    base: Poly,
    offset: i64,
}

impl LaurentPoly {
    /// Canonicalize `q^offset * base`.
    pub fn new(base: Poly, offset: i64) -> Self {
        match base.valuation() {
            None => LaurentPoly {
                base: Poly::zero(),
                offset: 0,
            },
            Some(0) => LaurentPoly { base, offset },
            Some(v) => LaurentPoly {
                base: base.shift_down(v),
                offset: offset + v as i64,
            },
        }
    }

    pub fn zero() -> Self {
        LaurentPoly {
            base: Poly::zero(),
            offset: 0,
        }
    }

    pub fn one() -> Self {
        LaurentPoly {
            base: Poly::one(),
            offset: 0,
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        LaurentPoly::new(p, 0)
    }

    pub fn constant(c: BigRat) -> Self {
        LaurentPoly::from_poly(Poly::constant(c))
    }

    /// `c * q^e` with e of either sign.
    pub fn monomial(c: BigRat, e: i64) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            base: Poly::constant(c),
            offset: e,
        }
    }

    /// `1 - q^e` for any integer e (zero when e = 0).
    pub fn one_minus_q_pow(e: i64) -> Self {
        use std::cmp::Ordering::*;
        match e.cmp(&0) {
            Equal => LaurentPoly::zero(),
            Greater => LaurentPoly::from_poly(Poly::one_minus_q_pow(e as usize)),
            // 1 - q^-t = q^-t (q^t - 1)
            Less => {
                let t = (-e) as usize;
                LaurentPoly {
                    base: -Poly::one_minus_q_pow(t),
                    offset: e,
                }
            }
        }
    }

    /// The q-integer [m] = (1 - q^m)/(1 - q), defined for every integer m:
    /// [0] = 0 and [-t] = -q^-t [t].
    pub fn q_integer(m: i64) -> Self {
        use std::cmp::Ordering::*;
        match m.cmp(&0) {
            Equal => LaurentPoly::zero(),
            Greater => {
                LaurentPoly::from_poly(Poly::from_coeffs(vec![BigRat::one(); m as usize]))
            }
            Less => {
                let t = (-m) as usize;
                LaurentPoly {
                    base: Poly::from_coeffs(vec![-BigRat::one(); t]),
                    offset: m,
                }
            }
        }
    }

    pub fn base(&self) -> &Poly {
        &self.base
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.offset == 0 && self.base.is_one()
    }

    /// Exponent of the highest term, `None` for zero.
    pub fn max_exponent(&self) -> Option<i64> {
        self.base.degree().map(|d| d as i64 + self.offset)
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        LaurentPoly::new(self.base.scale(c), self.offset)
    }

    /// Multiply by q^e.
    pub fn mul_q_pow(&self, e: i64) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            base: self.base.clone(),
            offset: self.offset + e,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute q -> q^t.
    pub fn subst_power(&self, t: u32) -> Self {
        LaurentPoly {
            base: self.base.subst_power(t),
            offset: self.offset * t as i64,
        }
    }

    /// Exact value at q = x; errors at x = 0 with a negative offset.
    pub fn eval(&self, x: &BigRat) -> Result<BigRat> {
        if self.is_zero() {
            return Ok(BigRat::zero());
        }
        if x.is_zero() && self.offset < 0 {
            return Err(Error::PoleAtPoint("0 with negative exponent".into()));
        }
        if x.is_zero() {
            return Ok(if self.offset == 0 {
                self.base.coeff(0)
            } else {
                BigRat::zero()
            });
        }
        Ok(self.base.eval(x) * rat_pow(x, self.offset))
    }

    /// The underlying `Poly` when no negative exponents are present.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.offset < 0 {
            return None;
        }
        Some(self.base.shift_up(self.offset as usize))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.offset == 0 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "q^({}) * ({})", self.offset, self.base)
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let off = self.offset.min(rhs.offset);
        let a = self.base.shift_up((self.offset - off) as usize);
        let b = rhs.base.shift_up((rhs.offset - off) as usize);
        LaurentPoly::new(&a + &b, off)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        // Bases have nonzero constant terms, so the product is canonical.
        LaurentPoly {
            base: &self.base * &rhs.base,
            offset: self.offset + rhs.offset,
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            base: -&self.base,
            offset: self.offset,
        }
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_value_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_frac};

    #[test]
    fn canonical_offset() {
        // q^-1 - 1 = q^-1 (1 - q)
        let f = LaurentPoly::monomial(rat(1), -1) - LaurentPoly::one();
        assert_eq!(f.offset(), -1);
        assert_eq!(f.base(), &Poly::from_int_coeffs(&[1, -1]));
    }

    #[test]
    fn negative_q_integer() {
        // [-1] = -q^-1
        let m = LaurentPoly::q_integer(-1);
        assert_eq!(m, LaurentPoly::monomial(rat(-1), -1));
        // [-3] = -q^-3 (1 + q + q^2)
        let m = LaurentPoly::q_integer(-3);
        assert_eq!(m.offset(), -3);
        assert_eq!(m.base(), &Poly::from_int_coeffs(&[-1, -1, -1]));
        assert!(LaurentPoly::q_integer(0).is_zero());
    }

    #[test]
    fn q_integer_matches_rational_formula() {
        // [m] (1 - q) = 1 - q^m on both signs of m
        for m in [-5i64, -1, 1, 2, 7] {
            let lhs = LaurentPoly::q_integer(m) * LaurentPoly::one_minus_q_pow(1);
            assert_eq!(lhs, LaurentPoly::one_minus_q_pow(m));
        }
    }

    #[test]
    fn eval_with_offset() {
        // q^-1 (1 - q) at 1/2 -> 2 * (1/2) = 1
        let f = LaurentPoly::new(Poly::from_int_coeffs(&[1, -1]), -1);
        assert_eq!(f.eval(&rat_frac(1, 2)).unwrap(), rat(1));
        assert!(f.eval(&rat(0)).is_err());
    }

    #[test]
    fn mul_adds_offsets() {
        let a = LaurentPoly::one_minus_q_pow(-1);
        let b = LaurentPoly::one_minus_q_pow(1);
        // (1 - q^-1)(1 - q) = -q^-1 (1 - q)^2
        let prod = a * b;
        assert_eq!(prod.offset(), -1);
        assert_eq!(prod.base(), &Poly::from_int_coeffs(&[-1, 2, -1]));
    }
}
