//! Reduced rational functions in q.
//!
//! A `RatFunc` stores a Laurent numerator over a denominator that is kept
//! monic, offset-free (its q-power content is moved into the numerator
//! offset) and coprime to the numerator's polynomial part. With that
//! normalization equal values have identical representations, so `PartialEq`
//! is derived.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::poly::Poly;
use crate::rat::BigRat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    den: Poly,
}

impl RatFunc {
    /// Reduce `num / den` to canonical form (the normalize operation).
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisorZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let offset = num.offset() - den.offset();
        let g = num.base().gcd(den.base())?;
        let nb = num.base().try_divexact(&g)?.expect("gcd divides numerator");
        let db = den.base().try_divexact(&g)?.expect("gcd divides denominator");
        let lc_inv = db.leading_coeff().expect("nonzero denominator").clone().recip();
        Ok(RatFunc {
            num: LaurentPoly::new(nb.scale(&lc_inv), offset),
            den: db.make_monic(),
        })
    }

    /// Construct from parts already known to satisfy the invariants:
    /// `den` monic with nonzero constant term, coprime to `num.base()`.
    pub(crate) fn from_reduced_parts(num: LaurentPoly, den: Poly) -> RatFunc {
        debug_assert!(!den.is_zero());
        debug_assert!(den.leading_coeff().is_some_and(|c| c.is_one()));
        debug_assert!(!den.coeff(0).is_zero());
        if num.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num, den }
    }

    pub fn zero() -> RatFunc {
        RatFunc {
            num: LaurentPoly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> RatFunc {
        RatFunc {
            num: LaurentPoly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_laurent(num: LaurentPoly) -> RatFunc {
        RatFunc {
            num,
            den: Poly::one(),
        }
    }

    pub fn from_poly(num: Poly) -> RatFunc {
        RatFunc::from_laurent(LaurentPoly::from_poly(num))
    }

    pub fn constant(c: BigRat) -> RatFunc {
        RatFunc::from_laurent(LaurentPoly::constant(c))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &BigRat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisorZero);
        }
        RatFunc::new(
            LaurentPoly::from_poly(self.den.clone()),
            self.num.clone(),
        )
    }

    /// Exact value at q = x.
    pub fn eval(&self, x: &BigRat) -> Result<BigRat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(x.to_string()));
        }
        let n = self
            .num
            .eval(x)
            .map_err(|_| Error::PoleAtPoint(x.to_string()))?;
        Ok(n / d)
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        let mut acc = RatFunc::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // Henrici's scheme: only the common denominator part can cancel
        // against the combined numerator, so the second gcd stays small.
        let g1 = self.den.gcd(&rhs.den).expect("nonzero denominators");
        let b1 = self
            .den
            .try_divexact(&g1)
            .unwrap()
            .expect("gcd divides denominator");
        let d1 = rhs
            .den
            .try_divexact(&g1)
            .unwrap()
            .expect("gcd divides denominator");
        let t = &(self.num.clone() * LaurentPoly::from_poly(d1.clone()))
            + &(rhs.num.clone() * LaurentPoly::from_poly(b1));
        if t.is_zero() {
            return RatFunc::zero();
        }
        if g1.is_one() {
            return RatFunc::from_reduced_parts(t, &self.den * &d1);
        }
        let g2 = t.base().gcd(&g1).expect("nonzero");
        let num = LaurentPoly::new(
            t.base().try_divexact(&g2).unwrap().expect("gcd divides"),
            t.offset(),
        );
        let den_right = rhs
            .den
            .try_divexact(&g2)
            .unwrap()
            .expect("g2 divides g1 divides den");
        RatFunc::from_reduced_parts(num, &self.den.try_divexact(&g1).unwrap().unwrap() * &den_right)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // Cross-cancel before multiplying.
        let ga = self.num.base().gcd(&rhs.den).expect("nonzero");
        let gc = rhs.num.base().gcd(&self.den).expect("nonzero");
        let na = LaurentPoly::new(
            self.num.base().try_divexact(&ga).unwrap().unwrap(),
            self.num.offset(),
        );
        let nc = LaurentPoly::new(
            rhs.num.base().try_divexact(&gc).unwrap().unwrap(),
            rhs.num.offset(),
        );
        let db = self.den.try_divexact(&gc).unwrap().unwrap();
        let dd = rhs.den.try_divexact(&ga).unwrap().unwrap();
        RatFunc::from_reduced_parts(na * nc, &db * &dd)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
        impl $trait<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_value_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_frac};
    use proptest::prelude::*;

    fn lp(cs: &[i64], off: i64) -> LaurentPoly {
        LaurentPoly::new(Poly::from_int_coeffs(cs), off)
    }

    #[test]
    fn normalize_cancels_q_powers() {
        // (q^2 - q) / q  ->  q - 1
        let f = RatFunc::new(lp(&[0, -1, 1], 0), lp(&[0, 1], 0)).unwrap();
        assert_eq!(f, RatFunc::from_poly(Poly::from_int_coeffs(&[-1, 1])));
    }

    #[test]
    fn normalize_cancels_gcd() {
        // (1-q)^2 / ((1-q)(1+q)) = (1-q)/(1+q); monic den flips signs
        let num = lp(&[1, -2, 1], 0);
        let den = lp(&[1, 0, -1], 0);
        let f = RatFunc::new(num, den).unwrap();
        assert_eq!(f.den(), &Poly::from_int_coeffs(&[1, 1]));
        assert_eq!(f.num(), &lp(&[1, -1], 0));
        // cross-check by evaluation
        assert_eq!(f.eval(&rat(3)).unwrap(), rat_frac(-2, 4));
    }

    #[test]
    fn normalize_negative_offset() {
        // (q^-1 - 1) / 1 = q^-1 (1 - q)
        let f = RatFunc::new(lp(&[1, -1], -1), LaurentPoly::one()).unwrap();
        assert_eq!(f.num().offset(), -1);
        assert_eq!(f.num().base(), &Poly::from_int_coeffs(&[1, -1]));
        assert_eq!(f.eval(&rat_frac(1, 2)).unwrap(), rat(1));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFunc::new(LaurentPoly::one(), LaurentPoly::zero()),
            Err(Error::DivisorZero)
        );
    }

    #[test]
    fn eval_pole_detected() {
        // (q+1)/(q-1) at 3 -> 2, at 1 -> pole
        let f = RatFunc::new(lp(&[1, 1], 0), lp(&[-1, 1], 0)).unwrap();
        assert_eq!(f.eval(&rat(3)).unwrap(), rat(2));
        assert!(matches!(f.eval(&rat(1)), Err(Error::PoleAtPoint(_))));
    }

    #[test]
    fn addition_reduces() {
        // 1/(1-q) + 1/(1+q) = 2/(1-q^2)
        let a = RatFunc::new(LaurentPoly::one(), lp(&[1, -1], 0)).unwrap();
        let b = RatFunc::new(LaurentPoly::one(), lp(&[1, 1], 0)).unwrap();
        let s = &a + &b;
        let expect = RatFunc::new(LaurentPoly::constant(rat(2)), lp(&[1, 0, -1], 0)).unwrap();
        assert_eq!(s, expect);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn eval_is_additive(
            a in small_ratfunc(),
            b in small_ratfunc(),
            x in -5i64..=5,
        ) {
            let x = rat(x);
            let sum = &a + &b;
            if let (Ok(fa), Ok(fb), Ok(fs)) = (a.eval(&x), b.eval(&x), sum.eval(&x)) {
                prop_assert_eq!(fs, fa + fb);
            }
        }

        #[test]
        fn eval_is_multiplicative(
            a in small_ratfunc(),
            b in small_ratfunc(),
            x in -5i64..=5,
        ) {
            let x = rat(x);
            let prod = &a * &b;
            if let (Ok(fa), Ok(fb), Ok(fp)) = (a.eval(&x), b.eval(&x), prod.eval(&x)) {
                prop_assert_eq!(fp, fa * fb);
            }
        }
    }

    fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
        (
            proptest::collection::vec(-4i64..=4, 0..4),
            proptest::collection::vec(-4i64..=4, 1..4),
            -2i64..=2,
        )
            .prop_filter_map("nonzero denominator", |(n, d, off)| {
                let den = Poly::from_int_coeffs(&d);
                if den.is_zero() {
                    return None;
                }
                RatFunc::new(
                    LaurentPoly::new(Poly::from_int_coeffs(&n), off),
                    LaurentPoly::from_poly(den),
                )
                .ok()
            })
    }
}
