//! Dense univariate polynomials in q over the exact rationals.
//!
//! Coefficients are stored by exponent with trailing zeros trimmed, so the
//! zero polynomial is the empty vector and `degree()` is `None` for it
//! rather than a magic value. All arithmetic is exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dense;
use crate::error::{Error, Result};
use crate::rat::BigRat;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    coeffs: Vec<BigRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRat::one())
    }

    /// The indeterminate q.
    pub fn q() -> Self {
        Poly::monomial(BigRat::one(), 1)
    }

    pub fn constant(c: BigRat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigRat, exp: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRat::zero(); exp + 1];
        coeffs[exp] = c;
        Poly { coeffs }
    }

    /// `1 - q^e` for `e >= 1`; `e == 0` gives the zero polynomial.
    pub fn one_minus_q_pow(e: usize) -> Self {
        if e == 0 {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRat::zero(); e + 1];
        coeffs[0] = BigRat::one();
        coeffs[e] = -BigRat::one();
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| crate::rat::rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    /// Coefficient of q^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&BigRat> {
        self.coeffs.last()
    }

    /// Order of vanishing at q = 0 (index of the lowest nonzero coefficient).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &BigRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by q^k.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigRat::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Divide by q^k exactly; panics if the valuation is smaller than k.
    pub fn shift_down(&self, k: usize) -> Poly {
        if k == 0 {
            return self.clone();
        }
        assert!(
            self.valuation().map_or(true, |v| v >= k),
            "shift_down would truncate nonzero coefficients"
        );
        if self.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    pub fn make_monic(&self) -> Poly {
        match self.leading_coeff() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.clone().recip();
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute q -> q^t.
    pub fn subst_power(&self, t: u32) -> Poly {
        assert!(t >= 1, "subst_power: t must be >= 1");
        if self.is_zero() || t == 1 {
            return self.clone();
        }
        let t = t as usize;
        let mut coeffs = vec![BigRat::zero(); (self.coeffs.len() - 1) * t + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * t] = c.clone();
        }
        Poly { coeffs }
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division: `self = divisor * quotient + remainder` with
    /// `remainder = 0` or `deg remainder < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(Error::DivisorZero);
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead_inv = divisor.leading_coeff().unwrap().clone().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRat::zero(); self.coeffs.len() - dd];
        for i in (dd..self.coeffs.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = &rem[i] * &lead_inv;
            let shift = i - dd;
            for (j, bc) in divisor.coeffs.iter().enumerate() {
                if !bc.is_zero() {
                    let delta = &c * bc;
                    rem[shift + j] -= delta;
                }
            }
            quot[shift] = c;
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn try_divexact(&self, divisor: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.div_rem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor, via a primitive remainder sequence over
    /// the integers to keep coefficient growth in check.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::UndefinedGcd);
        }
        if self.is_zero() {
            return Ok(other.make_monic());
        }
        if other.is_zero() {
            return Ok(self.make_monic());
        }
        let a = self.to_scaled_ints().1;
        let b = other.to_scaled_ints().1;
        let g = dense::gcd(&a, &b);
        Ok(Poly::from_ints(&g).make_monic())
    }

    /// Clear denominators: returns `(scale, ints)` with `self = ints / scale`.
    pub(crate) fn to_scaled_ints(&self) -> (BigInt, dense::IntVec) {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        (lcm, ints)
    }

    /// Integer coefficient vector, or `None` if any denominator exceeds 1.
    pub(crate) fn to_ints(&self) -> Option<dense::IntVec> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect()
    }

    pub(crate) fn from_ints(ints: &[BigInt]) -> Poly {
        Poly::from_coeffs(ints.iter().map(|c| BigRat::from(c.clone())).collect())
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Canonical text form, used for display and for report digests.
    pub fn canonical_text(&self) -> String {
        format!("{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_mag = mag.is_one();
            if i == 0 || !unit_mag {
                write!(f, "{mag}")?;
            }
            if i > 0 {
                if !unit_mag {
                    write!(f, "*")?;
                }
                if i == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{i}")?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_value_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_frac};
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_int_coeffs(cs)
    }

    #[test]
    fn zero_degree_is_sentinel() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::one().degree(), Some(0));
        assert_eq!(Poly::q().degree(), Some(1));
    }

    #[test]
    fn div_rem_difference_of_squares() {
        // (q^2 - 1) / (q - 1) = q + 1 rem 0
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn div_rem_with_remainder() {
        // q^3 / (q^2 + 1) = q rem -q  (hand long division)
        let (q, r) = p(&[0, 0, 0, 1]).div_rem(&p(&[1, 0, 1])).unwrap();
        assert_eq!(q, p(&[0, 1]));
        assert_eq!(r, p(&[0, -1]));
    }

    #[test]
    fn div_rem_small_dividend() {
        let (q, r) = p(&[5]).div_rem(&p(&[-1, 1])).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, p(&[5]));
    }

    #[test]
    fn div_rem_by_zero_errors() {
        assert_eq!(p(&[1]).div_rem(&Poly::zero()), Err(Error::DivisorZero));
    }

    #[test]
    fn gcd_examples() {
        let g = p(&[-1, 0, 1]).gcd(&p(&[-1, 1])).unwrap();
        assert_eq!(g, p(&[-1, 1]));
        let g = p(&[1, 0, 1]).gcd(&p(&[-1, 1])).unwrap();
        assert!(g.is_one());
        // (q-1)^2 (q+2) vs (q-1)(q+3), built by multiplying the factors out
        let a = p(&[-1, 1]) * p(&[-1, 1]) * p(&[2, 1]);
        let b = p(&[-1, 1]) * p(&[3, 1]);
        assert_eq!(a.gcd(&b).unwrap(), p(&[-1, 1]));
    }

    #[test]
    fn gcd_of_zeros_is_undefined() {
        assert_eq!(
            Poly::zero().gcd(&Poly::zero()),
            Err(Error::UndefinedGcd)
        );
    }

    #[test]
    fn gcd_with_rational_coefficients() {
        // gcd is monic regardless of input scaling
        let a = p(&[-1, 1]).scale(&rat_frac(3, 7));
        let b = p(&[-1, 0, 1]).scale(&rat_frac(-2, 5));
        assert_eq!(a.gcd(&b).unwrap(), p(&[-1, 1]));
    }

    #[test]
    fn subst_power_examples() {
        assert_eq!(p(&[1, 1]).subst_power(2), p(&[1, 0, 1]));
        assert_eq!(p(&[1, 1, 1]).subst_power(2), p(&[1, 0, 1, 0, 1]));
        assert_eq!(p(&[-1, 1]).subst_power(3), p(&[-1, 0, 0, 1]));
    }

    #[test]
    fn eval_horner() {
        let f = p(&[1, -2, 1]); // (q-1)^2
        assert_eq!(f.eval(&rat(3)), rat(4));
        assert_eq!(f.eval(&rat_frac(1, 2)), rat_frac(1, 4));
    }

    #[test]
    fn display_form() {
        assert_eq!(p(&[1, -1, 2]).to_string(), "2*q^2 - q + 1");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p(&[0, 1]).to_string(), "q");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn recombination(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&b * &q) + &r, a.clone());
            if !r.is_zero() {
                prop_assert!(r.degree().unwrap() < b.degree().unwrap());
            }
        }

        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly()) {
            prop_assume!(!a.is_zero() || !b.is_zero());
            let g = a.gcd(&b).unwrap();
            prop_assert!(g.divides(&a));
            prop_assert!(g.divides(&b));
        }

        #[test]
        fn subst_power_is_ring_hom(a in small_poly(), b in small_poly(), t in 1u32..4) {
            let lhs = (&a * &b).subst_power(t);
            let rhs = &a.subst_power(t) * &b.subst_power(t);
            prop_assert_eq!(lhs, rhs);
        }
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(-6i64..=6, 0..6).prop_map(|cs| Poly::from_int_coeffs(&cs))
    }
}
