//! q-shifted factorials with monomial arguments and the summand builders for
//! the truncated sums under verification.
//!
//! Every sum handled here has the shape
//!
//! ```text
//!   sum_{k=0}^{M}  prefactor(k) * (q^e; q^D)_k^P / (q^D; q^D)_k^P * q^{E(k)}
//! ```
//!
//! so `truncated_sum` assembles the numerators over the common denominator
//! `(q^D; q^D)_M^P` with O(length) binomial multiplications, adds them, and
//! reduces once against the denominator's known cyclotomic factorization.
//! That single reduction is exact: the denominator is a product of
//! cyclotomics, so trial division by each of them recovers the full gcd.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::cyclotomic::{cyclotomic, divisors};
use crate::dense::{self, IntVec};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// The q-shifted factorial (q^e; q^d)_k with a monomial argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QPochhammer {
    /// Argument exponent: the symbol's a is q^base_exponent.
    pub base_exponent: i64,
    pub step: u32,
    pub length: u32,
}

impl QPochhammer {
    pub fn expand(&self) -> LaurentPoly {
        let mut t = TermBuilder::one();
        for j in 0..self.length {
            t.mul_one_minus_q_pow(self.base_exponent + self.step as i64 * j as i64);
        }
        t.into_laurent()
    }
}

/// Expand prod_{j=0}^{k-1} (1 - q^(e + d j)); the empty product is 1.
pub fn pochhammer(base_exponent: i64, step: u32, length: u32) -> LaurentPoly {
    assert!(step >= 1, "pochhammer: step must be positive");
    QPochhammer {
        base_exponent,
        step,
        length,
    }
    .expand()
}

/// Expand prod_{j=0}^{k-1} (1 - c q^(e + d j)) for a rational scale c.
pub fn pochhammer_scaled(
    scale: &crate::rat::BigRat,
    base_exponent: i64,
    step: u32,
    length: u32,
) -> LaurentPoly {
    assert!(step >= 1, "pochhammer_scaled: step must be positive");
    let mut acc = LaurentPoly::one();
    for j in 0..length {
        let e = base_exponent + step as i64 * j as i64;
        acc = acc * (LaurentPoly::one() - LaurentPoly::monomial(scale.clone(), e));
    }
    acc
}

/// Families of summands appearing in the verified statements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SummandFamily {
    /// [2dk+r] (q^r; q^d)_k^{2d} / (q^d; q^d)_k^{2d} q^{d(d-1-r)k}
    Thm1 { d: i64, r: i64 },
    /// [2dk-1] (q^{-1}; q^d)_k^{2d} / (q^d; q^d)_k^{2d} q^{d^2 k}
    Thm2Neg { d: i64 },
    /// Same summand as `Thm2Neg`; kept separate because its statement admits
    /// d = 2 as exploration.
    Conj2 { d: i64 },
    /// [4k-1]_{q^2} [4k-1]^2 (q^{-2}; q^4)_k^4 / (q^4; q^4)_k^4 q^{4k}
    Sec5,
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl SummandFamily {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SummandFamily::Thm1 { d, r } => {
                if d < 3 {
                    return Err(Error::InvalidFamilyParams(format!(
                        "THM1 needs d >= 3, got d = {d}"
                    )));
                }
                if r == 0 || gcd_i64(d, r) != 1 {
                    return Err(Error::InvalidFamilyParams(format!(
                        "THM1 needs gcd(d, r) = 1 with r != 0, got d = {d}, r = {r}"
                    )));
                }
                Ok(())
            }
            SummandFamily::Thm2Neg { d } => {
                if d < 3 {
                    return Err(Error::InvalidFamilyParams(format!(
                        "THM2 needs d >= 3, got d = {d}"
                    )));
                }
                Ok(())
            }
            SummandFamily::Conj2 { d } => {
                if d < 2 {
                    return Err(Error::InvalidFamilyParams(format!(
                        "CONJ2 needs d >= 2, got d = {d}"
                    )));
                }
                Ok(())
            }
            SummandFamily::Sec5 => Ok(()),
        }
    }

    fn shape(&self) -> Shape {
        match *self {
            SummandFamily::Thm1 { d, r } => Shape::thm1_like(d as u32, r),
            SummandFamily::Thm2Neg { d } | SummandFamily::Conj2 { d } => {
                Shape::thm1_like(d as u32, -1)
            }
            SummandFamily::Sec5 => Shape::sec5(),
        }
    }
}

/// Internal description of one sum: argument exponent, step, power, and the
/// per-k prefactor and q-power.
pub(crate) struct Shape {
    arg_exponent: i64,
    step: u32,
    power: u32,
    kind: ShapeKind,
}

enum ShapeKind {
    /// prefactor [2dk+r], power-of-q exponent d(d-1-r)k
    Thm1Like { d: i64, r: i64 },
    /// prefactor [4k-1]_{q^2} [4k-1]^2, power-of-q exponent 4k
    Sec5,
}

impl Shape {
    pub(crate) fn thm1_like(d: u32, r: i64) -> Shape {
        assert!(d >= 1 && r != 0 && gcd_i64(d as i64, r) == 1);
        Shape {
            arg_exponent: r,
            step: d,
            power: 2 * d,
            kind: ShapeKind::Thm1Like { d: d as i64, r },
        }
    }

    pub(crate) fn sec5() -> Shape {
        Shape {
            arg_exponent: -2,
            step: 4,
            power: 4,
            kind: ShapeKind::Sec5,
        }
    }

    fn apply_prefactor(&self, t: &mut TermBuilder, k: u32) {
        let k = k as i64;
        match self.kind {
            ShapeKind::Thm1Like { d, r } => {
                t.mul_q_integer(2 * d * k + r, 1);
                t.mul_q_pow(d * (d - 1 - r) * k);
            }
            ShapeKind::Sec5 => {
                t.mul_q_integer(4 * k - 1, 2);
                t.mul_q_integer(4 * k - 1, 1);
                t.mul_q_integer(4 * k - 1, 1);
                t.mul_q_pow(4 * k);
            }
        }
    }

    /// Numerator of the k-th summand over the common denominator
    /// (q^D; q^D)_upper^P, as a Laurent term.
    fn numerator_over_common_den(&self, k: u32, upper: u32) -> TermBuilder {
        let mut t = TermBuilder::one();
        self.apply_prefactor(&mut t, k);
        for j in 0..k {
            let e = self.arg_exponent + self.step as i64 * j as i64;
            for _ in 0..self.power {
                t.mul_one_minus_q_pow(e);
            }
        }
        for j in k + 1..=upper {
            let e = (self.step * j) as i64;
            for _ in 0..self.power {
                t.mul_one_minus_q_pow(e);
            }
        }
        t
    }

    /// Cyclotomic multiplicities of (q^D; q^D)_upper^P.
    fn common_den_factors(&self, upper: u32) -> BTreeMap<u32, u32> {
        debug_assert!(self.power % 2 == 0, "even power keeps the product monic");
        let mut mults = BTreeMap::new();
        for j in 1..=upper {
            for s in divisors(self.step * j) {
                *mults.entry(s).or_insert(0) += self.power;
            }
        }
        mults
    }
}

/// The exact k-th summand of the family, as a reduced rational function.
pub fn summand(family: &SummandFamily, k: u32) -> Result<RatFunc> {
    family.validate()?;
    let shape = family.shape();
    let num = shape.numerator_over_common_den(k, k);
    Ok(reduce_against_cyclotomic_den(
        num,
        shape.common_den_factors(k),
    ))
}

/// Sum of the family's summands for k = 0..=upper, assembled over the common
/// denominator and reduced once.
pub fn truncated_sum(family: &SummandFamily, upper: u32) -> Result<RatFunc> {
    family.validate()?;
    Ok(truncated_sum_of_shape(&family.shape(), upper))
}

/// Same sum shape with free (d, r); campaigns use d = 2 instances of it for
/// statements that live outside the THM1 family's parameter domain.
pub(crate) fn thm1_like_truncated_sum(d: u32, r: i64, upper: u32) -> RatFunc {
    truncated_sum_of_shape(&Shape::thm1_like(d, r), upper)
}

fn truncated_sum_of_shape(shape: &Shape, upper: u32) -> RatFunc {
    let mut acc = TermBuilder::zero();
    for k in 0..=upper {
        acc.add_assign(shape.numerator_over_common_den(k, upper));
    }
    reduce_against_cyclotomic_den(acc, shape.common_den_factors(upper))
}

/// Cancel num against a denominator given as cyclotomic multiplicities; the
/// result is fully reduced because the denominator splits into exactly these
/// factors.
pub(crate) fn reduce_against_cyclotomic_den(num: TermBuilder, den: BTreeMap<u32, u32>) -> RatFunc {
    let TermBuilder {
        mut coeffs,
        offset,
    } = num;
    if dense::is_zero(&coeffs) {
        return RatFunc::zero();
    }
    let mut remaining: Vec<(u32, u32)> = den.into_iter().collect();
    // Larger factors first: cancelling them shrinks the numerator fastest.
    remaining.reverse();
    for (s, mult) in remaining.iter_mut() {
        let phi = cyclotomic(*s)
            .expect("index >= 1")
            .to_ints()
            .expect("cyclotomics have integer coefficients");
        while *mult > 0 {
            match dense::try_divexact(&coeffs, &phi) {
                Some(q) => {
                    coeffs = q;
                    *mult -= 1;
                }
                None => break,
            }
        }
    }
    let mut den_poly = dense::one();
    for (s, mult) in remaining {
        if mult == 0 {
            continue;
        }
        let phi = cyclotomic(s).unwrap().to_ints().unwrap();
        for _ in 0..mult {
            den_poly = dense::mul(&den_poly, &phi);
        }
    }
    RatFunc::from_reduced_parts(
        LaurentPoly::new(Poly::from_ints(&coeffs), offset),
        Poly::from_ints(&den_poly),
    )
}

/// Accumulates a product of binomials `1 - q^m`, q-integers and powers of q
/// as an integer coefficient vector with a Laurent offset.
pub(crate) struct TermBuilder {
    coeffs: IntVec,
    offset: i64,
}

impl TermBuilder {
    pub(crate) fn one() -> Self {
        TermBuilder {
            coeffs: vec![BigInt::one()],
            offset: 0,
        }
    }

    pub(crate) fn zero() -> Self {
        TermBuilder {
            coeffs: Vec::new(),
            offset: 0,
        }
    }

    fn set_zero(&mut self) {
        self.coeffs.clear();
        self.offset = 0;
    }

    /// Multiply by `1 - q^m` for m of either sign; m = 0 annihilates.
    pub(crate) fn mul_one_minus_q_pow(&mut self, m: i64) {
        if dense::is_zero(&self.coeffs) {
            return;
        }
        if m == 0 {
            self.set_zero();
            return;
        }
        if m > 0 {
            self.coeffs = dense::mul_one_minus_q_pow(&self.coeffs, m as usize);
        } else {
            // 1 - q^m = -q^m (1 - q^-m)
            self.coeffs = dense::mul_one_minus_q_pow(&self.coeffs, (-m) as usize);
            self.negate();
            self.offset += m;
        }
    }

    /// Multiply by the q-integer [m]_{q^subst} = (1 - q^{subst m})/(1 - q^subst).
    pub(crate) fn mul_q_integer(&mut self, m: i64, subst: u32) {
        if dense::is_zero(&self.coeffs) {
            return;
        }
        if m == 0 {
            self.set_zero();
            return;
        }
        let s = subst as i64;
        let mut m = m;
        if m < 0 {
            // [-t]_{q^s} = -q^{-st} [t]_{q^s}
            self.negate();
            self.offset += s * m;
            m = -m;
        }
        self.coeffs = dense::mul_one_minus_q_pow(&self.coeffs, (s * m) as usize);
        self.coeffs = dense::divexact_one_minus_q_pow(&self.coeffs, s as usize)
            .expect("1 - q^s divides 1 - q^{sm}");
    }

    pub(crate) fn mul_q_pow(&mut self, e: i64) {
        if !dense::is_zero(&self.coeffs) {
            self.offset += e;
        }
    }

    pub(crate) fn negate(&mut self) {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
    }

    pub(crate) fn add_assign(&mut self, other: TermBuilder) {
        if dense::is_zero(&other.coeffs) {
            return;
        }
        if dense::is_zero(&self.coeffs) {
            *self = other;
            return;
        }
        let off = self.offset.min(other.offset);
        if self.offset > off {
            let shift = (self.offset - off) as usize;
            let mut shifted = vec![BigInt::from(0); shift];
            shifted.extend(std::mem::take(&mut self.coeffs));
            self.coeffs = shifted;
            self.offset = off;
        }
        dense::add_assign_shifted(&mut self.coeffs, &other.coeffs, (other.offset - off) as usize);
        if dense::is_zero(&self.coeffs) {
            self.offset = 0;
        }
    }

    pub(crate) fn into_laurent(self) -> LaurentPoly {
        LaurentPoly::new(Poly::from_ints(&self.coeffs), self.offset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    #[test]
    fn pochhammer_expansion() {
        // (q; q^3)_2 = (1-q)(1-q^4) = 1 - q - q^4 + q^5
        let p = pochhammer(1, 3, 2);
        assert_eq!(p, LaurentPoly::from_poly(Poly::from_int_coeffs(&[1, -1, 0, 0, -1, 1])));
        // empty product
        assert!(pochhammer(7, 2, 0).is_one());
        // (q^-1; q^2)_2 = (1 - q^-1)(1 - q) = -q^-1 (1-q)^2
        let p = pochhammer(-1, 2, 2);
        assert_eq!(p.offset(), -1);
        assert_eq!(p.base(), &Poly::from_int_coeffs(&[-1, 2, -1]));
    }

    #[test]
    fn pochhammer_with_zero_factor_vanishes() {
        // (q^-3; q^3)_2 contains (1 - q^0) = 0
        assert!(pochhammer(-3, 3, 2).is_zero());
    }

    #[test]
    fn thm1_summand_k0_and_k1() {
        let fam = SummandFamily::Thm1 { d: 3, r: 1 };
        assert_eq!(summand(&fam, 0).unwrap(), RatFunc::one());
        // [7] (1-q)^6/(1-q^3)^6 q^3, reduced
        let got = summand(&fam, 1).unwrap();
        let num = LaurentPoly::q_integer(7) * pochhammer(1, 3, 1).pow(6) * LaurentPoly::monomial(rat(1), 3);
        let den = pochhammer(3, 3, 1).pow(6);
        let expect = RatFunc::new(num, den).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn sec5_summand_k0() {
        // [-1]_{q^2} [-1]^2 = -q^-4
        let got = summand(&SummandFamily::Sec5, 0).unwrap();
        assert_eq!(got, RatFunc::from_laurent(LaurentPoly::monomial(rat(-1), -4)));
    }

    #[test]
    fn family_validation() {
        assert!(matches!(
            summand(&SummandFamily::Thm1 { d: 2, r: 1 }, 0),
            Err(Error::InvalidFamilyParams(_))
        ));
        assert!(matches!(
            summand(&SummandFamily::Thm1 { d: 3, r: 3 }, 0),
            Err(Error::InvalidFamilyParams(_))
        ));
        assert!(SummandFamily::Conj2 { d: 2 }.validate().is_ok());
    }

    #[test]
    fn truncated_sum_m0_is_first_summand() {
        let fam = SummandFamily::Thm1 { d: 3, r: 1 };
        assert_eq!(truncated_sum(&fam, 0).unwrap(), RatFunc::one());
        let fam = SummandFamily::Thm1 { d: 5, r: 2 };
        assert_eq!(
            truncated_sum(&fam, 0).unwrap(),
            RatFunc::from_poly(Poly::from_int_coeffs(&[1, 1]))
        );
    }

    #[test]
    fn truncated_sum_matches_pairwise_addition_small() {
        let fam = SummandFamily::Thm1 { d: 3, r: 1 };
        let direct = truncated_sum(&fam, 1).unwrap();
        let pairwise = summand(&fam, 0).unwrap() + summand(&fam, 1).unwrap();
        assert_eq!(direct, pairwise);
    }

    #[test]
    fn tail_summand_numerators_divisible_by_phi_n() {
        // d = 3, r = 1, n = 5: (q^r; q^d)_k picks up Phi_n for k > ((d-1)n-r)/d = 3
        let phi5 = cyclotomic(5).unwrap();
        for k in 4..=4u32 {
            let p = pochhammer(1, 3, k);
            let baseline = p.base();
            assert!(phi5.divides(baseline), "k = {k}");
        }
        // and not before
        assert!(!phi5.divides(pochhammer(1, 3, 3).base()));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn pochhammer_recurrence(e in -4i64..=4, d in 1u32..=4, k in 0u32..=5) {
            let longer = pochhammer(e, d, k + 1);
            let shorter = pochhammer(e, d, k);
            let m = e + (d * k) as i64;
            let factor = LaurentPoly::one() - LaurentPoly::monomial(rat(1), m);
            prop_assert_eq!(longer, shorter * factor);
        }
    }
}
