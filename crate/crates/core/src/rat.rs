//! The coefficient field: arbitrary-precision rationals.
//!
//! `BigRat` is kept reduced (gcd of numerator and denominator is 1,
//! denominator positive) by `num_rational`, which matches the invariants we
//! need, so the crate uses it directly rather than reimplementing a fraction
//! type.

use num_bigint::BigInt;
use num_rational::BigRational;

pub type BigRat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat_frac(n: i64, d: i64) -> BigRat {
    assert!(d != 0, "rat_frac: zero denominator");
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

/// Exact integer power with negative exponents allowed.
/// Panics on `0^e` with `e < 0`.
pub fn rat_pow(x: &BigRat, e: i64) -> BigRat {
    use num_traits::{One, Zero};
    if e == 0 {
        return BigRat::one();
    }
    if x.is_zero() {
        assert!(e > 0, "rat_pow: zero base with negative exponent");
        return BigRat::zero();
    }
    let p = x.pow(e.unsigned_abs() as i32);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn rationals_are_reduced() {
        let x = rat_frac(6, 4);
        assert_eq!(x, rat_frac(3, 2));
        assert_eq!(x.denom(), &BigInt::from(2));
    }

    #[test]
    fn addition_is_exact() {
        let a = rat_frac(1, 3);
        let b = rat_frac(1, 6);
        assert_eq!(&a + &b, rat_frac(1, 2));
        assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn negative_powers() {
        assert_eq!(rat_pow(&rat(2), -3), rat_frac(1, 8));
        assert_eq!(rat_pow(&rat_frac(2, 3), 2), rat_frac(4, 9));
        assert!(rat_pow(&rat(5), 0).is_one());
    }
}
