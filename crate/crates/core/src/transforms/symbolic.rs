//! The specialized multisum transform of the two-parameter family, fully
//! symbolic in q.
//!
//! With all parameters powers of q the transformed series becomes a
//! (d-1)-fold sum of rational functions of q; its value equals the truncated
//! sum of the family itself, which is the cross-check the campaign runs.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::qseries::pochhammer;
use crate::ratfunc::RatFunc;

use super::multi_indices;

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The transformed right-hand side for parameters (d, r, n): prefactor
///
/// ```text
///   (1 - q^r)(q^{d+r}, q^{-(d-1)n}; q^d)_N / ((1 - q)(q^d, q^{r-(d-1)n}; q^d)_N)
/// ```
///
/// with N = ((d-1)n - r)/d, times the (d-1)-fold multisum with all parameter
/// slots filled by powers of q.
pub fn eq_multi_rhs(d: i64, r: i64, n: i64) -> Result<RatFunc> {
    // The identity is an instance of the multiseries transformation, so it
    // needs less than the congruence theorem: d >= 3 for the multisum shape,
    // gcd(d, r) = 1 so no pochhammer factor degenerates, and the truncation
    // point ((d-1)n - r)/d must be a nonnegative integer.
    if d < 3 {
        return Err(Error::PreconditionViolated("needs d >= 3".into()));
    }
    if r == 0 || gcd_i64(d, r) != 1 {
        return Err(Error::PreconditionViolated("needs gcd(d, r) = 1".into()));
    }
    if (n + r).rem_euclid(d) != 0 {
        return Err(Error::PreconditionViolated("needs n = -r (mod d)".into()));
    }
    let cap = (d - 1) * n - r;
    if cap < 0 {
        return Err(Error::PreconditionViolated(
            "needs (d-1)n - r >= 0".into(),
        ));
    }
    debug_assert!(cap % d == 0);
    let big_n = (cap / d) as u32;
    let du = d as u32;
    let dn1 = (d - 1) * n; // (d-1)n

    let prefactor = RatFunc::new(
        LaurentPoly::one_minus_q_pow(r)
            * pochhammer(d + r, du, big_n)
            * pochhammer(-dn1, du, big_n),
        LaurentPoly::one_minus_q_pow(1)
            * pochhammer(d, du, big_n)
            * pochhammer(r - dn1, du, big_n),
    )?;
    Ok(&prefactor * &multisum(d, r, n, big_n))
}

/// The (d-1)-fold multisum, assembled over the common denominator
/// (q^d; q^d)_N^{3(d-1)} (q^{d+r}; q^d)_N and reduced once against its
/// cyclotomic factorization; folding reduced term-by-term additions instead
/// costs a large gcd per term.
fn multisum(d: i64, r: i64, n: i64, big_n: u32) -> RatFunc {
    use crate::qseries::{reduce_against_cyclotomic_den, TermBuilder};
    use std::collections::BTreeMap;

    let parts = (d - 1) as usize;
    let dn1 = (d - 1) * n;

    // Common denominator factor multiset. Each binomial 1 - q^m with m > 0
    // is -(monic cyclotomic product); with m < 0 it is q^m times one (no
    // sign), so track the sign parity and the q-power separately.
    let mut mults: BTreeMap<u32, u32> = BTreeMap::new();
    let mut negations = 0usize;
    let mut den_offset = 0i64;
    let mut push_den_factor = |m: i64, count: u32| {
        debug_assert!(m != 0, "gcd(d, r) = 1 keeps denominator exponents nonzero");
        for s in crate::cyclotomic::divisors(m.unsigned_abs() as u32) {
            *mults.entry(s).or_insert(0) += count;
        }
        if m > 0 {
            negations += count as usize;
        } else {
            den_offset += m * count as i64;
        }
    };
    for t in 1..=big_n as i64 {
        push_den_factor(d * t, 3 * parts as u32);
    }
    for t in 0..big_n as i64 {
        push_den_factor(d + r + d * t, 1);
    }

    let mut acc = TermBuilder::zero();
    for ix in multi_indices(parts, big_n) {
        let js = ix.partial_sums();
        let j_last = *js.last().expect("d >= 3 gives at least two parts");
        let mut t = TermBuilder::one();
        let poch_num = |e: i64, len: u32, t: &mut TermBuilder| {
            for j in 0..len as i64 {
                t.mul_one_minus_q_pow(e + d * j);
            }
        };
        // (q^{d-r}; q^d)_{j_i} over (q^d; q^d)_{j_i}: numerator plus the
        // denominator's tail up to N
        for &ji in &ix.j {
            poch_num(d - r, ji, &mut t);
            for tail in ji as i64 + 1..=big_n as i64 {
                t.mul_one_minus_q_pow(d * tail);
            }
        }
        // (q^r, q^r; q^d)_{J_{i-1}} for i = 2..d-1, then
        // (q^r, q^{d+(d-1)n}; q^d)_{J_{d-1}}
        for &jsum in js.iter().take(parts - 1) {
            poch_num(r, jsum, &mut t);
            poch_num(r, jsum, &mut t);
        }
        poch_num(r, j_last, &mut t);
        poch_num(d + dn1, j_last, &mut t);
        // (q^d, q^d; q^d)_{J_i} tails for i = 1..d-1
        for &jsum in &js {
            for _ in 0..2 {
                for tail in jsum as i64 + 1..=big_n as i64 {
                    t.mul_one_minus_q_pow(d * tail);
                }
            }
        }
        // (q^{r-(d-1)n}; q^d)_{J_{d-1}} over (q^{d+r}; q^d)_{J_{d-1}} (tail)
        poch_num(r - dn1, j_last, &mut t);
        for tail in j_last as i64..big_n as i64 {
            t.mul_one_minus_q_pow(d + r + d * tail);
        }
        // q^{(d+r)(J_1+...+J_{d-2})} q^{d J_{d-1}} / q^{2r(J_1+...+J_{d-2})}
        let mut head_sum = 0i64;
        for &jsum in js.iter().take(parts - 1) {
            head_sum += jsum as i64;
        }
        t.mul_q_pow((d - r) * head_sum + d * j_last as i64);
        acc.add_assign(t);
    }
    // dividing by q^den_offset multiplies the numerator by its inverse power
    acc.mul_q_pow(-den_offset);
    if negations % 2 == 1 {
        acc.negate();
    }
    reduce_against_cyclotomic_den(acc, mults)
}
