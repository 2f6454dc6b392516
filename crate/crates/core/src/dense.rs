//! Dense integer-coefficient vectors: the hot path for summand assembly,
//! factor cancellation and polynomial gcd.
//!
//! Coefficient vectors are indexed by exponent with trailing zeros trimmed;
//! the empty vector is the zero polynomial. Everything here is crate-private
//! plumbing behind `Poly` and the q-series builders.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type IntVec = Vec<BigInt>;

pub(crate) fn trim(v: &mut IntVec) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn is_zero(v: &[BigInt]) -> bool {
    v.is_empty()
}

pub(crate) fn one() -> IntVec {
    vec![BigInt::one()]
}

/// `acc += term * q^shift`.
pub(crate) fn add_assign_shifted(acc: &mut IntVec, term: &[BigInt], shift: usize) {
    if acc.len() < term.len() + shift {
        acc.resize(term.len() + shift, BigInt::zero());
    }
    for (i, c) in term.iter().enumerate() {
        acc[i + shift] += c;
    }
    trim(acc);
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> IntVec {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    trim(&mut out);
    out
}

/// Multiply by the binomial `1 - q^e` in O(len) coefficient operations.
pub(crate) fn mul_one_minus_q_pow(a: &[BigInt], e: usize) -> IntVec {
    if is_zero(a) {
        return Vec::new();
    }
    debug_assert!(e >= 1);
    let mut out = vec![BigInt::zero(); a.len() + e];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
        out[i + e] -= c;
    }
    trim(&mut out);
    out
}

/// Exact division by a divisor with leading coefficient ±1.
/// Returns `None` if the division is not exact.
pub(crate) fn try_divexact(a: &[BigInt], b: &[BigInt]) -> Option<IntVec> {
    assert!(!is_zero(b), "try_divexact: zero divisor");
    let lb = b.last().unwrap();
    assert!(
        lb.is_one() || (-lb).is_one(),
        "try_divexact: divisor leading coefficient must be a unit"
    );
    if is_zero(a) {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let neg = lb.is_negative();
    let db = b.len() - 1;
    let mut rem: IntVec = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - b.len() + 1];
    for i in (db..a.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = if neg { -rem[i].clone() } else { rem[i].clone() };
        let shift = i - db;
        for (j, bc) in b.iter().enumerate() {
            if !bc.is_zero() {
                let delta = &c * bc;
                rem[shift + j] -= delta;
            }
        }
        quot[shift] = c;
    }
    if rem.iter().all(|c| c.is_zero()) {
        trim(&mut quot);
        Some(quot)
    } else {
        None
    }
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b` over the integers.
pub(crate) fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> IntVec {
    assert!(!is_zero(b), "pseudo_rem: zero divisor");
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut r: IntVec = a.to_vec();
    trim(&mut r);
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (j, bc) in b.iter().enumerate() {
            let delta = &lr * bc;
            r[shift + j] -= delta;
        }
        trim(&mut r);
    }
    r
}

/// Content (gcd of coefficients, positive).
pub(crate) fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        if !c.is_zero() {
            g = g.gcd(c);
        }
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divide out the content and normalize the leading coefficient positive.
pub(crate) fn primitive_part(a: &[BigInt]) -> IntVec {
    if is_zero(a) {
        return Vec::new();
    }
    let mut g = content(a);
    if a.last().unwrap().is_negative() {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

/// Exact division by `1 - q^e`; `None` if the division leaves a remainder.
pub(crate) fn divexact_one_minus_q_pow(a: &[BigInt], e: usize) -> Option<IntVec> {
    debug_assert!(e >= 1);
    if is_zero(a) {
        return Some(Vec::new());
    }
    if a.len() <= e {
        return None;
    }
    // a = (1 - q^e) * s  =>  s_i = a_i + s_{i-e}; the top e running sums are
    // the would-be coefficients past the quotient and must vanish.
    let mut s: IntVec = a.to_vec();
    for i in e..a.len() {
        let carry = s[i - e].clone();
        s[i] += carry;
    }
    if s[a.len() - e..].iter().all(|c| c.is_zero()) {
        s.truncate(a.len() - e);
        trim(&mut s);
        Some(s)
    } else {
        None
    }
}

// ---- gcd ----

// Prime 2^64 - 2^32 + 1 for the modular coprimality fast path.
const GF_P: u128 = 18446744069414584321;

fn gf_mod(c: &BigInt) -> u64 {
    use num_traits::ToPrimitive;
    let p = BigInt::from(GF_P);
    let mut r = c % &p;
    if r.is_negative() {
        r += &p;
    }
    r.to_u64().expect("reduced residue fits in u64")
}

fn gf_mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % GF_P) as u64
}

fn gf_pow(mut b: u64, mut e: u128) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = gf_mul(acc, b);
        }
        b = gf_mul(b, b);
        e >>= 1;
    }
    acc
}

fn gf_inv(a: u64) -> u64 {
    gf_pow(a, GF_P - 2)
}

fn gf_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn gf_rem(a: &[u64], b: &[u64]) -> Vec<u64> {
    let db = b.len() - 1;
    let inv = gf_inv(b[db]);
    let mut r = a.to_vec();
    while r.len() > db {
        let lead = gf_mul(*r.last().unwrap(), inv);
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (j, &bc) in b.iter().enumerate() {
                let t = gf_mul(lead, bc);
                let idx = shift + j;
                r[idx] = if r[idx] >= t { r[idx] - t } else { r[idx] + (GF_P as u64).wrapping_sub(t) };
            }
        }
        r.pop();
        gf_trim(&mut r);
    }
    r
}

/// Certified coprimality test: `true` means gcd(a, b) = 1 over ℚ.
/// `false` is inconclusive. Sound because the leading coefficient of any
/// common divisor divides both leading coefficients, so unless the prime
/// divides one of them the modular image of the gcd keeps its degree.
fn gcd_is_one_mod_p(a: &[BigInt], b: &[BigInt]) -> bool {
    if gf_mod(a.last().unwrap()) == 0 || gf_mod(b.last().unwrap()) == 0 {
        return false;
    }
    let mut u: Vec<u64> = a.iter().map(gf_mod).collect();
    let mut v: Vec<u64> = b.iter().map(gf_mod).collect();
    gf_trim(&mut u);
    gf_trim(&mut v);
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    while !v.is_empty() {
        let r = gf_rem(&u, &v);
        u = v;
        v = r;
    }
    u.len() == 1
}

/// Monic gcd over ℤ, computed by the primitive-PRS Euclidean scheme with a
/// divisibility shortcut and a certified modular coprimality fast path.
/// Inputs need not be primitive; output is primitive with positive leading
/// coefficient. Both inputs zero yields the empty (zero) vector.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> IntVec {
    let mut u = primitive_part(a);
    let mut v = primitive_part(b);
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    if is_zero(&v) {
        return u;
    }
    let v_lead_unit = {
        let lv = v.last().unwrap();
        lv.is_one() || (-lv).is_one()
    };
    if v_lead_unit {
        if let Some(_) = try_divexact(&u, &v) {
            return v;
        }
    }
    if gcd_is_one_mod_p(&u, &v) {
        return one();
    }
    while !is_zero(&v) {
        let r = pseudo_rem(&u, &v);
        u = v;
        v = primitive_part(&r);
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(cs: &[i64]) -> IntVec {
        let mut v: IntVec = cs.iter().map(|&c| BigInt::from(c)).collect();
        trim(&mut v);
        v
    }

    #[test]
    fn binomial_multiply_matches_schoolbook() {
        let a = iv(&[1, 2, 3]);
        let b = mul(&a, &iv(&[1, 0, 0, -1])); // 1 - q^3
        assert_eq!(b, mul_one_minus_q_pow(&a, 3));
    }

    #[test]
    fn divexact_one_minus_q_roundtrip() {
        let s = iv(&[4, -1, 7]);
        let a = mul_one_minus_q_pow(&s, 1);
        assert_eq!(divexact_one_minus_q_pow(&a, 1), Some(s));
        assert_eq!(divexact_one_minus_q_pow(&iv(&[1]), 1), None);
    }

    #[test]
    fn try_divexact_detects_inexact() {
        let b = iv(&[-1, 0, 1]); // q^2 - 1
        let q = iv(&[3, 1]);
        let a = mul(&b, &q);
        assert_eq!(try_divexact(&a, &b), Some(q));
        assert_eq!(try_divexact(&iv(&[1, 1, 1]), &b), None);
    }

    #[test]
    fn gcd_of_products() {
        let g = iv(&[-1, 1]);
        let a = mul(&g, &iv(&[2, 1]));
        let b = mul(&g, &iv(&[5, 3]));
        assert_eq!(gcd(&a, &b), g);
    }

    #[test]
    fn gcd_coprime_fast_path() {
        assert_eq!(gcd(&iv(&[1, 0, 1]), &iv(&[-1, 1])), one());
        assert!(gcd_is_one_mod_p(&iv(&[1, 0, 1]), &iv(&[-1, 1])));
        assert!(!gcd_is_one_mod_p(&iv(&[-1, 0, 1]), &iv(&[-1, 1])));
    }

    #[test]
    fn divexact_binomial_power() {
        let s = iv(&[2, 0, -3, 1]);
        let a = mul_one_minus_q_pow(&s, 4);
        assert_eq!(divexact_one_minus_q_pow(&a, 4), Some(s));
        assert_eq!(divexact_one_minus_q_pow(&iv(&[1, 1]), 2), None);
    }
}
