//! Exact rational evaluation of the transformation/summation identities at
//! parameter points.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{rat_pow, BigRat};

use super::{multi_indices, ParamPoint, PointSampler};

/// Exact numeric (x; q)_k.
pub fn pochhammer_at(x: &BigRat, q: &BigRat, k: u32) -> BigRat {
    let mut acc = BigRat::one();
    let mut xq = x.clone();
    for _ in 0..k {
        acc *= BigRat::one() - &xq;
        xq *= q;
    }
    acc
}

fn checked_div(num: BigRat, den: BigRat, what: &str) -> Result<BigRat> {
    if den.is_zero() {
        return Err(Error::DegeneratePoint(format!("{what} vanishes")));
    }
    Ok(num / den)
}

/// Ratio of pochhammer products: prod (x_i; q)_k / prod (y_i; q)_k.
fn poch_ratio(q: &BigRat, upper: &[BigRat], lower: &[BigRat], k: u32) -> Result<BigRat> {
    let mut num = BigRat::one();
    for x in upper {
        num *= pochhammer_at(x, q, k);
    }
    let mut den = BigRat::one();
    for y in lower {
        den *= pochhammer_at(y, q, k);
    }
    checked_div(num, den, "a lower pochhammer factor")
}

/// Left-hand side of the multiseries transformation: the terminating
/// very-well-poised sum with argument (a^m q^{m+N} / (b_1 c_1 ... b_m c_m))^k.
pub fn andrews_lhs(p: &ParamPoint) -> Result<BigRat> {
    let q = &p.q;
    if q.is_zero() {
        return Err(Error::DegeneratePoint("q = 0".into()));
    }
    let a = p.a();
    let s = &p.sqrt_a;
    let n_cap = p.big_n;

    let mut bc = BigRat::one();
    for (b, c) in p.b.iter().zip(&p.c) {
        bc *= b * c;
    }
    let z = checked_div(rat_pow(&a, p.m as i64) * rat_pow(q, p.m as i64 + n_cap as i64), bc, "b_i c_i product")?;

    let mut upper = vec![a.clone(), q * s, -(q * s)];
    let mut lower = vec![q.clone(), s.clone(), -s.clone()];
    for (b, c) in p.b.iter().zip(&p.c) {
        upper.push(b.clone());
        upper.push(c.clone());
        lower.push(checked_div(&a * q, b.clone(), "b_i")?);
        lower.push(checked_div(&a * q, c.clone(), "c_i")?);
    }
    upper.push(rat_pow(q, -(n_cap as i64)));
    lower.push(&a * rat_pow(q, n_cap as i64 + 1));

    let mut total = BigRat::zero();
    for k in 0..=n_cap {
        total += poch_ratio(q, &upper, &lower, k)? * rat_pow(&z, k as i64);
    }
    Ok(total)
}

/// The (m-1)-fold multisum of the transformation's right-hand side, without
/// its pochhammer prefactor.
fn andrews_rhs_multisum(
    q: &BigRat,
    a: &BigRat,
    b: &[BigRat],
    c: &[BigRat],
    n_cap: u32,
) -> Result<BigRat> {
    let m = b.len();
    assert_eq!(c.len(), m);
    let aq = a * q;
    let q_neg_n = rat_pow(q, -(n_cap as i64));
    let last_ratio_base = checked_div(&b[m - 1] * &c[m - 1] * &q_neg_n, a.clone(), "a")?;

    let mut total = BigRat::zero();
    for ix in multi_indices(m - 1, n_cap) {
        let js = ix.partial_sums();
        let j_last = js.last().copied().unwrap_or(0);
        let mut term = BigRat::one();
        // (aq/b_i c_i; q)_{j_i} / (q; q)_{j_i} for i = 1..m-1
        for i in 0..m - 1 {
            let x = checked_div(aq.clone(), &b[i] * &c[i], "b_i c_i")?;
            term *= pochhammer_at(&x, q, ix.j[i]);
            term = checked_div(term, pochhammer_at(q, q, ix.j[i]), "(q;q)_j")?;
        }
        // (b_i, c_i; q)_{J_{i-1}} for i = 2..m
        for i in 1..m {
            term *= pochhammer_at(&b[i], q, js[i - 1]);
            term *= pochhammer_at(&c[i], q, js[i - 1]);
        }
        // (aq/b_i, aq/c_i; q)_{J_i} for i = 1..m-1
        for i in 0..m - 1 {
            let den = pochhammer_at(&checked_div(aq.clone(), b[i].clone(), "b_i")?, q, js[i])
                * pochhammer_at(&checked_div(aq.clone(), c[i].clone(), "c_i")?, q, js[i]);
            term = checked_div(term, den, "(aq/b_i, aq/c_i; q)_J")?;
        }
        // (q^{-N}; q)_{J_{m-1}} / (b_m c_m q^{-N} / a; q)_{J_{m-1}}
        term *= pochhammer_at(&q_neg_n, q, j_last);
        term = checked_div(
            term,
            pochhammer_at(&last_ratio_base, q, j_last),
            "(b_m c_m q^{-N}/a; q)_J",
        )?;
        // (aq)^{J_1 + ... + J_{m-2}} q^{J_{m-1}} / prod (b_i c_i)^{J_{i-1}}
        let mut aq_exp = 0i64;
        for &jsum in js.iter().take(m.saturating_sub(2)) {
            aq_exp += jsum as i64;
        }
        term *= rat_pow(&aq, aq_exp) * rat_pow(q, j_last as i64);
        for i in 1..m - 1 {
            term = checked_div(term, rat_pow(&(&b[i] * &c[i]), js[i - 1] as i64), "b_i c_i")?;
        }
        total += term;
    }
    Ok(total)
}

/// Right-hand side of the multiseries transformation: prefactor times the
/// (m-1)-fold sum.
pub fn andrews_rhs(p: &ParamPoint) -> Result<BigRat> {
    let q = &p.q;
    if q.is_zero() {
        return Err(Error::DegeneratePoint("q = 0".into()));
    }
    let a = p.a();
    let m = p.m;
    let aq = &a * q;
    let b_m = &p.b[m - 1];
    let c_m = &p.c[m - 1];
    let pre_num = pochhammer_at(&aq, q, p.big_n)
        * pochhammer_at(&checked_div(aq.clone(), b_m * c_m, "b_m c_m")?, q, p.big_n);
    let pre_den = pochhammer_at(&checked_div(aq.clone(), b_m.clone(), "b_m")?, q, p.big_n)
        * pochhammer_at(&checked_div(aq.clone(), c_m.clone(), "c_m")?, q, p.big_n);
    let prefactor = checked_div(pre_num, pre_den, "(aq/b_m, aq/c_m; q)_N")?;
    Ok(prefactor * andrews_rhs_multisum(q, &a, &p.b, &p.c, p.big_n)?)
}

/// Both sides of Watson's 8phi7 -> 4phi3 transformation at a point; the point
/// supplies the roles (b, c, d, e) = (b[0], c[0], b[1], c[1]) and n = N.
pub fn watson_check(p: &ParamPoint) -> Result<PointOutcome> {
    if p.m != 2 {
        return Err(Error::PreconditionViolated(
            "Watson roles need m = 2 (b, c, d, e)".into(),
        ));
    }
    let q = &p.q;
    if q.is_zero() {
        return Err(Error::DegeneratePoint("q = 0".into()));
    }
    let a = p.a();
    let s = &p.sqrt_a;
    let (b, c, d, e) = (&p.b[0], &p.c[0], &p.b[1], &p.c[1]);
    let n = p.big_n;
    let aq = &a * q;

    // 8phi7 series
    let upper = vec![
        a.clone(),
        q * s,
        -(q * s),
        b.clone(),
        c.clone(),
        d.clone(),
        e.clone(),
        rat_pow(q, -(n as i64)),
    ];
    let lower = vec![
        q.clone(),
        s.clone(),
        -s.clone(),
        checked_div(aq.clone(), b.clone(), "b")?,
        checked_div(aq.clone(), c.clone(), "c")?,
        checked_div(aq.clone(), d.clone(), "d")?,
        checked_div(aq.clone(), e.clone(), "e")?,
        &a * rat_pow(q, n as i64 + 1),
    ];
    let z = checked_div(
        &a * &a * rat_pow(q, n as i64 + 2),
        b * c * d * e,
        "bcde",
    )?;
    let mut lhs = BigRat::zero();
    for k in 0..=n {
        lhs += poch_ratio(q, &upper, &lower, k)? * rat_pow(&z, k as i64);
    }

    // prefactor * 4phi3 [aq/bc, d, e, q^-n ; aq/b, aq/c, d e q^-n / a]
    let pre = checked_div(
        pochhammer_at(&aq, q, n)
            * pochhammer_at(&checked_div(aq.clone(), d * e, "de")?, q, n),
        pochhammer_at(&checked_div(aq.clone(), d.clone(), "d")?, q, n)
            * pochhammer_at(&checked_div(aq.clone(), e.clone(), "e")?, q, n),
        "(aq/d, aq/e; q)_n",
    )?;
    let upper4 = vec![
        checked_div(aq.clone(), b * c, "bc")?,
        d.clone(),
        e.clone(),
        rat_pow(q, -(n as i64)),
    ];
    let lower4 = vec![
        q.clone(),
        checked_div(aq.clone(), b.clone(), "b")?,
        checked_div(aq.clone(), c.clone(), "c")?,
        checked_div(d * e * rat_pow(q, -(n as i64)), a.clone(), "a")?,
    ];
    let mut series = BigRat::zero();
    for k in 0..=n {
        series += poch_ratio(q, &upper4, &lower4, k)? * rat_pow(q, k as i64);
    }
    let rhs = pre * series;

    Ok(PointOutcome {
        index: 0,
        point: p.clone(),
        lhs,
        rhs,
    })
}

/// The terminating very-well-poised Karlsson-Minton type sum; its value is 0
/// whenever N > nu.
pub fn gasper_terminating_sum(p: &ParamPoint) -> Result<BigRat> {
    let nu = p.nu();
    if p.big_n <= nu {
        return Err(Error::PreconditionViolated(format!(
            "needs N > nu, got N = {}, nu = {}",
            p.big_n, nu
        )));
    }
    let q = &p.q;
    if q.is_zero() {
        return Err(Error::DegeneratePoint("q = 0".into()));
    }
    let a = p.a();
    let s = &p.sqrt_a;
    let n_cap = p.big_n;

    let mut upper = vec![a.clone(), q * s, -(q * s)];
    let mut lower = vec![q.clone(), s.clone(), -s.clone()];
    for (e_i, &n_i) in p.e.iter().zip(&p.n_list) {
        upper.push(e_i.clone());
        upper.push(checked_div(&a * rat_pow(q, n_i as i64 + 1), e_i.clone(), "e_i")?);
        lower.push(checked_div(&a * q, e_i.clone(), "e_i")?);
        lower.push(e_i * rat_pow(q, -(n_i as i64)));
    }
    upper.push(rat_pow(q, -(n_cap as i64)));
    lower.push(&a * rat_pow(q, n_cap as i64 + 1));

    let zk = rat_pow(q, n_cap as i64 - nu as i64);
    let mut total = BigRat::zero();
    for k in 0..=n_cap {
        total += poch_ratio(q, &upper, &lower, k)? * rat_pow(&zk, k as i64);
    }
    Ok(total)
}

/// The (m-1)-fold multiseries summation obtained by specializing the
/// transformation at b_i = a q^{n_i + 1}/e_i, c_i = e_{i+1} (with
/// e_{m+1} = e_1); its value is 0 whenever N > nu.
pub fn lemma_ms0_multisum(p: &ParamPoint) -> Result<BigRat> {
    if p.m < 2 {
        return Err(Error::PreconditionViolated("needs m >= 2".into()));
    }
    let nu = p.nu();
    if p.big_n <= nu {
        return Err(Error::PreconditionViolated(format!(
            "needs N > nu, got N = {}, nu = {}",
            p.big_n, nu
        )));
    }
    let q = &p.q;
    if q.is_zero() {
        return Err(Error::DegeneratePoint("q = 0".into()));
    }
    let a = p.a();
    let mut b = Vec::with_capacity(p.m);
    let mut c = Vec::with_capacity(p.m);
    for i in 0..p.m {
        b.push(checked_div(
            &a * rat_pow(q, p.n_list[i] as i64 + 1),
            p.e[i].clone(),
            "e_i",
        )?);
        c.push(p.e[(i + 1) % p.m].clone());
    }
    andrews_rhs_multisum(q, &a, &b, &c, p.big_n)
}

/// One evaluated point of a two-sided identity (for the summations the
/// right-hand side is the contract value 0).
#[derive(Clone, Debug)]
pub struct PointOutcome {
    pub index: usize,
    pub point: ParamPoint,
    pub lhs: BigRat,
    pub rhs: BigRat,
}

impl PointOutcome {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Watson and the m = 2 transformation evaluated on the same point.
#[derive(Clone, Debug)]
pub struct WatsonAgreement {
    pub watson: PointOutcome,
    pub andrews: PointOutcome,
}

impl WatsonAgreement {
    /// Same verdict on both routes, and the routes agree with each other.
    pub fn verdicts_agree(&self) -> bool {
        self.watson.holds() == self.andrews.holds() && self.watson.lhs == self.andrews.lhs
    }
}

const SAMPLE_ATTEMPT_FACTOR: usize = 400;

fn sampling_exhausted(what: &str) -> Error {
    Error::DegeneratePoint(format!(
        "could not find enough nondegenerate points for {what}"
    ))
}

/// Evaluate both sides of the multiseries transformation at `count` seeded
/// nondegenerate points.
pub fn sample_andrews_outcomes(
    m: usize,
    big_n: u32,
    count: usize,
    seed: u64,
) -> Result<Vec<PointOutcome>> {
    if m < 1 {
        return Err(Error::PreconditionViolated("needs m >= 1".into()));
    }
    let mut sampler = PointSampler::new(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count * SAMPLE_ATTEMPT_FACTOR {
        if out.len() == count {
            break;
        }
        let p = sampler.andrews_candidate(m, big_n);
        match (andrews_lhs(&p), andrews_rhs(&p)) {
            (Ok(lhs), Ok(rhs)) => out.push(PointOutcome {
                index: out.len(),
                point: p,
                lhs,
                rhs,
            }),
            (Err(Error::DegeneratePoint(_)), _) | (_, Err(Error::DegeneratePoint(_))) => continue,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    if out.len() < count {
        return Err(sampling_exhausted("the multiseries transformation"));
    }
    Ok(out)
}

/// Watson's transformation and the m = 2 multiseries route on shared points.
pub fn sample_watson_agreement(
    big_n: u32,
    count: usize,
    seed: u64,
) -> Result<Vec<WatsonAgreement>> {
    let mut sampler = PointSampler::new(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count * SAMPLE_ATTEMPT_FACTOR {
        if out.len() == count {
            break;
        }
        let p = sampler.andrews_candidate(2, big_n);
        let watson = match watson_check(&p) {
            Ok(o) => o,
            Err(Error::DegeneratePoint(_)) => continue,
            Err(e) => return Err(e),
        };
        match (andrews_lhs(&p), andrews_rhs(&p)) {
            (Ok(lhs), Ok(rhs)) => {
                let index = out.len();
                out.push(WatsonAgreement {
                    watson: PointOutcome {
                        index,
                        ..watson
                    },
                    andrews: PointOutcome {
                        index,
                        point: p,
                        lhs,
                        rhs,
                    },
                });
            }
            (Err(Error::DegeneratePoint(_)), _) | (_, Err(Error::DegeneratePoint(_))) => continue,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    if out.len() < count {
        return Err(sampling_exhausted("Watson's transformation"));
    }
    Ok(out)
}

/// The terminating Karlsson-Minton sum at seeded points (contract value 0).
pub fn sample_gasper_values(
    m: usize,
    n_list: &[u32],
    big_n: u32,
    count: usize,
    seed: u64,
) -> Result<Vec<PointOutcome>> {
    if n_list.len() != m {
        return Err(Error::PreconditionViolated(
            "n_list length must equal m".into(),
        ));
    }
    let nu: u32 = n_list.iter().sum();
    if big_n <= nu {
        return Err(Error::PreconditionViolated(format!(
            "needs N > nu, got N = {big_n}, nu = {nu}"
        )));
    }
    let mut sampler = PointSampler::new(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count * SAMPLE_ATTEMPT_FACTOR {
        if out.len() == count {
            break;
        }
        let p = sampler.karlsson_minton_candidate(m, n_list, big_n);
        match gasper_terminating_sum(&p) {
            Ok(value) => out.push(PointOutcome {
                index: out.len(),
                point: p,
                lhs: value,
                rhs: BigRat::zero(),
            }),
            Err(Error::DegeneratePoint(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    if out.len() < count {
        return Err(sampling_exhausted("the terminating Karlsson-Minton sum"));
    }
    Ok(out)
}

/// The multiseries vanishing identity at seeded points (contract value 0).
pub fn sample_ms0_values(
    m: usize,
    n_list: &[u32],
    big_n: u32,
    count: usize,
    seed: u64,
) -> Result<Vec<PointOutcome>> {
    if n_list.len() != m {
        return Err(Error::PreconditionViolated(
            "n_list length must equal m".into(),
        ));
    }
    let mut sampler = PointSampler::new(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count * SAMPLE_ATTEMPT_FACTOR {
        if out.len() == count {
            break;
        }
        let p = sampler.karlsson_minton_candidate(m, n_list, big_n);
        match lemma_ms0_multisum(&p) {
            Ok(value) => out.push(PointOutcome {
                index: out.len(),
                point: p,
                lhs: value,
                rhs: BigRat::zero(),
            }),
            Err(Error::DegeneratePoint(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    if out.len() < count {
        return Err(sampling_exhausted("the multiseries vanishing identity"));
    }
    Ok(out)
}
