//! Deciding whether a rational function vanishes (or equals a given value)
//! modulo a polynomial, with an auditable report.
//!
//! Congruence of rational functions is numerator divisibility after
//! certifying that the denominator is invertible modulo the modulus; the
//! report carries the denominator gcd so that certificate can be audited,
//! and on failure the full remainder is retained as the witness.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// Pass on a statement that is an open conjecture: numeric support,
    /// never a proof claim.
    EvidencePass,
    Fail,
    Inapplicable,
    Timeout,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::EvidencePass => "CONJECTURE-EVIDENCE-PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inapplicable => "INAPPLICABLE",
            Verdict::Timeout => "TIMEOUT",
        }
    }

    /// True for the verdicts that do not fail a sweep.
    pub fn is_success(&self) -> bool {
        !matches!(self, Verdict::Fail)
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass | Verdict::EvidencePass)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One verification verdict with its inputs and witnesses.
#[derive(Clone, Debug)]
pub struct CongruenceReport {
    pub statement: String,
    pub params: BTreeMap<String, String>,
    /// Human-readable modulus description.
    pub modulus: String,
    pub verdict: Verdict,
    /// Zero on PASS, the witness polynomial on FAIL, absent when the check
    /// never ran (INAPPLICABLE / TIMEOUT).
    pub remainder: Option<Poly>,
    /// 1 when the denominator was invertible; the offending common factor
    /// otherwise.
    pub denominator_gcd: Option<Poly>,
    pub reason: Option<String>,
    pub wall_time: Duration,
}

impl CongruenceReport {
    pub fn inapplicable(reason: impl Into<String>) -> Self {
        CongruenceReport {
            statement: String::new(),
            params: BTreeMap::new(),
            modulus: String::new(),
            verdict: Verdict::Inapplicable,
            remainder: None,
            denominator_gcd: None,
            reason: Some(reason.into()),
            wall_time: Duration::ZERO,
        }
    }

    pub fn with_statement(mut self, statement: impl Into<String>) -> Self {
        self.statement = statement.into();
        self
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_modulus_desc(mut self, desc: impl Into<String>) -> Self {
        self.modulus = desc.into();
        self
    }

    pub fn with_wall_time(mut self, wall: Duration) -> Self {
        self.wall_time = wall;
        self
    }

    /// Relabel a plain PASS as conjecture evidence.
    pub fn as_evidence(mut self) -> Self {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::EvidencePass;
        }
        self
    }
}

fn validate_modulus(modulus: &Poly) -> Result<()> {
    if modulus.degree().map_or(true, |d| d == 0) {
        return Err(Error::InvalidModulus(
            "modulus must be nonconstant".into(),
        ));
    }
    if modulus.coeff(0).is_zero() {
        return Err(Error::InvalidModulus(
            "modulus must be coprime to q (nonzero constant term)".into(),
        ));
    }
    Ok(())
}

/// Is `f` congruent to 0 modulo `modulus`?
///
/// The Laurent offset of `f` is cleared by a power of q, which is valid
/// because the modulus is required to be coprime to q. The check is then:
/// the denominator must be coprime to the modulus (else INAPPLICABLE), and
/// the modulus must divide the numerator.
pub fn check_zero(f: &RatFunc, modulus: &Poly) -> Result<CongruenceReport> {
    validate_modulus(modulus)?;
    let start = Instant::now();
    let g = f.den().gcd(modulus)?;
    if !g.is_one() {
        return Ok(CongruenceReport {
            statement: String::new(),
            params: BTreeMap::new(),
            modulus: modulus.canonical_text(),
            verdict: Verdict::Inapplicable,
            remainder: None,
            denominator_gcd: Some(g.clone()),
            reason: Some(format!(
                "denominator shares factor {} with the modulus",
                g
            )),
            wall_time: start.elapsed(),
        });
    }
    let remainder = f.num().base().rem(modulus)?;
    let verdict = if remainder.is_zero() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(CongruenceReport {
        statement: String::new(),
        params: BTreeMap::new(),
        modulus: modulus.canonical_text(),
        verdict,
        remainder: Some(remainder),
        denominator_gcd: Some(g),
        reason: None,
        wall_time: start.elapsed(),
    })
}

/// Is `lhs` congruent to `rhs` modulo `modulus`?
pub fn check_equal(lhs: &RatFunc, rhs: &RatFunc, modulus: &Poly) -> Result<CongruenceReport> {
    validate_modulus(modulus)?;
    let start = Instant::now();
    let diff = lhs - rhs;
    let mut report = check_zero(&diff, modulus)?;
    report.wall_time = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::cyclotomic;
    use crate::laurent::LaurentPoly;
    use crate::qseries::{truncated_sum, SummandFamily};
    use crate::rat::{rat, rat_frac};

    #[test]
    fn zero_passes_any_modulus() {
        let modulus = cyclotomic(5).unwrap().pow(4);
        let report = check_zero(&RatFunc::zero(), &modulus).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert!(report.remainder.unwrap().is_zero());
    }

    #[test]
    fn thm1_smallest_case_passes() {
        // d = 3, r = 1, n = 5, sum to n-1 = 4, modulo Phi_5^4
        let sum = truncated_sum(&SummandFamily::Thm1 { d: 3, r: 1 }, 4).unwrap();
        let modulus = cyclotomic(5).unwrap().pow(4);
        let report = check_zero(&sum, &modulus).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn non_invertible_denominator_is_inapplicable() {
        // 1/(1 - q^5) against Phi_5
        let f = RatFunc::new(
            LaurentPoly::one(),
            LaurentPoly::from_poly(Poly::one_minus_q_pow(5)),
        )
        .unwrap();
        let phi5 = cyclotomic(5).unwrap();
        let report = check_zero(&f, &phi5).unwrap();
        assert_eq!(report.verdict, Verdict::Inapplicable);
        assert_eq!(report.denominator_gcd.unwrap(), phi5);
        assert!(report.remainder.is_none());
    }

    #[test]
    fn equal_operands_pass() {
        let f = RatFunc::new(
            LaurentPoly::from_poly(Poly::from_int_coeffs(&[3, 1])),
            LaurentPoly::from_poly(Poly::from_int_coeffs(&[1, 1, 2])),
        )
        .unwrap();
        let modulus = cyclotomic(7).unwrap();
        let report = check_equal(&f, &f, &modulus).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn invalid_moduli_rejected() {
        assert!(matches!(
            check_zero(&RatFunc::one(), &Poly::constant(rat(3))),
            Err(Error::InvalidModulus(_))
        ));
        assert!(matches!(
            check_zero(&RatFunc::one(), &Poly::q()),
            Err(Error::InvalidModulus(_))
        ));
    }

    #[test]
    fn scaling_does_not_change_the_verdict() {
        let sum = truncated_sum(&SummandFamily::Thm1 { d: 3, r: 1 }, 4).unwrap();
        let modulus = cyclotomic(5).unwrap().pow(4);
        for c in [rat(7), rat_frac(-3, 11)] {
            let scaled = sum.scale(&c);
            let a = check_zero(&sum, &modulus).unwrap().verdict;
            let b = check_zero(&scaled, &modulus).unwrap().verdict;
            assert_eq!(a, b);
        }
        // and for a failing pair
        let one = RatFunc::one();
        let phi2 = cyclotomic(2).unwrap();
        assert_eq!(check_zero(&one, &phi2).unwrap().verdict, Verdict::Fail);
        assert_eq!(
            check_zero(&one.scale(&rat(5)), &phi2).unwrap().verdict,
            Verdict::Fail
        );
    }

    #[test]
    fn fail_retains_remainder_witness() {
        let f = RatFunc::from_poly(Poly::from_int_coeffs(&[1, 1]));
        let report = check_zero(&f, &cyclotomic(3).unwrap()).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        assert_eq!(report.remainder.unwrap(), Poly::from_int_coeffs(&[1, 1]));
    }

    #[test]
    fn successive_division_oracle() {
        // On a PASS mod Phi_n^e the numerator divides by Phi_n e times.
        let sum = truncated_sum(&SummandFamily::Thm1 { d: 3, r: 1 }, 4).unwrap();
        let phi5 = cyclotomic(5).unwrap();
        let mut cursor = sum.num().base().clone();
        for stage in 0..4 {
            let (quot, rem) = cursor.div_rem(&phi5).unwrap();
            assert!(rem.is_zero(), "stage {stage}");
            cursor = quot;
        }
    }
}
