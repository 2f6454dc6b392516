//! Exact verification of the hypergeometric transformation and summation
//! identities used in the proofs: the multiseries Watson-type transformation,
//! Watson's 8phi7 transformation, the terminating very-well-poised
//! Karlsson-Minton summation, the derived multiseries vanishing identity, and
//! the fully symbolic specialized multisum.
//!
//! Generic-parameter identities are checked by exact evaluation at seeded
//! rational points rather than by multivariate symbolic algebra; square roots
//! of the very-well-poised parameter are kept rational by sampling a = s^2.

mod numeric;
mod symbolic;

pub use numeric::{
    andrews_lhs, andrews_rhs, gasper_terminating_sum, lemma_ms0_multisum, pochhammer_at,
    sample_andrews_outcomes, sample_gasper_values, sample_ms0_values, sample_watson_agreement,
    watson_check, PointOutcome, WatsonAgreement,
};
pub use symbolic::eq_multi_rhs;

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::rat::{rat_frac, BigRat};

/// One rational parameter point for a transformation or summation identity.
///
/// The very-well-poised parameter is a = sqrt_a^2 by construction, so the
/// paired factors (q sqrt(a), -q sqrt(a)) stay rational. Role conventions:
/// Watson reads (b, c, d, e) as (b[0], c[0], b[1], c[1]); the Karlsson-Minton
/// style summations use `e` and `n_list` and ignore `b`, `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamPoint {
    pub q: BigRat,
    pub sqrt_a: BigRat,
    pub b: Vec<BigRat>,
    pub c: Vec<BigRat>,
    pub e: Vec<BigRat>,
    pub n_list: Vec<u32>,
    /// Truncation order N.
    pub big_n: u32,
    pub m: usize,
}

impl ParamPoint {
    pub fn a(&self) -> BigRat {
        &self.sqrt_a * &self.sqrt_a
    }

    /// nu = n_1 + ... + n_m.
    pub fn nu(&self) -> u32 {
        self.n_list.iter().sum()
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} sqrt_a={}", self.q, self.sqrt_a)?;
        for (i, v) in self.b.iter().enumerate() {
            write!(f, " b{}={}", i + 1, v)?;
        }
        for (i, v) in self.c.iter().enumerate() {
            write!(f, " c{}={}", i + 1, v)?;
        }
        for (i, v) in self.e.iter().enumerate() {
            write!(f, " e{}={}", i + 1, v)?;
        }
        if !self.n_list.is_empty() {
            let ns: Vec<String> = self.n_list.iter().map(|n| n.to_string()).collect();
            write!(f, " n=[{}]", ns.join(","))?;
        }
        write!(f, " N={}", self.big_n)
    }
}

/// Multi-index over the (m-1)-fold summation; enumeration covers exactly the
/// indices with j_1 + ... + j_{m-1} <= cap (all further terms vanish through
/// the terminating factor).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiIndex {
    pub j: Vec<u32>,
}

impl MultiIndex {
    /// Partial sums J_i = j_1 + ... + j_i for i = 1..=len.
    pub fn partial_sums(&self) -> Vec<u32> {
        let mut acc = 0;
        self.j
            .iter()
            .map(|&x| {
                acc += x;
                acc
            })
            .collect()
    }

    pub fn total(&self) -> u32 {
        self.j.iter().sum()
    }
}

/// All multi-indices of `parts` nonnegative entries with sum <= cap, in
/// lexicographic order.
pub fn multi_indices(parts: usize, cap: u32) -> Vec<MultiIndex> {
    fn rec(parts: usize, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if parts == 0 {
            out.push(MultiIndex { j: prefix.clone() });
            return;
        }
        for v in 0..=cap {
            prefix.push(v);
            rec(parts - 1, cap - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(parts, cap, &mut Vec::new(), &mut out);
    out
}

/// Deterministic generator of small rational candidate points.
pub struct PointSampler {
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Small nonzero rational with numerator/denominator up to 7.
    fn small_nonzero(&mut self) -> BigRat {
        loop {
            let n = self.rng.gen_range(-7i64..=7);
            let d = self.rng.gen_range(1i64..=4);
            if n == 0 {
                continue;
            }
            return rat_frac(n, d);
        }
    }

    /// Base point q: nonzero, not a root of unity (|q| != 1).
    fn base_q(&mut self) -> BigRat {
        loop {
            let q = self.small_nonzero();
            if !q.abs().is_one() {
                return q;
            }
        }
    }

    fn small_square_root(&mut self) -> BigRat {
        loop {
            let s = self.small_nonzero();
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Candidate point for the multiseries transformation with m parameter
    /// pairs; degeneracy is detected downstream by exact evaluation.
    pub fn andrews_candidate(&mut self, m: usize, big_n: u32) -> ParamPoint {
        ParamPoint {
            q: self.base_q(),
            sqrt_a: self.small_square_root(),
            b: (0..m).map(|_| self.small_nonzero()).collect(),
            c: (0..m).map(|_| self.small_nonzero()).collect(),
            e: Vec::new(),
            n_list: Vec::new(),
            big_n,
            m,
        }
    }

    /// Candidate point for the Karlsson-Minton style summations.
    pub fn karlsson_minton_candidate(&mut self, m: usize, n_list: &[u32], big_n: u32) -> ParamPoint {
        assert_eq!(n_list.len(), m);
        ParamPoint {
            q: self.base_q(),
            sqrt_a: self.small_square_root(),
            b: Vec::new(),
            c: Vec::new(),
            e: (0..m).map(|_| self.small_nonzero()).collect(),
            n_list: n_list.to_vec(),
            big_n,
            m,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_indices_count_and_bound() {
        // 3 parts, cap 4: C(7,3) = 35 indices
        let all = multi_indices(3, 4);
        assert_eq!(all.len(), 35);
        assert!(all.iter().all(|ix| ix.total() <= 4));
        // partial sums are monotone
        let ix = MultiIndex { j: vec![1, 0, 2] };
        assert_eq!(ix.partial_sums(), vec![1, 1, 3]);
    }

    #[test]
    fn sampler_is_deterministic() {
        let mut s1 = PointSampler::new(7);
        let mut s2 = PointSampler::new(7);
        let p1 = s1.andrews_candidate(3, 2);
        let p2 = s2.andrews_candidate(3, 2);
        assert_eq!(p1, p2);
    }
}
