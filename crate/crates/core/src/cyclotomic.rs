//! Cyclotomic polynomials, q-integers, and composite congruence moduli.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::BigRat;

fn cache() -> &'static Mutex<HashMap<u32, Poly>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Poly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The n-th cyclotomic polynomial, by memoized exact division
/// Phi_n = (q^n - 1) / prod_{d|n, d<n} Phi_d.
pub fn cyclotomic(n: u32) -> Result<Poly> {
    if n == 0 {
        return Err(Error::InvalidIndex("cyclotomic index must be >= 1".into()));
    }
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return Ok(p.clone());
    }
    let phi = if n == 1 {
        Poly::from_int_coeffs(&[-1, 1])
    } else {
        let mut quotient = -Poly::one_minus_q_pow(n as usize); // q^n - 1
        for d in divisors(n) {
            if d < n {
                let phi_d = cyclotomic(d)?;
                quotient = quotient
                    .try_divexact(&phi_d)?
                    .expect("proper cyclotomic divisors divide q^n - 1");
            }
        }
        quotient
    };
    cache().lock().unwrap().insert(n, phi.clone());
    Ok(phi)
}

/// Compute and cache Phi_n for every index in `ns` (and their divisors), so
/// parallel sweeps afterwards only read the cache.
pub fn prewarm(ns: impl IntoIterator<Item = u32>) {
    for n in ns {
        if n >= 1 {
            let _ = cyclotomic(n);
        }
    }
}

/// The q-integer [n] = 1 + q + ... + q^(n-1) as a polynomial.
pub fn q_integer(n: u32) -> Result<Poly> {
    if n == 0 {
        return Err(Error::InvalidIndex("q-integer index must be >= 1".into()));
    }
    Ok(Poly::from_coeffs(vec![
        BigRat::from_integer(1.into());
        n as usize
    ]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FactorKind {
    Cyclotomic,
    QInteger,
}

/// One factor of a modulus: `kind(index)` with q -> q^subst, raised to
/// `exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulusFactor {
    pub kind: FactorKind,
    pub index: u32,
    pub subst: u32,
    pub exponent: u32,
}

impl ModulusFactor {
    pub fn expand(&self) -> Result<Poly> {
        let base = match self.kind {
            FactorKind::Cyclotomic => cyclotomic(self.index)?,
            FactorKind::QInteger => q_integer(self.index)?,
        };
        if self.subst == 0 || self.exponent == 0 {
            return Err(Error::InvalidIndex(
                "substitution power and exponent must be >= 1".into(),
            ));
        }
        Ok(base.subst_power(self.subst).pow(self.exponent))
    }
}

impl fmt::Display for ModulusFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FactorKind::Cyclotomic => {
                if self.subst == 1 {
                    write!(f, "Phi_{}(q)", self.index)?;
                } else {
                    write!(f, "Phi_{}(q^{})", self.index, self.subst)?;
                }
            }
            FactorKind::QInteger => {
                write!(f, "[{}]", self.index)?;
                if self.subst != 1 {
                    write!(f, "_{{q^{}}}", self.subst)?;
                }
            }
        }
        if self.exponent != 1 {
            write!(f, "^{}", self.exponent)?;
        }
        Ok(())
    }
}

/// Declarative modulus: the product of its expanded factors.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ModulusSpec {
    pub factors: Vec<ModulusFactor>,
}

impl ModulusSpec {
    pub fn empty() -> Self {
        ModulusSpec::default()
    }

    /// Phi_index(q^subst)^exponent appended.
    pub fn phi(mut self, index: u32, subst: u32, exponent: u32) -> Self {
        self.factors.push(ModulusFactor {
            kind: FactorKind::Cyclotomic,
            index,
            subst,
            exponent,
        });
        self
    }

    /// [index]_{q^subst}^exponent appended.
    pub fn q_int(mut self, index: u32, subst: u32, exponent: u32) -> Self {
        self.factors.push(ModulusFactor {
            kind: FactorKind::QInteger,
            index,
            subst,
            exponent,
        });
        self
    }

    pub fn build(&self) -> Result<Poly> {
        let mut acc = Poly::one();
        for factor in &self.factors {
            acc = &acc * &factor.expand()?;
        }
        Ok(acc)
    }
}

impl fmt::Display for ModulusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Product of all expanded factors of the spec.
pub fn build_modulus(spec: &ModulusSpec) -> Result<Poly> {
    spec.build()
}
