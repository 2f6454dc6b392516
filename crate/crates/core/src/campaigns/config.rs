//! Sweep configuration and hypothesis-aware case enumeration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::MChoice;

/// Statement identifiers accepted by the sweep and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StatementId {
    Thm1,
    Thm2,
    Conj1,
    Conj2,
    Eq3rdNoa,
    Gw2,
    Gsdiff,
    Sec5Thm,
    Sec5Conj,
    LemmaModSquare,
    Lemma31,
    Lemma32,
    Andrews,
    Watson,
    GasperKm,
    Ms0,
    EqMulti,
}

impl StatementId {
    pub fn as_str(&self) -> &'static str {
        match self {
            StatementId::Thm1 => "thm1",
            StatementId::Thm2 => "thm2",
            StatementId::Conj1 => "conj1",
            StatementId::Conj2 => "conj2",
            StatementId::Eq3rdNoa => "3rd-noa",
            StatementId::Gw2 => "gw2",
            StatementId::Gsdiff => "gsdiff",
            StatementId::Sec5Thm => "sec5-thm",
            StatementId::Sec5Conj => "sec5-conj",
            StatementId::LemmaModSquare => "lemma-mod-square",
            StatementId::Lemma31 => "lemma31",
            StatementId::Lemma32 => "lemma32",
            StatementId::Andrews => "andrews",
            StatementId::Watson => "watson",
            StatementId::GasperKm => "gasper",
            StatementId::Ms0 => "ms0",
            StatementId::EqMulti => "eqmulti",
        }
    }
}

impl std::str::FromStr for StatementId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "thm1" => StatementId::Thm1,
            "thm2" => StatementId::Thm2,
            "conj1" => StatementId::Conj1,
            "conj2" => StatementId::Conj2,
            "3rd-noa" | "3rdnoa" => StatementId::Eq3rdNoa,
            "gw2" => StatementId::Gw2,
            "gsdiff" => StatementId::Gsdiff,
            "sec5-thm" => StatementId::Sec5Thm,
            "sec5-conj" => StatementId::Sec5Conj,
            "lemma-mod-square" => StatementId::LemmaModSquare,
            "lemma31" => StatementId::Lemma31,
            "lemma32" => StatementId::Lemma32,
            "andrews" => StatementId::Andrews,
            "watson" => StatementId::Watson,
            "gasper" => StatementId::GasperKm,
            "ms0" => StatementId::Ms0,
            "eqmulti" => StatementId::EqMulti,
            other => {
                return Err(Error::ConfigError(format!(
                    "unknown statement id '{other}'"
                )))
            }
        })
    }
}

/// One statement section of a sweep config. Absent range fields fall back to
/// statement-specific defaults; hypothesis-violating combinations run and are
/// reported INAPPLICABLE by the verifier.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatementConfig {
    pub id: String,
    #[serde(default)]
    pub d: Vec<i64>,
    #[serde(default)]
    pub r: Vec<i64>,
    #[serde(default)]
    pub n: Vec<i64>,
    /// Enumerate all admissible n up to this bound.
    #[serde(default)]
    pub n_max: Option<i64>,
    /// Take the given number of smallest admissible n per parameter choice.
    #[serde(default)]
    pub n_smallest: Option<usize>,
    /// Truncation choices: "paper" and/or "n-1". Default: both where the
    /// statement has a choice.
    #[serde(default)]
    pub m_choice: Vec<String>,
    #[serde(default)]
    pub alpha: Vec<i64>,
    #[serde(default)]
    pub a_exponent: Vec<i64>,
    /// Explicit k values; when empty, all k allowed by the statement run.
    #[serde(default)]
    pub k: Vec<i64>,
    /// THM1 exploration: check against Phi_n^e instead of Phi_n^4.
    #[serde(default)]
    pub phi_exponent: Option<u32>,
    /// Transform identities: series counts m.
    #[serde(default)]
    pub m: Vec<usize>,
    /// Transform identities: truncation orders N.
    #[serde(default)]
    pub big_n: Vec<u32>,
    /// Karlsson-Minton statements: totals nu = n_1 + ... + n_m.
    #[serde(default)]
    pub nu: Vec<u32>,
    /// Points per seeded identity batch.
    #[serde(default)]
    pub points: Option<usize>,
}

/// A whole sweep: statements plus execution policy.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    #[serde(default)]
    pub jobs: Option<usize>,
    #[serde(default = "default_timeout_secs")]
    pub timeout_secs: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default, rename = "statement")]
    pub statements: Vec<StatementConfig>,
}

fn default_timeout_secs() -> u64 {
    120
}

fn default_seed() -> u64 {
    7
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            jobs: None,
            timeout_secs: default_timeout_secs(),
            seed: default_seed(),
            statements: Vec::new(),
        }
    }
}

impl CampaignConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::ConfigError(e.to_string()))
    }
}

/// Fully concrete parameters of one dispatchable case.
#[derive(Clone, Debug, PartialEq)]
pub enum CaseKind {
    Thm1 { d: i64, r: i64, n: i64, m_choice: MChoice, phi_exponent: u32 },
    Thm2 { d: i64, n: i64 },
    Conj1 { d: i64, n: i64, m_choice: MChoice },
    Conj2 { d: i64, n: i64, m_choice: MChoice },
    Eq3rdNoa { n: i64 },
    Gw2 { n: i64 },
    Gsdiff { n: i64 },
    Sec5Thm { n: i64, m_choice: MChoice },
    Sec5Conj { n: i64, m_choice: MChoice },
    LemmaModSquare { alpha: i64, r: i64, d: i64, n: i64, k: i64 },
    Lemma31 { d: i64, n: i64, a_exponent: i64, k: i64 },
    Lemma32 { d: i64, n: i64, a_exponent: i64, k: i64 },
    Andrews { m: usize, big_n: u32, points: usize, seed: u64 },
    Watson { big_n: u32, points: usize, seed: u64 },
    Gasper { m: usize, n_list: Vec<u32>, big_n: u32, points: usize, seed: u64 },
    Ms0 { m: usize, n_list: Vec<u32>, big_n: u32, points: usize, seed: u64 },
    EqMulti { d: i64, r: i64, n: i64 },
}

/// One enumerated case: a sort key and the concrete parameters.
#[derive(Clone, Debug)]
pub struct Case {
    pub key: String,
    pub kind: CaseKind,
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn parse_m_choices(cfg: &StatementConfig) -> Result<Vec<MChoice>> {
    if cfg.m_choice.is_empty() {
        return Ok(MChoice::BOTH.to_vec());
    }
    cfg.m_choice.iter().map(|s| s.parse()).collect()
}

/// Admissible n for the THM1 family: n >= d - r with n = -r (mod d).
fn thm1_admissible_n(d: i64, r: i64) -> impl Iterator<Item = i64> {
    let first = (d - r).max(1);
    let residue = (-r).rem_euclid(d);
    (first..).filter(move |n| n.rem_euclid(d) == residue)
}

fn enumerate_statement(cfg: &StatementConfig, sweep_seed: u64, out: &mut Vec<Case>) -> Result<()> {
    let id: StatementId = cfg.id.parse()?;
    let m_choices = parse_m_choices(cfg)?;
    let points = cfg.points.unwrap_or(20);
    let key = |suffix: String| format!("{} {}", id.as_str(), suffix);
    match id {
        StatementId::Thm1 => {
            let ds = if cfg.d.is_empty() { vec![3] } else { cfg.d.clone() };
            let phi_exponent = cfg.phi_exponent.unwrap_or(4);
            for &d in &ds {
                let rs: Vec<i64> = if cfg.r.is_empty() {
                    (-3..=d - 2).filter(|&r| r != 0 && gcd_i64(d, r) == 1).collect()
                } else {
                    cfg.r.clone()
                };
                for &r in &rs {
                    let ns: Vec<i64> = if !cfg.n.is_empty() {
                        cfg.n.clone()
                    } else if let Some(count) = cfg.n_smallest {
                        thm1_admissible_n(d, r).take(count).collect()
                    } else if let Some(n_max) = cfg.n_max {
                        thm1_admissible_n(d, r).take_while(|&n| n <= n_max).collect()
                    } else {
                        thm1_admissible_n(d, r).take(2).collect()
                    };
                    for &n in &ns {
                        for &mc in &m_choices {
                            out.push(Case {
                                key: key(format!(
                                    "d={d:02} r={r:+03} n={n:03} m={}",
                                    mc.label()
                                )),
                                kind: CaseKind::Thm1 { d, r, n, m_choice: mc, phi_exponent },
                            });
                        }
                    }
                }
            }
        }
        StatementId::Thm2 => {
            let ds = if cfg.d.is_empty() { vec![3] } else { cfg.d.clone() };
            for &d in &ds {
                let ns = explicit_or_range(cfg, 2);
                for n in ns {
                    out.push(Case {
                        key: key(format!("d={d:02} n={n:03}")),
                        kind: CaseKind::Thm2 { d, n },
                    });
                }
            }
        }
        StatementId::Conj1 | StatementId::Conj2 => {
            let ds = if cfg.d.is_empty() { vec![3] } else { cfg.d.clone() };
            for &d in &ds {
                let ns: Vec<i64> = if !cfg.n.is_empty() {
                    cfg.n.clone()
                } else if let Some(n_max) = cfg.n_max {
                    let residue = if id == StatementId::Conj1 {
                        (-1i64).rem_euclid(d)
                    } else {
                        1
                    };
                    (2..=n_max).filter(|n| n.rem_euclid(d) == residue).collect()
                } else {
                    return Err(Error::ConfigError(format!(
                        "{} needs n or n_max",
                        id.as_str()
                    )));
                };
                for n in ns {
                    for &mc in &m_choices {
                        let kind = if id == StatementId::Conj1 {
                            CaseKind::Conj1 { d, n, m_choice: mc }
                        } else {
                            CaseKind::Conj2 { d, n, m_choice: mc }
                        };
                        out.push(Case {
                            key: key(format!("d={d:02} n={n:03} m={}", mc.label())),
                            kind,
                        });
                    }
                }
            }
        }
        StatementId::Eq3rdNoa => {
            for n in explicit_or_range(cfg, 2) {
                out.push(Case {
                    key: key(format!("n={n:03}")),
                    kind: CaseKind::Eq3rdNoa { n },
                });
            }
        }
        StatementId::Gw2 | StatementId::Gsdiff => {
            for n in explicit_or_range(cfg, 3) {
                let kind = if id == StatementId::Gw2 {
                    CaseKind::Gw2 { n }
                } else {
                    CaseKind::Gsdiff { n }
                };
                out.push(Case {
                    key: key(format!("n={n:03}")),
                    kind,
                });
            }
        }
        StatementId::Sec5Thm | StatementId::Sec5Conj => {
            for n in explicit_or_range(cfg, 3) {
                for &mc in &m_choices {
                    let kind = if id == StatementId::Sec5Thm {
                        CaseKind::Sec5Thm { n, m_choice: mc }
                    } else {
                        CaseKind::Sec5Conj { n, m_choice: mc }
                    };
                    out.push(Case {
                        key: key(format!("n={n:03} m={}", mc.label())),
                        kind,
                    });
                }
            }
        }
        StatementId::LemmaModSquare => {
            let alphas = if cfg.alpha.is_empty() { vec![0, 1, 2] } else { cfg.alpha.clone() };
            let rs = if cfg.r.is_empty() { vec![-2, -1, 0, 1, 2] } else { cfg.r.clone() };
            let ds = if cfg.d.is_empty() { vec![3, 4] } else { cfg.d.clone() };
            for &alpha in &alphas {
                for &r in &rs {
                    for &d in &ds {
                        for n in explicit_or_range(cfg, 2) {
                            let ks: Vec<i64> = if cfg.k.is_empty() {
                                (0..=n).collect()
                            } else {
                                cfg.k.clone()
                            };
                            for k in ks {
                                out.push(Case {
                                    key: key(format!(
                                        "alpha={alpha} r={r:+03} d={d:02} n={n:03} k={k:03}"
                                    )),
                                    kind: CaseKind::LemmaModSquare { alpha, r, d, n, k },
                                });
                            }
                        }
                    }
                }
            }
        }
        StatementId::Lemma31 | StatementId::Lemma32 => {
            let ds = if cfg.d.is_empty() { vec![3, 4] } else { cfg.d.clone() };
            let exps = if cfg.a_exponent.is_empty() { vec![0, 1, 2] } else { cfg.a_exponent.clone() };
            for &d in &ds {
                for n in explicit_or_range(cfg, 2) {
                    for &a_exponent in &exps {
                        // all k <= m needs m; enumerate k <= n-1 and let the
                        // verifier mark k > m INAPPLICABLE
                        let ks: Vec<i64> = if cfg.k.is_empty() {
                            (0..n).collect()
                        } else {
                            cfg.k.clone()
                        };
                        for k in ks {
                            let kind = if id == StatementId::Lemma31 {
                                CaseKind::Lemma31 { d, n, a_exponent, k }
                            } else {
                                CaseKind::Lemma32 { d, n, a_exponent, k }
                            };
                            out.push(Case {
                                key: key(format!(
                                    "d={d:02} n={n:03} a_exp={a_exponent} k={k:03}"
                                )),
                                kind,
                            });
                        }
                    }
                }
            }
        }
        StatementId::Andrews => {
            let ms = if cfg.m.is_empty() { vec![2, 3, 4] } else { cfg.m.clone() };
            let ns = if cfg.big_n.is_empty() { (0..=4).collect() } else { cfg.big_n.clone() };
            for &m in &ms {
                for &big_n in &ns {
                    out.push(Case {
                        key: key(format!("m={m} N={big_n}")),
                        kind: CaseKind::Andrews { m, big_n, points, seed: sweep_seed },
                    });
                }
            }
        }
        StatementId::Watson => {
            let ns = if cfg.big_n.is_empty() { (0..=4).collect() } else { cfg.big_n.clone() };
            for &big_n in &ns {
                out.push(Case {
                    key: key(format!("N={big_n}")),
                    kind: CaseKind::Watson { big_n, points, seed: sweep_seed },
                });
            }
        }
        StatementId::GasperKm | StatementId::Ms0 => {
            let ms = if cfg.m.is_empty() {
                if id == StatementId::GasperKm { vec![1, 2, 3] } else { vec![2, 3] }
            } else {
                cfg.m.clone()
            };
            let nus = if cfg.nu.is_empty() { vec![0, 1, 2, 3] } else { cfg.nu.clone() };
            for &m in &ms {
                for &nu in &nus {
                    for n_list in compositions(m, nu) {
                        let ns: Vec<u32> = if cfg.big_n.is_empty() {
                            (nu + 1..=nu + 3).collect()
                        } else {
                            cfg.big_n.clone()
                        };
                        let n_desc = n_list
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(",");
                        for &big_n in &ns {
                            let kind = if id == StatementId::GasperKm {
                                CaseKind::Gasper {
                                    m,
                                    n_list: n_list.clone(),
                                    big_n,
                                    points,
                                    seed: sweep_seed,
                                }
                            } else {
                                CaseKind::Ms0 {
                                    m,
                                    n_list: n_list.clone(),
                                    big_n,
                                    points,
                                    seed: sweep_seed,
                                }
                            };
                            out.push(Case {
                                key: key(format!("m={m} n_list=[{n_desc}] N={big_n}")),
                                kind,
                            });
                        }
                    }
                }
            }
        }
        StatementId::EqMulti => {
            let ds = if cfg.d.is_empty() { vec![3, 4] } else { cfg.d.clone() };
            for &d in &ds {
                let rs: Vec<i64> = if cfg.r.is_empty() {
                    (-3..=d - 1).filter(|&r| r != 0 && gcd_i64(d, r) == 1).collect()
                } else {
                    cfg.r.clone()
                };
                for &r in &rs {
                    let ns: Vec<i64> = if !cfg.n.is_empty() {
                        cfg.n.clone()
                    } else if let Some(n_max) = cfg.n_max {
                        thm1_admissible_n(d, r).take_while(|&n| n <= n_max).collect()
                    } else {
                        thm1_admissible_n(d, r).take(1).collect()
                    };
                    for &n in &ns {
                        out.push(Case {
                            key: key(format!("d={d:02} r={r:+03} n={n:03}")),
                            kind: CaseKind::EqMulti { d, r, n },
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Explicit n list, or 'start..=n_max', or an error if neither was given.
fn explicit_or_range(cfg: &StatementConfig, start: i64) -> Vec<i64> {
    if !cfg.n.is_empty() {
        cfg.n.clone()
    } else if let Some(n_max) = cfg.n_max {
        (start..=n_max).collect()
    } else {
        Vec::new()
    }
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative terms.
pub(crate) fn compositions(parts: usize, total: u32) -> Vec<Vec<u32>> {
    crate::transforms::multi_indices(parts, total)
        .into_iter()
        .filter(|ix| ix.total() == total)
        .map(|ix| ix.j)
        .collect()
}

impl CampaignConfig {
    /// Expand the config into a deterministic, key-sorted case list.
    pub fn enumerate_cases(&self) -> Result<Vec<Case>> {
        let mut cases = Vec::new();
        for statement in &self.statements {
            enumerate_statement(statement, self.seed, &mut cases)?;
        }
        cases.sort_by(|a, b| a.key.cmp(&b.key));
        Ok(cases)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thm1_case_enumeration_matches_hypotheses() {
        // d = 3, admissible n up to 10
        let cfg = CampaignConfig::from_toml(
            r#"
            [[statement]]
            id = "thm1"
            d = [3]
            n_max = 10
            m_choice = ["n-1"]
            "#,
        )
        .unwrap();
        let cases = cfg.enumerate_cases().unwrap();
        let triples: Vec<(i64, i64, i64)> = cases
            .iter()
            .map(|c| match &c.kind {
                CaseKind::Thm1 { d, r, n, .. } => (*d, *r, *n),
                _ => unreachable!(),
            })
            .collect();
        // hypothesis enumeration oracle: d=3, r in {-2,-1,1}, n = -r (mod 3),
        // n >= 3 - r, n <= 10
        let mut expected = Vec::new();
        for r in [-3i64, -2, -1, 1] {
            if gcd_i64(3, r) != 1 {
                continue;
            }
            for n in 1..=10i64 {
                if n >= 3 - r && (n + r).rem_euclid(3) == 0 {
                    expected.push((3, r, n));
                }
            }
        }
        let mut got = triples.clone();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
        assert!(expected.contains(&(3, 1, 5)));
        assert!(expected.contains(&(3, -1, 4)));
        assert!(expected.contains(&(3, -1, 10)));
        assert!(expected.contains(&(3, -2, 8)));
    }

    #[test]
    fn empty_config_enumerates_nothing() {
        let cfg = CampaignConfig::from_toml("").unwrap();
        assert!(cfg.enumerate_cases().unwrap().is_empty());
    }

    #[test]
    fn unknown_statement_is_config_error() {
        let cfg = CampaignConfig::from_toml(
            r#"
            [[statement]]
            id = "bogus"
            "#,
        )
        .unwrap();
        assert!(matches!(
            cfg.enumerate_cases(),
            Err(Error::ConfigError(_))
        ));
    }

    #[test]
    fn compositions_enumeration() {
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(1, 0), vec![vec![0]]);
        assert_eq!(compositions(3, 1).len(), 3);
    }

    #[test]
    fn keys_are_sorted() {
        let cfg = CampaignConfig::from_toml(
            r#"
            [[statement]]
            id = "gw2"
            n = [9, 3, 7]
            "#,
        )
        .unwrap();
        let cases = cfg.enumerate_cases().unwrap();
        let keys: Vec<&str> = cases.iter().map(|c| c.key.as_str()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
