//! Parallel sweep execution with per-case time budgets and deterministic
//! merging.

use std::collections::BTreeMap;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use crate::congruence::{CongruenceReport, Verdict};
use crate::cyclotomic;
use crate::error::Result;

use super::config::{CampaignConfig, Case, CaseKind};
use super::reports::{CaseReport, ReportSet};
use super::verifiers::*;

/// Run one concrete case to a report.
pub(crate) fn execute_case(kind: &CaseKind) -> Vec<CaseReport> {
    match kind.clone() {
        CaseKind::Thm1 { d, r, n, m_choice, phi_exponent } => {
            vec![CaseReport::Congruence(verify_theorem1_mod_power(
                d, r, n, m_choice, phi_exponent,
            ))]
        }
        CaseKind::Thm2 { d, n } => {
            let (a, b) = verify_theorem2(d, n);
            vec![CaseReport::Congruence(a), CaseReport::Congruence(b)]
        }
        CaseKind::Conj1 { d, n, m_choice } => {
            vec![CaseReport::Congruence(verify_conjecture1(d, n, m_choice))]
        }
        CaseKind::Conj2 { d, n, m_choice } => {
            vec![CaseReport::Congruence(verify_conjecture2(d, n, m_choice))]
        }
        CaseKind::Eq3rdNoa { n } => vec![CaseReport::Congruence(verify_eq_3rd_noa(n))],
        CaseKind::Gw2 { n } => vec![CaseReport::Congruence(verify_gw2(n))],
        CaseKind::Gsdiff { n } => vec![CaseReport::Congruence(verify_gsdiff(n))],
        CaseKind::Sec5Thm { n, m_choice } => {
            vec![CaseReport::Congruence(verify_sec5_theorem(n, m_choice))]
        }
        CaseKind::Sec5Conj { n, m_choice } => {
            vec![CaseReport::Congruence(verify_sec5_conjecture(n, m_choice))]
        }
        CaseKind::LemmaModSquare { alpha, r, d, n, k } => {
            vec![CaseReport::Congruence(verify_lemma_mod_square(alpha, r, d, n, k))]
        }
        CaseKind::Lemma31 { d, n, a_exponent, k } => {
            vec![CaseReport::Congruence(verify_lemma_31(d, n, a_exponent, k))]
        }
        CaseKind::Lemma32 { d, n, a_exponent, k } => {
            vec![CaseReport::Congruence(verify_lemma_32(d, n, a_exponent, k))]
        }
        CaseKind::Andrews { m, big_n, points, seed } => {
            vec![CaseReport::Identity(run_andrews_batch(m, big_n, points, seed))]
        }
        CaseKind::Watson { big_n, points, seed } => {
            vec![CaseReport::Identity(run_watson_batch(big_n, points, seed))]
        }
        CaseKind::Gasper { m, n_list, big_n, points, seed } => {
            vec![CaseReport::Identity(run_gasper_batch(m, &n_list, big_n, points, seed))]
        }
        CaseKind::Ms0 { m, n_list, big_n, points, seed } => {
            vec![CaseReport::Identity(run_ms0_batch(m, &n_list, big_n, points, seed))]
        }
        CaseKind::EqMulti { d, r, n } => {
            vec![CaseReport::Identity(run_eq_multi(d, r, n))]
        }
    }
}

fn timeout_report(case: &Case, budget: Duration) -> CaseReport {
    let mut report = CongruenceReport::inapplicable(format!(
        "case exceeded the {}s budget",
        budget.as_secs()
    ));
    report.verdict = Verdict::Timeout;
    report.wall_time = budget;
    // carry the case key so the record is identifiable
    report.params.insert("case".into(), case.key.clone());
    let statement = case.key.split(' ').next().unwrap_or("").to_string();
    report.statement = statement;
    CaseReport::Congruence(report)
}

/// Upper bound on cyclotomic indices a case can touch, for cache prewarming.
fn prewarm_bound(kind: &CaseKind) -> u32 {
    let from_n = |n: i64, step: i64| -> u32 {
        if n <= 1 {
            1
        } else {
            (step * n).min(4096) as u32
        }
    };
    match kind {
        CaseKind::Thm1 { d, n, .. } | CaseKind::Thm2 { d, n }
        | CaseKind::Conj1 { d, n, .. } | CaseKind::Conj2 { d, n, .. } => from_n(*n, *d),
        CaseKind::Eq3rdNoa { n } => from_n(*n, 3),
        CaseKind::Gw2 { n } | CaseKind::Gsdiff { n } => from_n(*n, 2),
        CaseKind::Sec5Thm { n, .. } | CaseKind::Sec5Conj { n, .. } => from_n(*n, 4),
        CaseKind::LemmaModSquare { n, .. }
        | CaseKind::Lemma31 { n, .. }
        | CaseKind::Lemma32 { n, .. } => from_n(*n, 1),
        CaseKind::EqMulti { d, n, .. } => from_n(*n, *d),
        _ => 1,
    }
}

/// Enumerate the config's cases, run them on a pool of `jobs` workers with a
/// per-case time budget, and merge the reports in case-key order. Any FAIL is
/// visible through `ReportSet::any_fail`.
pub fn run_sweep(config: &CampaignConfig) -> Result<ReportSet> {
    let start = Instant::now();
    let cases = config.enumerate_cases()?;
    let jobs = config
        .jobs
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1)
        })
        .max(1);
    let budget = Duration::from_secs(config.timeout_secs.max(1));

    // Warm the cyclotomic cache sequentially so parallel workers only read.
    let bound = cases.iter().map(|c| prewarm_bound(&c.kind)).max().unwrap_or(1);
    cyclotomic::prewarm(1..=bound);

    struct InFlight {
        index: usize,
        rx: mpsc::Receiver<Vec<CaseReport>>,
        deadline: Instant,
    }

    let mut results: BTreeMap<usize, Vec<CaseReport>> = BTreeMap::new();
    let mut queue = cases.iter().enumerate().collect::<Vec<_>>();
    queue.reverse();
    let mut in_flight: Vec<InFlight> = Vec::new();
    while !queue.is_empty() || !in_flight.is_empty() {
        while in_flight.len() < jobs {
            let Some((index, case)) = queue.pop() else { break };
            let (tx, rx) = mpsc::sync_channel(1);
            let kind = case.kind.clone();
            std::thread::spawn(move || {
                let reports = execute_case(&kind);
                let _ = tx.send(reports);
            });
            in_flight.push(InFlight {
                index,
                rx,
                deadline: Instant::now() + budget,
            });
        }
        let mut still_running = Vec::with_capacity(in_flight.len());
        for flight in in_flight.drain(..) {
            match flight.rx.try_recv() {
                Ok(reports) => {
                    results.insert(flight.index, reports);
                }
                Err(mpsc::TryRecvError::Empty) => {
                    if Instant::now() >= flight.deadline {
                        // Abandon the worker; it finishes detached and its
                        // late result is dropped with the receiver.
                        results.insert(
                            flight.index,
                            vec![timeout_report(&cases[flight.index], budget)],
                        );
                    } else {
                        still_running.push(flight);
                    }
                }
                Err(mpsc::TryRecvError::Disconnected) => {
                    results.insert(
                        flight.index,
                        vec![timeout_report(&cases[flight.index], budget)],
                    );
                }
            }
        }
        in_flight = still_running;
        if !in_flight.is_empty() {
            std::thread::sleep(Duration::from_millis(2));
        }
    }

    let mut reports: Vec<CaseReport> = results.into_values().flatten().collect();
    reports.sort_by_key(|r| r.key());
    Ok(ReportSet {
        config_echo: toml::to_string(config).unwrap_or_default(),
        reports,
        total_wall: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strip_walls(set: &ReportSet) -> Vec<(String, &'static str)> {
        set.reports
            .iter()
            .map(|r| (r.key(), r.verdict().as_str()))
            .collect()
    }

    #[test]
    fn sweep_thm1_small_grid_passes() {
        let config = CampaignConfig::from_toml(
            r#"
            jobs = 2
            [[statement]]
            id = "thm1"
            d = [3]
            n_max = 8
            "#,
        )
        .unwrap();
        let set = run_sweep(&config).unwrap();
        assert!(!set.is_empty());
        assert!(!set.any_fail());
        assert!(set
            .reports
            .iter()
            .all(|r| r.verdict() == Verdict::Pass));
    }

    #[test]
    fn empty_config_gives_empty_set() {
        let config = CampaignConfig::default();
        let set = run_sweep(&config).unwrap();
        assert!(set.is_empty());
        assert!(!set.any_fail());
    }

    #[test]
    fn sweep_is_deterministic_modulo_timing() {
        let config = CampaignConfig::from_toml(
            r#"
            jobs = 2
            [[statement]]
            id = "lemma-mod-square"
            alpha = [1]
            r = [1]
            d = [3]
            n = [5]
            "#,
        )
        .unwrap();
        let a = run_sweep(&config).unwrap();
        let b = run_sweep(&config).unwrap();
        assert_eq!(strip_walls(&a), strip_walls(&b));
    }

    #[test]
    fn over_budget_case_times_out_and_set_completes() {
        let config = CampaignConfig::from_toml(
            r#"
            jobs = 2
            timeout_secs = 1
            [[statement]]
            id = "thm1"
            d = [5]
            r = [-3]
            n = [43]
            m_choice = ["n-1"]
            [[statement]]
            id = "gw2"
            n = [3]
            "#,
        )
        .unwrap();
        let set = run_sweep(&config).unwrap();
        assert_eq!(set.len(), 2);
        let verdicts: Vec<Verdict> = set.reports.iter().map(|r| r.verdict()).collect();
        assert!(verdicts.contains(&Verdict::Timeout));
        assert!(verdicts.contains(&Verdict::Pass));
    }
}
