//! Acceptance suite: one test per criterion, each printing a pass line.
//! Every check is exact rational/polynomial arithmetic — zero tolerance.

use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qcw_core::campaigns::{
    run_eq_multi, run_sweep, verify_conjecture1, verify_conjecture2, verify_eq_3rd_noa,
    verify_gsdiff, verify_gw2, verify_lemma_31, verify_lemma_32, verify_lemma_mod_square,
    verify_sec5_conjecture, verify_sec5_theorem, verify_theorem2, CampaignConfig, CaseReport,
    MChoice,
};
use qcw_core::congruence::{check_zero, Verdict};
use qcw_core::cyclotomic::{cyclotomic, divisors, euler_phi, q_integer};
use qcw_core::qseries::{summand, truncated_sum, SummandFamily};
use qcw_core::transforms::{
    sample_andrews_outcomes, sample_gasper_values, sample_ms0_values, sample_watson_agreement,
};
use qcw_core::{Poly, RatFunc};

const SEED: u64 = 7;
const POINTS: usize = 20;

/// Prints the criterion's pass/fail line when the test body finishes or
/// panics.
struct CriterionLine {
    number: u32,
    what: &'static str,
}

fn criterion(number: u32, what: &'static str) -> CriterionLine {
    CriterionLine { number, what }
}

impl Drop for CriterionLine {
    fn drop(&mut self) {
        let verdict = if std::thread::panicking() { "FAIL" } else { "PASS" };
        println!(
            "ACCEPTANCE criterion {} ({}): {verdict}",
            self.number, self.what
        );
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Criterion-1 grid: d in {3,4,5}, -3 <= r <= d-2 with gcd(d,r) = 1,
/// the two smallest admissible n per (d, r).
fn theorem1_grid() -> Vec<(i64, i64, i64)> {
    let mut grid = Vec::new();
    for d in [3i64, 4, 5] {
        for r in -3..=d - 2 {
            if r == 0 || gcd_i64(d, r) != 1 {
                continue;
            }
            let mut n = 1;
            let mut found = 0;
            while found < 2 {
                n += 1;
                if n >= d - r && (n + r).rem_euclid(d) == 0 {
                    grid.push((d, r, n));
                    found += 1;
                }
            }
        }
    }
    grid
}

#[test]
fn criterion_01_theorem1_grid_mod_phi4() {
    let _line = criterion(1, "Theorem 1 grid mod Phi_n^4, both truncations, monotone moduli");
    let suite_start = Instant::now();
    let grid = theorem1_grid();
    let mut cases = 0;
    for &(d, r, n) in &grid {
        for m_choice in MChoice::BOTH {
            let case_start = Instant::now();
            let upper = match m_choice {
                MChoice::Paper => ((d - 1) * n - r) / d,
                MChoice::NMinus1 => n - 1,
            };
            let sum = truncated_sum(&SummandFamily::Thm1 { d, r }, upper as u32).unwrap();
            // the stated congruence, plus the monotone-moduli invariant
            for exponent in [4u32, 3, 2, 1] {
                let modulus = cyclotomic(n as u32).unwrap().pow(exponent);
                let report = check_zero(&sum, &modulus).unwrap();
                assert_eq!(
                    report.verdict,
                    Verdict::Pass,
                    "d={d} r={r} n={n} M={upper} mod Phi^{exponent}"
                );
            }
            let elapsed = case_start.elapsed();
            assert!(
                elapsed < Duration::from_secs(60),
                "case d={d} r={r} n={n} M={upper} took {elapsed:?}"
            );
            cases += 1;
        }
    }
    assert_eq!(cases, 48);
    assert!(suite_start.elapsed() < Duration::from_secs(30 * 60));
}

#[test]
fn criterion_02_theorem2_grid_mod_phi() {
    let _line = criterion(2, "Theorem 2 grid mod Phi_n, both sums");
    for d in [3i64, 4, 5] {
        for n in 2..=15i64 {
            let (a, b) = verify_theorem2(d, n);
            if gcd_i64(d, n) == 1 {
                assert_eq!(a.verdict, Verdict::Pass, "d={d} n={n} first sum");
                assert_eq!(b.verdict, Verdict::Pass, "d={d} n={n} second sum");
            } else {
                assert_eq!(a.verdict, Verdict::Inapplicable, "d={d} n={n}");
                assert_eq!(b.verdict, Verdict::Inapplicable, "d={d} n={n}");
            }
        }
    }
}

#[test]
fn criterion_03_conjectures_mod_n_phi3() {
    let _line = criterion(3, "conjectured congruence grids mod [n] Phi_n^3, both truncations");
    let mut cases = 0;
    for d in [3i64, 4] {
        for n in 2..=16i64 {
            for m_choice in MChoice::BOTH {
                if (n + 1) % d == 0 {
                    let report = verify_conjecture1(d, n, m_choice);
                    assert_eq!(
                        report.verdict,
                        Verdict::Pass,
                        "conj1 d={d} n={n} m={}",
                        m_choice.label()
                    );
                    cases += 1;
                }
                if n > 1 && (n - 1) % d == 0 {
                    let report = verify_conjecture2(d, n, m_choice);
                    assert_eq!(
                        report.verdict,
                        Verdict::Pass,
                        "conj2 d={d} n={n} m={}",
                        m_choice.label()
                    );
                    cases += 1;
                }
            }
        }
    }
    assert_eq!(cases, 34);
}

#[test]
fn criterion_04_third_power_analogue() {
    let _line = criterion(4, "d=3 partial analogue mod [n] resp. [n] Phi_n");
    for n in [2i64, 4, 5, 7, 8, 10, 11, 13, 14] {
        let report = verify_eq_3rd_noa(n);
        assert_eq!(report.verdict, Verdict::Pass, "n={n} mod {}", report.modulus);
        let expected_modulus = if n % 3 == 1 {
            format!("[{n}]")
        } else {
            format!("[{n}]*Phi_{n}(q)")
        };
        assert_eq!(report.modulus, expected_modulus);
    }
}

#[test]
fn criterion_05_explicit_rhs_congruences() {
    let _line = criterion(5, "explicit-RHS congruences mod [n] Phi_n^3 and [n]^4 Phi_n");
    for n in [3i64, 5, 7, 9, 11, 13] {
        let report = verify_gw2(n);
        assert_eq!(report.verdict, Verdict::Pass, "gw2 n={n}");
        let report = verify_gsdiff(n);
        assert_eq!(report.verdict, Verdict::Pass, "gsdiff n={n}");
    }
}

#[test]
fn criterion_06_fifth_power_statements() {
    let _line = criterion(6, "fifth-power theorem and open-conjecture evidence");
    for n in [3i64, 5, 7, 9, 11, 13] {
        for m_choice in MChoice::BOTH {
            let report = verify_sec5_theorem(n, m_choice);
            assert_eq!(
                report.verdict,
                Verdict::Pass,
                "sec5 theorem n={n} m={}",
                m_choice.label()
            );
        }
    }
    for n in [3i64, 5, 7, 9, 11] {
        for m_choice in MChoice::BOTH {
            let report = verify_sec5_conjecture(n, m_choice);
            assert_eq!(
                report.verdict,
                Verdict::EvidencePass,
                "OPEN CONJECTURE FALSIFIED? n={n} m={} remainder: {}",
                m_choice.label(),
                report
                    .remainder
                    .map(|r| r.canonical_text())
                    .unwrap_or_else(|| report.reason.unwrap_or_default())
            );
        }
    }
}

#[test]
fn criterion_07_transform_identities() {
    let _line = criterion(7, "transformation/summation identities, 20 seeded points each, exact");
    // multiseries transformation: exact equality at seeded points
    for m in [2usize, 3, 4] {
        for big_n in 0..=4u32 {
            let outcomes = sample_andrews_outcomes(m, big_n, POINTS, SEED).unwrap();
            assert_eq!(outcomes.len(), POINTS);
            for o in &outcomes {
                assert!(
                    o.holds(),
                    "m={m} N={big_n} point {} ({}): {} != {}",
                    o.index,
                    o.point,
                    o.lhs,
                    o.rhs
                );
            }
        }
    }
    // Watson agrees with the m = 2 route on shared points
    for big_n in 0..=4u32 {
        let agreements = sample_watson_agreement(big_n, POINTS, SEED).unwrap();
        assert_eq!(agreements.len(), POINTS);
        for a in &agreements {
            assert!(a.watson.holds(), "watson N={big_n} point {}", a.watson.index);
            assert!(a.verdicts_agree(), "watson/m=2 disagree N={big_n}");
        }
    }
    // terminating Karlsson-Minton sum and the multiseries vanishing identity
    for m in [1usize, 2, 3] {
        for nu in 0..=3u32 {
            for n_list in compositions(m, nu) {
                for big_n in nu + 1..=nu + 3 {
                    let outcomes =
                        sample_gasper_values(m, &n_list, big_n, POINTS, SEED).unwrap();
                    for o in &outcomes {
                        assert!(
                            o.holds(),
                            "gasper m={m} n={n_list:?} N={big_n} point {}: {}",
                            o.index,
                            o.lhs
                        );
                    }
                    if m >= 2 {
                        let outcomes =
                            sample_ms0_values(m, &n_list, big_n, POINTS, SEED).unwrap();
                        for o in &outcomes {
                            assert!(
                                o.holds(),
                                "ms0 m={m} n={n_list:?} N={big_n} point {}: {}",
                                o.index,
                                o.lhs
                            );
                        }
                    }
                }
            }
        }
    }
}

fn compositions(parts: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(parts: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in 0..=left {
            prefix.push(v);
            rec(parts - 1, left - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts >= 1 {
        rec(parts, total, &mut Vec::new(), &mut out);
    }
    out
}

#[test]
fn criterion_08_proof_internal_checks() {
    let _line = criterion(8, "eq-multi equality, lemma sweeps, summand symmetry/tail vanishing");
    // the specialized multisum equals the truncated sum, symbolically
    for (d, r, n) in [(3i64, 1i64, 5i64), (3, 2, 4), (4, 1, 7), (4, 3, 5)] {
        let report = run_eq_multi(d, r, n);
        assert_eq!(report.verdict, Verdict::Pass, "eqmulti d={d} r={r} n={n}");
    }
    // squared-pochhammer congruence sweep mod Phi_n^2
    for alpha in 0..=2i64 {
        for r in -2..=2i64 {
            for d in [3i64, 4] {
                for n in 2..=9i64 {
                    for k in 0..=n {
                        let report = verify_lemma_mod_square(alpha, r, d, n, k);
                        assert_eq!(
                            report.verdict,
                            Verdict::Pass,
                            "mod-square alpha={alpha} r={r} d={d} n={n} k={k}"
                        );
                    }
                }
            }
        }
    }
    // pochhammer-ratio reversal sweeps mod Phi_n: no FAIL anywhere, and the
    // applicable cells PASS (some cells are honestly INAPPLICABLE when the
    // specialized denominator shares a factor with Phi_n)
    let mut lemma_passes = 0;
    for d in [3i64, 4] {
        for n in 2..=11i64 {
            if gcd_i64(d, n) != 1 {
                continue;
            }
            for a_exponent in 0..=2i64 {
                for k in 0..n {
                    for report in [
                        verify_lemma_31(d, n, a_exponent, k),
                        verify_lemma_32(d, n, a_exponent, k),
                    ] {
                        assert_ne!(
                            report.verdict,
                            Verdict::Fail,
                            "lemma sweep d={d} n={n} a_exp={a_exponent} k={k}: {:?}",
                            report.reason
                        );
                        if report.verdict == Verdict::Pass {
                            lemma_passes += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(lemma_passes > 200, "lemma sweeps nearly vacuous: {lemma_passes}");
    // summand symmetry and tail vanishing mod Phi_n (n <= 13)
    for d in [3i64, 4, 5] {
        for n in 2..=13i64 {
            if gcd_i64(d, n) != 1 {
                continue;
            }
            let m = (1..n)
                .find(|m| (d * m).rem_euclid(n) == (-1i64).rem_euclid(n))
                .expect("gcd(d, n) = 1 gives a valid m");
            let phi_n = cyclotomic(n as u32).unwrap();
            let family = SummandFamily::Thm1 { d, r: 1 };
            for k in 0..=m {
                let pair = summand(&family, k as u32).unwrap()
                    + summand(&family, (m - k) as u32).unwrap();
                let report = check_zero(&pair, &phi_n).unwrap();
                assert_eq!(
                    report.verdict,
                    Verdict::Pass,
                    "symmetry d={d} n={n} m={m} k={k}"
                );
            }
            for k in m + 1..n {
                let single = summand(&family, k as u32).unwrap();
                let report = check_zero(&single, &phi_n).unwrap();
                assert_eq!(
                    report.verdict,
                    Verdict::Pass,
                    "tail d={d} n={n} m={m} k={k}"
                );
            }
        }
    }
}

#[test]
fn criterion_09_structural_invariants() {
    let _line = criterion(9, "cyclotomic structure to n = 200, 1000 division/gcd instances, assembly oracle");
    // cyclotomic structure up to n = 200
    for n in 1u32..=200 {
        let phi = cyclotomic(n).unwrap();
        assert!(phi.has_integer_coeffs(), "Phi_{n} coefficients");
        assert_eq!(phi.degree(), Some(euler_phi(n) as usize), "deg Phi_{n}");
        let mut product = Poly::one();
        for d in divisors(n) {
            product = &product * &cyclotomic(d).unwrap();
        }
        assert_eq!(product, -Poly::one_minus_q_pow(n as usize), "prod Phi_d, n={n}");
        if n >= 2 {
            let mut nontrivial = Poly::one();
            for s in divisors(n) {
                if s > 1 {
                    nontrivial = &nontrivial * &cyclotomic(s).unwrap();
                }
            }
            assert_eq!(nontrivial, q_integer(n).unwrap(), "[n] factorization, n={n}");
        }
    }
    // 1000 seeded random division/gcd instances
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let random_poly = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(0..=8);
        let coeffs: Vec<i64> = (0..len).map(|_| rng.gen_range(-9..=9)).collect();
        Poly::from_int_coeffs(&coeffs)
    };
    for instance in 0..1000 {
        let a = random_poly(&mut rng);
        let b = random_poly(&mut rng);
        if !b.is_zero() {
            let (q, r) = a.div_rem(&b).unwrap();
            assert_eq!(&(&b * &q) + &r, a, "recombination, instance {instance}");
            if let (Some(rd), Some(bd)) = (r.degree(), b.degree()) {
                assert!(rd < bd, "remainder degree, instance {instance}");
            }
        }
        if !a.is_zero() || !b.is_zero() {
            let g = a.gcd(&b).unwrap();
            assert!(g.divides(&a) && g.divides(&b), "gcd divides, instance {instance}");
        }
    }
    // truncated sums agree with the pairwise-addition oracle for M <= 6
    let families = [
        SummandFamily::Thm1 { d: 3, r: 1 },
        SummandFamily::Thm1 { d: 3, r: -2 },
        SummandFamily::Thm2Neg { d: 3 },
        SummandFamily::Conj2 { d: 4 },
        SummandFamily::Sec5,
    ];
    for family in &families {
        let mut fold = RatFunc::zero();
        for upper in 0..=6u32 {
            fold = fold + summand(family, upper).unwrap();
            let direct = truncated_sum(family, upper).unwrap();
            assert_eq!(direct, fold, "fold oracle {family:?} M={upper}");
        }
    }
}

#[test]
fn criterion_10_negative_control_phi5() {
    let _line = criterion(10, "negative control: Phi_n^5 over-claim fails with witnesses");
    // Theorem 1 cases against the over-strong modulus Phi_n^5 must FAIL
    // somewhere on the grid; otherwise the checker would be vacuous.
    let config = CampaignConfig::from_toml(
        r#"
        timeout_secs = 120
        [[statement]]
        id = "thm1"
        d = [3]
        n_smallest = 1
        phi_exponent = 5
        "#,
    )
    .unwrap();
    let set = run_sweep(&config).unwrap();
    assert!(!set.is_empty());
    assert!(
        set.any_fail(),
        "Phi_n^5 over-claim unexpectedly verified on the whole subgrid"
    );
    // and the failing reports carry a nonzero remainder witness
    let witnessed = set.reports.iter().any(|r| match r {
        CaseReport::Congruence(c) => {
            c.verdict == Verdict::Fail && c.remainder.as_ref().is_some_and(|p| !p.is_zero())
        }
        _ => false,
    });
    assert!(witnessed, "FAIL verdicts must retain remainder witnesses");
}
