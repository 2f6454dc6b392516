//! Cross-module oracle equivalences that are too heavy for unit tests.

use qcw_core::campaigns::{verify_conjecture1, MChoice};
use qcw_core::congruence::{check_zero, Verdict};
use qcw_core::cyclotomic::{cyclotomic, q_integer};
use qcw_core::qseries::{truncated_sum, SummandFamily};
use qcw_core::transforms::eq_multi_rhs;

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[test]
fn eq_multi_matches_truncated_sum_on_grid() {
    // all admissible (d, r, n) with d <= 4, n <= 13 under the identity's
    // hypotheses: gcd(d, r) = 1, n = -r (mod d), ((d-1)n - r)/d >= 0
    let mut checked = 0;
    for d in [3i64, 4] {
        for r in -3..=d - 1 {
            if r == 0 || gcd_i64(d, r) != 1 {
                continue;
            }
            for n in 2..=13i64 {
                if (n + r).rem_euclid(d) != 0 || (d - 1) * n - r < 0 {
                    continue;
                }
                let upper = (((d - 1) * n - r) / d) as u32;
                let rhs = eq_multi_rhs(d, r, n).unwrap();
                let direct = truncated_sum(&SummandFamily::Thm1 { d, r }, upper).unwrap();
                assert_eq!(rhs, direct, "d={d} r={r} n={n} M={upper}");
                checked += 1;
            }
        }
    }
    assert!(checked >= 20, "grid too small: {checked}");
}

#[test]
fn product_modulus_pass_implies_factor_passes() {
    // check_zero(f, m1*m2) = PASS forces PASS for each factor; exercised on
    // campaign instances with composite moduli [n] Phi_n^3
    for (d, n) in [(3i64, 5i64), (3, 8), (4, 7)] {
        let report = verify_conjecture1(d, n, MChoice::NMinus1);
        assert_eq!(report.verdict, Verdict::Pass, "d={d} n={n}");
        let sum = truncated_sum(&SummandFamily::Thm1 { d, r: 1 }, (n - 1) as u32).unwrap();
        let q_int = q_integer(n as u32).unwrap();
        let phi3 = cyclotomic(n as u32).unwrap().pow(3);
        for factor in [&q_int, &phi3] {
            let factor_report = check_zero(&sum, factor).unwrap();
            assert_eq!(factor_report.verdict, Verdict::Pass, "factor of d={d} n={n}");
        }
    }
}
