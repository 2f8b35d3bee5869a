mod common;

use std::f64::consts::PI;

use cnoidal::coefficients::{
    coeff_a, coeff_table, convolution_kmax, csch2_moment_identity, e_ell, exp_moment_identity,
    f_sum, leading_coefficient, ramanujan_identity, verify_convolution, verify_convolution_with,
    verify_identity, SeriesForm, SingularConvention, SERIES_TOL,
};
use cnoidal::{Error, SeriesRep};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use common::Entry;

fn e(s: f64, ell: usize, rep: SeriesRep) -> f64 {
    e_ell(s, ell, rep).unwrap().value
}

fn f(s: f64, ell: usize, rep: SeriesRep) -> f64 {
    f_sum(s, ell, rep).unwrap().value
}

#[test]
fn odd_orders_are_zero() {
    for s in [0.3, 1.0, 3.0] {
        assert_eq!(e(s, 3, SeriesRep::Auto), 0.0);
        assert_eq!(e(s, 5, SeriesRep::LargeS), 0.0);
        assert_eq!(f(s, 1, SeriesRep::Auto), 0.0);
        assert_eq!(f(s, 3, SeriesRep::SmallS), 0.0);
    }
}

#[test]
fn e2_small_s_limit() {
    assert!((e(0.05, 2, SeriesRep::SmallS) - 1.0 / 6.0).abs() < 1e-15);
    assert!(matches!(e_ell(1.0, 1, SeriesRep::Auto), Err(Error::Domain(_))));
}

#[test]
fn f0_leading_term() {
    let s = 0.1;
    assert!(common::rel_err(f(s, 0, SeriesRep::SmallS), (s / PI).powi(2)) < 1e-12);
}

#[test]
fn sums_match_brute_force() {
    for s in [0.4, 0.8, 1.0, 1.25, 2.0] {
        for ell in [2, 4, 6, 8] {
            for rep in [SeriesRep::SmallS, SeriesRep::LargeS, SeriesRep::Auto] {
                let v = e(s, ell, rep);
                let want = common::brute_e(s, ell);
                let scale = want.abs().max(common::e_scale(ell));
                assert!((v - want).abs() < 1e-11 * scale, "e_{ell}({s}) {rep:?}");
            }
        }
        for ell in [0, 2, 4] {
            for rep in [SeriesRep::SmallS, SeriesRep::LargeS, SeriesRep::Auto] {
                let v = f(s, ell, rep);
                assert!(common::rel_err(v, common::brute_f(s, ell)) < 1e-11, "F_{ell}({s}) {rep:?}");
            }
        }
    }
}

#[test]
fn e6_vanishes_at_one() {
    assert!(e(1.0, 6, SeriesRep::SmallS).abs() < 1e-12);
    assert!(e(1.0, 6, SeriesRep::LargeS).abs() < 1e-12);
}

#[test]
fn dual_representations_agree() {
    assert!((e(1.0, 4, SeriesRep::SmallS) - e(1.0, 4, SeriesRep::LargeS)).abs() < 1e-13);
    for s in [0.8, 1.0, 1.25] {
        for ell in [2, 4, 6, 8] {
            let (a, b) = (e(s, ell, SeriesRep::SmallS), e(s, ell, SeriesRep::LargeS));
            assert!((a - b).abs() <= 1e-12 * a.abs().max(common::e_scale(ell)), "e_{ell}({s})");
        }
        for ell in [0, 2, 4] {
            let (a, b) = (f(s, ell, SeriesRep::SmallS), f(s, ell, SeriesRep::LargeS));
            assert!(common::rel_err(a, b) <= 1e-12, "F_{ell}({s})");
        }
    }
}

#[test]
fn representation_metadata() {
    assert_eq!(e_ell(0.9, 4, SeriesRep::Auto).unwrap().rep, SeriesForm::SmallS);
    assert_eq!(e_ell(1.1, 4, SeriesRep::Auto).unwrap().rep, SeriesForm::LargeS);
    // no closed large-s form for ℓ = 10: Auto falls back, explicit request fails
    assert_eq!(e_ell(3.0, 10, SeriesRep::Auto).unwrap().rep, SeriesForm::SmallS);
    assert!(matches!(e_ell(3.0, 10, SeriesRep::LargeS), Err(Error::Capability(_))));
    assert!(matches!(f_sum(3.0, 6, SeriesRep::LargeS), Err(Error::Capability(_))));
    assert_eq!(f_sum(3.0, 6, SeriesRep::Auto).unwrap().rep, SeriesForm::SmallS);
}

#[test]
fn ramanujan() {
    for m in [1, 2] {
        let pair = ramanujan_identity(m, 50).unwrap();
        assert!(pair.discrepancy() <= 1e-13 * pair.direct.abs().max(1.0), "4m = {}", 4 * m);
    }
    // independent evaluation of both sides for 4m = 4
    let lhs: f64 = (1..=50).map(|k| (k as f64).powi(4) / (k as f64 * PI).sinh().powi(2)).sum();
    let rhs = -(-1.0 / 30.0) / (2.0 * PI)
        - 4.0 / PI * (1..=50).map(|k| (k as f64).powi(3) / (1.0 - (2.0 * PI * k as f64).exp())).sum::<f64>();
    assert!((lhs - rhs).abs() < 1e-13);
    assert!((ramanujan_identity(1, 50).unwrap().direct - lhs).abs() < 1e-14);
}

#[test]
fn appendix_lemmas() {
    for s in [0.8, 1.0, 1.25] {
        for n in 0..=2 {
            let a = exp_moment_identity(s, n).unwrap();
            assert!(a.discrepancy() <= 1e-12 * a.direct.abs().max(1.0), "A.1 s={s} n={n}");
            let b = csch2_moment_identity(s, n).unwrap();
            assert!(b.discrepancy() <= 1e-12 * b.direct.abs().max(1.0), "A.2 s={s} n={n}");
        }
        // direct sides against brute force
        let direct: f64 = (1..=400)
            .map(|k| {
                let k = k as f64;
                k.powi(2) / (k * PI / s).sinh().powi(2)
            })
            .sum();
        assert!(common::rel_err(csch2_moment_identity(s, 0).unwrap().direct, direct) < 1e-12);
    }
    assert!(exp_moment_identity(1.0, 4).is_err());
    assert!(csch2_moment_identity(1.0, 3).is_err());
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn coeff_a_examples() {
    assert_eq!(leading_coefficient(0, 0), q(1, 3));
    assert!((coeff_a(0, 0, 2, 1.0).unwrap() - 1.0 / 3.0).abs() < 1e-16);
    for (a, b) in [(0, 0), (2, 3), (4, 1)] {
        assert_eq!(coeff_a(a, b, 1 + a + b, 0.9).unwrap(), 0.0);
    }
    for n in 0..=3 {
        let x = coeff_a(1, 0, n, 0.7).unwrap();
        let y = coeff_a(0, 1, n, 0.7).unwrap();
        assert!((x + y).abs() < 1e-15);
    }
    assert!(matches!(coeff_a(1, 1, 5, 1.0), Err(Error::Domain(_))));
    // both Kronecker deltas at α = β = n = 0
    let s = 0.9;
    let want = 2.0 * s / PI - 2.0 * common::brute_e(s, 2);
    assert!((coeff_a(0, 0, 0, s).unwrap() - want).abs() < 1e-13);
}

#[test]
fn coeff_table_examples() {
    for s in [0.6, 1.0, 1.7] {
        let t = coeff_table(0, 0, s).unwrap();
        let e2 = common::brute_e(s, 2);
        assert!((t.b[2] + 1.0 / 3.0).abs() < 1e-16);
        assert!((t.b[0] - 2.0 * (s / PI - e2)).abs() < 1e-13);
        let c = common::brute_f(s, 0) - s / PI * t.b[0];
        assert!((t.c - c).abs() < 1e-12);

        let t = coeff_table(2, 2, s).unwrap();
        assert_eq!(t.leading, q(-1, 70));
        assert!((t.b[2] - 2.0 * common::brute_e(s, 4)).abs() < 1e-13);
        assert!((t.b[0] + 6.0 * common::brute_e(s, 6)).abs() < 1e-13);

        let t = coeff_table(4, 0, s).unwrap();
        assert_eq!(t.leading, q(-1, 21));
        assert!((t.b[2] - 10.0 * common::brute_e(s, 4)).abs() < 1e-12);
        assert!((t.b[4] - (s / PI - e2)).abs() < 1e-13);
    }
    assert!(matches!(coeff_table(9, 1, 1.0), Err(Error::Capability(_))));
}

#[test]
fn table_one_reproduced() {
    for s in [0.5, 1.0, 1.5] {
        for ((alpha, beta), row) in common::table_one() {
            let t = coeff_table(alpha, beta, s).unwrap();
            assert_eq!(t.b.len(), row.len());
            for (n, entry) in row.iter().enumerate() {
                let want = common::entry_value(*entry, s);
                match entry {
                    Entry::Rational(p, d) => {
                        assert_eq!(t.leading, q(*p, *d), "({alpha},{beta})");
                        assert_eq!(t.b[n], *p as f64 / *d as f64);
                    }
                    Entry::Zero => assert_eq!(t.b[n], 0.0, "({alpha},{beta}) n={n}"),
                    _ => assert!(
                        (t.b[n] - want).abs() <= 1e-13 * want.abs().max(common::entry_scale(*entry, s)),
                        "({alpha},{beta}) n={n}: {} vs {want}",
                        t.b[n]
                    ),
                }
            }
        }
    }
}

#[test]
fn constant_terms_follow_the_listed_identities() {
    let s = 0.5;
    // u'''·u' carries −F₄ − b(0)s/π
    let t = coeff_table(3, 1, s).unwrap();
    assert!((t.c - (-common::brute_f(s, 4) - t.b[0] * s / PI)).abs() < 1e-10 * t.c.abs().max(1.0));
    // u''·u carries −F₂ − b(0)s/π
    let t = coeff_table(2, 0, s).unwrap();
    assert!((t.c - (-common::brute_f(s, 2) - t.b[0] * s / PI)).abs() < 1e-12);
    assert!(verify_identity(3, 1, 0.5, 64).unwrap() < 1e-9);
}

#[test]
fn convolution_examples() {
    let run = |a, b, j, s| verify_convolution(a, b, j, s, convolution_kmax(a, b, j, s)).unwrap();
    assert!(run(0, 0, 1, 1.0) < 1e-12);
    assert!(run(2, 1, 3, 0.7) < 1e-12);
    assert!(run(1, 2, -2, 1.0) < 1e-12);
    assert!(run(2, 1, 2, 1.0) < 1e-12);
    assert!(matches!(verify_convolution(0, 0, 0, 1.0, 50), Err(Error::Domain(_))));
}

#[test]
fn only_the_limit_convention_matches() {
    for (a, b, j) in [(0, 0, 1), (0, 2, 2), (1, 0, -3)] {
        let k = convolution_kmax(a, b, j, 1.0);
        let limit = verify_convolution_with(a, b, j, 1.0, k, SingularConvention::Limit).unwrap();
        let skip = verify_convolution_with(a, b, j, 1.0, k, SingularConvention::Skip).unwrap();
        assert!(limit < 1e-12);
        if a == 0 || b == 0 {
            assert!(skip > 1e-4, "({a},{b},{j}) skip = {skip}");
        }
    }
}

#[test]
fn negative_shifts() {
    for s in [0.7, 1.0, 1.4] {
        for (a, b) in [(0, 0), (1, 0), (2, 1), (1, 3)] {
            for j in [-1, -2, -5] {
                let k = convolution_kmax(a, b, j, s);
                assert!(verify_convolution(a, b, j, s, k).unwrap() < 1e-11, "({a},{b},{j},{s})");
            }
        }
    }
}

#[test]
fn identity_examples() {
    assert!(verify_identity(0, 0, 1.0, 64).unwrap() < 1e-9);
    assert!(verify_identity(2, 1, 1.5, 64).unwrap() < 1e-9);
    assert!(verify_identity(0, 0, 1.0, 7).is_err());
    assert!(matches!(verify_identity(8, 7, 1.0, 64), Err(Error::Capability(_))));
}

#[test]
fn identity_against_independent_evaluation() {
    for s in [0.6, 1.3] {
        for (a, b) in [(0, 0), (2, 1), (3, 3), (4, 2)] {
            let t = coeff_table(a, b, s).unwrap();
            for x in [0.0, 0.9, 2.0, 4.4] {
                let lhs = common::fourier_u(s, x, a as u32) * common::fourier_u(s, x, b as u32);
                let rhs: f64 = t
                    .b
                    .iter()
                    .enumerate()
                    .map(|(n, bn)| bn * common::fourier_u(s, x, n as u32))
                    .sum::<f64>()
                    + t.c;
                assert!((lhs - rhs).abs() < 1e-8 * lhs.abs().max(1.0), "({a},{b}) s={s} x={x}");
            }
        }
    }
}

#[test]
fn full_identity_suite() {
    for s in [0.5, 1.0, 1.5] {
        for total in 0..=6usize {
            for a in 0..=total {
                let b = total - a;
                assert!(verify_identity(a, b, s, 64).unwrap() < 1e-8, "({a},{b}) s={s}");
                for j in [1, 2, 5] {
                    let k = convolution_kmax(a, b, j, s);
                    assert!(verify_convolution(a, b, j, s, k).unwrap() < 1e-11, "({a},{b},{j}) s={s}");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn table_invariants(a in 0usize..=8, b in 0usize..=8, s in 0.3f64..3.0) {
        let t = coeff_table(a, b, s).unwrap();
        let top = 2 + a + b;
        prop_assert_eq!(t.b.len(), top + 1);
        prop_assert_eq!(t.b[top - 1], 0.0);
        for n in 0..=top {
            if (a + b + n) % 2 == 1 {
                prop_assert_eq!(t.b[n], 0.0);
            }
        }
        if (a + b) % 2 == 1 {
            prop_assert_eq!(t.c, 0.0);
        }
        // −2(1+α)!(1+β)!/(3+α+β)! from plain factorials
        let fact = |n: usize| (1..=n).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i));
        let want = BigRational::new(-BigInt::from(2) * fact(1 + a) * fact(1 + b), fact(3 + a + b));
        prop_assert_eq!(&t.leading, &want);
        prop_assert_eq!(t.b[top], want.to_f64().unwrap());
        let mirror = coeff_table(b, a, s).unwrap();
        for n in 0..=top {
            prop_assert!((t.b[n] - mirror.b[n]).abs() <= 1e-15 * t.b[n].abs().max(1.0));
        }
        prop_assert!((t.c - mirror.c).abs() <= 1e-13 * t.c.abs().max(1.0));
    }

    #[test]
    fn a_symmetry(a in 0usize..=6, b in 0usize..=6, s in 0.3f64..3.0) {
        let sign = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
        for n in 0..=(2 + a + b) {
            let x = coeff_a(a, b, n, s).unwrap();
            let y = coeff_a(b, a, n, s).unwrap();
            prop_assert!((x - sign * y).abs() <= 1e-15 * x.abs().max(1.0));
        }
    }

    #[test]
    fn tail_bound_below_tolerance(s in 0.2f64..5.0, half in 1usize..=4) {
        let ell = 2 * half;
        let v = e_ell(s, ell, SeriesRep::SmallS).unwrap();
        prop_assert!(v.tail_bound <= SERIES_TOL * v.value.abs().max(1.0));
        let w = f_sum(s, ell - 2, SeriesRep::SmallS).unwrap();
        prop_assert!(w.tail_bound <= SERIES_TOL * w.value.abs().max(1.0));
    }
}
