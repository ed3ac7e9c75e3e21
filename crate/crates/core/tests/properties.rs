mod common;

use common::{c, max_diff};
use proptest::prelude::*;
use qrefl_core::ere::series::beta_by_composition;
use qrefl_core::*;

const TOL: f64 = 1e-10;

fn complex(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(a, b)| c(a, b))
}

/// `e^{iφ}[[a, b], [−b*, a*]]` with `|a| ≥ cos 1.3` so the transfer matrix exists.
fn unitary() -> impl Strategy<Value = SMatrix2> {
    (0.0..1.3f64, -3.2..3.2f64, -3.2..3.2f64, -3.2..3.2f64).prop_map(|(th, al, be, ph)| {
        let a = Complex64::from_polar(th.cos(), al);
        let b = Complex64::from_polar(th.sin(), be);
        let g = Complex64::from_polar(1.0, ph);
        SMatrix2::new(g * a, g * b, -g * b.conj(), g * a.conj())
    })
}

fn symmetric_unitary() -> impl Strategy<Value = (Complex64, Complex64)> {
    (-3.2..3.2f64, -3.2..3.2f64).prop_map(|(d1, d2)| {
        let (p, m) = (Complex64::from_polar(1.0, d1), Complex64::from_polar(1.0, d2));
        ((p - m) * 0.5, (p + m) * 0.5)
    })
}

fn disk(r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..r, -3.2..3.2f64).prop_map(|(m, a)| Complex64::from_polar(m, a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pi_is_an_involution(m11 in disk(1.0).prop_filter("pivot", |z| z.norm() > 0.1),
                           m12 in complex(1.0), m21 in complex(1.0), m22 in complex(1.0)) {
        let m = Mat2([[m11, m12], [m21, m22]]);
        let back = pi_involution(&pi_involution(&m).unwrap()).unwrap();
        prop_assert!(back.distance(&m) < TOL);
    }

    #[test]
    fn star_is_associative(a in unitary(), b in unitary(), d in unitary()) {
        let left = star(&star(&a, &b).unwrap(), &d);
        let right = star(&a, &star(&b, &d).unwrap());
        if let (Ok(l), Ok(r)) = (left, right) {
            prop_assert!(l.distance(&r) < TOL * (1.0 + l.matrix().max_norm()));
        }
    }

    #[test]
    fn star_inverse_laws(s in unitary()) {
        let inv = star_inverse(&s).unwrap();
        prop_assert!(star(&s, &inv).unwrap().distance(&SMatrix2::identity()) < TOL);
        prop_assert!(star_inverse(&inv).unwrap().distance(&s) < TOL);
    }

    #[test]
    fn star_of_unitaries_is_unitary(a in unitary(), b in unitary()) {
        if let Ok(s) = star(&a, &b) {
            prop_assert!(s.symmetry_report(1e-9).unitary);
        }
    }

    #[test]
    fn compose_matches_star_product((r4, t4) in symmetric_unitary(), rho in disk(0.9)) {
        prop_assume!(t4.norm() > 0.05);
        let s_rho = SMatrix2::symmetric(rho, (c(1.0, 0.0) - rho * rho).sqrt());
        let full = star(&s_rho, &SMatrix2::symmetric(r4, t4)).unwrap();
        prop_assert!((full.r - compose_r(r4, t4, rho).unwrap()).norm() < TOL);
    }

    #[test]
    fn rho_round_trip((r4, t4) in symmetric_unitary(), rho in disk(0.9)) {
        // ρ is invisible behind a fully reflecting S₄
        prop_assume!(r4.norm() > 1e-3 && t4.norm() > 0.05);
        let r = compose_r(r4, t4, rho).unwrap();
        prop_assert!((extract_rho(r, r4).unwrap() - rho).norm() < TOL);
    }

    #[test]
    fn a_r_round_trip(r in disk(0.999)) {
        let back = r_from_a(a_from_r(r).unwrap()).unwrap();
        prop_assert!((back - r).norm() < 1e-15 / (1.0 - r.norm()));
    }

    #[test]
    fn combine_agrees_with_compose((r4, t4) in symmetric_unitary(), rho in disk(0.9)) {
        prop_assume!((c(1.0, 0.0) - r4).norm() > 1e-3);
        let r = compose_r(r4, t4, rho).unwrap();
        prop_assume!((c(1.0, 0.0) - r).norm() > 1e-3);
        let want = a_from_r(r).unwrap();
        let got = combine_equa(a_from_r(r4).unwrap(), rho).unwrap();
        prop_assert!((got - want).norm() < 1e-9 * (1.0 + want.norm()));
    }

    #[test]
    fn potentials_are_attractive_and_monotone(z in 1e-3..1e5f64) {
        for m in [PotentialModel::helium(), PotentialModel::silica(), PotentialModel::v4(75.51).unwrap()] {
            let (u, u1, _) = m.derivs(z);
            prop_assert!(u < 0.0 && u1 > 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn closed_beta_formulas_match_composition(r0 in disk(0.6), r1 in complex(1.0), r2 in complex(1.0),
                                              r3 in complex(1.0), r4 in complex(1.0), ell4 in 10.0..500.0f64) {
        let rho = [r0, r1, r2, r3, r4];
        let alpha = AlphaCoefficients::standard();
        let closed = beta_from_rho(&alpha, &RhoExpansion::from_coeffs(rho), ell4).unwrap();
        let composed = beta_by_composition(&alpha, &rho, ell4).unwrap();
        let scale = closed.as_array().iter().fold(1.0f64, |m, z| m.max(z.norm()));
        prop_assert!(max_diff(&closed.as_array(), &composed.as_array()) < TOL * scale);
    }
}
