mod common;

use common::{gamma, hyp2f1, interpolated_u, simpson};
use qrefl_core::liouville::{v3_of_x, v3_zbold_of_x};
use qrefl_core::*;

#[test]
fn v4_value_at_ell4() {
    let m = PotentialModel::v4(75.51).unwrap();
    let u = m.eval_reduced_potential(75.51).unwrap();
    assert!((u + 1.0 / (75.51f64 * 75.51)).abs() < 1e-18);
    assert!((u / -1.7537e-4 - 1.0).abs() < 1e-4);
}

#[test]
fn interpolated_limits_and_value() {
    let m = PotentialModel::helium();
    let z = 1e-6;
    assert!((m.u(z) * z * z * z / -16.54 - 1.0).abs() < 1e-6);
    let want = interpolated_u(16.54, 75.51, 75.51);
    assert!((m.eval_reduced_potential(75.51).unwrap() / want - 1.0).abs() < 1e-14);
    let far = 1e8;
    assert!((m.u(far) * far.powi(4) / -(75.51f64 * 75.51) - 1.0).abs() < 1e-5);
}

#[test]
fn length_scales_of_named_models() {
    assert_eq!(PotentialModel::helium().length_scales(), LengthScales { ell3: Some(16.54), ell4: Some(75.51) });
    assert_eq!(PotentialModel::silica().length_scales(), LengthScales { ell3: Some(321.3), ell4: Some(194.7) });
    assert_eq!(PotentialModel::v4(12.0).unwrap().length_scales(), LengthScales { ell3: None, ell4: Some(12.0) });
}

#[test]
fn tabulated_reproduces_closed_form_between_nodes() {
    let zs: Vec<f64> = (0..400).map(|i| 1e-2 * 1.05f64.powi(i)).collect();
    let us: Vec<f64> = zs.iter().map(|&z| interpolated_u(16.54, 75.51, z)).collect();
    let tab = PotentialModel::Tabulated(TabulatedPotential::from_samples(&zs, &us, None, None).unwrap());
    for w in zs.windows(2).step_by(7) {
        let mid = (w[0] * w[1]).sqrt();
        let rel = tab.u(mid) / interpolated_u(16.54, 75.51, mid) - 1.0;
        assert!(rel.abs() < 1e-8, "z = {mid}, rel = {rel}");
    }
    for (&z, &u) in zs.iter().zip(&us).step_by(13) {
        assert_eq!(tab.u(z), u);
    }
}

#[test]
fn tabulated_file_errors_name_the_line() {
    let text = "# ell4 = 75.51\n1.0 -2.0\n2.0 -1.0\n1.5 -0.5\n";
    match TabulatedPotential::parse(text) {
        Err(Error::Ingest { line, .. }) => assert_eq!(line, 4),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn zstar_matches_gamma_and_hypergeometric_forms() {
    let g = gamma(0.75);
    assert!((zstar() - g * g / std::f64::consts::PI.sqrt()).abs() < 1e-12);
    assert!((zstar() - 0.847213).abs() < 1e-6);
    // Pfaff: ₂F₁(1/2, −1/4; 3/4; −1) = 2^{−1/2} ₂F₁(1/2, 1; 3/4; 1/2)
    let f = hyp2f1(0.5, 1.0, 0.75, 0.5) / 2f64.sqrt();
    assert!((zstar() - 2.0 * (f - 1.0 / 2f64.sqrt())).abs() < 1e-10);
}

#[test]
fn free_particle_phase_is_linear() {
    let m = PotentialModel::v4(1e-9).unwrap();
    let k = 0.3;
    let map = LiouvilleMap::new(&m, k).unwrap();
    let offset = map.phase(1.0).unwrap() - k;
    for z in [0.5, 2.0, 30.0] {
        assert!((map.phase(z).unwrap() - k * z - offset).abs() < 1e-12);
    }
    assert!(badlands_q(&m, k, 10.0).unwrap().abs() < 1e-15);
}

#[test]
fn v4_map_against_independent_quadrature() {
    let ell4 = 75.51;
    let k = 0.02 / ell4;
    let m = PotentialModel::v4(ell4).unwrap();
    let map = LiouvilleMap::new(&m, k).unwrap();
    // dφ/dz at ζ is √2 k since F(ζ) = 2k²
    assert!((map.jacobian(map.zeta()) * map.kbold() / (2f64.sqrt() * k) - 1.0).abs() < 1e-14);
    for u in [-1.0f64, 0.0, 1.0] {
        let want = simpson(|v| (2.0 * (2.0 * v).cosh()).sqrt(), 0.0, u, 2000);
        let got = map.z_map(map.zeta() * u.exp()).unwrap();
        assert!((got - want).abs() < 1e-8, "u = {u}: {got} vs {want}");
    }
    // 𝐳_M − 𝐳_φ: the map at ζ sits 𝐳_* above the phase origin
    assert!((map.z_map(map.zeta()).unwrap() - map.z_phi() - zstar()).abs() < 1e-12);
}

#[test]
fn v4_badlands_is_universal() {
    let ell4 = 75.51;
    let m = PotentialModel::v4(ell4).unwrap();
    for kl in [1e-3, 0.05] {
        let k = kl / ell4;
        let zeta = (ell4 / k).sqrt();
        assert!((badlands_q(&m, k, zeta).unwrap() * kl - 0.625).abs() < 1e-12);
        let grid: Vec<f64> = (-10..=10).map(|i| 0.5 * i as f64).collect();
        let p = transformed_profile(&m, k, &grid).unwrap();
        assert_eq!(p.ebold, kl);
        assert_eq!(p.kbold, kl.sqrt());
        for &(_, zb, _, v) in &p.samples {
            assert!((v - v4_closed_form(zb)).abs() < 1e-6, "zb = {zb}");
        }
    }
}

#[test]
fn helium_landscape_flanks() {
    let m = PotentialModel::helium();
    // 1 neV in reduced units for helium-4
    let k = 3.6746e-4;
    let grid: Vec<f64> = vec![-400.0, -200.0, 2.0, 4.0, 8.0, 100.0];
    let p = transformed_profile(&m, k, &grid).unwrap();
    // right flank relaxes onto 𝐕₄; ℓ4²/ℓ3 is close to ζ here so the approach is slow
    let dev: Vec<f64> = p.samples[2..].iter().map(|&(_, zb, _, v)| (v / v4_closed_form(zb) - 1.0).abs()).collect();
    assert!(dev.windows(2).all(|w| w[1] < w[0]), "{dev:?}");
    assert!(dev[3] < 0.02);
    // left flank follows 3/(4𝐳²) once well inside the 1/z³ region
    let left: Vec<f64> = p.samples[..2].iter().map(|&(_, zb, _, v)| (v * 4.0 * zb * zb / 3.0 - 1.0).abs()).collect();
    assert!(left[0] < left[1] && left[0] < 0.05, "{left:?}");
}

#[test]
fn v3_landscape_closed_form_consistency() {
    let m = PotentialModel::homogeneous(3, 16.54).unwrap();
    let k = 0.01;
    let map = LiouvilleMap::new(&m, k).unwrap();
    for x in [0.3, 1.0, 4.0] {
        let z = x * map.zeta();
        assert!((map.vbold(z) - v3_of_x(x)).abs() < 1e-12);
        assert!((map.z_map(z).unwrap() - v3_zbold_of_x(x).unwrap()).abs() < 1e-8);
    }
}

#[test]
fn transformed_solver_is_invariant() {
    let opts = SolverOptions::default();
    let v4 = PotentialModel::v4(75.51).unwrap();
    let k = 0.05 / 75.51;
    let a = solve_reflection(&v4, k, &opts).unwrap();
    let b = solve_transformed_reflection(&v4, k, &opts).unwrap();
    let (aa, ab) = (a_from_r(a.r).unwrap(), a_from_r(b.r).unwrap());
    assert!((aa - ab).norm() < 1e-6 * aa.norm());
    assert!(b.flux_defect().abs() < 1e-6);
    assert_eq!(b.phase_convention, PhaseConvention::LiouvilleShifted);

    let he = PotentialModel::helium();
    for kl in [3e-3, 0.04] {
        let k = kl / 75.51;
        let a = a_from_r(solve_reflection(&he, k, &opts).unwrap().r).unwrap();
        let b = a_from_r(solve_transformed_reflection(&he, k, &opts).unwrap().r).unwrap();
        assert!((a - b).norm() < 1e-5 * a.norm());
    }
}
