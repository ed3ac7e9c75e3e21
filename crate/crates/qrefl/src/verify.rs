//! Self-check suite run by `qrefl verify`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qrefl_core::ere::series::beta_by_composition;
use qrefl_core::{
    beta_from_rho, compose_r, extract_rho, pi_involution, solve_reflection, solve_transformed_reflection, star,
    star_inverse, v4_amplitudes, AlphaCoefficients, Complex64, PotentialModel, RhoExpansion, SMatrix2, SolverOptions,
};

use crate::error::{CliError, CliResult};

pub const CHECKS: [&str; 6] = ["mathieu", "liouville", "unitarity", "smatrix", "rho", "beta"];

const SEED: u64 = 0x5eed_0f_2024;
const TRIALS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub measured: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn pass(&self) -> bool {
        self.measured <= self.tolerance && self.measured.is_finite()
    }
}

fn default_tolerance(name: &str) -> f64 {
    match name {
        "mathieu" | "liouville" => 1e-8,
        "unitarity" => 1e-8,
        "smatrix" | "rho" => 1e-10,
        _ => 1e-9,
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_unitary_symmetric(rng: &mut StdRng) -> SMatrix2 {
    let (d1, d2) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
    let (sp, sm) = (Complex64::from_polar(1.0, d1), Complex64::from_polar(1.0, d2));
    SMatrix2::symmetric((sp - sm) * 0.5, (sp + sm) * 0.5)
}

fn random_smatrix(rng: &mut StdRng) -> SMatrix2 {
    let mut z = || c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let tbar = z() + 1.5;
    SMatrix2::new(tbar, z(), z(), z() + 1.5)
}

/// Exact `r₄` against the ODE solver on the pure `1/z⁴` model.
fn mathieu() -> CliResult<f64> {
    let model = PotentialModel::v4(75.51)?;
    let mut worst = 0.0f64;
    for kl in [1e-3, 1e-2, 0.1] {
        let (r4, _) = v4_amplitudes(kl)?;
        let a = solve_reflection(&model, kl / 75.51, &SolverOptions::default())?;
        worst = worst.max((a.r - r4).norm());
    }
    Ok(worst)
}

/// Same amplitude from the physical and the Liouville coordinate.
fn liouville() -> CliResult<f64> {
    let model = PotentialModel::helium();
    let mut worst = 0.0f64;
    for kl in [2e-3, 0.03] {
        let k = kl / 75.51;
        let a = solve_reflection(&model, k, &SolverOptions::default())?;
        let b = solve_transformed_reflection(&model, k, &SolverOptions::default())?;
        worst = worst.max((a.r - b.r).norm());
    }
    Ok(worst)
}

/// Flux conservation of the exact `S₄` and of solver runs.
fn unitarity() -> CliResult<f64> {
    let mut worst = 0.0f64;
    for i in 0..50 {
        let kl = 1e-4 * 10f64.powf(3.6 * i as f64 / 49.0);
        let (r4, t4) = v4_amplitudes(kl)?;
        worst = worst.max((r4.norm_sqr() + t4.norm_sqr() - 1.0).abs());
    }
    let model = PotentialModel::silica();
    for kl in [1e-3, 0.05] {
        let a = solve_reflection(&model, kl / 194.7, &SolverOptions::default())?;
        worst = worst.max(a.flux_defect().abs());
    }
    Ok(worst)
}

/// Involution, associativity and inverse of the ⋆ law, and the closed-form composition.
fn smatrix(rng: &mut StdRng) -> CliResult<f64> {
    let mut worst = 0.0f64;
    for _ in 0..TRIALS {
        let (a, b, d) = (random_smatrix(rng), random_smatrix(rng), random_smatrix(rng));
        let m = a.matrix();
        worst = worst.max(pi_involution(&pi_involution(&m)?)?.distance(&m));
        let left = star(&star(&a, &b)?, &d)?;
        let right = star(&a, &star(&b, &d)?)?;
        worst = worst.max(left.distance(&right) / (1.0 + left.matrix().max_norm()));
        worst = worst.max(star(&a, &star_inverse(&a)?)?.distance(&SMatrix2::identity()));
        let s4 = random_unitary_symmetric(rng);
        let rho = c(rng.random_range(-0.6..0.6), rng.random_range(-0.6..0.6));
        let full = star(&SMatrix2::symmetric(rho, c(0.8, 0.0)), &s4)?;
        worst = worst.max((full.r - compose_r(s4.r, s4.t, rho)?).norm());
    }
    Ok(worst)
}

/// `compose_r ∘ extract_rho` is the identity.
fn rho_round_trip(rng: &mut StdRng) -> CliResult<f64> {
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < TRIALS {
        let s4 = random_unitary_symmetric(rng);
        if s4.t.norm() < 0.1 {
            continue;
        }
        let rho = Complex64::from_polar(rng.random_range(0.0..0.9), rng.random_range(-3.0..3.0));
        let r = compose_r(s4.r, s4.t, rho)?;
        worst = worst.max((extract_rho(r, s4.r)? - rho).norm());
        done += 1;
    }
    Ok(worst)
}

/// Closed β formulas against term-by-term composition of the series.
fn beta(rng: &mut StdRng) -> CliResult<f64> {
    let alpha = AlphaCoefficients::standard();
    let mut worst = 0.0f64;
    for _ in 0..TRIALS {
        let mut z = || c(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5));
        let coeffs = [z(), z(), z(), z(), z()];
        let closed = beta_from_rho(&alpha, &RhoExpansion::from_coeffs(coeffs), 75.51)?;
        let composed = beta_by_composition(&alpha, &coeffs, 75.51)?;
        for (x, y) in closed.as_array().iter().zip(composed.as_array()) {
            worst = worst.max((x - y).norm() / (1.0 + y.norm()));
        }
    }
    Ok(worst)
}

/// Runs the selected checks (all when `only` is empty).
pub fn run(only: &[String], tolerance: Option<f64>) -> CliResult<Vec<CheckResult>> {
    for o in only {
        if !CHECKS.contains(&o.as_str()) {
            return Err(CliError::Config(format!("unknown check '{o}' (available: {})", CHECKS.join(", "))));
        }
    }
    if let Some(t) = tolerance {
        if !(t >= 0.0) {
            return Err(CliError::Config(format!("tolerance must be non-negative, got {t}")));
        }
    }
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for name in CHECKS {
        if !only.is_empty() && !only.iter().any(|o| o == name) {
            continue;
        }
        let measured = match name {
            "mathieu" => mathieu()?,
            "liouville" => liouville()?,
            "unitarity" => unitarity()?,
            "smatrix" => smatrix(&mut rng)?,
            "rho" => rho_round_trip(&mut rng)?,
            _ => beta(&mut rng)?,
        };
        out.push(CheckResult { name, measured, tolerance: tolerance.unwrap_or_else(|| default_tolerance(name)) });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebraic_checks_pass() {
        let res = run(&["smatrix".into(), "rho".into(), "beta".into()], None).unwrap();
        assert_eq!(res.len(), 3);
        assert!(res.iter().all(CheckResult::pass), "{res:?}");
    }

    #[test]
    fn zero_tolerance_fails() {
        let res = run(&["rho".into()], Some(0.0)).unwrap();
        assert!(!res[0].pass());
    }

    #[test]
    fn unknown_check_is_a_config_error() {
        assert_eq!(run(&["nope".into()], None).unwrap_err().exit_code(), 2);
    }
}
