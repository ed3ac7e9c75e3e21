//! Effective-range expansions of the Liouville-invariant amplitude
//! `Ã = −i(1 + r)/(1 − r)`.
//!
//! The two-step picture writes `r` through the exact `1/z⁴` amplitudes and an inner
//! reflection `ρ(𝐤)`. Fitting `ρ` as a polynomial in `𝐤 = √(kℓ4)` yields the improved
//! expansion with half-integer powers; the classical modified theory refits a
//! single coefficient instead.

pub mod series;

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::mathieu::{self, AlphaCoefficients};
use crate::num::linalg;
use crate::potentials::PotentialModel;
use crate::smatrix::extract_rho;
use crate::solver::{solve_reflection, ScatteringAmplitudes, SolverOptions};
use crate::{Error, Result};

const POLE_TOL: f64 = 1e-14;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `Ã = −i(1 + r)/(1 − r)`.
pub fn a_from_r(r: Complex64) -> Result<Complex64> {
    let den = c(1.0, 0.0) - r;
    if den.norm() <= POLE_TOL {
        return Err(Error::Pole { what: "a_from_r at r = 1" });
    }
    Ok(c(0.0, -1.0) * (c(1.0, 0.0) + r) / den)
}

/// `r = (iÃ − 1)/(iÃ + 1)`.
pub fn r_from_a(a: Complex64) -> Result<Complex64> {
    let ia = c(0.0, 1.0) * a;
    let den = ia + 1.0;
    if den.norm() <= POLE_TOL {
        return Err(Error::Pole { what: "r_from_a at iA = -1" });
    }
    Ok((ia - 1.0) / den)
}

/// `Ã = Ã₄ + ρ(1 − iÃ₄)(Ã₄* − Ã₄)/(1 + iÃ₄* + ρ(1 − iÃ₄))`.
pub fn combine_equa(a4: Complex64, rho: Complex64) -> Result<Complex64> {
    let i = c(0.0, 1.0);
    let w = c(1.0, 0.0) - i * a4;
    let den = c(1.0, 0.0) + i * a4.conj() + rho * w;
    if den.norm() <= POLE_TOL {
        return Err(Error::Pole { what: "combine_equa denominator" });
    }
    Ok(a4 + rho * w * (a4.conj() - a4) / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// All powers `𝐤⁰ … 𝐤⁴`.
    Full,
    /// Only `𝐤⁰, 𝐤², 𝐤⁴`, i.e. integer powers of `k`.
    Even,
}

impl Parity {
    pub fn powers(self) -> &'static [usize] {
        match self {
            Parity::Full => &[0, 1, 2, 3, 4],
            Parity::Even => &[0, 2, 4],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Full => "full",
            Parity::Even => "even",
        }
    }
}

/// Uniform grid in `kℓ4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitWindow {
    pub k_ell4_min: f64,
    pub k_ell4_max: f64,
    pub points: usize,
}

impl Default for FitWindow {
    fn default() -> Self {
        Self { k_ell4_min: 2e-3, k_ell4_max: 0.1, points: 1000 }
    }
}

impl FitWindow {
    pub fn validate(&self) -> Result<()> {
        if !(self.k_ell4_min > 0.0 && self.k_ell4_max > self.k_ell4_min) {
            return Err(Error::Config("window must satisfy 0 < k_ell4_min < k_ell4_max".into()));
        }
        if self.k_ell4_max > mathieu::KBOLD_MAX * mathieu::KBOLD_MAX {
            return Err(Error::Domain { what: "k_ell4_max", value: self.k_ell4_max });
        }
        if self.points < 2 {
            return Err(Error::Config("window needs at least two points".into()));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        if n == 1 {
            return alloc::vec![self.k_ell4_min];
        }
        let h = (self.k_ell4_max - self.k_ell4_min) / (n - 1) as f64;
        (0..n).map(|i| if i == n - 1 { self.k_ell4_max } else { self.k_ell4_min + h * i as f64 }).collect()
    }
}

/// Fitted `ρ(𝐤) = Σ ρ_j 𝐤^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoExpansion {
    pub coeffs: [Complex64; 5],
    pub parity: Parity,
    /// `(kℓ4 min, kℓ4 max)` of the samples.
    pub window: (f64, f64),
    pub sigma_re: f64,
    pub sigma_im: f64,
    /// Standard errors of the coefficients, zero for coefficients not fitted.
    pub std_err: [f64; 5],
    /// Worst-case coefficient shifts `Σ_j |A⁺_ij| ε_j` from per-sample bounds `ε_j`.
    pub noise_bound: [f64; 5],
    pub grid_size: usize,
    /// Condition estimate of the design matrix.
    pub condition: f64,
}

impl RhoExpansion {
    /// Expansion with given coefficients and no fit statistics.
    pub fn from_coeffs(coeffs: [Complex64; 5]) -> Self {
        let parity = if coeffs[1] == c(0.0, 0.0) && coeffs[3] == c(0.0, 0.0) { Parity::Even } else { Parity::Full };
        Self { coeffs, parity, window: (0.0, 0.0), sigma_re: 0.0, sigma_im: 0.0, std_err: [0.0; 5], noise_bound: [0.0; 5], grid_size: 0, condition: 1.0 }
    }

    pub fn eval(&self, kbold: f64) -> Complex64 {
        self.coeffs.iter().rev().fold(c(0.0, 0.0), |acc, &a| acc * kbold + a)
    }

    /// Design matrix condition beyond which the coefficients are unreliable.
    pub fn ill_conditioned(&self) -> bool {
        self.condition > 1e10
    }
}

fn sample_std(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    libm::sqrt(v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0))
}

/// Unweighted least-squares fit of `ρ` on `(𝐤, ρ)` samples.
pub fn fit_rho(samples: &[(f64, Complex64)], parity: Parity) -> Result<RhoExpansion> {
    fit_rho_with_errors(samples, &alloc::vec![0.0; samples.len()], parity)
}

/// [`fit_rho`] that also propagates per-sample error bounds into `noise_bound`.
pub fn fit_rho_with_errors(samples: &[(f64, Complex64)], errors: &[f64], parity: Parity) -> Result<RhoExpansion> {
    if errors.len() != samples.len() {
        return Err(Error::Config("one error bound per sample required".into()));
    }
    let powers = parity.powers();
    let cols = powers.len();
    let rows = samples.len();
    if rows < 2 * cols {
        return Err(Error::RankDeficient { rows, cols });
    }
    let mut ks: Vec<f64> = samples.iter().map(|s| s.0).collect();
    ks.sort_by(f64::total_cmp);
    if ks.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Config("fit abscissae must be distinct".into()));
    }
    let mut a = Vec::with_capacity(rows * cols);
    let mut b = Vec::with_capacity(rows);
    for &(kb, rho) in samples {
        for &p in powers {
            a.push(c(libm::pow(kb, p as f64), 0.0));
        }
        b.push(rho);
    }
    let ls = linalg::lstsq(&a, rows, cols, &b)?;
    let mut coeffs = [c(0.0, 0.0); 5];
    for (&p, &x) in powers.iter().zip(&ls.x) {
        coeffs[p] = x;
    }
    let mut fit = RhoExpansion {
        coeffs,
        parity,
        window: (ks[0] * ks[0], ks[rows - 1] * ks[rows - 1]),
        sigma_re: 0.0,
        sigma_im: 0.0,
        std_err: [0.0; 5],
        noise_bound: [0.0; 5],
        grid_size: rows,
        condition: ls.cond,
    };
    let res: Vec<Complex64> = samples.iter().map(|&(kb, rho)| rho - fit.eval(kb)).collect();
    fit.sigma_re = sample_std(&res.iter().map(|z| z.re).collect::<Vec<_>>());
    fit.sigma_im = sample_std(&res.iter().map(|z| z.im).collect::<Vec<_>>());
    // residual variance with the fitted degrees of freedom removed
    let dof = (rows - cols) as f64;
    let s2 = res.iter().map(|z| z.norm_sqr()).sum::<f64>() / dof;
    for (&p, &u) in powers.iter().zip(&ls.unit_std) {
        fit.std_err[p] = libm::sqrt(s2) * u;
    }
    for (i, &p) in powers.iter().enumerate() {
        fit.noise_bound[p] = ls.pinv[i * rows..(i + 1) * rows].iter().zip(errors).map(|(a, e)| a.norm() * e).sum();
    }
    Ok(fit)
}

/// Coefficients of the improved expansion
/// `Ã = −ikℓ[β0 + β12 x^{1/2} + β1 x + β32 x^{3/2} + β2 x² + β2′ x² ln x]`, `x = kℓ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaExpansion {
    pub beta0: Complex64,
    pub beta12: Complex64,
    pub beta1: Complex64,
    pub beta32: Complex64,
    pub beta2: Complex64,
    pub beta2p: Complex64,
    /// Renormalized scattering length `ℓ = ℓ4(1 − ρ0)/(1 + ρ0)`.
    pub ell: Complex64,
    pub ell4: f64,
}

impl BetaExpansion {
    pub fn eval(&self, k: f64) -> Complex64 {
        improved_ere_eval(k, self)
    }

    pub fn as_array(&self) -> [Complex64; 6] {
        [self.beta0, self.beta12, self.beta1, self.beta32, self.beta2, self.beta2p]
    }
}

/// Closed β formulas. Square roots of `(1 ± ρ0)` powers are products of principal roots.
pub fn beta_from_rho(alpha: &AlphaCoefficients, rho: &RhoExpansion, ell4: f64) -> Result<BetaExpansion> {
    let [r0, r1, r2, r3, r4] = rho.coeffs;
    let one = c(1.0, 0.0);
    let p = one + r0;
    let m = one - r0;
    if p.norm() <= POLE_TOL || m.norm() <= POLE_TOL {
        return Err(Error::Pole { what: "rho0 = ±1 in beta coefficients" });
    }
    let (sp, sm) = (p.sqrt(), m.sqrt());
    let (a0, a1, a2, a2p) = (alpha.alpha0, alpha.alpha1, alpha.alpha2, alpha.alpha2p);
    let m2 = m * m;
    let m3 = m2 * m;

    let beta12 = -a0 * r1 * 2.0 / (sp * sm * sm * sm);
    let beta1 = ((r1 * r1 - p * r2) * a0 * 2.0 + a1 * p * p * p) / (p * m2);
    let beta32 = -(r1 * r1 * r1 - p * r1 * r2 * 2.0 + p * p * r3) * a0 * 2.0 / (sp * sp * sp * sm.powu(5));
    let beta2 = a0 * r1 * r1 * (r1 * r1 - p * r2 * 3.0) * 2.0 / (p * p * m3)
        + a0 * (r1 * r3 * 2.0 + r2 * r2) * 2.0 / m3
        + p / m3 * (a2 + a0 * a1 * r0 * 4.0 - a0 * r4 * 2.0)
        + r0 * p / m3 * ((r0 + 2.0) * c(0.0, a2.im) - r0 * a2.re)
        - p * p / m2 * a2p * (m / p).ln();
    let beta2p = a2p * (p / m) * (p / m);
    Ok(BetaExpansion { beta0: a0, beta12, beta1, beta32, beta2, beta2p, ell: m / p * ell4, ell4 })
}

/// Improved expansion of `Ã(k)`, with principal branches of `(kℓ)^{1/2}` and `ln kℓ`.
pub fn improved_ere_eval(k: f64, b: &BetaExpansion) -> Complex64 {
    let x = b.ell * k;
    let sx = x.sqrt();
    let bracket = b.beta0 + b.beta12 * sx + b.beta1 * x + b.beta32 * sx * x + b.beta2 * x * x + b.beta2p * x * x * x.ln();
    c(0.0, -1.0) * x * bracket
}

/// Modified effective-range parameters:
/// `Ã = −ikℓ(α̃0 + α̃1 kℓ4 + α̃2 (kℓ4)² + α̃2′ (kℓ4)² ln kℓ4)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModifiedErtParams {
    pub ell: Complex64,
    pub ell4: f64,
    pub alpha0: Complex64,
    pub alpha1: Complex64,
    pub alpha2: Complex64,
    pub alpha2p: Complex64,
    /// Effective range `R0` from `α̃2 = α2 + π(ℓ−ℓ4)²/(ℓℓ4) − iR0ℓ/(2ℓ4²)`.
    pub r0: Complex64,
}

impl ModifiedErtParams {
    pub fn eval(&self, k: f64) -> Complex64 {
        let x = k * self.ell4;
        let bracket = self.alpha0 + self.alpha1 * x + self.alpha2 * (x * x) + self.alpha2p * (x * x * libm::log(x));
        c(0.0, -k) * self.ell * bracket
    }
}

/// Fits `α̃2` by unweighted least squares on `(k, Ã)` samples with `ℓ` held fixed.
pub fn fit_modified_ert(samples: &[(f64, Complex64)], ell: Complex64, ell4: f64, alpha: &AlphaCoefficients) -> Result<ModifiedErtParams> {
    if samples.is_empty() || ell.norm() == 0.0 {
        return Err(Error::RankDeficient { rows: samples.len(), cols: 1 });
    }
    let alpha1 = alpha.alpha1 * ell4 / ell;
    let mut num = c(0.0, 0.0);
    let mut den = 0.0;
    for &(k, a) in samples {
        let x = k * ell4;
        let pre = c(0.0, -k) * ell;
        let base = pre * (alpha.alpha0 + alpha1 * x + alpha.alpha2p * (x * x * libm::log(x)));
        let col = pre * (x * x);
        num += col.conj() * (a - base);
        den += col.norm_sqr();
    }
    if !(den > 0.0) {
        return Err(Error::RankDeficient { rows: samples.len(), cols: 1 });
    }
    let alpha2 = num / den;
    let shift = (ell - ell4) * (ell - ell4) * core::f64::consts::PI / (ell * ell4);
    let r0 = (alpha.alpha2 + shift - alpha2) * (2.0 * ell4 * ell4) / (c(0.0, 1.0) * ell);
    Ok(ModifiedErtParams { ell, ell4, alpha0: alpha.alpha0, alpha1, alpha2, alpha2p: alpha.alpha2p, r0 })
}

/// One grid point of the pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EreSample {
    pub k_ell4: f64,
    pub r: Complex64,
    pub r4: Complex64,
    pub rho: Complex64,
    pub a_num: Complex64,
    /// `|r|² + |t|² − 1` of the solver run.
    pub flux_defect: f64,
    /// Solver error estimate carried over to `ρ`, `δr/(1 − |r₄|²)`.
    pub rho_error: f64,
    pub precision_warning: bool,
}

/// Errors of both theories over the window, and the ratio curves `Ã_th/Ã_num`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    /// `max |Ã_imp/Ã_num − 1|` with `Ã_imp = combine_equa(Ã₄, ρ̂(𝐤))`.
    pub max_rel_error_improved: f64,
    /// Same for the truncated β series.
    pub max_rel_error_improved_series: f64,
    pub max_rel_error_modified: f64,
    /// `(kℓ4, Ã_imp/Ã_num, Ã_mod/Ã_num)`.
    pub ratios: Vec<(f64, Complex64, Complex64)>,
}

/// Full effective-range analysis of one model over one window.
#[derive(Debug, Clone, PartialEq)]
pub struct EreAnalysis {
    pub ell4: f64,
    pub samples: Vec<EreSample>,
    pub rho_full: RhoExpansion,
    pub rho_even: RhoExpansion,
    pub beta: BetaExpansion,
    pub modified: ModifiedErtParams,
    pub report: ComparisonReport,
    /// Number of samples whose solver run reported a precision warning.
    pub precision_warnings: usize,
    /// Largest `kℓ4` at which the solver error in `ρ` still exceeds the residual
    /// deviation of the full fit; the window minimum when it never does.
    pub noise_floor_k_ell4: f64,
}

impl EreAnalysis {
    /// Sweeps `model` over `window` and analyses the amplitudes.
    pub fn run(model: &PotentialModel, window: &FitWindow, opts: &SolverOptions) -> Result<Self> {
        window.validate()?;
        let ell4 = model.ell4().ok_or(Error::Config("effective-range analysis needs a model with an ell4 tail".into()))?;
        let mut amps = Vec::with_capacity(window.points);
        for kl in window.grid() {
            amps.push(solve_reflection(model, kl / ell4, opts)?);
        }
        Self::from_amplitudes(ell4, &amps)
    }

    /// Analysis of precomputed solver results.
    pub fn from_amplitudes(ell4: f64, amps: &[ScatteringAmplitudes]) -> Result<Self> {
        let alpha = AlphaCoefficients::standard();
        let mut samples = Vec::with_capacity(amps.len());
        for a in amps {
            let kl = a.k * ell4;
            let (r4, _) = mathieu::v4_amplitudes(kl)?;
            samples.push(EreSample {
                k_ell4: kl,
                r: a.r,
                r4,
                rho: extract_rho(a.r, r4)?,
                a_num: a_from_r(a.r)?,
                flux_defect: a.flux_defect(),
                rho_error: a.error_estimate / (1.0 - r4.norm_sqr()),
                precision_warning: a.precision_warning,
            });
        }
        let pts: Vec<(f64, Complex64)> = samples.iter().map(|s| (libm::sqrt(s.k_ell4), s.rho)).collect();
        let errs: Vec<f64> = samples.iter().map(|s| s.rho_error).collect();
        let rho_full = fit_rho_with_errors(&pts, &errs, Parity::Full)?;
        let rho_even = fit_rho_with_errors(&pts, &errs, Parity::Even)?;
        let beta = beta_from_rho(&alpha, &rho_full, ell4)?;
        let ak: Vec<(f64, Complex64)> = samples.iter().map(|s| (s.k_ell4 / ell4, s.a_num)).collect();
        let modified = fit_modified_ert(&ak, beta.ell, ell4, &alpha)?;

        let mut ratios = Vec::with_capacity(samples.len());
        let (mut e_imp, mut e_ser, mut e_mod) = (0.0f64, 0.0f64, 0.0f64);
        for s in &samples {
            let k = s.k_ell4 / ell4;
            let a4 = a_from_r(s.r4)?;
            let imp = combine_equa(a4, rho_full.eval(libm::sqrt(s.k_ell4)))? / s.a_num;
            let ser = beta.eval(k) / s.a_num;
            let md = modified.eval(k) / s.a_num;
            e_imp = e_imp.max((imp - 1.0).norm());
            e_ser = e_ser.max((ser - 1.0).norm());
            e_mod = e_mod.max((md - 1.0).norm());
            ratios.push((s.k_ell4, imp, md));
        }
        let precision_warnings = samples.iter().filter(|s| s.precision_warning).count();
        let resid = rho_full.sigma_re.max(rho_full.sigma_im);
        let noise_floor_k_ell4 = samples
            .iter()
            .filter(|s| s.rho_error > resid)
            .map(|s| s.k_ell4)
            .fold(samples.first().map_or(0.0, |s| s.k_ell4), f64::max);
        Ok(Self {
            ell4,
            samples,
            rho_full,
            rho_even,
            beta,
            modified,
            report: ComparisonReport {
                max_rel_error_improved: e_imp,
                max_rel_error_improved_series: e_ser,
                max_rel_error_modified: e_mod,
                ratios,
            },
            precision_warnings,
            noise_floor_k_ell4,
        })
    }
}

/// Sup-norm comparison of the improved and modified theories on `model`.
pub fn compare_theories(model: &PotentialModel, window: &FitWindow, opts: &SolverOptions) -> Result<ComparisonReport> {
    EreAnalysis::run(model, window, opts).map(|a| a.report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_r_special_values() {
        assert!(a_from_r(c(-1.0, 0.0)).unwrap().norm() < 1e-16);
        assert!((a_from_r(c(0.0, 0.0)).unwrap() - c(0.0, -1.0)).norm() < 1e-16);
        assert!(a_from_r(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn combine_real_a4_ignores_rho() {
        let a4 = c(0.37, 0.0);
        for rho in [c(0.2, 0.1), c(-0.5, 0.3)] {
            assert!((combine_equa(a4, rho).unwrap() - a4).norm() < 1e-15);
        }
        let a4 = c(0.1, -0.4);
        assert_eq!(combine_equa(a4, c(0.0, 0.0)).unwrap(), a4);
    }

    #[test]
    fn beta_reduces_at_zero_rho() {
        let alpha = AlphaCoefficients::standard();
        let b = beta_from_rho(&alpha, &RhoExpansion::from_coeffs([c(0.0, 0.0); 5]), 75.51).unwrap();
        assert_eq!(b.beta0, c(1.0, 0.0));
        assert_eq!(b.beta12, c(0.0, 0.0));
        assert_eq!(b.beta32, c(0.0, 0.0));
        assert!((b.beta1 - alpha.alpha1).norm() < 1e-15);
        assert!((b.beta2 - alpha.alpha2).norm() < 1e-15);
        assert!((b.ell - c(75.51, 0.0)).norm() < 1e-13);
        for kl in [1e-3, 0.02, 0.1] {
            let k = kl / 75.51;
            let d = improved_ere_eval(k, &b) - mathieu::a4_expansion(kl, &alpha);
            assert!(d.norm() < 1e-12 * mathieu::a4_expansion(kl, &alpha).norm());
        }
    }

    #[test]
    fn beta_pole() {
        let alpha = AlphaCoefficients::standard();
        let mut r = [c(0.0, 0.0); 5];
        r[0] = c(1.0, 0.0);
        assert!(beta_from_rho(&alpha, &RhoExpansion::from_coeffs(r), 1.0).is_err());
    }

    #[test]
    fn exact_polynomial_recovery() {
        let truth = [c(0.2, 0.3), c(-0.01, 0.02), c(0.1, -0.1), c(-0.5, 0.6), c(-0.08, -0.5)];
        let poly = RhoExpansion::from_coeffs(truth);
        let pts: Vec<(f64, Complex64)> = FitWindow::default().grid().iter().map(|&kl| (kl.sqrt(), poly.eval(kl.sqrt()))).collect();
        let fit = fit_rho(&pts, Parity::Full).unwrap();
        for (a, b) in fit.coeffs.iter().zip(&truth) {
            assert!((a - b).norm() < 1e-10);
        }
        assert!(fit.sigma_re < 1e-12 && fit.sigma_im < 1e-12);
        let even = fit_rho(&pts, Parity::Even).unwrap();
        assert_eq!(even.coeffs[1], c(0.0, 0.0));
        assert_eq!(even.coeffs[3], c(0.0, 0.0));
    }

    #[test]
    fn fit_needs_enough_samples() {
        let pts = [(0.1, c(0.0, 0.0)), (0.2, c(0.0, 0.0))];
        assert!(matches!(fit_rho(&pts, Parity::Full), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn modified_ert_synthetic_recovery() {
        let alpha = AlphaCoefficients::standard();
        let ell4 = 75.51;
        let ell = c(44.78, -34.90);
        let truth = c(2.54, -2.51);
        let gen = ModifiedErtParams { ell, ell4, alpha0: alpha.alpha0, alpha1: alpha.alpha1 * ell4 / ell, alpha2: truth, alpha2p: alpha.alpha2p, r0: c(0.0, 0.0) };
        let pts: Vec<(f64, Complex64)> = FitWindow::default().grid().iter().map(|&kl| (kl / ell4, gen.eval(kl / ell4))).collect();
        let fit = fit_modified_ert(&pts, ell, ell4, &alpha).unwrap();
        assert!((fit.alpha2 - truth).norm() < 1e-8);
        // R0 round trip through its defining relation
        let shift = (ell - ell4) * (ell - ell4) * core::f64::consts::PI / (ell * ell4);
        let back = alpha.alpha2 + shift - c(0.0, 1.0) * fit.r0 * ell / (2.0 * ell4 * ell4);
        assert!((back - fit.alpha2).norm() < 1e-10);
    }

    #[test]
    fn window_grid() {
        let g = FitWindow::default().grid();
        assert_eq!(g.len(), 1000);
        assert_eq!(g[0], 2e-3);
        assert_eq!(g[999], 0.1);
    }
}
