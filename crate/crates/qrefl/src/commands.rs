//! Subcommands producing sweep, profile, fit and comparison artifacts.

use serde::Serialize;
use serde_json::json;

use qrefl_core::{
    beta_from_rho, reflectivity_sweep, transformed_profile, v4_closed_form, AlphaCoefficients, Complex64, EreAnalysis,
    MathieuSolution, Parity, PotentialModel,
};

use crate::config::{Format, ModelSpec, RunConfig};
use crate::error::{CliError, CliResult};
use crate::io::{f, json as to_json, Sink};

/// Evenness defect above which `liouville --check-even` fails.
pub const EVEN_TOL: f64 = 1e-8;

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn k_label(model: &PotentialModel) -> &'static str {
    if model.ell4().is_some() { "k_ell4" } else { "k_ell3" }
}

fn require_ell4(model: &PotentialModel) -> CliResult<f64> {
    model
        .ell4()
        .ok_or_else(|| CliError::Config("this command needs a model with a 1/z^4 tail (ell4)".into()))
}

pub fn reflect(cfg: &RunConfig) -> CliResult<()> {
    let model = cfg.build_model()?;
    let ks = cfg.k_grid(&model);
    let l = RunConfig::reference_length(&model);
    let amps = reflectivity_sweep(&model, &ks, &cfg.solver_options())?
        .into_iter()
        .collect::<qrefl_core::Result<Vec<_>>>()?;
    let mut sink = Sink::new(cfg, &model)?;
    let label = k_label(&model);
    match cfg.format {
        Format::Csv => {
            let cols = [
                "k", label, "re_r", "im_r", "abs_r", "t_abs", "flux_defect", "error_estimate", "precision_warning",
            ];
            let rows: Vec<Vec<String>> = amps
                .iter()
                .map(|a| {
                    vec![
                        f(a.k),
                        f(a.k * l),
                        f(a.r.re),
                        f(a.r.im),
                        f(a.r.norm()),
                        f(a.t_abs),
                        f(a.flux_defect()),
                        f(a.error_estimate),
                        a.precision_warning.to_string(),
                    ]
                })
                .collect();
            sink.main("reflect.csv", &sink.csv(&cols, &rows))?;
        }
        Format::Json => {
            let pts: Vec<_> = amps
                .iter()
                .map(|a| {
                    json!({
                        "k": a.k, label: a.k * l, "r": pair(a.r), "t_abs": a.t_abs,
                        "flux_defect": a.flux_defect(), "error_estimate": a.error_estimate,
                        "precision_warning": a.precision_warning,
                    })
                })
                .collect();
            sink.main("reflect.json", &to_json(&json!({ "meta": sink.meta(), "points": pts })))?;
        }
    }
    let warned = amps.iter().filter(|a| a.precision_warning).count();
    if let [a] = amps.as_slice() {
        let one = Complex64::new(1.0, 0.0);
        eprintln!(
            "summary: {label}={:e} r={:.12e}{:+.12e}i |r|={:.12e} |1+r|={:.6e} flux_defect={:.2e}",
            a.k * l,
            a.r.re,
            a.r.im,
            a.r.norm(),
            (one + a.r).norm(),
            a.flux_defect()
        );
    } else {
        let worst = amps.iter().map(|a| a.flux_defect().abs()).fold(0.0, f64::max);
        eprintln!("summary: {} points, max |flux_defect|={worst:.2e}, precision warnings={warned}", amps.len());
    }
    Ok(())
}

pub fn liouville(cfg: &RunConfig) -> CliResult<()> {
    let model = cfg.build_model()?;
    let k = cfg.single_k(&model).unwrap_or(0.01 / RunConfig::reference_length(&model));
    let n = cfg.points.max(2);
    let grid: Vec<f64> = (0..n)
        .map(|i| cfg.zbold_min + (cfg.zbold_max - cfg.zbold_min) * i as f64 / (n - 1) as f64)
        .collect();
    let prof = transformed_profile(&model, k, &grid)?;
    let mut sink = Sink::new(cfg, &model)?;
    let cols = ["zbold", "z", "Q", "V", "V4_closed", "V3_asymptote"];
    let rows: Vec<Vec<String>> = prof
        .samples
        .iter()
        .map(|&(z, zb, q, v)| {
            let v3 = if zb < 0.0 { f(3.0 / (4.0 * zb * zb)) } else { String::new() };
            vec![f(zb), f(z), f(q), f(v), f(v4_closed_form(zb)), v3]
        })
        .collect();
    sink.main("liouville.csv", &sink.csv(&cols, &rows))?;
    let (i_max, v_max) = prof
        .samples
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, s)| if s.3 > acc.1 { (i, s.3) } else { acc });
    eprintln!(
        "summary: k={k:e} ebold={:.6e} kbold={:.6e} max V={v_max:.12} at zbold={:.6}",
        prof.ebold, prof.kbold, prof.samples[i_max].1
    );
    if cfg.check_even {
        let mirrored: Vec<f64> = grid.iter().map(|z| -z).collect();
        let back = transformed_profile(&model, k, &mirrored)?;
        let defect = prof
            .samples
            .iter()
            .zip(&back.samples)
            .map(|(a, b)| (a.3 - b.3).abs())
            .fold(0.0, f64::max);
        eprintln!("evenness defect: {defect:.3e} (tolerance {EVEN_TOL:e})");
        if !(defect < EVEN_TOL) {
            return Err(CliError::Check(format!("evenness defect {defect:.3e} exceeds {EVEN_TOL:e}")));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Beta {
    beta0: [f64; 2],
    beta12: [f64; 2],
    beta1: [f64; 2],
    beta32: [f64; 2],
    beta2: [f64; 2],
    beta2p: [f64; 2],
}

pub fn fit(cfg: &RunConfig) -> CliResult<()> {
    let model = cfg.build_model()?;
    let ell4 = require_ell4(&model)?;
    let window = cfg.window();
    let an = EreAnalysis::run(&model, &window, &cfg.solver_options())?;
    let rho = match cfg.parity() {
        Parity::Full => &an.rho_full,
        Parity::Even => &an.rho_even,
    };
    let beta = beta_from_rho(&AlphaCoefficients::standard(), rho, ell4)?;
    let below_noise = rho.coeffs.iter().zip(&rho.noise_bound).all(|(c, b)| c.norm() < *b);
    let mut sink = Sink::new(cfg, &model)?;
    let report = json!({
        "meta": sink.meta(),
        "model": model.describe(),
        "window": { "k_ell4_min": window.k_ell4_min, "k_ell4_max": window.k_ell4_max, "variable": "k_ell4" },
        "grid_size": rho.grid_size,
        "rho": rho.coeffs.map(pair),
        "rho_parity": rho.parity.name(),
        "rho_std_err": rho.std_err,
        "rho_noise_bound": rho.noise_bound,
        "condition_number": rho.condition,
        "sigma_hat_re": rho.sigma_re,
        "sigma_hat_im": rho.sigma_im,
        "beta": Beta {
            beta0: pair(beta.beta0),
            beta12: pair(beta.beta12),
            beta1: pair(beta.beta1),
            beta32: pair(beta.beta32),
            beta2: pair(beta.beta2),
            beta2p: pair(beta.beta2p),
        },
        "ell": pair(beta.ell),
        "ell4": ell4,
        "alpha_tilde_2": pair(an.modified.alpha2),
        "R0": pair(an.modified.r0),
        "max_rel_error_modified": an.report.max_rel_error_modified,
        "max_rel_error_improved": an.report.max_rel_error_improved,
        "max_rel_error_improved_series": an.report.max_rel_error_improved_series,
        "noise_floor_k_ell4": an.noise_floor_k_ell4,
        "precision_warnings": an.precision_warnings,
        "rho_below_noise": below_noise,
    });
    sink.main("fit.json", &to_json(&report))?;
    let cols = ["k_ell4", "kbold", "re_rho", "im_rho", "rho_error", "re_rho_fit", "im_rho_fit", "precision_warning"];
    let rows: Vec<Vec<String>> = an
        .samples
        .iter()
        .map(|s| {
            let kb = s.k_ell4.sqrt();
            let fit = rho.eval(kb);
            vec![
                f(s.k_ell4),
                f(kb),
                f(s.rho.re),
                f(s.rho.im),
                f(s.rho_error),
                f(fit.re),
                f(fit.im),
                s.precision_warning.to_string(),
            ]
        })
        .collect();
    sink.extra("rho_grid.csv", &sink.csv(&cols, &rows))?;
    eprintln!(
        "summary: {} fit over {} points, sigma_hat=({:.3e}, {:.3e}), ell={:.6}{:+.6}i",
        rho.parity.name(),
        rho.grid_size,
        rho.sigma_re,
        rho.sigma_im,
        beta.ell.re,
        beta.ell.im
    );
    if rho.ill_conditioned() {
        eprintln!("warning: rho fit is ill-conditioned (condition number {:.2e})", rho.condition);
    }
    if cfg.model == ModelSpec::V4 {
        eprintln!("warning: rho is identically zero for the pure 1/z^4 model; fitted coefficients are noise");
        if !below_noise {
            return Err(CliError::Check("rho coefficients of the 1/z^4 model exceed the noise bound".into()));
        }
    }
    Ok(())
}

pub fn compare(cfg: &RunConfig) -> CliResult<()> {
    let model = cfg.build_model()?;
    let ell4 = require_ell4(&model)?;
    let window = cfg.window();
    let an = EreAnalysis::run(&model, &window, &cfg.solver_options())?;
    let r = &an.report;
    let mut sink = Sink::new(cfg, &model)?;
    let report = json!({
        "meta": sink.meta(),
        "model": model.describe(),
        "window": { "k_ell4_min": window.k_ell4_min, "k_ell4_max": window.k_ell4_max, "variable": "k_ell4" },
        "grid_size": an.samples.len(),
        "ell": pair(an.beta.ell),
        "ell4": ell4,
        "max_rel_error_improved": r.max_rel_error_improved,
        "max_rel_error_improved_series": r.max_rel_error_improved_series,
        "max_rel_error_modified": r.max_rel_error_modified,
        "improved_better": r.max_rel_error_improved < r.max_rel_error_modified,
        "noise_floor_k_ell4": an.noise_floor_k_ell4,
        "precision_warnings": an.precision_warnings,
    });
    sink.main("compare.json", &to_json(&report))?;
    let cols = ["k_ell4", "re_ratio_improved", "im_ratio_improved", "re_ratio_modified", "im_ratio_modified"];
    let rows: Vec<Vec<String>> = r
        .ratios
        .iter()
        .map(|(kl, imp, md)| vec![f(*kl), f(imp.re), f(imp.im), f(md.re), f(md.im)])
        .collect();
    sink.extra("ratios.csv", &sink.csv(&cols, &rows))?;
    eprintln!(
        "summary: max relative error improved={:.3e} modified={:.3e}",
        r.max_rel_error_improved, r.max_rel_error_modified
    );
    Ok(())
}

pub fn v4_exact(cfg: &RunConfig) -> CliResult<()> {
    let model = cfg.build_model()?;
    let ell4 = require_ell4(&model)?;
    let grid = match cfg.single_k(&model) {
        Some(k) => vec![k * ell4],
        None => cfg.window().grid(),
    };
    let mut rows = Vec::with_capacity(grid.len());
    for kl in grid {
        let m = MathieuSolution::new(kl.sqrt())?;
        let (r4, t4) = m.amplitudes()?;
        let defect = r4.norm_sqr() + t4.norm_sqr() - 1.0;
        rows.push(vec![f(kl), f(m.tau), f(m.sigma), f(r4.re), f(r4.im), f(t4.re), f(t4.im), f(defect)]);
    }
    let mut sink = Sink::new(cfg, &model)?;
    let cols = ["k_ell4", "tau", "sigma", "re_r4", "im_r4", "re_t4", "im_t4", "unitarity_defect"];
    sink.main("v4_exact.csv", &sink.csv(&cols, &rows))?;
    Ok(())
}
