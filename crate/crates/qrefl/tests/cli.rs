use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qrefl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrefl")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Data rows of a CSV artifact as (column names, numeric rows); empty cells become NaN.
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let cols: Vec<String> = lines.next().unwrap().split(',').map(str::to_owned).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse::<f64>().unwrap_or(f64::NAN)).collect())
        .collect();
    (cols, rows)
}

fn col(cols: &[String], name: &str) -> usize {
    cols.iter().position(|c| c == name).unwrap_or_else(|| panic!("no column {name}"))
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn reflect_sweep_conserves_flux() {
    let o = qrefl(&["reflect", "--model", "he", "--points", "1000"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("# qrefl "));
    assert!(text.contains("not an ab-initio potential"));
    let (cols, rows) = parse_csv(&text);
    assert_eq!(rows.len(), 1000);
    let fd = col(&cols, "flux_defect");
    assert!(rows.iter().all(|r| r[fd].abs() < 1e-6));
}

#[test]
fn reflect_single_point_scattering_length_limit() {
    let o = qrefl(&["reflect", "--model", "v4", "--ell4", "75.51", "--k-ell4", "1e-4"]);
    assert!(o.status.success());
    let err = stderr(&o);
    let line = err.lines().find(|l| l.starts_with("summary:")).unwrap();
    let v: f64 = line.split("|1+r|=").nth(1).unwrap().split_whitespace().next().unwrap().parse().unwrap();
    assert!((v - 2e-4).abs() < 1e-6, "{line}");
}

#[test]
fn reflect_json_starts_with_metadata() {
    let o = qrefl(&["reflect", "--model", "sio2", "--k-ell4", "0.01", "--format", "json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let meta_at = text.find("\"meta\"").unwrap();
    assert!(meta_at < text.find("\"points\"").unwrap());
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["meta"]["config"]["model"], "sio2");
    assert_eq!(v["points"].as_array().unwrap().len(), 1);
}

#[test]
fn missing_table_is_a_config_error_naming_the_path() {
    let o = qrefl(&["reflect", "--model", "table:/no/such/potential.dat"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/no/such/potential.dat"));
}

#[test]
fn malformed_table_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.dat");
    std::fs::write(&p, "# ell4 = 75.51\n1.0 -2.0\n2.0 oops\n").unwrap();
    let o = qrefl(&["reflect", "--model", &format!("table:{}", p.display())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn tabulated_helium_matches_closed_form() {
    let (l3, l4) = (16.54f64, 75.51f64);
    let mut text = String::from("# sampled interpolated potential\n# ell3 = 16.54\n# ell4 = 75.51\n");
    for i in 0..500 {
        let z = 1e-3 * 1.04f64.powi(i);
        let u = -l4 * l4 / (z * z * z * (z + l4 * l4 / l3));
        text.push_str(&format!("{z:.17e} {u:.17e}\n"));
    }
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("he.dat");
    std::fs::write(&p, text).unwrap();
    let run = |model: &str| {
        let o = qrefl(&["reflect", "--model", model, "--k-ell4", "0.02"]);
        assert!(o.status.success(), "{}", stderr(&o));
        let (cols, rows) = parse_csv(&stdout(&o));
        (rows[0][col(&cols, "re_r")], rows[0][col(&cols, "im_r")])
    };
    let a = run(&format!("table:{}", p.display()));
    let b = run("he");
    assert!((a.0 - b.0).abs() < 1e-6 && (a.1 - b.1).abs() < 1e-6, "{a:?} {b:?}");
}

#[test]
fn liouville_v4_peak_and_evenness() {
    let o = qrefl(&["liouville", "--model", "v4", "--check-even"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (cols, rows) = parse_csv(&stdout(&o));
    let (zc, vc) = (col(&cols, "zbold"), col(&cols, "V"));
    let peak = rows.iter().max_by(|a, b| a[vc].total_cmp(&b[vc])).unwrap();
    assert!(peak[zc].abs() < 1e-12);
    assert!((peak[vc] - 0.625).abs() < 1e-10);
    let v4 = col(&cols, "V4_closed");
    assert!(rows.iter().all(|r| (r[vc] - r[v4]).abs() < 1e-8));
    assert!(stderr(&o).contains("evenness defect"));
}

#[test]
fn liouville_helium_left_flank_follows_v3_tail() {
    let o = qrefl(&[
        "liouville", "--model", "he", "--energy-nev", "1", "--zbold-min", "-400", "--zbold-max", "-25", "--points", "16",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (cols, rows) = parse_csv(&stdout(&o));
    let (vc, ac) = (col(&cols, "V"), col(&cols, "V3_asymptote"));
    let dev: Vec<f64> = rows.iter().map(|r| (r[vc] / r[ac] - 1.0).abs()).collect();
    assert!(dev.windows(2).all(|w| w[0] <= w[1]), "{dev:?}");
    assert!(dev[0] < 0.02, "{dev:?}");
}

#[test]
fn liouville_check_even_fails_for_asymmetric_landscape() {
    let o = qrefl(&["liouville", "--model", "sio2", "--check-even", "--points", "41"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("evenness defect"));
}

#[test]
fn fit_reports_coefficients_and_even_fit_is_worse() {
    let dir = tempfile::tempdir().unwrap();
    let run = |parity: &str| {
        let out = dir.path().join(parity);
        let o = qrefl(&["fit", "--model", "he", "--parity", parity, "--points", "150", "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(out.join("rho_grid.csv").exists());
        read_json(&out.join("fit.json"))
    };
    let full = run("full");
    let rho = full["rho"].as_array().unwrap();
    assert_eq!(rho.len(), 5);
    assert!(rho.iter().all(|p| p.as_array().unwrap().len() == 2));
    for key in ["sigma_hat_re", "sigma_hat_im", "alpha_tilde_2", "R0", "noise_floor_k_ell4", "beta", "ell"] {
        assert!(!full[key].is_null(), "{key}");
    }
    assert_eq!(full["grid_size"], 150);
    let even = run("even");
    assert_eq!(even["rho_parity"], "even");
    for key in ["sigma_hat_re", "sigma_hat_im"] {
        assert!(even[key].as_f64().unwrap() > full[key].as_f64().unwrap(), "{key}");
    }
}

#[test]
fn fit_v4_coefficients_are_noise() {
    let o = qrefl(&["fit", "--model", "v4", "--points", "150"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("identically zero"));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let bounds = v["rho_noise_bound"].as_array().unwrap();
    for (p, b) in v["rho"].as_array().unwrap().iter().zip(bounds) {
        let (re, im) = (p[0].as_f64().unwrap(), p[1].as_f64().unwrap());
        assert!(re.hypot(im) < b.as_f64().unwrap());
    }
}

#[test]
fn compare_helium_improved_beats_modified() {
    let o = qrefl(&["compare", "--model", "he", "--points", "150"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let imp = v["max_rel_error_improved"].as_f64().unwrap();
    let md = v["max_rel_error_modified"].as_f64().unwrap();
    assert!(imp < md, "{imp} {md}");
}

#[test]
fn compare_v4_improved_theory_is_exact() {
    let o = qrefl(&["compare", "--model", "v4", "--points", "150"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["max_rel_error_improved"].as_f64().unwrap() < 1e-8);
    // the modified theory is a truncated expansion even here
    assert!(v["max_rel_error_modified"].as_f64().unwrap() < 1e-3);
}

#[test]
fn compare_writes_artifacts_under_out() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nested").join("dir");
    let o = qrefl(&["compare", "--model", "sio2", "--points", "120", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let report = read_json(&out.join("compare.json"));
    assert_eq!(report["grid_size"], 120);
    let text = std::fs::read_to_string(out.join("ratios.csv")).unwrap();
    assert!(text.starts_with("# qrefl "));
    let (cols, rows) = parse_csv(&text);
    assert_eq!(cols, ["k_ell4", "re_ratio_improved", "im_ratio_improved", "re_ratio_modified", "im_ratio_modified"]);
    assert_eq!(rows.len(), 120);
    let names: Vec<_> = std::fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 2, "{names:?}");
}

#[test]
fn v4_exact_is_unitary() {
    let o = qrefl(&["v4-exact", "--points", "50", "--k-ell4-min", "1e-4", "--k-ell4-max", "0.4"]);
    assert!(o.status.success());
    let (cols, rows) = parse_csv(&stdout(&o));
    assert_eq!(rows.len(), 50);
    let u = col(&cols, "unitarity_defect");
    assert!(rows.iter().all(|r| r[u].abs() < 1e-12));
    let o = qrefl(&["v4-exact", "--k-ell4", "0.7"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_runs_every_check() {
    let o = qrefl(&["verify"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    for name in ["mathieu", "liouville", "unitarity", "smatrix", "rho", "beta"] {
        assert!(out.lines().any(|l| l.starts_with("PASS") && l.contains(name)), "{name}: {out}");
    }
}

#[test]
fn verify_subset_and_injected_failure() {
    let o = qrefl(&["verify", "--only", "smatrix"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).count(), 1);
    assert!(out.contains("smatrix"));

    let o = qrefl(&["verify", "--only", "rho,beta", "--tolerance", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL rho"));
    assert!(stderr(&o).contains("rho"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "model = \"v4\"\nell4 = 100.0\npoints = 7\nrel_tol = 1e-9\n").unwrap();
    let o = qrefl(&["reflect", "--config", cfg.to_str().unwrap(), "--points", "5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("# model = \"v4\""));
    assert!(text.contains("# points = 5"));
    assert!(text.contains("# ell4 = 100.0"));
    assert_eq!(parse_csv(&text).1.len(), 5);

    std::fs::write(&cfg, "model = \"v4\"\npionts = 7\n").unwrap();
    let o = qrefl(&["reflect", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_flags_exit_with_config_code() {
    assert_eq!(qrefl(&["reflect", "--model", "xenon"]).status.code(), Some(2));
    assert_eq!(qrefl(&["reflect", "--rel-tol", "0.1"]).status.code(), Some(2));
    assert_eq!(qrefl(&["fit", "--model", "v3", "--points", "20"]).status.code(), Some(2));
    assert_eq!(qrefl(&["reflect", "--bogus"]).status.code(), Some(2));
    assert_eq!(qrefl(&["liouville", "--config", "/no/such.toml"]).status.code(), Some(2));
}
