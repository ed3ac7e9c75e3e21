//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use qrefl_core::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Lanczos approximation (g = 7, n = 9).
pub fn gamma(x: f64) -> f64 {
    const G: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = G[0];
    let t = x + 7.5;
    for (i, g) in G.iter().enumerate().skip(1) {
        a += g / (x + i as f64);
    }
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// Gauss series `₂F₁(a, b; c; z)` for `|z| < 1`.
pub fn hyp2f1(a: f64, b: f64, cc: f64, z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..10_000 {
        let n = n as f64;
        term *= (a + n) * (b + n) / ((cc + n) * (n + 1.0)) * z;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + h * i as f64);
    }
    s * h / 3.0
}

/// `τ(𝐤)` as the zero of the normalized Hill determinant of the three-term recursion,
/// found by bisection on `(1/2, 1)`.
pub fn hill_tau(kbold: f64, n: i64) -> f64 {
    let q = kbold * kbold;
    let det = |tau: f64| {
        // D_j = d_j D_{j−1} − e² D_{j−2}, rows scaled by 1/(1 + 4j²)
        let (mut d2, mut d1) = (0.0f64, 1.0f64);
        let mut prev_scale = 1.0;
        for j in -n..=n {
            let s = 1.0 / (1.0 + 4.0 * (j * j) as f64);
            let a = tau + 2.0 * j as f64;
            let diag = (a * a - 0.25) * s;
            let d = diag * d1 - q * q * s * prev_scale * d2;
            d2 = d1;
            d1 = d;
            prev_scale = s;
        }
        d1
    };
    let (mut lo, mut hi) = (0.5 + 1e-15, 0.999);
    let flo = det(lo);
    assert!(flo * det(hi) < 0.0, "Hill determinant not bracketed");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if det(mid) * flo > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `U = −ℓ4²/(z³(z + ℓ4²/ℓ3))` by direct arithmetic.
pub fn interpolated_u(ell3: f64, ell4: f64, z: f64) -> f64 {
    -(ell4 * ell4) / (z * z * z * (z + ell4 * ell4 / ell3))
}

/// Max entrywise distance of two coefficient arrays.
pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `kℓ4` grid of `n` log-spaced points on `[a, b]`.
pub fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a * (b / a).powf(i as f64 / (n - 1) as f64)).collect()
}
