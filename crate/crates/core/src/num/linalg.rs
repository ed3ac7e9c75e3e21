//! Dense complex least squares by Householder QR.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::{Error, Result};

/// Solution of `min ‖A x − b‖₂` with `A` given row-major as `rows × cols`.
#[derive(Debug, Clone)]
pub(crate) struct LeastSquares {
    pub x: Vec<Complex64>,
    /// Ratio of the largest to the smallest |R_jj|, a cheap condition estimate.
    pub cond: f64,
    /// `√diag((AᴴA)⁻¹)`, the coefficient standard errors per unit residual deviation.
    pub unit_std: Vec<f64>,
    /// Pseudo-inverse `(AᴴA)⁻¹Aᴴ`, row-major `cols × rows`.
    pub pinv: Vec<Complex64>,
}

pub(crate) fn lstsq(a: &[Complex64], rows: usize, cols: usize, b: &[Complex64]) -> Result<LeastSquares> {
    assert_eq!(a.len(), rows * cols);
    assert_eq!(b.len(), rows);
    if rows < cols || cols == 0 {
        return Err(Error::RankDeficient { rows, cols });
    }
    let mut m = a.to_vec();
    let mut rhs = b.to_vec();
    let mut v = vec![Complex64::new(0.0, 0.0); rows];
    let mut diag = vec![0.0; cols];
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::RankDeficient { rows, cols });
    }

    for k in 0..cols {
        let norm = libm::sqrt((k..rows).map(|i| m[i * cols + k].norm_sqr()).sum::<f64>());
        if norm <= 1e-14 * scale {
            return Err(Error::RankDeficient { rows, cols });
        }
        let x0 = m[k * cols + k];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        for i in k..rows {
            v[i] = m[i * cols + k];
        }
        v[k] -= alpha;
        let vnorm2: f64 = (k..rows).map(|i| v[i].norm_sqr()).sum();
        for j in k..cols {
            let dot: Complex64 = (k..rows).map(|i| v[i].conj() * m[i * cols + j]).sum();
            let f = dot * (2.0 / vnorm2);
            for i in k..rows {
                m[i * cols + j] -= v[i] * f;
            }
        }
        let dot: Complex64 = (k..rows).map(|i| v[i].conj() * rhs[i]).sum();
        let f = dot * (2.0 / vnorm2);
        for i in k..rows {
            rhs[i] -= v[i] * f;
        }
        diag[k] = m[k * cols + k].norm();
    }

    let mut x = vec![Complex64::new(0.0, 0.0); cols];
    for k in (0..cols).rev() {
        let mut s = rhs[k];
        for j in k + 1..cols {
            s -= m[k * cols + j] * x[j];
        }
        x[k] = s / m[k * cols + k];
    }
    // rows of R⁻¹ give diag((AᴴA)⁻¹) = diag(R⁻¹R⁻ᴴ)
    let mut rinv = vec![Complex64::new(0.0, 0.0); cols * cols];
    for j in 0..cols {
        rinv[j * cols + j] = Complex64::new(1.0, 0.0) / m[j * cols + j];
        for i in (0..j).rev() {
            let mut s = Complex64::new(0.0, 0.0);
            for l in i + 1..=j {
                s += m[i * cols + l] * rinv[l * cols + j];
            }
            rinv[i * cols + j] = -s / m[i * cols + i];
        }
    }
    let unit_std = (0..cols).map(|i| libm::sqrt((i..cols).map(|j| rinv[i * cols + j].norm_sqr()).sum())).collect();
    let mut gram_inv = vec![Complex64::new(0.0, 0.0); cols * cols];
    for i in 0..cols {
        for j in 0..cols {
            gram_inv[i * cols + j] = (i.max(j)..cols).map(|l| rinv[i * cols + l] * rinv[j * cols + l].conj()).sum();
        }
    }
    let mut pinv = vec![Complex64::new(0.0, 0.0); cols * rows];
    for r in 0..rows {
        for i in 0..cols {
            pinv[i * rows + r] = (0..cols).map(|l| gram_inv[i * cols + l] * a[r * cols + l].conj()).sum();
        }
    }
    let dmax = diag.iter().cloned().fold(0.0, f64::max);
    let dmin = diag.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(LeastSquares { x, cond: dmax / dmin, unit_std, pinv })
}
