//! Exact scattering on the homogeneous `−ℓ4²/z⁴` potential.
//!
//! With `u = ln(z/ζ)` the Schrödinger equation becomes a modified Mathieu equation.
//! Its Floquet solutions are Bessel-product series whose coefficients obey
//!
//! ```text
//! ((τ + 2n)² − 1/4) A_n + 𝐤² (A_{n+1} + A_{n−1}) = 0
//! ```
//!
//! and the characteristic exponent `τ` is the root of the continued-fraction
//! consistency condition of this recursion.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::num::{self, PI};
use crate::{Error, Result};

/// Largest `𝐤 = √(kℓ4)` handled; `τ` stays real well beyond this.
pub const KBOLD_MAX: f64 = 0.7;

const N_START: usize = 8;
const N_STEP: usize = 4;
const N_LIMIT: usize = 64;

/// Bessel function of the first kind `J_ν(x)` for real order and `0 ≤ x ≤ 2`,
/// from the ascending series. Negative integer orders use `J_{−n} = (−1)ⁿ J_n`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&x) {
        return Err(Error::Domain { what: "Bessel argument", value: x });
    }
    if nu < 0.0 && nu == libm::floor(nu) {
        let n = -nu;
        let sign = if libm::fmod(n, 2.0) == 0.0 { 1.0 } else { -1.0 };
        return bessel_j(n, x).map(|j| sign * j);
    }
    if x == 0.0 {
        return match nu {
            v if v == 0.0 => Ok(1.0),
            v if v > 0.0 => Ok(0.0),
            _ => Err(Error::Domain { what: "Bessel argument (negative order at 0)", value: x }),
        };
    }
    let half = 0.5 * x;
    let q = -half * half;
    let mut term = libm::pow(half, nu) * num::rgamma(nu + 1.0);
    let mut sum = term;
    for m in 1..200 {
        let mf = m as f64;
        term *= q / (mf * (mf + nu));
        sum += term;
        if mf + nu > 0.0 && term.abs() <= 1e-18 * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::Series { what: "Bessel" })
}

// β_n = (τ + 2n)² − 1/4 written with δ = τ − 1/2 to keep relative precision near δ = 0.
fn beta(delta: f64, n: i64) -> f64 {
    let a = delta + 2.0 * n as f64;
    a * (a + 1.0)
}

fn consistency(delta: f64, q: f64, n: usize) -> f64 {
    let mut r = 0.0;
    for k in (1..=n as i64).rev() {
        r = -q / (beta(delta, k) + q * r);
    }
    let mut l = 0.0;
    for k in -(n as i64)..0 {
        l = -q / (beta(delta, k) + q * l);
    }
    beta(delta, 0) + q * (r + l)
}

fn solve_delta(q: f64, n: usize, kbold: f64) -> Result<f64> {
    let g = |d: f64| consistency(d, q, n);
    if g(0.5) <= 0.0 {
        return Err(Error::OutOfRange { kbold });
    }
    num::roots::brent(g, 0.0, 0.5, 1e-300, "characteristic exponent")
}

/// Characteristic exponent `τ(𝐤)`, the root in `[1/2, 1)` continuously connected to
/// `τ = 1/2` at `𝐤 = 0`.
pub fn char_exponent(kbold: f64) -> Result<f64> {
    let sol = MathieuSolution::new(kbold)?;
    Ok(sol.tau)
}

/// Floquet data of the `1/z⁴` problem at one `𝐤`.
#[derive(Debug, Clone, PartialEq)]
pub struct MathieuSolution {
    pub kbold: f64,
    pub tau: f64,
    /// `τ − 1/2`, kept separately since it is `O(𝐤⁴)`.
    pub delta: f64,
    /// `A_n` for `n ∈ [−N, N]` stored at index `n + N`, normalized to `A_0 = 1`.
    pub coeffs: Vec<f64>,
    pub truncation: usize,
    /// `ln(ψ̃⁻(0)/ψ̃⁺(0))`.
    pub sigma: f64,
}

impl MathieuSolution {
    pub fn new(kbold: f64) -> Result<Self> {
        let kbold = kbold.abs();
        if !(kbold > 0.0 && kbold <= KBOLD_MAX) {
            return Err(Error::OutOfRange { kbold });
        }
        let q = kbold * kbold;
        let mut n = N_START;
        let mut delta = solve_delta(q, n, kbold)?;
        loop {
            let coeffs = coefficients(delta, q, n);
            let a0 = coeffs[n];
            let decayed = coeffs[0].abs() < 1e-16 * a0.abs() && coeffs[2 * n].abs() < 1e-16 * a0.abs();
            let next = solve_delta(q, n + N_STEP, kbold)?;
            let stable = (next - delta).abs() <= 1e-12 * (0.5 + delta);
            if decayed && stable {
                let tau = 0.5 + delta;
                let mut sol = Self { kbold, tau, delta, coeffs, truncation: n, sigma: 0.0 };
                let plus = sol.psi_origin(1.0)?;
                let minus = sol.psi_origin(-1.0)?;
                let ratio = minus / plus;
                if !(ratio > 0.0 && ratio.is_finite()) {
                    return Err(Error::OutOfRange { kbold });
                }
                sol.sigma = libm::log(ratio);
                return Ok(sol);
            }
            n += N_STEP;
            delta = next;
            if n > N_LIMIT {
                return Err(Error::Series { what: "Mathieu coefficient" });
            }
        }
    }

    /// `A_n`, zero outside the truncation.
    pub fn coeff(&self, n: i64) -> f64 {
        let nn = self.truncation as i64;
        if n.abs() > nn {
            0.0
        } else {
            self.coeffs[(n + nn) as usize]
        }
    }

    /// Largest recursion residual over interior indices, relative to `max|A_n|`.
    pub fn recursion_residual(&self) -> f64 {
        let q = self.kbold * self.kbold;
        let nn = self.truncation as i64;
        let amax = self.coeffs.iter().fold(0.0f64, |m, a| m.max(a.abs()));
        (-nn + 1..nn)
            .map(|n| (beta(self.delta, n) * self.coeff(n) + q * (self.coeff(n + 1) + self.coeff(n - 1))).abs())
            .fold(0.0, f64::max)
            / amax
    }

    /// `ψ̃^ε(u = 0) = Σ (−1)ⁿ A_n J_{ε(n+τ)}(𝐤) J_{εn}(𝐤)`.
    fn psi_origin(&self, eps: f64) -> Result<f64> {
        let nn = self.truncation as i64;
        let mut s = 0.0;
        for n in -nn..=nn {
            let a = self.coeff(n);
            if a == 0.0 {
                continue;
            }
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let nf = n as f64;
            s += sign * a * bessel_j(eps * (nf + self.tau), self.kbold)? * bessel_j(eps * nf, self.kbold)?;
        }
        Ok(s)
    }

    /// `(r₄, t₄)`, referenced like the physical amplitudes (plane-wave phase at `z = 0`).
    pub fn amplitudes(&self) -> Result<(Complex64, Complex64)> {
        let i = Complex64::new(0.0, 1.0);
        let sig = Complex64::new(self.sigma, 0.0);
        let den = (sig + i * (PI * self.tau)).sinh();
        if !(den.norm() >= 1e-300) {
            return Err(Error::Pole { what: "Mathieu amplitude denominator" });
        }
        let r = -i * sig.sinh() / den;
        let t = Complex64::new(libm::sin(PI * self.tau), 0.0) / den;
        Ok((r, t))
    }
}

fn coefficients(delta: f64, q: f64, n: usize) -> Vec<f64> {
    let ni = n as i64;
    let mut right = alloc::vec![0.0; n + 1];
    let mut r = 0.0;
    for k in (1..=ni).rev() {
        r = -q / (beta(delta, k) + q * r);
        right[k as usize] = r;
    }
    let mut left = alloc::vec![0.0; n + 1];
    let mut l = 0.0;
    for k in -ni..0 {
        l = -q / (beta(delta, k) + q * l);
        left[(-k) as usize] = l;
    }
    let mut a = alloc::vec![0.0; 2 * n + 1];
    a[n] = 1.0;
    for k in 1..=n {
        a[n + k] = a[n + k - 1] * right[k];
        a[n - k] = a[n - k + 1] * left[k];
    }
    a
}

/// Exact `(r₄, t₄)` at `kℓ4`.
pub fn v4_amplitudes(k_ell4: f64) -> Result<(Complex64, Complex64)> {
    if !(k_ell4 > 0.0 && k_ell4 <= KBOLD_MAX * KBOLD_MAX) {
        return Err(Error::Domain { what: "k_ell4", value: k_ell4 });
    }
    MathieuSolution::new(libm::sqrt(k_ell4))?.amplitudes()
}

/// Coefficients of the low-energy expansion of `Ã₄`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaCoefficients {
    pub alpha0: Complex64,
    pub alpha1: Complex64,
    pub alpha2: Complex64,
    pub alpha2p: Complex64,
}

impl AlphaCoefficients {
    pub fn standard() -> Self {
        let ln2 = core::f64::consts::LN_2;
        Self {
            alpha0: Complex64::new(1.0, 0.0),
            alpha1: Complex64::new(0.0, PI / 3.0),
            alpha2: Complex64::new(8.0 / 3.0 * (num::EULER_GAMMA + ln2) - 28.0 / 9.0, -2.0 * PI / 3.0),
            alpha2p: Complex64::new(4.0 / 3.0, 0.0),
        }
    }
}

impl Default for AlphaCoefficients {
    fn default() -> Self {
        Self::standard()
    }
}

/// `Ã₄ ≈ −ikℓ4 [α0 + α1 kℓ4 + α2 (kℓ4)² + α2′ (kℓ4)² ln kℓ4]`.
pub fn a4_expansion(k_ell4: f64, c: &AlphaCoefficients) -> Complex64 {
    let x = k_ell4;
    let bracket = c.alpha0 + c.alpha1 * x + c.alpha2 * (x * x) + c.alpha2p * (x * x * libm::log(x));
    Complex64::new(0.0, -x) * bracket
}
