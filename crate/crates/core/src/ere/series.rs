//! Truncated double series in `𝐤` and `L = ln 𝐤`, used to expand the two-step
//! composition of `Ã` term by term. This is a derivation path independent of the
//! closed β formulas.

use num_complex::Complex64;

use super::BetaExpansion;
use crate::mathieu::AlphaCoefficients;
use crate::{Error, Result};

/// Highest power of `𝐤` kept.
pub const ORDER: usize = 6;
const LOGS: usize = 4;

type Coeffs = [[Complex64; LOGS]; ORDER + 1];

/// `Σ c[j][m] 𝐤^j L^m` truncated at `j ≤ ORDER`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KSeries {
    pub c: Coeffs,
}

impl KSeries {
    pub fn zero() -> Self {
        Self { c: [[Complex64::new(0.0, 0.0); LOGS]; ORDER + 1] }
    }

    pub fn constant(v: Complex64) -> Self {
        let mut s = Self::zero();
        s.c[0][0] = v;
        s
    }

    /// `v 𝐤^j L^m`.
    pub fn monomial(v: Complex64, j: usize, m: usize) -> Self {
        let mut s = Self::zero();
        if j <= ORDER {
            s.c[j][m] = v;
        }
        s
    }

    /// Complex conjugate for real `𝐤`.
    pub fn conj(&self) -> Self {
        Self { c: self.c.map(|row| row.map(|z| z.conj())) }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = *self;
        for j in 0..=ORDER {
            for m in 0..LOGS {
                s.c[j][m] += o.c[j][m];
            }
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, v: Complex64) -> Self {
        Self { c: self.c.map(|row| row.map(|z| z * v)) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut s = Self::zero();
        for j1 in 0..=ORDER {
            for m1 in 0..LOGS {
                let a = self.c[j1][m1];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j2 in 0..=ORDER - j1 {
                    for m2 in 0..LOGS - m1 {
                        s.c[j1 + j2][m1 + m2] += a * o.c[j2][m2];
                    }
                }
            }
        }
        s
    }

    /// `1/self`, requiring a non-zero constant term without logarithm.
    pub fn recip(&self) -> Result<Self> {
        let a0 = self.c[0][0];
        if a0.norm() == 0.0 || (1..LOGS).any(|m| self.c[0][m].norm() != 0.0) {
            return Err(Error::Pole { what: "series reciprocal" });
        }
        // 1/(a0(1 + ε)) = (1/a0) Σ (−ε)ⁿ
        let mut eps = self.scale(Complex64::new(1.0, 0.0) / a0);
        eps.c[0][0] = Complex64::new(0.0, 0.0);
        let neg = eps.scale(Complex64::new(-1.0, 0.0));
        let mut term = Self::constant(Complex64::new(1.0, 0.0));
        let mut sum = term;
        for _ in 0..ORDER {
            term = term.mul(&neg);
            sum = sum.add(&term);
        }
        Ok(sum.scale(Complex64::new(1.0, 0.0) / a0))
    }
}

/// β coefficients by composing `Ã = Ã₄ + ρ(1−iÃ₄)(Ã₄*−Ã₄)/(1+iÃ₄*+ρ(1−iÃ₄))` as series in
/// `𝐤`, then re-expressing the result in powers of `kℓ`.
pub fn beta_by_composition(alpha: &AlphaCoefficients, rho: &[Complex64; 5], ell4: f64) -> Result<BetaExpansion> {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    if (one + rho[0]).norm() == 0.0 || (one - rho[0]).norm() == 0.0 {
        return Err(Error::Pole { what: "rho0 = ±1" });
    }
    // Ã₄ = −i𝐤²(α0 + α1𝐤² + α2𝐤⁴ + 2α2′𝐤⁴ ln𝐤)
    let a4 = KSeries::monomial(alpha.alpha0, 2, 0)
        .add(&KSeries::monomial(alpha.alpha1, 4, 0))
        .add(&KSeries::monomial(alpha.alpha2, 6, 0))
        .add(&KSeries::monomial(alpha.alpha2p * 2.0, 6, 1))
        .scale(-i);
    let a4c = a4.conj();
    let mut rs = KSeries::zero();
    for (j, &r) in rho.iter().enumerate() {
        rs.c[j][0] = r;
    }
    let one_s = KSeries::constant(one);
    let w = one_s.sub(&a4.scale(i));
    let num = rs.mul(&w).mul(&a4c.sub(&a4));
    let den = one_s.add(&a4c.scale(i)).add(&rs.mul(&w));
    let a = a4.add(&num.mul(&den.recip()?));
    // Ã/(−i𝐤²) = Σ c_j 𝐤^j + c4L 𝐤⁴ ln𝐤
    let c = |j: usize, m: usize| a.c[j + 2][m] / (-i);
    for m in 1..LOGS {
        for j in 0..=4 {
            if !(j == 4 && m == 1) && c(j, m).norm() > 1e-12 * (1.0 + c(0, 0).norm()) {
                return Err(Error::Series { what: "unexpected logarithmic term in composition" });
            }
        }
    }
    let ell = (one - rho[0]) / (one + rho[0]) * ell4;
    let ratio = Complex64::new(ell4, 0.0) / ell; // ℓ4/ℓ
    let half = ratio.sqrt();
    // Ã/(−ikℓ) = (ℓ4/ℓ)·Ã/(−i𝐤²) and 𝐤 = (kℓ)^{1/2}(ℓ4/ℓ)^{1/2}
    let beta = |j: usize| c(j, 0) * ratio * half.powu(j as u32);
    let beta2p = c(4, 1) * 0.5 * ratio * ratio * ratio;
    Ok(BetaExpansion {
        beta0: beta(0),
        beta12: beta(1),
        beta1: beta(2),
        beta32: beta(3),
        beta2: beta(4) - beta2p * (ell / ell4).ln(),
        beta2p,
        ell,
        ell4,
    })
}
