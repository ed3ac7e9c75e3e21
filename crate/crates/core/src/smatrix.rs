//! One-channel scattering and transfer matrices.
//!
//! `S = [[t̄, r], [r̄, t]]` maps incoming to outgoing amplitudes; the transfer matrix
//! `T = Π(S)` maps left to right amplitudes, so a two-step process composes as
//! `Sa ⋆ Sb = Π(Π(Sa)·Π(Sb))`.

use core::ops::Mul;

use num_complex::Complex64;

use crate::{Error, Result};

const PIVOT_TOL: f64 = 1e-12;

/// Plain 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Mat2([[o, z], [z, o]])
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn max_norm(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |a, z| a.max(z.norm()))
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let d = self.det();
        if d.norm() <= PIVOT_TOL * self.max_norm() * self.max_norm() {
            return Err(Error::Singular { stage: "matrix inverse" });
        }
        let m = &self.0;
        Ok(Mat2([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]]))
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn distance(&self, other: &Mat2) -> f64 {
        let mut d = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        d
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, b: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &b.0;
        Mat2(core::array::from_fn(|i| core::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j])))
    }
}

/// `Π(M) = (1/m₁₁)·[[1, −m₁₂], [m₂₁, det M]]`.
pub fn pi_involution(m: &Mat2) -> Result<Mat2> {
    let p = m.0[0][0];
    if p.norm() <= PIVOT_TOL * m.max_norm() {
        return Err(Error::Singular { stage: "pi involution" });
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(Mat2([[one / p, -m.0[0][1] / p], [m.0[1][0] / p, m.det() / p]]))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SMatrix2 {
    pub tbar: Complex64,
    pub r: Complex64,
    pub rbar: Complex64,
    pub t: Complex64,
}

/// Symmetry flags with their measured defects.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryReport {
    pub unitary: bool,
    pub reciprocal: bool,
    pub parity: bool,
    pub unitarity_defect: f64,
    pub reciprocity_defect: f64,
    pub parity_defect: f64,
    pub det_modulus: f64,
}

impl SMatrix2 {
    pub fn new(tbar: Complex64, r: Complex64, rbar: Complex64, t: Complex64) -> Self {
        Self { tbar, r, rbar, t }
    }

    /// Left-right symmetric scatterer `[[t, r], [r, t]]`.
    pub fn symmetric(r: Complex64, t: Complex64) -> Self {
        Self { tbar: t, r, rbar: r, t }
    }

    /// The transparent scatterer.
    pub fn identity() -> Self {
        Self::symmetric(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2([[self.tbar, self.r], [self.rbar, self.t]])
    }

    pub fn from_matrix(m: &Mat2) -> Self {
        Self { tbar: m.0[0][0], r: m.0[0][1], rbar: m.0[1][0], t: m.0[1][1] }
    }

    pub fn det(&self) -> Complex64 {
        self.matrix().det()
    }

    pub fn distance(&self, other: &SMatrix2) -> f64 {
        self.matrix().distance(&other.matrix())
    }

    pub fn symmetry_report(&self, tol: f64) -> SymmetryReport {
        let s = self;
        let unitarity_defect = (s.r.norm_sqr() + s.t.norm_sqr() - 1.0)
            .abs()
            .max((s.rbar.norm_sqr() + s.tbar.norm_sqr() - 1.0).abs())
            .max((s.tbar.conj() * s.r + s.rbar.conj() * s.t).norm());
        // S* = M S⁻¹ M with M the exchange matrix
        let reciprocity_defect = match self.matrix().inverse() {
            Ok(inv) => {
                let swapped = Mat2([[inv.0[1][1], inv.0[1][0]], [inv.0[0][1], inv.0[0][0]]]);
                let conj = Mat2(self.matrix().0.map(|row| row.map(|z| z.conj())));
                conj.distance(&swapped)
            }
            Err(_) => f64::INFINITY,
        };
        let parity_defect = (s.r - s.rbar).norm().max((s.t - s.tbar).norm());
        SymmetryReport {
            unitary: unitarity_defect <= tol,
            reciprocal: reciprocity_defect <= tol,
            parity: parity_defect <= tol,
            unitarity_defect,
            reciprocity_defect,
            parity_defect,
            det_modulus: self.det().norm(),
        }
    }
}

/// `Sa ⋆ Sb = Π(Π(Sa)·Π(Sb))`.
pub fn star(a: &SMatrix2, b: &SMatrix2) -> Result<SMatrix2> {
    let ta = pi_involution(&a.matrix()).map_err(|_| Error::Singular { stage: "star: transfer matrix of the first factor" })?;
    let tb = pi_involution(&b.matrix()).map_err(|_| Error::Singular { stage: "star: transfer matrix of the second factor" })?;
    let s = pi_involution(&(ta * tb)).map_err(|_| Error::Singular { stage: "star: product back to S" })?;
    Ok(SMatrix2::from_matrix(&s))
}

/// Inverse for the ⋆ law, `Π([Π(S)]⁻¹)`.
pub fn star_inverse(s: &SMatrix2) -> Result<SMatrix2> {
    let t = pi_involution(&s.matrix())?;
    let inv = t.inverse().map_err(|_| Error::Singular { stage: "star inverse: transfer matrix" })?;
    Ok(SMatrix2::from_matrix(&pi_involution(&inv)?))
}

/// Reflection of the two-step process `S_ρ ⋆ S₄` for a parity-symmetric `S₄`:
/// `r = (r₄ − ρ(r₄² − t₄²))/(1 − ρ r₄)`.
pub fn compose_r(r4: Complex64, t4: Complex64, rho: Complex64) -> Result<Complex64> {
    let den = Complex64::new(1.0, 0.0) - rho * r4;
    if den.norm() <= PIVOT_TOL {
        return Err(Error::Pole { what: "compose_r denominator 1 - rho r4" });
    }
    Ok((r4 - rho * (r4 * r4 - t4 * t4)) / den)
}

/// Inner reflection `ρ = (r₄*/r₄)(r₄ − r)/(1 − r₄* r)`, the inverse of [`compose_r`]
/// for unitary `S₄`.
pub fn extract_rho(r: Complex64, r4: Complex64) -> Result<Complex64> {
    let den = Complex64::new(1.0, 0.0) - r4.conj() * r;
    if r4.norm() <= PIVOT_TOL || den.norm() <= PIVOT_TOL {
        return Err(Error::Pole { what: "extract_rho denominator" });
    }
    Ok(r4.conj() / r4 * (r4 - r) / den)
}
