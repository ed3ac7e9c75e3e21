//! WKB phase, Liouville coordinate and badlands function.
//!
//! The map is `𝐳(z) = φ_dB(z)/𝐤` with `φ_dB(z) = kz − ∫_z^∞(√F − k)dz' − 𝐤 𝐳_*`, so that
//! `φ_dB(z) − kz → −𝐤𝐳_*` at large `z` and the pure `1/z⁴` landscape is centred
//! (`𝐳(ζ) = 0`). Models without an `r⁻⁴` tail use the crossing length `z_c`,
//! `|U(z_c)| = k²`, in place of `ζ` and no shift.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::num::{self, quad, roots};
use crate::potentials::PotentialModel;
use crate::solver::{self, PhaseConvention, ScatteringAmplitudes, SolverOptions};
use crate::{Error, Result};

const QUAD_REL: f64 = 1e-13;

/// `𝐳_* = Γ(3/4)²/√π`, the offset between `𝐳(ζ)` and the phase origin for `1/z⁴`.
pub fn zstar() -> f64 {
    let g = num::gamma(0.75);
    g * g / libm::sqrt(num::PI)
}

/// Badlands function `Q = F''/(4F²) − 5F'²/(16F³)` from analytic derivatives.
pub fn badlands_q(model: &PotentialModel, k: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::Domain { what: "z", value: z });
    }
    let (u, u1, u2) = model.derivs(z);
    let f = k * k - u;
    if !(f > 0.0) {
        return Err(Error::Domain { what: "F(z)", value: f });
    }
    Ok(q_from(f, -u1, -u2))
}

fn q_from(f: f64, f1: f64, f2: f64) -> f64 {
    f2 / (4.0 * f * f) - 5.0 * f1 * f1 / (16.0 * f * f * f)
}

/// Liouville map of one model at one wavevector. Immutable after construction.
#[derive(Debug, Clone)]
pub struct LiouvilleMap {
    model: PotentialModel,
    k: f64,
    zeta: f64,
    kbold: f64,
    ebold: f64,
    shift: f64,
    // T(ζ), cached so that inner points integrate only over [z, ζ]
    tail_at_zeta: f64,
}

impl LiouvilleMap {
    pub fn new(model: &PotentialModel, k: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::Domain { what: "k", value: k });
        }
        let (zeta, kbold, ebold, shift) = match model.ell4() {
            Some(l4) => (libm::sqrt(l4 / k), libm::sqrt(k * l4), k * l4, zstar()),
            None => match *model {
                PotentialModel::Homogeneous { n, ell } => {
                    let zc = libm::pow(libm::pow(ell, n as f64 - 2.0) / (k * k), 1.0 / n as f64);
                    (zc, k * zc, k * zc * k * zc, 0.0)
                }
                _ => return Err(Error::Config("model has no length scale for the Liouville map".into())),
            },
        };
        let mut map = Self { model: model.clone(), k, zeta, kbold, ebold, shift, tail_at_zeta: 0.0 };
        map.tail_at_zeta = map.tail_outer(zeta)?;
        Ok(map)
    }

    pub fn model(&self) -> &PotentialModel {
        &self.model
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// `ζ = √(ℓ4/k)` (or `z_c` without an `r⁻⁴` tail).
    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    /// `𝐤 = √(kℓ4)`.
    pub fn kbold(&self) -> f64 {
        self.kbold
    }

    /// `𝐄 = 𝐤² = kℓ4`.
    pub fn ebold(&self) -> f64 {
        self.ebold
    }

    /// Translation `𝐳_φ` (`−𝐳_*` for models with an `r⁻⁴` tail).
    pub fn z_phi(&self) -> f64 {
        -self.shift
    }

    /// `(F, F', F'')` at `z`.
    pub fn f_derivs(&self, z: f64) -> (f64, f64, f64) {
        let (u, u1, u2) = self.model.derivs(z);
        (self.k * self.k - u, -u1, -u2)
    }

    pub fn q(&self, z: f64) -> f64 {
        let (f, f1, f2) = self.f_derivs(z);
        q_from(f, f1, f2)
    }

    /// Transformed potential `𝐕 = 𝐄 Q`.
    pub fn vbold(&self, z: f64) -> f64 {
        self.ebold() * self.q(z)
    }

    /// `d𝐳/dz = √(F/𝐄)`.
    pub fn jacobian(&self, z: f64) -> f64 {
        libm::sqrt(self.f_derivs(z).0) / self.kbold
    }

    // √F − k without cancellation
    fn excess(&self, z: f64) -> f64 {
        let u = self.model.u(z);
        -u / (libm::sqrt(self.k * self.k - u) + self.k)
    }

    fn tail_outer(&self, z: f64) -> Result<f64> {
        quad::integrate_to_inf(|x| self.excess(x), z, 0.0, QUAD_REL)
    }

    /// `T(z) = ∫_z^∞ (√F − k) dz'`.
    pub fn tail_phase(&self, z: f64) -> Result<f64> {
        if !(z > 0.0) {
            return Err(Error::Domain { what: "z", value: z });
        }
        if z >= self.zeta {
            return self.tail_outer(z);
        }
        // ln z substitution keeps the near-surface growth smooth
        let inner = quad::integrate(
            |s| {
                let x = libm::exp(s);
                self.excess(x) * x
            },
            libm::log(z),
            libm::log(self.zeta),
            0.0,
            QUAD_REL,
        )?;
        Ok(self.tail_at_zeta + inner)
    }

    /// WKB phase `φ_dB(z)` with the symmetric phase origin.
    pub fn phase(&self, z: f64) -> Result<f64> {
        Ok(self.k * z - self.tail_phase(z)? - self.kbold * self.shift)
    }

    /// `𝐳(z)`.
    pub fn z_map(&self, z: f64) -> Result<f64> {
        Ok(self.phase(z)? / self.kbold)
    }

    /// `z(𝐳)`, by Brent iteration in `ln z` on the monotone map.
    pub fn inverse_map(&self, zb: f64) -> Result<f64> {
        if !zb.is_finite() {
            return Err(Error::Domain { what: "zbold", value: zb });
        }
        let g = |s: f64| self.z_map(libm::exp(s)).map(|v| v - zb).unwrap_or(f64::NAN);
        let s0 = libm::log(self.zeta);
        let (mut lo, mut hi) = (s0 - 1.0, s0 + 1.0);
        let mut n = 0;
        while g(lo) > 0.0 {
            lo -= 2.0 * (s0 - lo);
            n += 1;
            if n > 60 {
                return Err(Error::Bracket { what: "inverse Liouville map", lo, hi });
            }
        }
        while g(hi) < 0.0 {
            hi += 2.0 * (hi - s0);
            n += 1;
            if n > 60 {
                return Err(Error::Bracket { what: "inverse Liouville map", lo, hi });
            }
        }
        let s = roots::brent(g, lo, hi, 1e-14, "inverse Liouville map")?;
        Ok(libm::exp(s))
    }
}

/// `φ_dB(z)` for `model` at `k`.
pub fn wkb_phase(model: &PotentialModel, k: f64, z: f64) -> Result<f64> {
    LiouvilleMap::new(model, k)?.phase(z)
}

/// `𝐳(u) = ∫₀ᵘ √(2 cosh 2u') du'`.
pub fn v4_zbold_of_u(u: f64) -> Result<f64> {
    quad::integrate(|v| libm::sqrt(2.0 * libm::cosh(2.0 * v)), 0.0, u, 0.0, 1e-15)
}

/// Universal `𝐕₄(𝐳) = 5/(8 cosh³ 2u)` with `u(𝐳)` from the even map, inverted by
/// safeguarded Newton on `|𝐳|` so the result is exactly even.
pub fn v4_closed_form(zb: f64) -> f64 {
    let target = zb.abs();
    if target > 1e6 {
        // 𝐳 = e^u − 𝐳_* + O(e^{−3u})
        return 5.0 / libm::pow(target + zstar(), 6.0);
    }
    let u = v4_u_of_zbold(target);
    let c = libm::cosh(2.0 * u);
    5.0 / (8.0 * c * c * c)
}

fn v4_u_of_zbold(target: f64) -> f64 {
    if target == 0.0 {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, libm::log(target + 1.0) + 1.0);
    let mut u = if target > 1.0 { libm::log(target + zstar()) } else { target / core::f64::consts::SQRT_2 };
    for _ in 0..100 {
        let f = v4_zbold_of_u(u).unwrap_or(f64::NAN) - target;
        if f > 0.0 {
            hi = u;
        } else {
            lo = u;
        }
        let step = f / libm::sqrt(2.0 * libm::cosh(2.0 * u));
        let mut next = u - step;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - u).abs() <= 1e-15 * (1.0 + u.abs()) {
            return next;
        }
        u = next;
    }
    u
}

/// `𝐳(x)` of the homogeneous `1/z³` landscape, `x = z/z_c`, with `𝐳 − x → 0` at large `x`.
pub fn v3_zbold_of_x(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain { what: "x", value: x });
    }
    // ∫_a^∞ (√(1+t⁻³) − 1) dt in cancellation-free form
    let outer = |a: f64| {
        quad::integrate_to_inf(
            |t| {
                let w = 1.0 / (t * t * t);
                w / (libm::sqrt(1.0 + w) + 1.0)
            },
            a,
            0.0,
            1e-15,
        )
    };
    if x >= 1.0 {
        return Ok(x - outer(x)?);
    }
    // ∫_x^1 √(1+t⁻³) dt = 2(1/√x − 1) + ∫_x^1 t^{3/2}/(√(1+t³)+1) dt
    let smooth = quad::integrate(
        |t| {
            let t3 = t * t * t;
            libm::sqrt(t3) / (libm::sqrt(1.0 + t3) + 1.0)
        },
        x,
        1.0,
        0.0,
        1e-15,
    )?;
    Ok(1.0 - outer(1.0)? - 2.0 * (1.0 / libm::sqrt(x) - 1.0) - smooth)
}

/// `𝐕₃(x) = 3x(1 + 16x³)/(16(1 + x³)³)`.
pub fn v3_of_x(x: f64) -> f64 {
    let x3 = x * x * x;
    let d = 1.0 + x3;
    3.0 * x * (1.0 + 16.0 * x3) / (16.0 * d * d * d)
}

/// Universal `𝐕₃(𝐳)`, by inverting the monotone map `x ↦ 𝐳`.
pub fn v3_closed_form(zb: f64) -> f64 {
    let g = |s: f64| v3_zbold_of_x(libm::exp(s)).map(|v| v - zb).unwrap_or(f64::NAN);
    // asymptotic guesses: x ≈ 4/𝐳² on the left, x ≈ 𝐳 on the right
    let s0 = if zb < -2.0 { libm::log(4.0 / (zb * zb)) } else if zb > 2.0 { libm::log(zb) } else { 0.0 };
    let (mut lo, mut hi) = (s0 - 1.0, s0 + 1.0);
    for _ in 0..200 {
        if g(lo) <= 0.0 {
            break;
        }
        lo -= 1.0;
    }
    for _ in 0..200 {
        if g(hi) >= 0.0 {
            break;
        }
        hi += 1.0;
    }
    match roots::brent(g, lo, hi, 1e-15, "V3 map inversion") {
        Ok(s) => v3_of_x(libm::exp(s)),
        Err(_) => f64::NAN,
    }
}

/// Tabulated transformed landscape.
#[derive(Debug, Clone, PartialEq)]
pub struct BadlandsProfile {
    /// `(z, 𝐳, Q, 𝐕)` per grid point.
    pub samples: Vec<(f64, f64, f64, f64)>,
    pub ebold: f64,
    pub kbold: f64,
    pub k: f64,
}

/// Evaluates `(z, 𝐳, Q, 𝐕)` on a grid of Liouville coordinates.
pub fn transformed_profile(model: &PotentialModel, k: f64, zbold_grid: &[f64]) -> Result<BadlandsProfile> {
    let map = LiouvilleMap::new(model, k)?;
    let mut samples = Vec::with_capacity(zbold_grid.len());
    for &zb in zbold_grid {
        let z = map.inverse_map(zb)?;
        let q = map.q(z);
        samples.push((z, zb, q, map.ebold() * q));
    }
    Ok(BadlandsProfile { samples, ebold: map.ebold(), kbold: map.kbold(), k })
}

/// Same scattering problem solved in the Liouville coordinate,
/// `𝚿'' + 𝐄(1 − Q)𝚿 = 0`, integrating `z(𝐳)` alongside through `dz/d𝐳 = 𝐤/√F`.
///
/// The outgoing side is matched to `e^{±i𝐤(𝐳 − 𝐳_φ)}`; `|𝐭| = 1/|A|`.
pub fn solve_transformed_reflection(model: &PotentialModel, k: f64, opts: &SolverOptions) -> Result<ScatteringAmplitudes> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain { what: "k", value: k });
    }
    opts.validate()?;
    let map = LiouvilleMap::new(model, k)?;
    let z_min = solver::inner_boundary(&map, opts.q_threshold)?;
    let z_max = solver::outer_boundary(&map, opts)?;
    solver::refine_inner(k, z_min, opts, PhaseConvention::LiouvilleShifted, |zm| transformed_once(&map, zm, z_max, opts))
}

fn transformed_once(map: &LiouvilleMap, z_min: f64, z_max: f64, opts: &SolverOptions) -> Result<(Complex64, f64, f64, bool)> {
    let kb = map.kbold();
    let e = map.ebold();
    let rhs = |_: f64, y: &[Complex64; 3]| {
        let z = y[0].re;
        let (f, f1, f2) = map.f_derivs(z);
        let q = q_from(f, f1, f2);
        [Complex64::new(kb / libm::sqrt(f), 0.0), y[2], -y[1] * (e * (1.0 - q))]
    };
    let span = |a: f64, b: f64| {
        quad::integrate(
            |s| {
                let x = libm::exp(s);
                map.jacobian(x) * x
            },
            libm::log(a),
            libm::log(b),
            0.0,
            QUAD_REL,
        )
    };
    let q0 = map.q(z_min);
    let y0 = [
        Complex64::new(z_min, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, -kb * libm::sqrt(1.0 - q0)),
    ];
    let mut ode = crate::num::ode::Dop853::new(0.0, y0, opts.ode_rtol(), 1e-300, opts.max_steps);
    let mut zb_end = span(z_min, z_max)?;
    ode.advance(rhs, zb_end)?;
    let decompose = |y: &[Complex64; 3]| -> Result<(Complex64, Complex64)> {
        let z = y[0].re;
        // θ = 𝐤(𝐳 − 𝐳_φ) = kz − T(z)
        let theta = map.k() * z - map.tail_phase(z)?;
        let em = Complex64::from_polar(1.0, -theta);
        let ep = Complex64::from_polar(1.0, theta);
        let i = Complex64::new(0.0, 1.0);
        // Ψ = A e^{−iθ} + B e^{iθ}, Ψ' = −i𝐤A e^{−iθ} + i𝐤B e^{iθ}
        let a = (y[1] - y[2] / (i * kb)) * 0.5 / em;
        let b = (y[1] + y[2] / (i * kb)) * 0.5 / ep;
        Ok((a, b))
    };
    let (a, b) = decompose(&ode.y)?;
    let mut r = b / a;
    let mut t_abs = 1.0 / a.norm();
    let mut z_end = z_max;
    let mut change = f64::INFINITY;
    let mut converged = false;
    for _ in 0..opts.max_refinements {
        zb_end += span(z_end, 2.0 * z_end)?;
        z_end *= 2.0;
        ode.advance(rhs, zb_end)?;
        let (a, b) = decompose(&ode.y)?;
        let r_new = b / a;
        change = (r_new - r).norm();
        r = r_new;
        t_abs = 1.0 / a.norm();
        if change < 10.0 * opts.rel_tol {
            converged = true;
            break;
        }
    }
    Ok((r, t_abs, change, converged))
}
