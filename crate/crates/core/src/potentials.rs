//! Reduced atom-surface potentials `U(z) = 2mV(z)/ħ²`.
//!
//! With `ħ²/2m = 1` the local wavevector squared is `F(z) = k² − U(z)`, the Van der
//! Waals tail reads `U ≈ −ℓ3/z³` and the retarded tail `U ≈ −ℓ4²/z⁴`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Asymptotic length scales of a model, in Bohr. Either may be absent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthScales {
    pub ell3: Option<f64>,
    pub ell4: Option<f64>,
}

/// Potential models; immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialModel {
    /// `U = −ℓ^{n−2}/zⁿ`.
    Homogeneous { n: u32, ell: f64 },
    /// `U = −ℓ4²/(z³(z + ℓ4²/ℓ3))`, joining the two power-law limits.
    Interpolated { ell3: f64, ell4: f64 },
    Tabulated(TabulatedPotential),
}

/// Literature length scales of helium (ℓ3, ℓ4), bound to the interpolated model.
pub const HELIUM: (f64, f64) = (16.54, 75.51);
/// Literature length scales of silica (ℓ3, ℓ4), bound to the interpolated model.
pub const SILICA: (f64, f64) = (321.3, 194.7);

impl PotentialModel {
    pub fn homogeneous(n: u32, ell: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::Config(format!("homogeneous exponent must be at least 3, got {n}")));
        }
        if !(ell > 0.0 && ell.is_finite()) {
            return Err(Error::Domain { what: "homogeneous length scale", value: ell });
        }
        Ok(Self::Homogeneous { n, ell })
    }

    pub fn v4(ell4: f64) -> Result<Self> {
        Self::homogeneous(4, ell4)
    }

    pub fn interpolated(ell3: f64, ell4: f64) -> Result<Self> {
        if !(ell3 > 0.0 && ell3.is_finite()) {
            return Err(Error::Domain { what: "ell3", value: ell3 });
        }
        if !(ell4 > 0.0 && ell4.is_finite()) {
            return Err(Error::Domain { what: "ell4", value: ell4 });
        }
        Ok(Self::Interpolated { ell3, ell4 })
    }

    /// Interpolated model with the helium length scales.
    pub fn helium() -> Self {
        Self::Interpolated { ell3: HELIUM.0, ell4: HELIUM.1 }
    }

    /// Interpolated model with the silica length scales.
    pub fn silica() -> Self {
        Self::Interpolated { ell3: SILICA.0, ell4: SILICA.1 }
    }

    /// Checked evaluation of `U(z)`.
    pub fn eval_reduced_potential(&self, z: f64) -> Result<f64> {
        if !(z > 0.0) {
            return Err(Error::Domain { what: "z", value: z });
        }
        if let Self::Tabulated(t) = self {
            if t.s.is_empty() {
                return Err(Error::Config("tabulated potential has no samples".into()));
            }
        }
        Ok(self.u(z))
    }

    /// `U(z)` for `z > 0`, unchecked.
    pub fn u(&self, z: f64) -> f64 {
        self.derivs(z).0
    }

    /// `(U, dU/dz, d²U/dz²)` at `z > 0`.
    pub fn derivs(&self, z: f64) -> (f64, f64, f64) {
        match *self {
            Self::Homogeneous { n, ell } => {
                let x = ell / z;
                let xn = libm::pow(x, n as f64);
                let nf = n as f64;
                let l2 = ell * ell;
                (-xn / l2, nf * xn * x / (l2 * ell), -nf * (nf + 1.0) * xn * x * x / (l2 * l2))
            }
            Self::Interpolated { ell3, ell4 } => {
                let a = ell4 * ell4 / ell3;
                let c = ell4 * ell4;
                let d = z * z * z * (z + a);
                let d1 = z * z * (4.0 * z + 3.0 * a);
                let d2 = z * (12.0 * z + 6.0 * a);
                (-c / d, c * d1 / (d * d), c * (d2 * d - 2.0 * d1 * d1) / (d * d * d))
            }
            Self::Tabulated(ref t) => t.derivs(z),
        }
    }

    pub fn length_scales(&self) -> LengthScales {
        match *self {
            Self::Homogeneous { n: 3, ell } => LengthScales { ell3: Some(ell), ell4: None },
            Self::Homogeneous { n: 4, ell } => LengthScales { ell3: None, ell4: Some(ell) },
            Self::Homogeneous { .. } => LengthScales { ell3: None, ell4: None },
            Self::Interpolated { ell3, ell4 } => LengthScales { ell3: Some(ell3), ell4: Some(ell4) },
            Self::Tabulated(ref t) => LengthScales { ell3: Some(t.ell3), ell4: Some(t.ell4) },
        }
    }

    /// `ℓ4` if the model has an `r⁻⁴` tail.
    pub fn ell4(&self) -> Option<f64> {
        self.length_scales().ell4
    }

    /// One-line description used in output headers.
    pub fn describe(&self) -> String {
        match self {
            Self::Homogeneous { n, ell } => format!("homogeneous n={n} ell={ell}"),
            Self::Interpolated { ell3, ell4 } => format!("interpolated ell3={ell3} ell4={ell4}"),
            Self::Tabulated(t) => format!(
                "tabulated {} samples z=[{:e}, {:e}] ell3={} ell4={}",
                t.s.len(),
                libm::exp(t.s[0]),
                libm::exp(t.s[t.s.len() - 1]),
                t.ell3,
                t.ell4
            ),
        }
    }
}

/// Sampled potential, interpolated by a monotone cubic in `(ln z, ln|U|)` with
/// `z⁻³` and `z⁻⁴` power-law tails outside the sampled range.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPotential {
    z: Vec<f64>,
    u: Vec<f64>,
    s: Vec<f64>,
    w: Vec<f64>,
    m: Vec<f64>,
    ell3: f64,
    ell4: f64,
}

const LEFT_EXPONENT: f64 = -3.0;
const RIGHT_EXPONENT: f64 = -4.0;

impl TabulatedPotential {
    /// Builds the interpolant from samples; `ell3`/`ell4` default to the values implied
    /// by the end samples.
    pub fn from_samples(z: &[f64], u: &[f64], ell3: Option<f64>, ell4: Option<f64>) -> Result<Self> {
        if z.len() != u.len() {
            return Err(Error::Config("sample columns differ in length".into()));
        }
        if z.len() < 2 {
            return Err(Error::Config("tabulated potential needs at least two samples".into()));
        }
        for (i, (&zi, &ui)) in z.iter().zip(u).enumerate() {
            if !(zi > 0.0 && zi.is_finite()) {
                return Err(Error::Ingest { line: i + 1, msg: format!("z must be positive, got {zi}") });
            }
            if !(ui < 0.0 && ui.is_finite()) {
                return Err(Error::Ingest { line: i + 1, msg: format!("U must be negative, got {ui}") });
            }
            if i > 0 && zi <= z[i - 1] {
                return Err(Error::Ingest { line: i + 1, msg: "z must be strictly increasing".into() });
            }
        }
        let s: Vec<f64> = z.iter().map(|&x| libm::log(x)).collect();
        let w: Vec<f64> = u.iter().map(|&x| libm::log(-x)).collect();
        let m = slopes(&s, &w);
        let n = z.len();
        let ell3 = ell3.unwrap_or(-u[0] * z[0] * z[0] * z[0]);
        let ell4 = ell4.unwrap_or(libm::sqrt(-u[n - 1]) * z[n - 1] * z[n - 1]);
        Ok(Self { z: z.to_vec(), u: u.to_vec(), s, w, m, ell3, ell4 })
    }

    /// Parses the plain-text table format. Line numbers in errors are 1-based file lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut z = Vec::new();
        let mut u = Vec::new();
        let mut ell3 = None;
        let mut ell4 = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let t = raw.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(c) = t.strip_prefix('#') {
                if let Some((key, val)) = c.split_once('=') {
                    let slot = match key.trim() {
                        "ell3" => &mut ell3,
                        "ell4" => &mut ell4,
                        _ => continue,
                    };
                    let v: f64 = val.trim().parse().map_err(|_| Error::Ingest {
                        line,
                        msg: format!("cannot parse metadata value '{}'", val.trim()),
                    })?;
                    if !(v > 0.0 && v.is_finite()) {
                        return Err(Error::Ingest { line, msg: format!("{} must be positive", key.trim()) });
                    }
                    *slot = Some(v);
                }
                continue;
            }
            let mut cols = t.split_whitespace();
            let (Some(a), Some(b), None) = (cols.next(), cols.next(), cols.next()) else {
                return Err(Error::Ingest { line, msg: "expected two columns".into() });
            };
            let parse = |x: &str| {
                x.parse::<f64>()
                    .map_err(|_| Error::Ingest { line, msg: format!("cannot parse number '{x}'") })
            };
            let (zi, ui) = (parse(a)?, parse(b)?);
            if !(zi > 0.0 && zi.is_finite()) {
                return Err(Error::Ingest { line, msg: format!("z must be positive, got {zi}") });
            }
            if !(ui < 0.0 && ui.is_finite()) {
                return Err(Error::Ingest { line, msg: format!("U must be negative (attractive), got {ui}") });
            }
            if let Some(&prev) = z.last() {
                if zi <= prev {
                    return Err(Error::Ingest { line, msg: format!("z not strictly increasing ({zi} after {prev})") });
                }
            }
            z.push(zi);
            u.push(ui);
        }
        if z.is_empty() {
            return Err(Error::Config("potential table contains no samples".into()));
        }
        Self::from_samples(&z, &u, ell3, ell4)
    }

    /// Replaces the recorded length scales; `None` keeps the current value.
    pub fn with_length_scales(mut self, ell3: Option<f64>, ell4: Option<f64>) -> Result<Self> {
        for (what, v) in [("ell3", ell3), ("ell4", ell4)] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Error::Domain { what, value: v });
                }
            }
        }
        self.ell3 = ell3.unwrap_or(self.ell3);
        self.ell4 = ell4.unwrap_or(self.ell4);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    fn derivs(&self, z: f64) -> (f64, f64, f64) {
        let n = self.s.len();
        let s = libm::log(z);
        // w(s), w'(s), w''(s)
        let (w, w1, w2) = if s <= self.s[0] {
            (self.w[0] + LEFT_EXPONENT * (s - self.s[0]), LEFT_EXPONENT, 0.0)
        } else if s >= self.s[n - 1] {
            (self.w[n - 1] + RIGHT_EXPONENT * (s - self.s[n - 1]), RIGHT_EXPONENT, 0.0)
        } else {
            let i = match self.s.binary_search_by(|x| x.total_cmp(&s)) {
                Ok(i) => i.min(n - 2),
                Err(i) => i - 1,
            };
            let h = self.s[i + 1] - self.s[i];
            let t = (s - self.s[i]) / h;
            let (y0, y1) = (self.w[i], self.w[i + 1]);
            let (m0, m1) = (self.m[i] * h, self.m[i + 1] * h);
            let t2 = t * t;
            let t3 = t2 * t;
            let w = (2.0 * t3 - 3.0 * t2 + 1.0) * y0
                + (t3 - 2.0 * t2 + t) * m0
                + (-2.0 * t3 + 3.0 * t2) * y1
                + (t3 - t2) * m1;
            let dw = (6.0 * t2 - 6.0 * t) * y0
                + (3.0 * t2 - 4.0 * t + 1.0) * m0
                + (-6.0 * t2 + 6.0 * t) * y1
                + (3.0 * t2 - 2.0 * t) * m1;
            let ddw = (12.0 * t - 6.0) * y0 + (6.0 * t - 4.0) * m0 + (6.0 - 12.0 * t) * y1 + (6.0 * t - 2.0) * m1;
            (w, dw / h, ddw / (h * h))
        };
        // sampled values are returned verbatim at the nodes
        let u = match self.z.binary_search_by(|x| x.total_cmp(&z)) {
            Ok(i) => self.u[i],
            Err(_) => -libm::exp(w),
        };
        (u, u * w1 / z, u * (w1 * w1 + w2 - w1) / (z * z))
    }
}

/// Derivative at `xs[i]` of the Lagrange polynomial through the nodes `idx`.
fn lagrange_slope(xs: &[f64], ys: &[f64], idx: &[usize], i: usize) -> f64 {
    let x = xs[i];
    let mut d = 0.0;
    for &j in idx {
        // derivative of the j-th basis polynomial at x
        let mut lj = 0.0;
        if j == i {
            for &m in idx {
                if m != j {
                    lj += 1.0 / (xs[j] - xs[m]);
                }
            }
        } else {
            let mut p = 1.0 / (xs[j] - xs[i]);
            for &m in idx {
                if m != j && m != i {
                    p *= (x - xs[m]) / (xs[j] - xs[m]);
                }
            }
            lj = p;
        }
        d += ys[j] * lj;
    }
    d
}

fn slopes(s: &[f64], w: &[f64]) -> Vec<f64> {
    let n = s.len();
    let mut m = alloc::vec![0.0; n];
    let width = n.min(5);
    for i in 0..n {
        let start = i.saturating_sub(width / 2).min(n - width);
        let idx: Vec<usize> = (start..start + width).collect();
        m[i] = lagrange_slope(s, w, &idx, i);
    }
    // Fritsch-Carlson limiter against overshoot
    for k in 0..n - 1 {
        let delta = (w[k + 1] - w[k]) / (s[k + 1] - s[k]);
        if delta == 0.0 {
            m[k] = 0.0;
            m[k + 1] = 0.0;
            continue;
        }
        if m[k] * delta < 0.0 {
            m[k] = 0.0;
        }
        if m[k + 1] * delta < 0.0 {
            m[k + 1] = 0.0;
        }
        let a = m[k] / delta;
        let b = m[k + 1] / delta;
        let r = a * a + b * b;
        if r > 9.0 {
            let t = 3.0 / libm::sqrt(r);
            m[k] = t * a * delta;
            m[k + 1] = t * b * delta;
        }
    }
    m
}
