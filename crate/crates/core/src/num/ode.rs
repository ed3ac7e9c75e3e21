//! Explicit Dormand-Prince 8(5,3) integrator for small complex systems.

use num_complex::Complex64;

use super::dop853_tables::{A, B, C, E3, E5};
use crate::{Error, Result};

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 10.0;
const ERROR_EXPONENT: f64 = -1.0 / 8.0;

fn rms<const N: usize>(v: &[f64; N]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum::<f64>() / N as f64)
}

/// Integrator state; keeps the last accepted step so that an integration can be
/// continued past its previous end point without restarting the step control.
#[derive(Debug, Clone)]
pub(crate) struct Dop853<const N: usize> {
    pub t: f64,
    pub y: [Complex64; N],
    h: f64,
    rtol: f64,
    atol: f64,
    pub max_steps: usize,
    pub steps: usize,
}

impl<const N: usize> Dop853<N> {
    pub fn new(t0: f64, y0: [Complex64; N], rtol: f64, atol: f64, max_steps: usize) -> Self {
        Self { t: t0, y: y0, h: 0.0, rtol, atol, max_steps, steps: 0 }
    }

    fn initial_step<F>(&self, f: &mut F, f0: &[Complex64; N], t1: f64) -> f64
    where
        F: FnMut(f64, &[Complex64; N]) -> [Complex64; N],
    {
        let span = t1 - self.t;
        let dir = span.signum();
        let scale: [f64; N] = core::array::from_fn(|i| self.atol + self.y[i].norm() * self.rtol);
        let d0 = rms::<N>(&core::array::from_fn(|i| self.y[i].norm() / scale[i]));
        let d1 = rms::<N>(&core::array::from_fn(|i| f0[i].norm() / scale[i]));
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        let h0 = h0.min(span.abs());
        let y1: [Complex64; N] = core::array::from_fn(|i| self.y[i] + f0[i] * (h0 * dir));
        let f1 = f(self.t + h0 * dir, &y1);
        let d2 = rms::<N>(&core::array::from_fn(|i| (f1[i] - f0[i]).norm() / scale[i])) / h0;
        let h1 = if d1 <= 1e-15 && d2 <= 1e-15 {
            (1e-6f64).max(h0 * 1e-3)
        } else {
            libm::pow(0.01 / d1.max(d2), 1.0 / 8.0)
        };
        (100.0 * h0).min(h1).min(span.abs())
    }

    /// Advances the solution to `t1`, landing on it exactly.
    pub fn advance<F>(&mut self, mut f: F, t1: f64) -> Result<()>
    where
        F: FnMut(f64, &[Complex64; N]) -> [Complex64; N],
    {
        if t1 == self.t {
            return Ok(());
        }
        let dir = (t1 - self.t).signum();
        let mut fy = f(self.t, &self.y);
        if self.h == 0.0 || self.h.signum() != dir {
            self.h = dir * self.initial_step(&mut f, &fy, t1);
        }
        let mut k = [[Complex64::new(0.0, 0.0); N]; 13];
        let mut rejected = false;
        while (t1 - self.t) * dir > 0.0 {
            if self.steps >= self.max_steps {
                return Err(Error::Integration { at: self.t, msg: "step budget exhausted" });
            }
            let floor = 10.0 * f64::EPSILON * self.t.abs().max(f64::MIN_POSITIVE);
            if self.h.abs() < floor {
                return Err(Error::Integration { at: self.t, msg: "step size underflow" });
            }
            let mut h = self.h;
            let last = (self.t + h - t1) * dir >= 0.0;
            if last {
                h = t1 - self.t;
            }
            k[0] = fy;
            for s in 1..12 {
                let ys: [Complex64; N] = core::array::from_fn(|i| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (j, kj) in k.iter().enumerate().take(s) {
                        if A[s][j] != 0.0 {
                            acc += kj[i] * A[s][j];
                        }
                    }
                    self.y[i] + acc * h
                });
                k[s] = f(self.t + C[s] * h, &ys);
            }
            let y_new: [Complex64; N] = core::array::from_fn(|i| {
                let mut acc = Complex64::new(0.0, 0.0);
                for s in 0..12 {
                    acc += k[s][i] * B[s];
                }
                self.y[i] + acc * h
            });
            let t_new = if last { t1 } else { self.t + h };
            let f_new = f(t_new, &y_new);
            k[12] = f_new;

            let mut e5 = 0.0;
            let mut e3 = 0.0;
            for i in 0..N {
                let scale = self.atol + self.y[i].norm().max(y_new[i].norm()) * self.rtol;
                let mut a5 = Complex64::new(0.0, 0.0);
                let mut a3 = Complex64::new(0.0, 0.0);
                for s in 0..13 {
                    a5 += k[s][i] * E5[s];
                    a3 += k[s][i] * E3[s];
                }
                e5 += (a5 / scale).norm_sqr();
                e3 += (a3 / scale).norm_sqr();
            }
            let err = if e5 == 0.0 && e3 == 0.0 {
                0.0
            } else {
                h.abs() * e5 / libm::sqrt((e5 + 0.01 * e3) * N as f64)
            };
            if !err.is_finite() {
                self.h *= MIN_FACTOR;
                rejected = true;
                continue;
            }
            self.steps += 1;
            if err < 1.0 {
                let mut factor = if err == 0.0 {
                    MAX_FACTOR
                } else {
                    MAX_FACTOR.min(SAFETY * libm::pow(err, ERROR_EXPONENT))
                };
                if rejected {
                    factor = factor.min(1.0);
                }
                // keep the controller's step when the last one was only truncated to hit t1
                if !last || h == self.h {
                    self.h = h * factor;
                }
                self.t = t_new;
                self.y = y_new;
                fy = f_new;
                rejected = false;
            } else {
                self.h = h * MIN_FACTOR.max(SAFETY * libm::pow(err, ERROR_EXPONENT));
                rejected = true;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_phase() {
        // y'' = -y with y = e^{it}
        let i = Complex64::new(0.0, 1.0);
        let mut ode = Dop853::new(0.0, [Complex64::new(1.0, 0.0), i], 1e-12, 1e-300, 100_000);
        ode.advance(|_, y| [y[1], -y[0]], 50.0).unwrap();
        let exact = Complex64::from_polar(1.0, 50.0);
        assert!((ode.y[0] - exact).norm() < 1e-9);
        // continuation keeps working from the reached state
        ode.advance(|_, y| [y[1], -y[0]], 100.0).unwrap();
        assert!((ode.y[0] - Complex64::from_polar(1.0, 100.0)).norm() < 2e-9);
    }

    #[test]
    fn exponential_decay() {
        let mut ode = Dop853::new(0.0, [Complex64::new(1.0, 0.0)], 1e-11, 1e-300, 10_000);
        ode.advance(|_, y| [-y[0]], 3.0).unwrap();
        assert!((ode.y[0].re - (-3.0f64).exp()).abs() < 1e-12);
    }
}
