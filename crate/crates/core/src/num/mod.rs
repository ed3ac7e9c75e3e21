//! Internal numerical kernels shared by the physics modules.

mod dop853_tables;
pub(crate) mod linalg;
pub(crate) mod ode;
pub(crate) mod quad;
pub(crate) mod roots;


pub(crate) const PI: f64 = core::f64::consts::PI;

/// Euler-Mascheroni constant.
pub(crate) const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub(crate) fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// `1/Γ(x)`, exact zero at the poles.
pub(crate) fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == libm::floor(x) {
        0.0
    } else {
        1.0 / libm::tgamma(x)
    }
}
