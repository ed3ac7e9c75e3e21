//! Quantum reflection of slow atoms on Casimir-Polder type surface potentials.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the numerics:
//!
//! * [`potentials`]: reduced potential models `U(z) = 2mV(z)/ħ²` and their length scales.
//! * [`solver`]: reflection amplitudes from the stationary Schrödinger equation with full
//!   absorption at the surface.
//! * [`liouville`]: WKB phase, Liouville coordinate map, badlands function and the
//!   transformed-coordinate scattering problem.
//! * [`mathieu`]: exact amplitudes of the homogeneous `1/z⁴` potential.
//! * [`smatrix`]: one-channel S-matrix algebra (Π involution, ⋆ composition).
//! * [`ere`]: effective-range expansions, fits and theory comparison.
//!
//! All quantities use reduced units `ħ²/2m = 1`, lengths in Bohr radii and wavevectors in
//! inverse Bohr. File IO and the command line live in the companion `qrefl` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod ere;
pub mod liouville;
pub mod mathieu;
pub mod potentials;
pub mod smatrix;
pub mod solver;

pub(crate) mod num;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use ere::{
    a_from_r, beta_from_rho, combine_equa, compare_theories, fit_modified_ert, fit_rho,
    improved_ere_eval, r_from_a, BetaExpansion, ComparisonReport, EreAnalysis, EreSample, FitWindow,
    ModifiedErtParams, Parity, RhoExpansion,
};
pub use liouville::{
    badlands_q, solve_transformed_reflection, transformed_profile, v3_closed_form,
    v4_closed_form, wkb_phase, zstar, BadlandsProfile, LiouvilleMap,
};
pub use mathieu::{a4_expansion, bessel_j, char_exponent, v4_amplitudes, AlphaCoefficients, MathieuSolution};
pub use potentials::{LengthScales, PotentialModel, TabulatedPotential};
pub use smatrix::{compose_r, extract_rho, pi_involution, star, star_inverse, Mat2, SMatrix2, SymmetryReport};
pub use solver::{reflectivity_sweep, solve_reflection, PhaseConvention, ScatteringAmplitudes, SolverOptions};

/// Crate version, embedded in every output header by the CLI.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
