use alloc::string::String;
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{what} is outside its domain (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("line {line}: {msg}")]
    Ingest { line: usize, msg: String },

    #[error("integration failed near z = {at}: {msg}")]
    Integration { at: f64, msg: &'static str },

    #[error("boundary placement did not converge (last two estimates r = {prev}, r = {last})")]
    Convergence { prev: Complex64, last: Complex64 },

    #[error("quadrature did not converge on [{a}, {b}]")]
    Quadrature { a: f64, b: f64 },

    #[error("root not bracketed in [{lo}, {hi}] while solving for {what}")]
    Bracket { what: &'static str, lo: f64, hi: f64 },

    #[error("characteristic exponent is not real at k = {kbold} (outside the working range)")]
    OutOfRange { kbold: f64 },

    #[error("singular pivot in {stage}")]
    Singular { stage: &'static str },

    #[error("pole in {what}")]
    Pole { what: &'static str },

    #[error("least-squares design matrix is rank deficient ({rows} rows, {cols} columns)")]
    RankDeficient { rows: usize, cols: usize },

    #[error("{what} series did not converge")]
    Series { what: &'static str },
}

pub type Result<T> = core::result::Result<T, Error>;
