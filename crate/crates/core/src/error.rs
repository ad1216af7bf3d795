use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("singular {rows}x{cols} matrix (condition estimate {condition:.3e})")]
    Singular {
        rows: usize,
        cols: usize,
        condition: f64,
    },

    #[error("eigenvalue iteration did not converge for a {0}x{0} matrix")]
    EigenNoConvergence(usize),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("invalid beam splitter: {0}")]
    InvalidSplitter(String),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("algebraic loop: 1 - nu*s0 vanishes ({0:.3e})")]
    AlgebraicLoop(f64),

    #[error("unsupported topology: {0}")]
    UnsupportedTopology(String),

    #[error("s = {s} is a pole of the transfer function (nearest eigenvalue {nearest})")]
    Pole { s: Complex64, nearest: Complex64 },

    #[error("system is not Hurwitz stable (spectral abscissa {abscissa:.6e})")]
    Unstable { abscissa: f64 },

    #[error("divergence: {0}")]
    Divergent(String),

    #[error("no critical reflectivity: {0}")]
    NoCriticalPoint(String),

    #[error("open loop is unstable: {0}")]
    OpenLoopUnstable(String),

    #[error("out of scope: {0}")]
    Scope(String),

    #[error("bisection failed: {0}")]
    Bisection(String),
}

pub type Result<T> = std::result::Result<T, Error>;
