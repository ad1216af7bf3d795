//! Dense complex linear algebra and the doubled-up (`Δ`, `♭`) calculus.

mod doubled;
mod matrix;

pub use doubled::DoubledMatrix;
pub use matrix::{ComplexMatrix, DEFAULT_CONDITION_LIMIT};

pub use num_complex::Complex64;

/// Shorthand for a complex number.
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
