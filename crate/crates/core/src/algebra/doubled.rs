//! Doubled-up matrices `Δ(A, B) = [[A, B], [B♯, A♯]]`.
//!
//! Only the top blocks are stored; the bottom row of blocks is always the
//! entry-wise conjugate of the top row, so a `DoubledMatrix` cannot lose its
//! structure under any of the operations below.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct DoubledMatrix {
    a: ComplexMatrix,
    b: ComplexMatrix,
}

impl DoubledMatrix {
    pub fn new(a: ComplexMatrix, b: ComplexMatrix) -> Result<Self> {
        if a.shape() != b.shape() {
            return Err(Error::Dimension(format!(
                "doubled halves must agree: {}x{} vs {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        Ok(Self { a, b })
    }

    /// `Δ(A, 0)`.
    pub fn passive(a: ComplexMatrix) -> Self {
        let b = ComplexMatrix::zeros(a.rows(), a.cols());
        Self { a, b }
    }

    pub fn identity(n: usize) -> Self {
        Self::passive(ComplexMatrix::identity(n))
    }

    pub fn zeros(n: usize, m: usize) -> Self {
        Self::passive(ComplexMatrix::zeros(n, m))
    }

    pub fn half_rows(&self) -> usize {
        self.a.rows()
    }

    pub fn half_cols(&self) -> usize {
        self.a.cols()
    }

    pub fn is_square(&self) -> bool {
        self.a.is_square()
    }

    /// The `A` (annihilation-to-annihilation) half.
    pub fn minus(&self) -> &ComplexMatrix {
        &self.a
    }

    /// The `B` (creation-to-annihilation) half.
    pub fn plus(&self) -> &ComplexMatrix {
        &self.b
    }

    pub fn into_halves(self) -> (ComplexMatrix, ComplexMatrix) {
        (self.a, self.b)
    }

    /// The full `2N×2M` matrix `[[A, B], [B♯, A♯]]`.
    pub fn materialize(&self) -> ComplexMatrix {
        ComplexMatrix::from_blocks(&self.a, &self.b, &self.b.conj(), &self.a.conj())
            .expect("halves share a shape")
    }

    /// Reads the top blocks of a full `2N×2M` matrix. The bottom blocks are
    /// not inspected; see [`DoubledMatrix::structure_defect`].
    pub fn from_materialized(full: &ComplexMatrix) -> Result<Self> {
        let (r, c) = full.shape();
        if r % 2 != 0 || c % 2 != 0 {
            return Err(Error::Dimension(format!(
                "a {r}x{c} matrix has no doubled-up block structure"
            )));
        }
        let (n, m) = (r / 2, c / 2);
        Ok(Self {
            a: full.block(0, 0, n, m),
            b: full.block(0, m, n, m),
        })
    }

    /// Largest deviation of the bottom blocks of `full` from `[B♯, A♯]`.
    pub fn structure_defect(full: &ComplexMatrix) -> Result<f64> {
        let d = Self::from_materialized(full)?;
        Ok(full.max_abs_diff(&d.materialize()))
    }

    /// `Δ(A, B)♭ = Δ(A†, −Bᵀ)`.
    pub fn flat_adjoint(&self) -> Self {
        Self {
            a: self.a.adjoint(),
            b: -&self.b.transpose(),
        }
    }

    /// `Δ(A,B)·Δ(C,D) = Δ(AC + BD♯, AD + BC♯)`.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.half_cols() != rhs.half_rows() {
            return Err(Error::Dimension(format!(
                "cannot multiply doubled {}x{} by doubled {}x{}",
                self.half_rows(),
                self.half_cols(),
                rhs.half_rows(),
                rhs.half_cols()
            )));
        }
        let a = &(&self.a * &rhs.a) + &(&self.b * &rhs.b.conj());
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.a.conj());
        Ok(Self { a, b })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Self {
            a: self.a.checked_sub(&rhs.a)?,
            b: self.b.checked_sub(&rhs.b)?,
        })
    }

    /// Multiplies both halves by a real scalar (the doubled-up structure is
    /// only preserved by real scalars).
    pub fn scale_real(&self, x: f64) -> Self {
        let z = Complex64::new(x, 0.0);
        Self {
            a: self.a.scale(z),
            b: self.b.scale(z),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::from_materialized(&self.materialize().inverse()?)
    }

    /// Largest deviation from `Δ♭Δ = I` and `ΔΔ♭ = I`, in the infinity norm.
    pub fn bogoliubov_defect(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "Bogoliubov test needs a square doubled matrix, got {}x{}",
                self.half_rows(),
                self.half_cols()
            )));
        }
        let flat = self.flat_adjoint();
        let id = ComplexMatrix::identity(2 * self.half_rows());
        let left = flat.checked_mul(self)?.materialize();
        let right = self.checked_mul(&flat)?.materialize();
        Ok(left
            .checked_sub(&id)?
            .infinity_norm()
            .max(right.checked_sub(&id)?.infinity_norm()))
    }

    /// [`Self::bogoliubov_defect`] for a full `2n×2n` matrix that need not be
    /// Δ-structured, with `G♭ = J G† J` and `J = diag(I, −I)`.
    pub fn full_bogoliubov_defect(full: &ComplexMatrix) -> Result<f64> {
        let (r, c) = full.shape();
        if r != c || r % 2 != 0 {
            return Err(Error::Dimension(format!(
                "Bogoliubov test needs an even square matrix, got {r}x{c}"
            )));
        }
        let n = r / 2;
        let j = ComplexMatrix::from_fn(r, r, |i, k| match (i == k, i < n) {
            (true, true) => Complex64::new(1.0, 0.0),
            (true, false) => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 0.0),
        });
        let flat = &(&j * &full.adjoint()) * &j;
        let id = ComplexMatrix::identity(r);
        Ok((&(&flat * full) - &id)
            .infinity_norm()
            .max((&(full * &flat) - &id).infinity_norm()))
    }

    /// True iff `‖Δ♭Δ − I‖∞ ≤ tol` and `‖ΔΔ♭ − I‖∞ ≤ tol`.
    pub fn is_bogoliubov(&self, tol: f64) -> Result<bool> {
        Ok(self.bogoliubov_defect()? <= tol)
    }

    /// Largest entry modulus of the difference of the halves.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        self.a.max_abs_diff(&rhs.a).max(self.b.max_abs_diff(&rhs.b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_defect_agrees_on_structured_matrices() {
        let d = DoubledMatrix::new(
            ComplexMatrix::scalar(Complex64::new(2.0_f64.sqrt(), 0.0)),
            ComplexMatrix::scalar(Complex64::new(0.0, 1.0)),
        )
        .unwrap();
        assert!(d.bogoliubov_defect().unwrap() < 1e-15);
        assert!(DoubledMatrix::full_bogoliubov_defect(&d.materialize()).unwrap() < 1e-15);
        assert!(DoubledMatrix::full_bogoliubov_defect(&ComplexMatrix::identity(3)).is_err());
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn scalar(z: Complex64) -> ComplexMatrix {
        ComplexMatrix::scalar(z)
    }

    #[test]
    fn materialize_identity_and_swap() {
        let id = DoubledMatrix::new(scalar(c(1.0, 0.0)), scalar(c(0.0, 0.0))).unwrap();
        assert_eq!(id.materialize(), ComplexMatrix::identity(2));
        let swap = DoubledMatrix::new(scalar(c(0.0, 0.0)), scalar(c(1.0, 0.0))).unwrap();
        assert_eq!(
            swap.materialize(),
            ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
        );
    }

    #[test]
    fn materialize_conjugates_bottom_blocks() {
        let d = DoubledMatrix::new(scalar(c(0.0, 1.0)), scalar(c(2.0, 0.0))).unwrap();
        let expected = ComplexMatrix::from_rows(&[
            vec![c(0.0, 1.0), c(2.0, 0.0)],
            vec![c(2.0, 0.0), c(0.0, -1.0)],
        ])
        .unwrap();
        assert_eq!(d.materialize(), expected);
        assert_eq!(DoubledMatrix::from_materialized(&expected).unwrap(), d);
    }

    #[test]
    fn flat_adjoint_examples() {
        let id = DoubledMatrix::identity(3);
        assert_eq!(id.flat_adjoint(), id);
        let d = DoubledMatrix::new(scalar(c(0.0, 0.0)), scalar(c(1.0, 0.0))).unwrap();
        let expected = DoubledMatrix::new(scalar(c(0.0, 0.0)), scalar(c(-1.0, 0.0))).unwrap();
        assert_eq!(d.flat_adjoint(), expected);
    }

    #[test]
    fn bogoliubov_examples() {
        assert!(DoubledMatrix::identity(2).is_bogoliubov(1e-12).unwrap());
        let r: f64 = 1.0;
        let sq = DoubledMatrix::new(
            ComplexMatrix::identity(2).scale(r.cosh().into()),
            ComplexMatrix::identity(2).scale(r.sinh().into()),
        )
        .unwrap();
        assert!(sq.is_bogoliubov(1e-12).unwrap());
        let amp = DoubledMatrix::passive(ComplexMatrix::identity(2).scale(2.0.into()));
        assert!(!amp.is_bogoliubov(1e-12).unwrap());
    }

    #[test]
    fn non_square_bogoliubov_is_a_dimension_error() {
        let d = DoubledMatrix::zeros(2, 1);
        assert!(matches!(d.is_bogoliubov(1e-12), Err(Error::Dimension(_))));
    }

    #[test]
    fn mismatched_halves_rejected() {
        assert!(
            DoubledMatrix::new(ComplexMatrix::zeros(1, 2), ComplexMatrix::zeros(2, 1)).is_err()
        );
    }
}
