//! Linear SLH generators and their composition rules.
//!
//! A linear generator couples `n` field ports to `m` cavity modes through
//!
//! ```text
//! L_i = C⁻_iα a_α + C⁺_iα a*_α
//! H   = ω⁻_αβ a*_α a_β + ½ ω⁺_αβ a*_α a*_β + ½ ω⁺*_αβ a_α a_β
//! ```
//!
//! with a scalar (c-number) scattering matrix `S`. Modes form a shared
//! register: concatenation adds ports, never modes.

use num_complex::Complex64;

use crate::algebra::ComplexMatrix;
use crate::error::{Error, Result};

/// Tolerance for the unitary/Hermitian/symmetric generator invariants.
pub const GENERATOR_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct LinearSLH {
    s: ComplexMatrix,
    c_minus: ComplexMatrix,
    c_plus: ComplexMatrix,
    omega_minus: ComplexMatrix,
    omega_plus: ComplexMatrix,
}

impl LinearSLH {
    pub fn new(
        s: ComplexMatrix,
        c_minus: ComplexMatrix,
        c_plus: ComplexMatrix,
        omega_minus: ComplexMatrix,
        omega_plus: ComplexMatrix,
    ) -> Result<Self> {
        let n = s.rows();
        let m = omega_minus.rows();
        let bad = |what: &str, got: &ComplexMatrix, r: usize, c: usize| {
            Error::InvalidGenerator(format!(
                "{what} is {}x{}, expected {r}x{c}",
                got.rows(),
                got.cols()
            ))
        };
        if !s.is_square() {
            return Err(bad("S", &s, n, n));
        }
        if c_minus.shape() != (n, m) {
            return Err(bad("C-", &c_minus, n, m));
        }
        if c_plus.shape() != (n, m) {
            return Err(bad("C+", &c_plus, n, m));
        }
        if omega_minus.shape() != (m, m) {
            return Err(bad("Omega-", &omega_minus, m, m));
        }
        if omega_plus.shape() != (m, m) {
            return Err(bad("Omega+", &omega_plus, m, m));
        }
        if !s.is_unitary(GENERATOR_TOL) {
            return Err(Error::InvalidGenerator("S is not unitary".into()));
        }
        if !omega_minus.is_hermitian(GENERATOR_TOL) {
            return Err(Error::InvalidGenerator("Omega- is not Hermitian".into()));
        }
        if !omega_plus.is_symmetric(GENERATOR_TOL) {
            return Err(Error::InvalidGenerator("Omega+ is not symmetric".into()));
        }
        Ok(Self {
            s,
            c_minus,
            c_plus,
            omega_minus,
            omega_plus,
        })
    }

    /// The generator with no ports over `m` modes and zero Hamiltonian; the
    /// neutral element of [`concatenate`].
    pub fn empty(m: usize) -> Self {
        Self {
            s: ComplexMatrix::zeros(0, 0),
            c_minus: ComplexMatrix::zeros(0, m),
            c_plus: ComplexMatrix::zeros(0, m),
            omega_minus: ComplexMatrix::zeros(m, m),
            omega_plus: ComplexMatrix::zeros(m, m),
        }
    }

    /// A single port `(1, c₋·a + c₊·a*, 0)` with identity scattering.
    pub fn channel(c_minus_row: ComplexMatrix, c_plus_row: ComplexMatrix) -> Result<Self> {
        let m = c_minus_row.cols();
        Self::new(
            ComplexMatrix::identity(1),
            c_minus_row,
            c_plus_row,
            ComplexMatrix::zeros(m, m),
            ComplexMatrix::zeros(m, m),
        )
    }

    /// Number of field ports.
    pub fn ports(&self) -> usize {
        self.s.rows()
    }

    /// Number of internal modes.
    pub fn modes(&self) -> usize {
        self.omega_minus.rows()
    }

    pub fn scattering(&self) -> &ComplexMatrix {
        &self.s
    }

    pub fn c_minus(&self) -> &ComplexMatrix {
        &self.c_minus
    }

    pub fn c_plus(&self) -> &ComplexMatrix {
        &self.c_plus
    }

    pub fn omega_minus(&self) -> &ComplexMatrix {
        &self.omega_minus
    }

    pub fn omega_plus(&self) -> &ComplexMatrix {
        &self.omega_plus
    }

    /// True when the doubled-up state space (`Ã`, `C̃`, `S̃`) is real, so
    /// that the frequency response satisfies `𝒮(−ω) = 𝒮(ω)♯`.
    pub fn has_real_state_space(&self) -> bool {
        let real = |m: &ComplexMatrix| m.as_slice().iter().all(|z| z.im == 0.0);
        let imaginary = |m: &ComplexMatrix| m.as_slice().iter().all(|z| z.re == 0.0);
        real(&self.s)
            && real(&self.c_minus)
            && real(&self.c_plus)
            && imaginary(&self.omega_minus)
            && imaginary(&self.omega_plus)
    }
}

/// A static two-port `T = [[α, β], [μ, ν]]`, real orthogonal with `σ = det T = ±1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamSplitter {
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    pub nu: f64,
    pub sigma: f64,
}

impl BeamSplitter {
    pub fn new(alpha: f64, beta: f64, mu: f64, nu: f64) -> Result<Self> {
        if ![alpha, beta, mu, nu].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidSplitter("non-finite entry".into()));
        }
        // TᵀT = I
        let e11 = alpha * alpha + mu * mu - 1.0;
        let e12 = alpha * beta + mu * nu;
        let e22 = beta * beta + nu * nu - 1.0;
        if e11.abs().max(e12.abs()).max(e22.abs()) > GENERATOR_TOL {
            return Err(Error::InvalidSplitter(format!(
                "T = [[{alpha}, {beta}], [{mu}, {nu}]] is not orthogonal"
            )));
        }
        let sigma = alpha * nu - beta * mu;
        if (sigma.abs() - 1.0).abs() > GENERATOR_TOL {
            return Err(Error::InvalidSplitter(format!(
                "determinant {sigma} is not ±1"
            )));
        }
        Ok(Self {
            alpha,
            beta,
            mu,
            nu,
            sigma,
        })
    }

    pub fn matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[self.alpha, self.beta], &[self.mu, self.nu]])
            .expect("2x2 literal")
    }
}

/// `T(α) = [[α, β], [β, −α]]` with `β = √(1 − α²)`, for `0 < α < 1`.
pub fn standard_splitter(alpha: f64) -> Result<BeamSplitter> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "splitter reflectivity must lie in (0, 1), got {alpha}"
        )));
    }
    let beta = (1.0 - alpha * alpha).sqrt();
    Ok(BeamSplitter {
        alpha,
        beta,
        mu: beta,
        nu: -alpha,
        sigma: -1.0,
    })
}

/// `g1 ⊞ g2`: block-diagonal scattering, stacked couplings, summed Hamiltonians.
pub fn concatenate(g1: &LinearSLH, g2: &LinearSLH) -> Result<LinearSLH> {
    if g1.modes() != g2.modes() {
        return Err(Error::Dimension(format!(
            "cannot concatenate generators over {} and {} modes",
            g1.modes(),
            g2.modes()
        )));
    }
    Ok(LinearSLH {
        s: ComplexMatrix::block_diag(&g1.s, &g2.s),
        c_minus: ComplexMatrix::vstack(&g1.c_minus, &g2.c_minus)?,
        c_plus: ComplexMatrix::vstack(&g1.c_plus, &g2.c_plus)?,
        omega_minus: &g1.omega_minus + &g2.omega_minus,
        omega_plus: &g1.omega_plus + &g2.omega_plus,
    })
}

/// Appends a loss port `(1, c₋·a + c₊·a*, 0)`.
pub fn add_loss_channel(
    g: &LinearSLH,
    c_loss_minus: &ComplexMatrix,
    c_loss_plus: &ComplexMatrix,
) -> Result<LinearSLH> {
    let m = g.modes();
    for (name, row) in [("minus", c_loss_minus), ("plus", c_loss_plus)] {
        if row.shape() != (1, m) {
            return Err(Error::Dimension(format!(
                "loss row ({name}) is {}x{}, expected 1x{m}",
                row.rows(),
                row.cols()
            )));
        }
    }
    let channel = LinearSLH::channel(c_loss_minus.clone(), c_loss_plus.clone())?;
    concatenate(g, &channel)
}

/// Closes port `loop_port` (0-based) through the second arm of `t` in the
/// instantaneous-feedback limit.
///
/// With `λ = (1 − ν s⁰)⁻¹` the loop port becomes
/// `s₁ = α + β s⁰ λ μ`, its coupling row is scaled by `βλ`, and the
/// Hamiltonian gains `Im(λ)·L†L` in normal order (the constant from
/// reordering `a a*` is dropped).
pub fn feedback_reduce(g: &LinearSLH, t: &BeamSplitter, loop_port: usize) -> Result<LinearSLH> {
    let n = g.ports();
    if loop_port >= n {
        return Err(Error::Dimension(format!(
            "loop port {loop_port} out of range for a {n}-port generator"
        )));
    }
    for j in (0..n).filter(|&j| j != loop_port) {
        if g.s[(loop_port, j)].norm() > GENERATOR_TOL || g.s[(j, loop_port)].norm() > GENERATOR_TOL
        {
            return Err(Error::UnsupportedTopology(format!(
                "loop port {loop_port} scatters into port {j}"
            )));
        }
    }
    let s0 = g.s[(loop_port, loop_port)];
    let denom = Complex64::new(1.0, 0.0) - t.nu * s0;
    if denom.norm() <= GENERATOR_TOL {
        return Err(Error::AlgebraicLoop(denom.norm()));
    }
    let lambda = denom.inv();

    let mut out = g.clone();
    out.s[(loop_port, loop_port)] = t.alpha + t.beta * s0 * lambda * t.mu;

    let m = g.modes();
    let cm = g.c_minus.block(loop_port, 0, 1, m);
    let cp = g.c_plus.block(loop_port, 0, 1, m);
    let k = t.beta * lambda;
    for a in 0..m {
        out.c_minus[(loop_port, a)] = k * cm[(0, a)];
        out.c_plus[(loop_port, a)] = k * cp[(0, a)];
    }

    let im = Complex64::new(lambda.im, 0.0);
    if lambda.im != 0.0 {
        // L†L = a*(c₋†c₋ + (c₊†c₊)ᵀ)a + a*(c₋†c₊)a* + a(c₊†c₋)a + const
        let dm = &(&cm.adjoint() * &cm) + &(&cp.adjoint() * &cp).transpose();
        let x = &cm.adjoint() * &cp;
        let dp = &x + &x.transpose();
        out.omega_minus = &out.omega_minus + &dm.scale(im);
        out.omega_plus = &out.omega_plus + &dp.scale(im);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(xs: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[xs]).unwrap()
    }

    fn dpa_port(kappa: f64, epsilon: f64) -> LinearSLH {
        LinearSLH::new(
            ComplexMatrix::identity(1),
            row(&[kappa.sqrt()]),
            row(&[0.0]),
            row(&[0.0]),
            ComplexMatrix::scalar(Complex64::new(0.0, epsilon / 2.0)),
        )
        .unwrap()
    }

    #[test]
    fn standard_splitter_entries() {
        let t = standard_splitter(0.6).unwrap();
        assert!((t.beta - 0.8).abs() < 1e-15);
        assert_eq!(t.nu, -0.6);
        assert_eq!(t.mu, t.beta);
        assert_eq!(t.sigma, -1.0);
        assert!(BeamSplitter::new(t.alpha, t.beta, t.mu, t.nu).is_ok());

        let third = standard_splitter(1.0 / 3.0).unwrap();
        assert!((third.beta - 8f64.sqrt() / 3.0).abs() < 1e-15);

        let tiny = standard_splitter(1e-9).unwrap();
        assert!((tiny.beta - 1.0).abs() < 1e-15 && tiny.alpha < 1e-8);
    }

    #[test]
    fn standard_splitter_domain() {
        for a in [0.0, 1.0, -0.2, 1.5, f64::NAN] {
            assert!(matches!(standard_splitter(a), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn splitter_must_be_orthogonal() {
        assert!(BeamSplitter::new(0.6, 0.6, 0.6, 0.6).is_err());
        let swap = BeamSplitter::new(0.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(swap.sigma, -1.0);
    }

    #[test]
    fn concatenation_with_empty_is_neutral() {
        let g = dpa_port(1.0, 0.5);
        assert_eq!(concatenate(&g, &LinearSLH::empty(1)).unwrap(), g);
        assert_eq!(concatenate(&LinearSLH::empty(1), &g).unwrap(), g);
    }

    #[test]
    fn concatenation_of_two_channels() {
        let (kappa, gamma) = (1.3_f64, 0.2_f64);
        let a = LinearSLH::channel(row(&[kappa.sqrt()]), row(&[0.0])).unwrap();
        let b = LinearSLH::channel(row(&[gamma.sqrt()]), row(&[0.0])).unwrap();
        let g = concatenate(&a, &b).unwrap();
        assert_eq!(g.scattering(), &ComplexMatrix::identity(2));
        assert_eq!(
            g.c_minus(),
            &ComplexMatrix::from_real_rows(&[&[kappa.sqrt()], &[gamma.sqrt()]]).unwrap()
        );
    }

    #[test]
    fn hamiltonians_add_under_concatenation() {
        let g = dpa_port(1.0, 0.5);
        let h = concatenate(&g, &g).unwrap();
        assert_eq!(h.omega_plus()[(0, 0)], Complex64::new(0.0, 0.5));
    }

    #[test]
    fn mode_mismatch_is_rejected() {
        let g = dpa_port(1.0, 0.5);
        assert!(matches!(
            concatenate(&g, &LinearSLH::empty(2)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn feedback_gives_effective_damping() {
        let kappa: f64 = 2.0;
        for alpha in [0.1, 1.0 / 3.0, 0.9] {
            let t = standard_splitter(alpha).unwrap();
            let r = feedback_reduce(&dpa_port(kappa, 0.7), &t, 0).unwrap();
            let expected = (kappa * (1.0 - alpha) / (1.0 + alpha)).sqrt();
            assert!((r.c_minus()[(0, 0)] - expected).norm() < 1e-12);
            assert!((r.scattering()[(0, 0)] - 1.0).norm() < 1e-15);
            assert_eq!(r.omega_plus(), dpa_port(kappa, 0.7).omega_plus());
            assert_eq!(r.omega_minus()[(0, 0)], Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn loss_channel_bookkeeping() {
        let g = dpa_port(1.0, 0.5);
        let lossy = add_loss_channel(&g, &row(&[0.5]), &row(&[0.0])).unwrap();
        assert_eq!(lossy.ports(), 2);
        let inert = add_loss_channel(&g, &row(&[0.0]), &row(&[0.0])).unwrap();
        assert_eq!(inert.c_minus()[(1, 0)], Complex64::new(0.0, 0.0));
        let twice = add_loss_channel(&lossy, &row(&[0.1]), &row(&[0.0])).unwrap();
        assert_eq!(twice.ports(), 3);
        assert!(add_loss_channel(&g, &row(&[0.1, 0.2]), &row(&[0.0, 0.0])).is_err());
    }

    #[test]
    fn coupled_loop_port_is_unsupported() {
        let s = ComplexMatrix::from_real_rows(&[&[0.6, 0.8], &[0.8, -0.6]]).unwrap();
        let g = LinearSLH::new(
            s,
            ComplexMatrix::zeros(2, 1),
            ComplexMatrix::zeros(2, 1),
            ComplexMatrix::zeros(1, 1),
            ComplexMatrix::zeros(1, 1),
        )
        .unwrap();
        let t = standard_splitter(0.5).unwrap();
        assert!(matches!(
            feedback_reduce(&g, &t, 0),
            Err(Error::UnsupportedTopology(_))
        ));
    }

    #[test]
    fn algebraic_loop_detected() {
        // ν s⁰ = 1: splitter (0, 1; 1, 0) has ν = 0, so use a splitter with ν = -1 and s⁰ = -1.
        let t = BeamSplitter::new(1.0, 0.0, 0.0, -1.0).unwrap();
        let g = LinearSLH::new(
            ComplexMatrix::scalar(Complex64::new(-1.0, 0.0)),
            row(&[1.0]),
            row(&[0.0]),
            row(&[0.0]),
            row(&[0.0]),
        )
        .unwrap();
        assert!(matches!(
            feedback_reduce(&g, &t, 0),
            Err(Error::AlgebraicLoop(_))
        ));
    }

    #[test]
    fn invariants_checked_on_construction() {
        let bad_s = LinearSLH::new(
            ComplexMatrix::scalar(2.0.into()),
            row(&[1.0]),
            row(&[0.0]),
            row(&[0.0]),
            row(&[0.0]),
        );
        assert!(matches!(bad_s, Err(Error::InvalidGenerator(_))));
        let bad_om = LinearSLH::new(
            ComplexMatrix::identity(1),
            row(&[1.0]),
            row(&[0.0]),
            ComplexMatrix::scalar(Complex64::new(0.0, 1.0)),
            row(&[0.0]),
        );
        assert!(matches!(bad_om, Err(Error::InvalidGenerator(_))));
    }
}
