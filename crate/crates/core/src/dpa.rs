//! Degenerate parametric amplifier: generators and closed-form results.
//!
//! One cavity mode `a` with pump Hamiltonian `H = (iε/4)(a*² − a²)` (so
//! `ω⁺ = iε/2`), coupled to the signal port with rate `κ` and to a loss port
//! with rate `γ`. Placing the signal port in a beam-splitter loop of
//! reflectivity `α` replaces `κ` by `κ(α) = (1 − α)/(1 + α)·κ`.
//!
//! The closed forms here serve as an analytic oracle for the generic numeric
//! pipeline in [`crate::slh`], [`crate::transfer`] and [`crate::spectra`].

use num_complex::Complex64;

use crate::algebra::{c64, ComplexMatrix};
use crate::error::{Error, Result};
use crate::slh::{feedback_reduce, standard_splitter, LinearSLH};

/// Distance from threshold below which results are flagged as near-critical.
pub const NEAR_CRITICAL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DpaParams {
    pub kappa: f64,
    pub gamma: f64,
    pub epsilon: f64,
    /// Loop reflectivity; `None` is the open loop.
    pub alpha: Option<f64>,
}

impl DpaParams {
    pub fn new(kappa: f64, gamma: f64, epsilon: f64, alpha: Option<f64>) -> Result<Self> {
        for (name, v) in [("kappa", kappa), ("gamma", gamma), ("epsilon", epsilon)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!(
                    "{name} must be a finite rate >= 0, got {v}"
                )));
            }
        }
        if let Some(a) = alpha {
            if !(0.0..1.0).contains(&a) {
                return Err(Error::Domain(format!("alpha must lie in [0, 1), got {a}")));
            }
        }
        Ok(Self {
            kappa,
            gamma,
            epsilon,
            alpha,
        })
    }

    pub fn open_loop(kappa: f64, gamma: f64, epsilon: f64) -> Result<Self> {
        Self::new(kappa, gamma, epsilon, None)
    }

    pub fn with_alpha(self, alpha: Option<f64>) -> Result<Self> {
        Self::new(self.kappa, self.gamma, self.epsilon, alpha)
    }

    /// `κ(α)`, or `κ` in open loop.
    pub fn effective_kappa(&self) -> f64 {
        match self.alpha {
            Some(a) => effective_kappa(self.kappa, a).expect("alpha validated on construction"),
            None => self.kappa,
        }
    }

    /// Total damping of the mode, `κ(α) + γ`.
    pub fn total_damping(&self) -> f64 {
        self.effective_kappa() + self.gamma
    }

    /// `κ(α) + γ > ε`.
    pub fn is_stable(&self) -> bool {
        self.total_damping() > self.epsilon
    }

    pub fn is_near_critical(&self) -> bool {
        (self.total_damping() - self.epsilon).abs() < NEAR_CRITICAL
    }
}

/// `κ(α) = (1 − α)/(1 + α)·κ`. Negative reflectivities (`α ∈ (−1, 0)`) are
/// accepted and give `κ(α) > κ`, i.e. suppressed squeezing.
pub fn effective_kappa(kappa: f64, alpha: f64) -> Result<f64> {
    if !(alpha > -1.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "alpha must lie in (-1, 1), got {alpha}"
        )));
    }
    Ok((1.0 - alpha) / (1.0 + alpha) * kappa)
}

fn two_port(kappa_eff: f64, gamma: f64, epsilon: f64) -> LinearSLH {
    LinearSLH::new(
        ComplexMatrix::identity(2),
        ComplexMatrix::from_real_rows(&[&[kappa_eff.sqrt()], &[gamma.sqrt()]]).expect("2x1"),
        ComplexMatrix::zeros(2, 1),
        ComplexMatrix::zeros(1, 1),
        ComplexMatrix::scalar(c64(0.0, epsilon / 2.0)),
    )
    .expect("DPA generator satisfies the generator invariants")
}

/// Two-port generator `S = I₂`, `C₋ = [√κ(α), √γ]ᵀ`, `C₊ = 0`, `Ω₋ = 0`,
/// `Ω₊ = iε/2`, with the loop already folded into `κ(α)`.
pub fn build_generator(p: &DpaParams) -> LinearSLH {
    two_port(p.effective_kappa(), p.gamma, p.epsilon)
}

/// The two-port generator before any feedback connection (uses `κ`).
pub fn build_open_loop_generator(p: &DpaParams) -> LinearSLH {
    two_port(p.kappa, p.gamma, p.epsilon)
}

/// Lossless single-port generator (`n = 1`) with coupling `√κ(α)`.
pub fn build_single_port_generator(p: &DpaParams) -> Result<LinearSLH> {
    if p.gamma != 0.0 {
        return Err(Error::Scope(format!(
            "a single-port DPA is lossless, got gamma = {}",
            p.gamma
        )));
    }
    LinearSLH::new(
        ComplexMatrix::identity(1),
        ComplexMatrix::scalar(p.effective_kappa().sqrt().into()),
        ComplexMatrix::zeros(1, 1),
        ComplexMatrix::zeros(1, 1),
        ComplexMatrix::scalar(c64(0.0, p.epsilon / 2.0)),
    )
}

/// Builds the closed loop from the open-loop generator and the standard
/// splitter via [`feedback_reduce`] on the signal port. Open loop (or
/// `α = 0`) returns the open-loop generator.
pub fn build_feedback_network(p: &DpaParams, single_port: bool) -> Result<LinearSLH> {
    let open = DpaParams { alpha: None, ..*p };
    let g = if single_port {
        build_single_port_generator(&open)?
    } else {
        build_open_loop_generator(&open)
    };
    match p.alpha {
        Some(a) if a > 0.0 => feedback_reduce(&g, &standard_splitter(a)?, 0),
        _ => Ok(g),
    }
}

/// `P(s) = (s + (κ(α)+γ+ε)/2)(s + (κ(α)+γ−ε)/2)`.
pub fn characteristic(p: &DpaParams, s: Complex64) -> Complex64 {
    let h = p.total_damping() / 2.0;
    let e = p.epsilon / 2.0;
    (s + h + e) * (s + h - e)
}

/// Printed closed forms for `Ξ∓(s)` of the lossy DPA (2×2 each).
pub fn closed_form_transfer(p: &DpaParams, s: Complex64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let ps = characteristic(p, s);
    if ps.norm() == 0.0 {
        return Err(Error::Pole { s, nearest: s });
    }
    let k = p.effective_kappa();
    let (g, e) = (p.gamma, p.epsilon);
    let kg = (k * g).sqrt();
    let h = (k + g) / 2.0;
    let m11 = s * s + g * s + (g * g - k * k - e * e) / 4.0;
    let m22 = s * s + k * s + (k * k - g * g - e * e) / 4.0;
    let off = -kg * (s + h);
    let xi_minus = ComplexMatrix::from_rows(&[vec![m11 / ps, off / ps], vec![off / ps, m22 / ps]])?;
    let pre = -e / (2.0 * ps);
    let xi_plus = ComplexMatrix::from_rows(&[vec![pre * k, pre * kg], vec![pre * kg, pre * g]])?;
    Ok((xi_minus, xi_plus))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormSpectra {
    pub n11: f64,
    pub m11: f64,
    /// `D(ω, α) = |P(−iω)|²`
    pub d: f64,
    /// Set when `|κ(α) + γ − ε| < NEAR_CRITICAL`.
    pub near_critical: bool,
}

pub fn denominator(p: &DpaParams, omega: f64) -> f64 {
    let w2 = omega * omega;
    let kg = p.total_damping();
    let e = p.epsilon;
    (w2 + ((kg + e) / 2.0).powi(2)) * (w2 + ((kg - e) / 2.0).powi(2))
}

/// `𝒩₁₁`, `ℳ₁₁` and `D` in closed form.
pub fn closed_form_spectra(p: &DpaParams, omega: f64) -> Result<ClosedFormSpectra> {
    let d = denominator(p, omega);
    if d == 0.0 {
        return Err(Error::Divergent(format!(
            "D(omega, alpha) vanishes at omega = {omega} (threshold)"
        )));
    }
    let k = p.effective_kappa();
    let (g, e) = (p.gamma, p.epsilon);
    let n11 = e * e * k * (k + g) / (4.0 * d);
    let m11 = e * k * (omega * omega + ((k + g) / 2.0).powi(2) + (e / 2.0).powi(2)) / (2.0 * d);
    Ok(ClosedFormSpectra {
        n11,
        m11,
        d,
        near_critical: p.is_near_critical(),
    })
}

fn require_lossless(p: &DpaParams) -> Result<()> {
    if p.gamma != 0.0 {
        return Err(Error::Scope(format!(
            "closed form requires gamma = 0, got {}",
            p.gamma
        )));
    }
    Ok(())
}

/// `r(ω, α) = ½ ln[(ω² + ((κ(α)+ε)/2)²) / (ω² + ((κ(α)−ε)/2)²)]`; infinite at
/// threshold and `ω = 0`.
pub fn lossless_squeezing(p: &DpaParams, omega: f64) -> Result<f64> {
    require_lossless(p)?;
    let k = p.effective_kappa();
    let e = p.epsilon;
    let w2 = omega * omega;
    Ok(0.5 * ((w2 + ((k + e) / 2.0).powi(2)) / (w2 + ((k - e) / 2.0).powi(2))).ln())
}

/// Printed lossless `𝒫₁₁(ω, θ)`.
pub fn lossless_psd(p: &DpaParams, omega: f64, theta: f64) -> Result<f64> {
    require_lossless(p)?;
    let d = denominator(p, omega);
    if d == 0.0 {
        return Err(Error::Divergent(format!("D vanishes at omega = {omega}")));
    }
    let k = p.effective_kappa();
    let e = p.epsilon;
    let q = omega * omega + (k * k + e * e) / 4.0;
    Ok((q * q + k * k * e * e / 4.0 + e * k * q * (2.0 * theta).cos()) / d)
}

/// Reflectivity at which `κ(α) = ε − γ`: `(κ − ε + γ)/(κ + ε − γ)`, which
/// reduces to `(κ − ε)/(κ + ε)` without loss.
pub fn critical_alpha(p: &DpaParams) -> Result<f64> {
    let (k, g, e) = (p.kappa, p.gamma, p.epsilon);
    if g >= e {
        return Err(Error::NoCriticalPoint(format!(
            "loss gamma = {g} is not below the pump epsilon = {e}; the loop is stable for every alpha"
        )));
    }
    if k + g <= e {
        return Err(Error::OpenLoopUnstable(format!(
            "kappa + gamma = {} does not exceed epsilon = {e}",
            k + g
        )));
    }
    Ok((k - e + g) / (k + e - g))
}

/// `𝒩₁₁`, `ℳ₁₁` at the critical reflectivity:
/// `ε³(ε−γ)/(4(ω²+ε²)ω²)` and `ε(ε−γ)(ω²+ε²/2)/(2(ω²+ε²)ω²)`.
///
/// These are [`closed_form_spectra`] with `κ(α)+γ = ε` substituted. The
/// `ε²/2` in `ℳ₁₁` is what the substitution gives (`((κ+γ)/2)² + (ε/2)²`);
/// it is also the value that keeps `|ℳ₁₁|² = (𝒩₁₁+1)𝒩₁₁` when `γ = 0`.
pub fn critical_spectra(p: &DpaParams, omega: f64) -> Result<(f64, f64)> {
    if p.gamma >= p.epsilon {
        return Err(Error::NoCriticalPoint(format!(
            "gamma = {} is not below epsilon = {}",
            p.gamma, p.epsilon
        )));
    }
    if omega == 0.0 {
        return Err(Error::Divergent(
            "critical spectra diverge at omega = 0".into(),
        ));
    }
    let (g, e) = (p.gamma, p.epsilon);
    let w2 = omega * omega;
    let n11 = e.powi(3) * (e - g) / (4.0 * (w2 + e * e) * w2);
    let m11 = e * (e - g) * (w2 + e * e / 2.0) / (2.0 * (w2 + e * e) * w2);
    Ok((n11, m11))
}

#[derive(Clone, Debug, PartialEq)]
pub struct StaticLimit {
    pub s_minus: ComplexMatrix,
    pub s_plus: ComplexMatrix,
    /// `ln((κ+ε)/(κ−ε))`; `None` when `κ ≤ ε`.
    pub r: Option<f64>,
}

/// Printed `k → ∞` limit of the open-loop lossy DPA.
pub fn static_limit_matrices(p: &DpaParams) -> Result<StaticLimit> {
    let (k, g, e) = (p.kappa, p.gamma, p.epsilon);
    let det = (k + g).powi(2) - e * e;
    if det <= 0.0 {
        return Err(Error::Divergent(format!(
            "(kappa+gamma)^2 - epsilon^2 = {det} is not positive"
        )));
    }
    let kg = (k * g).sqrt();
    let s_minus = ComplexMatrix::from_real_rows(&[
        &[(g * g - k * k - e * e) / det, -2.0 * kg * (k + g) / det],
        &[-2.0 * kg * (k + g) / det, (k * k - g * g - e * e) / det],
    ])?;
    let pre = -2.0 * e / det;
    let s_plus = ComplexMatrix::from_real_rows(&[&[pre * k, pre * kg], &[pre * kg, pre * g]])?;
    let r = (k > e).then(|| ((k + e) / (k - e)).ln());
    Ok(StaticLimit { s_minus, s_plus, r })
}

/// `(kκ, kγ, kε)` with the same reflectivity.
pub fn scaled_family(p: &DpaParams, k: f64) -> Result<DpaParams> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!(
            "scale factor must be positive, got {k}"
        )));
    }
    DpaParams::new(k * p.kappa, k * p.gamma, k * p.epsilon, p.alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn effective_kappa_examples() {
        assert_eq!(effective_kappa(2.0, 0.0).unwrap(), 2.0);
        assert!((effective_kappa(2.0, 1.0 / 3.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(effective_kappa(2.0, 1.0 - 1e-12).unwrap() < 1e-11);
        assert!(effective_kappa(2.0, -0.5).unwrap() > 2.0);
        assert!(effective_kappa(2.0, 1.0).is_err());
    }

    #[test]
    fn params_validate() {
        assert!(DpaParams::new(-1.0, 0.0, 0.0, None).is_err());
        assert!(DpaParams::new(1.0, 0.0, 0.0, Some(1.0)).is_err());
        assert!(DpaParams::new(1.0, 0.0, 0.0, Some(-0.1)).is_err());
        assert!(DpaParams::new(1.0, 0.0, 0.0, Some(0.0)).is_ok());
    }

    #[test]
    fn generator_shape() {
        let p = DpaParams::new(2.0, 0.0, 0.0, Some(1.0 / 3.0)).unwrap();
        let g = build_generator(&p);
        assert_eq!(g.ports(), 2);
        assert!((g.c_minus()[(0, 0)].re - 1.0).abs() < 1e-15);
        assert_eq!(g.omega_plus()[(0, 0)], c64(0.0, 0.0));
    }

    #[test]
    fn transfer_at_zero_matches_hand_value() {
        let p = DpaParams::open_loop(1.0, 0.0, 0.5).unwrap();
        let (m, pl) = closed_form_transfer(&p, c64(0.0, 0.0)).unwrap();
        assert!((pl[(0, 0)] - c64(-4.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!((m[(0, 0)] - c64(-5.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn unpumped_transfer_is_passive() {
        let p = DpaParams::open_loop(1.0, 0.3, 0.0).unwrap();
        let (m, pl) = closed_form_transfer(&p, c64(0.0, -0.8)).unwrap();
        assert_eq!(pl.max_abs(), 0.0);
        assert!(m.is_unitary(1e-14));
    }

    #[test]
    fn spectra_hand_values() {
        // (κ,γ,ε,α) = (1,0,0.5,0): D = (0.75)²(0.25)² = 9/256
        let p = DpaParams::new(1.0, 0.0, 0.5, Some(0.0)).unwrap();
        let s = closed_form_spectra(&p, 0.0).unwrap();
        assert!((s.d - 9.0 / 256.0).abs() < 1e-16);
        assert!((s.n11 - 16.0 / 9.0).abs() < 1e-14);
        assert!((s.m11 - 20.0 / 9.0).abs() < 1e-14);
        assert!(!s.near_critical);
        let zero = closed_form_spectra(&DpaParams::open_loop(1.0, 0.0, 0.0).unwrap(), 0.4).unwrap();
        assert_eq!((zero.n11, zero.m11), (0.0, 0.0));
    }

    #[test]
    fn threshold_spectra_diverge() {
        let p = DpaParams::open_loop(1.0, 0.0, 1.0).unwrap();
        assert!(matches!(
            closed_form_spectra(&p, 0.0),
            Err(Error::Divergent(_))
        ));
        assert!(closed_form_spectra(&p, 0.1).unwrap().near_critical);
    }

    #[test]
    fn lossless_squeezing_examples() {
        let p = DpaParams::open_loop(2.0, 0.0, 1.0).unwrap();
        assert!((lossless_squeezing(&p, 0.0).unwrap() - 3f64.ln()).abs() < 1e-15);
        assert!(lossless_squeezing(&p, 1e9).unwrap() < 1e-17);
        assert!(lossless_squeezing(&DpaParams::open_loop(2.0, 0.1, 1.0).unwrap(), 0.0).is_err());
    }

    #[test]
    fn lossless_psd_examples() {
        let p = DpaParams::open_loop(2.0, 0.0, 1.0).unwrap();
        assert!((lossless_psd(&p, 0.0, 0.0).unwrap() - 9.0).abs() < 1e-13);
        assert!(
            (lossless_psd(&p, 0.0, std::f64::consts::FRAC_PI_2).unwrap() - 1.0 / 9.0).abs() < 1e-14
        );
        let off = DpaParams::open_loop(2.0, 0.0, 0.0).unwrap();
        assert!((lossless_psd(&off, 3.0, 0.4).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn critical_alpha_examples() {
        let p = DpaParams::open_loop(3.0, 0.0, 1.0).unwrap();
        assert!((critical_alpha(&p).unwrap() - 0.5).abs() < 1e-15);

        let lossy = DpaParams::open_loop(1.0, 0.1, 0.5).unwrap();
        let a = critical_alpha(&lossy).unwrap();
        assert!((effective_kappa(1.0, a).unwrap() - 0.4).abs() < 1e-12);

        assert!(matches!(
            critical_alpha(&DpaParams::open_loop(1.0, 0.5, 0.5).unwrap()),
            Err(Error::NoCriticalPoint(_))
        ));
        assert!(matches!(
            critical_alpha(&DpaParams::open_loop(0.2, 0.1, 0.5).unwrap()),
            Err(Error::OpenLoopUnstable(_))
        ));
    }

    #[test]
    fn critical_spectra_vanish_without_net_gain() {
        let p = DpaParams::open_loop(1.0, 0.5 - 1e-12, 0.5).unwrap();
        let (n, m) = critical_spectra(&p, 1.0).unwrap();
        assert!(n.abs() < 1e-11 && m.abs() < 1e-11);
        assert!(critical_spectra(&p, 0.0).is_err());
    }

    #[test]
    fn static_limit_squeezing() {
        let s = static_limit_matrices(&DpaParams::open_loop(2.0, 0.0, 1.0).unwrap()).unwrap();
        assert!((s.r.unwrap() - 3f64.ln()).abs() < 1e-15);
        // γ = 0: single nonzero S₊ entry −2εκ/(κ²−ε²)
        assert!((s.s_plus[(0, 0)].re + 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(s.s_plus[(1, 1)].re, 0.0);
        assert!(static_limit_matrices(&DpaParams::open_loop(0.5, 0.5, 1.0).unwrap()).is_err());
    }

    #[test]
    fn scaling() {
        let p = DpaParams::new(1.0, 0.2, 0.5, Some(0.3)).unwrap();
        assert_eq!(scaled_family(&p, 1.0).unwrap(), p);
        let q = scaled_family(&p, 10.0).unwrap();
        assert_eq!(
            (q.kappa, q.gamma, q.epsilon, q.alpha),
            (10.0, 2.0, 5.0, Some(0.3))
        );
        assert!(scaled_family(&p, 0.0).is_err());
    }
}
