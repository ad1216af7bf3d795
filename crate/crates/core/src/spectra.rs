//! Output-field correlation matrices, spectral squeezing and power spectra
//! for vacuum input.

use num_complex::Complex64;

use crate::algebra::ComplexMatrix;
use crate::error::{Error, Result};
use crate::transfer::{frequency_response, FrequencyResponse, StateSpaceRealization};

/// `(𝒩(ω), ℳ(ω))` from the responses at `ω` and `−ω`:
/// `𝒩ᵢⱼ = 𝒮⁺ᵢₖ(ω)* 𝒮⁺ⱼₖ(ω)` and `ℳᵢⱼ = 𝒮⁻ᵢₖ(ω) 𝒮⁺ⱼₖ(−ω)`.
pub fn correlation_matrices(
    fr_plus: &FrequencyResponse,
    fr_minus: &FrequencyResponse,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if fr_plus.ports() != fr_minus.ports() {
        return Err(Error::Dimension(
            "responses have different port counts".into(),
        ));
    }
    let n = fr_plus
        .s_plus
        .conj()
        .checked_mul(&fr_plus.s_plus.transpose())?;
    let m = fr_plus.s_minus.checked_mul(&fr_minus.s_plus.transpose())?;
    Ok((n, m))
}

/// `r(ω) = ln(|𝒮₋(ω)| + |𝒮₊(ω)|)`, defined for a single port only.
pub fn squeezing_function(fr: &FrequencyResponse) -> Result<f64> {
    if fr.ports() != 1 {
        return Err(Error::Scope(format!(
            "the squeezing function is defined for one port, got {}",
            fr.ports()
        )));
    }
    Ok((fr.s_minus[(0, 0)].norm() + fr.s_plus[(0, 0)].norm()).ln())
}

/// `𝒫(ω,θ) = I + 𝒩(−ω) + 𝒩(ω)ᵀ + e^{2iθ} ℳ(ω)ᵀ + e^{−2iθ} ℳ(−ω)♯`.
pub fn power_spectral_density(
    n_pos: &ComplexMatrix,
    n_neg: &ComplexMatrix,
    m_pos: &ComplexMatrix,
    m_neg: &ComplexMatrix,
    theta: f64,
) -> Result<ComplexMatrix> {
    let k = n_pos.rows();
    let phase = Complex64::from_polar(1.0, 2.0 * theta);
    let p = ComplexMatrix::identity(k)
        .checked_add(n_neg)?
        .checked_add(&n_pos.transpose())?
        .checked_add(&m_pos.transpose().scale(phase))?
        .checked_add(&m_neg.conj().scale(phase.conj()))?;
    Ok(p)
}

/// Everything computable at one frequency.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralSample {
    pub omega: f64,
    pub response: FrequencyResponse,
    /// `𝒩(ω)`
    pub n: ComplexMatrix,
    /// `ℳ(ω)`
    pub m: ComplexMatrix,
    /// `𝒩(−ω)`
    pub n_neg: ComplexMatrix,
    /// `ℳ(−ω)`
    pub m_neg: ComplexMatrix,
    /// `r(ω)` for single-port systems.
    pub r: Option<f64>,
}

impl SpectralSample {
    pub fn compute(ss: &StateSpaceRealization, omega: f64) -> Result<Self> {
        let fr_pos = frequency_response(ss, omega)?;
        let fr_neg = frequency_response(ss, -omega)?;
        let (n, m) = correlation_matrices(&fr_pos, &fr_neg)?;
        let (n_neg, m_neg) = correlation_matrices(&fr_neg, &fr_pos)?;
        let r = (fr_pos.ports() == 1)
            .then(|| squeezing_function(&fr_pos))
            .transpose()?;
        Ok(Self {
            omega,
            response: fr_pos,
            n,
            m,
            n_neg,
            m_neg,
            r,
        })
    }

    pub fn psd(&self, theta: f64) -> ComplexMatrix {
        power_spectral_density(&self.n, &self.n_neg, &self.m, &self.m_neg, theta)
            .expect("sample matrices share a shape")
    }
}

/// Quadrature phase for the static-limit inelastic spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quadrature {
    /// θ = 0
    Amplitude,
    /// θ = π/2
    Phase,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InelasticKind {
    /// Any finite dynamical model with `ports` outputs.
    Dynamic { ports: usize },
    /// Static limit of the lossy two-port DPA.
    StaticLimitDpa {
        kappa: f64,
        gamma: f64,
        epsilon: f64,
        quadrature: Quadrature,
    },
}

/// Inelastic part of the output quadrature spectrum.
///
/// For dynamical models the Itô rule fixes it to the identity. In the static
/// limit of the DPA it is
///
/// ```text
/// (κ+γ+ε)² / [(κ+γ)² − ε²]² · [[(κ+γ)² + ε² − 2ε(γ−κ), 4√(κγ)ε],
///                              [4√(κγ)ε, (κ+γ)² + ε² + 2ε(γ−κ)]]
/// ```
///
/// at θ = 0, and the same with ε → −ε at θ = π/2.
pub fn inelastic_component(kind: InelasticKind) -> Result<ComplexMatrix> {
    match kind {
        InelasticKind::Dynamic { ports } => Ok(ComplexMatrix::identity(ports)),
        InelasticKind::StaticLimitDpa {
            kappa,
            gamma,
            epsilon,
            quadrature,
        } => {
            let e = match quadrature {
                Quadrature::Amplitude => epsilon,
                Quadrature::Phase => -epsilon,
            };
            let kg = kappa + gamma;
            let det = kg * kg - e * e;
            if det.abs() <= f64::EPSILON * kg * kg.max(1.0) {
                return Err(Error::Divergent(format!(
                    "static limit at threshold: (kappa+gamma)^2 = epsilon^2 = {}",
                    e * e
                )));
            }
            let pre = (kg + e).powi(2) / (det * det);
            let off = 4.0 * (kappa * gamma).sqrt() * e;
            let d1 = kg * kg + e * e - 2.0 * e * (gamma - kappa);
            let d2 = kg * kg + e * e + 2.0 * e * (gamma - kappa);
            Ok(
                ComplexMatrix::from_real_rows(&[&[pre * d1, pre * off], &[pre * off, pre * d2]])
                    .expect("2x2 literal"),
            )
        }
    }
}

/// Quadrature covariance of a static Bogoliubov device driven by vacuum,
/// `U U†` with `U = e^{iθ} S₋ + e^{−iθ} S₊♯`.
pub fn static_quadrature_covariance(
    s_minus: &ComplexMatrix,
    s_plus: &ComplexMatrix,
    theta: f64,
) -> Result<ComplexMatrix> {
    let ph = Complex64::from_polar(1.0, theta);
    let u = s_minus
        .scale(ph)
        .checked_add(&s_plus.conj().scale(ph.conj()))?;
    u.checked_mul(&u.adjoint())
}
