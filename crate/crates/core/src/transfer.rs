//! Doubled-up state space, transfer matrices and stability.
//!
//! For a linear generator the input-output map in the Laplace domain is
//!
//! ```text
//! Ξ̃(s) = [I − C̃ (sI − Ã)⁻¹ C̃♭] S̃,   Ã = −½ C̃♭C̃ + Δ(−iΩ₋, −iΩ₊)
//! ```
//!
//! with `C̃ = Δ(C₋, C₊)` and `S̃ = Δ(S, 0)`. A returned [`DoubledMatrix`] holds
//! the halves `(Ξ⁻(s), Ξ⁺(s))`. On the imaginary axis those halves are the
//! frequency response `𝒮∓(ω) = Ξ∓(−iω)`.

use num_complex::Complex64;

use crate::algebra::{ComplexMatrix, DoubledMatrix};
use crate::error::{Error, Result};
use crate::slh::{BeamSplitter, LinearSLH};

/// Condition numbers of `sI − Ã` above this are reported as poles.
pub const POLE_CONDITION_LIMIT: f64 = 1e12;

/// Tolerance for the Bogoliubov property of `S̃`.
pub const SCATTERING_BOGOLIUBOV_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct StateSpaceRealization {
    a_tilde: DoubledMatrix,
    c_tilde: DoubledMatrix,
    s_tilde: DoubledMatrix,
}

impl StateSpaceRealization {
    pub fn modes(&self) -> usize {
        self.a_tilde.half_rows()
    }

    pub fn ports(&self) -> usize {
        self.s_tilde.half_rows()
    }

    /// `Ã` as a doubled matrix.
    pub fn drift(&self) -> &DoubledMatrix {
        &self.a_tilde
    }

    /// `Ã` materialized to `2m×2m`.
    pub fn a_matrix(&self) -> ComplexMatrix {
        self.a_tilde.materialize()
    }

    pub fn c_tilde(&self) -> &DoubledMatrix {
        &self.c_tilde
    }

    pub fn s_tilde(&self) -> &DoubledMatrix {
        &self.s_tilde
    }

    /// Eigenvalue of `Ã` closest to `s`.
    fn nearest_eigenvalue(&self, s: Complex64) -> Complex64 {
        self.a_matrix()
            .eigenvalues()
            .ok()
            .and_then(|ev| {
                ev.into_iter()
                    .min_by(|a, b| (a - s).norm().total_cmp(&(b - s).norm()))
            })
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }
}

/// The doubled-up drift contributed by the Hamiltonian, `Δ(−iΩ₋, −iΩ₊)`.
fn hamiltonian_drift(g: &LinearSLH) -> DoubledMatrix {
    let mi = Complex64::new(0.0, -1.0);
    DoubledMatrix::new(g.omega_minus().scale(mi), g.omega_plus().scale(mi))
        .expect("Omega halves share a shape")
}

pub fn build_state_space(g: &LinearSLH) -> StateSpaceRealization {
    let c_tilde = DoubledMatrix::new(g.c_minus().clone(), g.c_plus().clone())
        .expect("coupling halves share a shape");
    let damping = c_tilde
        .flat_adjoint()
        .checked_mul(&c_tilde)
        .expect("C♭C is conformable")
        .scale_real(-0.5);
    let (da, db) = damping.into_halves();
    let (ha, hb) = hamiltonian_drift(g).into_halves();
    let a_tilde = DoubledMatrix::new(&da + &ha, &db + &hb).expect("drift halves share a shape");
    StateSpaceRealization {
        a_tilde,
        c_tilde,
        s_tilde: DoubledMatrix::passive(g.scattering().clone()),
    }
}

/// Full `2n×2n` transfer matrix at `s`, i.e. the map acting on
/// `(b[s], b*[s])`. Its bottom blocks are `Ξ±(s*)♯`, which coincide with the
/// conjugated halves only for real `s` or real state spaces.
pub fn evaluate_transfer_full(ss: &StateSpaceRealization, s: Complex64) -> Result<ComplexMatrix> {
    let s_full = ss.s_tilde.materialize();
    let m = ss.modes();
    if m == 0 {
        return Ok(s_full);
    }
    let resolvent_arg = &ComplexMatrix::identity(2 * m).scale(s) - &ss.a_matrix();
    let c_full = ss.c_tilde.materialize();
    let c_flat = ss.c_tilde.flat_adjoint().materialize();
    let x = match resolvent_arg.solve_with_limit(&c_flat, POLE_CONDITION_LIMIT) {
        Ok(x) => x,
        Err(Error::Singular { .. }) => {
            return Err(Error::Pole {
                s,
                nearest: ss.nearest_eigenvalue(s),
            })
        }
        Err(e) => return Err(e),
    };
    let n2 = 2 * ss.ports();
    let inner = &ComplexMatrix::identity(n2) - &(&c_full * &x);
    Ok(&inner * &s_full)
}

/// `Ξ̃(s)` with halves `(Ξ⁻(s), Ξ⁺(s))`.
pub fn evaluate_transfer(ss: &StateSpaceRealization, s: Complex64) -> Result<DoubledMatrix> {
    DoubledMatrix::from_materialized(&evaluate_transfer_full(ss, s)?)
}

/// Frequency response at a real angular frequency.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyResponse {
    pub omega: f64,
    pub s_minus: ComplexMatrix,
    pub s_plus: ComplexMatrix,
}

impl FrequencyResponse {
    pub fn ports(&self) -> usize {
        self.s_minus.rows()
    }

    /// `Δ(𝒮₋(ω), 𝒮₊(ω))`.
    pub fn doubled(&self) -> DoubledMatrix {
        DoubledMatrix::new(self.s_minus.clone(), self.s_plus.clone())
            .expect("response halves share a shape")
    }
}

/// `𝒮∓(ω) = Ξ∓(−iω)`.
pub fn frequency_response(ss: &StateSpaceRealization, omega: f64) -> Result<FrequencyResponse> {
    let (s_minus, s_plus) = evaluate_transfer(ss, Complex64::new(0.0, -omega))?.into_halves();
    Ok(FrequencyResponse {
        omega,
        s_minus,
        s_plus,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Stability {
    pub stable: bool,
    /// `max Re λ(Ã)`; `-inf` when there are no modes.
    pub abscissa: f64,
}

/// Hurwitz test: stable iff the spectral abscissa of `Ã` is below `−margin_tol`.
pub fn is_hurwitz(ss: &StateSpaceRealization, margin_tol: f64) -> Result<Stability> {
    let abscissa = spectral_abscissa(&ss.a_matrix())?;
    Ok(Stability {
        stable: abscissa < -margin_tol,
        abscissa,
    })
}

pub fn spectral_abscissa(a: &ComplexMatrix) -> Result<f64> {
    Ok(a.eigenvalues()?
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Static (low-frequency) limit `Ξ̃(0)`.
///
/// Under the rescaling of every rate by `k`, `Ξ⁽ᵏ⁾(s) = Ξ(s/k)`, so this is
/// also the pointwise limit of the transfer functions as `k → ∞`.
pub fn static_limit(g: &LinearSLH) -> Result<DoubledMatrix> {
    let ss = build_state_space(g);
    let st = is_hurwitz(&ss, 0.0)?;
    if !st.stable {
        return Err(Error::Unstable {
            abscissa: st.abscissa,
        });
    }
    evaluate_transfer(&ss, Complex64::new(0.0, 0.0))
}

/// Closes `loop_port` (0-based) of a component with transfer function `xi`
/// through the splitter `t`, eliminating the in-loop fields algebraically.
///
/// `xi` is evaluated at `s` and `s*` because the conjugate rows of the full
/// transfer matrix are `Ξ±(s*)♯`. With `G` the full matrix and `K = (I − νG_LL)⁻¹`
/// on the doubled loop block `L`, the external block `E` passes through
/// apart from the coupling via the loop:
///
/// ```text
/// H_LL = αI + βμ K G_LL          H_LE = β K G_LE
/// H_EL = μ G_EL (I + ν K G_LL)   H_EE = G_EE + ν G_EL K G_LE
/// ```
pub fn loop_eliminate<F>(
    xi: F,
    t: &BeamSplitter,
    loop_port: usize,
    s: Complex64,
) -> Result<DoubledMatrix>
where
    F: Fn(Complex64) -> Result<DoubledMatrix>,
{
    let at_s = xi(s)?;
    let at_conj = xi(s.conj())?;
    let n = at_s.half_rows();
    if !at_s.is_square() || at_conj.half_rows() != n || !at_conj.is_square() {
        return Err(Error::Dimension("transfer function must be square".into()));
    }
    if loop_port >= n {
        return Err(Error::Dimension(format!(
            "loop port {loop_port} out of range for a {n}-port transfer function"
        )));
    }
    let g = ComplexMatrix::from_blocks(
        at_s.minus(),
        at_s.plus(),
        &at_conj.plus().conj(),
        &at_conj.minus().conj(),
    )?;

    let loop_idx = [loop_port, n + loop_port];
    let ext_idx: Vec<usize> = (0..2 * n).filter(|i| !loop_idx.contains(i)).collect();
    let pick = |rows: &[usize], cols: &[usize]| {
        ComplexMatrix::from_fn(rows.len(), cols.len(), |i, j| g[(rows[i], cols[j])])
    };
    let g_ll = pick(&loop_idx, &loop_idx);
    let g_le = pick(&loop_idx, &ext_idx);
    let g_el = pick(&ext_idx, &loop_idx);
    let g_ee = pick(&ext_idx, &ext_idx);

    let id2 = ComplexMatrix::identity(2);
    let k = (&id2 - &g_ll.scale(t.nu.into()))
        .inverse_with_limit(POLE_CONDITION_LIMIT)
        .map_err(|e| match e {
            Error::Singular { condition, .. } => Error::AlgebraicLoop(1.0 / condition),
            other => other,
        })?;
    let kg = &k * &g_ll;
    let h_ll = &id2.scale(t.alpha.into()) + &kg.scale((t.beta * t.mu).into());
    let h_le = (&k * &g_le).scale(t.beta.into());
    let h_el = (&g_el * &(&id2 + &kg.scale(t.nu.into()))).scale(t.mu.into());
    let h_ee = &g_ee + &(&(&g_el * &k) * &g_le).scale(t.nu.into());

    let mut h = ComplexMatrix::zeros(2 * n, 2 * n);
    let place = |h: &mut ComplexMatrix, rows: &[usize], cols: &[usize], blk: &ComplexMatrix| {
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                h[(r, c)] = blk[(i, j)];
            }
        }
    };
    place(&mut h, &loop_idx, &loop_idx, &h_ll);
    place(&mut h, &loop_idx, &ext_idx, &h_le);
    place(&mut h, &ext_idx, &loop_idx, &h_el);
    place(&mut h, &ext_idx, &ext_idx, &h_ee);
    DoubledMatrix::from_materialized(&h)
}

/// Locates the parameter at which `abscissa(x)` changes sign on `[lo, hi]`
/// to within `tol`. The returned point lies on the stable side.
pub fn bisect_stability_boundary<F>(abscissa: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if lo.is_nan() || hi.is_nan() || lo >= hi || tol.is_nan() || tol <= 0.0 {
        return Err(Error::Bisection(format!(
            "invalid bracket [{lo}, {hi}] or tolerance {tol}"
        )));
    }
    let lo_stable = abscissa(lo)? < 0.0;
    let hi_stable = abscissa(hi)? < 0.0;
    if lo_stable == hi_stable {
        return Err(Error::Bisection(format!(
            "stability does not change on [{lo}, {hi}]"
        )));
    }
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if (abscissa(mid)? < 0.0) == lo_stable {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if lo_stable { lo } else { hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::c64;

    fn dpa(kappa: f64, gamma: f64, epsilon: f64) -> LinearSLH {
        LinearSLH::new(
            ComplexMatrix::identity(2),
            ComplexMatrix::from_real_rows(&[&[kappa.sqrt()], &[gamma.sqrt()]]).unwrap(),
            ComplexMatrix::zeros(2, 1),
            ComplexMatrix::zeros(1, 1),
            ComplexMatrix::scalar(c64(0.0, epsilon / 2.0)),
        )
        .unwrap()
    }

    #[test]
    fn dpa_drift_matches_printed_matrix() {
        let ss = build_state_space(&dpa(1.0, 0.25, 0.5));
        let expected = ComplexMatrix::from_real_rows(&[&[-0.625, 0.25], &[0.25, -0.625]]).unwrap();
        assert!(ss.a_matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn zero_coupling_has_zero_drift_and_constant_transfer() {
        let g = LinearSLH::new(
            ComplexMatrix::identity(1),
            ComplexMatrix::zeros(1, 1),
            ComplexMatrix::zeros(1, 1),
            ComplexMatrix::zeros(1, 1),
            ComplexMatrix::zeros(1, 1),
        )
        .unwrap();
        let ss = build_state_space(&g);
        assert_eq!(ss.a_matrix(), ComplexMatrix::zeros(2, 2));
        // s = 0 would be a pole of the (decoupled) zero drift; away from it Ξ̃ = S̃.
        let xi = evaluate_transfer(&ss, c64(0.3, 1.7)).unwrap();
        assert!(xi.max_abs_diff(&DoubledMatrix::identity(1)) < 1e-15);
    }

    #[test]
    fn passive_drift_is_block_diagonal() {
        let ss = build_state_space(&dpa(1.0, 0.25, 0.0));
        let (_, b) = ss.drift().clone().into_halves();
        assert_eq!(b.max_abs(), 0.0);
        assert!((ss.drift().minus()[(0, 0)] - c64(-0.625, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn dpa_transfer_at_zero() {
        let ss = build_state_space(&dpa(1.0, 0.0, 0.5));
        let xi = evaluate_transfer(&ss, c64(0.0, 0.0)).unwrap();
        assert!((xi.plus()[(0, 0)] - c64(-4.0 / 3.0, 0.0)).norm() < 1e-14);
        assert!((xi.minus()[(0, 0)] - c64(-5.0 / 3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn large_s_recovers_scattering() {
        let ss = build_state_space(&dpa(1.0, 0.25, 0.5));
        let xi = evaluate_transfer(&ss, c64(1e9, 0.0)).unwrap();
        assert!(xi.max_abs_diff(&DoubledMatrix::identity(2)) < 1e-6);
    }

    #[test]
    fn pole_is_reported_with_nearest_eigenvalue() {
        // lossless at threshold κ = ε: eigenvalue 0
        let ss = build_state_space(&dpa(1.0, 0.0, 1.0));
        match evaluate_transfer(&ss, c64(0.0, 0.0)) {
            Err(Error::Pole { nearest, .. }) => assert!(nearest.norm() < 1e-12),
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn hurwitz_examples() {
        let st = is_hurwitz(&build_state_space(&dpa(1.0, 0.25, 0.5)), 0.0).unwrap();
        assert!(st.stable);
        assert!((st.abscissa + 0.375).abs() < 1e-14);
        let edge = is_hurwitz(&build_state_space(&dpa(0.75, 0.25, 1.0)), 0.0).unwrap();
        assert!(!edge.stable);
        assert!(edge.abscissa.abs() < 1e-14);
        assert!(
            is_hurwitz(&build_state_space(&dpa(2.0, 0.0, 0.0)), 0.0)
                .unwrap()
                .stable
        );
    }

    #[test]
    fn static_limit_refuses_unstable() {
        assert!(matches!(
            static_limit(&dpa(0.5, 0.0, 1.0)),
            Err(Error::Unstable { .. })
        ));
    }

    #[test]
    fn loop_elimination_of_trivial_component() {
        let t = crate::slh::standard_splitter(0.4).unwrap();
        let closed =
            loop_eliminate(|_| Ok(DoubledMatrix::identity(1)), &t, 0, c64(0.0, -1.0)).unwrap();
        assert!(closed.max_abs_diff(&DoubledMatrix::identity(1)) < 1e-15);
    }

    #[test]
    fn loop_elimination_open_limit() {
        let t = BeamSplitter::new(0.0, 1.0, 1.0, 0.0).unwrap();
        let ss = build_state_space(&dpa(1.0, 0.0, 0.5));
        let s = c64(0.2, -1.3);
        let xi = |z| evaluate_transfer(&ss, z);
        let closed = loop_eliminate(xi, &t, 0, s).unwrap();
        assert!(closed.max_abs_diff(&evaluate_transfer(&ss, s).unwrap()) < 1e-14);
    }

    #[test]
    fn bisection_finds_linear_root() {
        let x = bisect_stability_boundary(|x| Ok(x - 0.3), 0.0, 1.0, 1e-12).unwrap();
        assert!((x - 0.3).abs() < 1e-12 && x < 0.3);
        assert!(bisect_stability_boundary(|x| Ok(x + 1.0), 0.0, 1.0, 1e-12).is_err());
    }
}
