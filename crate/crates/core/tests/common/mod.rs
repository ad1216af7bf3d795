#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use squeeznet::algebra::{c64, Complex64, ComplexMatrix};
use squeeznet::dpa::DpaParams;
use squeeznet::netdsl::{elaborate, parse, ElaboratedComponent};
use squeeznet::slh::{feedback_reduce, standard_splitter};
use squeeznet::transfer::build_state_space;
use squeeznet::{LinearSLH, SpectralSample};

/// `(label, κ, γ, ε, α)` spanning open/closed loop, lossless/lossy, ε = 0 and
/// near-critical points on both the lossless and the lossy branch. The
/// near-critical offset keeps `κ(α)+γ−ε` around 3e-3: closer in, rounding in
/// `κ(α)` alone moves the response by more than 1e-10.
pub const CASES: [(&str, f64, f64, f64, Option<f64>); 12] = [
    ("open lossless", 1.0, 0.0, 0.5, None),
    ("open lossless (2,1)", 2.0, 0.0, 1.0, None),
    ("open lossy", 1.0, 0.25, 0.5, None),
    ("open lossy small loss", 1.0, 0.1, 0.5, None),
    ("open unpumped", 1.0, 0.3, 0.0, None),
    ("closed lossless", 3.0, 0.0, 1.0, Some(0.2)),
    ("closed lossless strong", 3.0, 0.0, 1.0, Some(0.45)),
    ("closed lossy", 1.0, 0.1, 0.5, Some(0.2)),
    ("closed lossy strong", 1.0, 0.1, 0.5, Some(0.4)),
    ("closed loss equals pump", 1.0, 0.5, 0.5, Some(0.3)),
    ("near-critical lossless", 3.0, 0.0, 1.0, Some(0.5 - 3e-3)),
    ("near-critical lossy", 1.0, 0.1, 0.5, Some(3.0 / 7.0 - 3e-3)),
];

pub fn case_params() -> Vec<(&'static str, DpaParams)> {
    CASES
        .iter()
        .map(|&(l, k, g, e, a)| (l, DpaParams::new(k, g, e, a).unwrap()))
        .collect()
}

/// 101 points on [−10, 10].
pub fn omega_grid() -> Vec<f64> {
    (0..=100).map(|i| -10.0 + 0.2 * i as f64).collect()
}

/// Deterministic pseudo-random reals in [−1, 1) (SplitMix64).
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    }

    pub fn complex(&mut self) -> Complex64 {
        c64(self.next_f64(), self.next_f64())
    }

    pub fn matrix(&mut self, r: usize, c: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(r, c, |_, _| self.complex())
    }
}

/// Generator with `n` ports and `m` modes: diagonal unitary `S`, random
/// couplings and Hamiltonian. Not necessarily stable.
pub fn random_generator(rng: &mut Rng, n: usize, m: usize, scale: f64) -> LinearSLH {
    let phases: Vec<f64> = (0..n)
        .map(|_| std::f64::consts::PI * rng.next_f64())
        .collect();
    let s = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, phases[i])
        } else {
            c64(0.0, 0.0)
        }
    });
    let cm = rng.matrix(n, m);
    let cp = rng.matrix(n, m).scale(c64(scale, 0.0));
    let h = rng.matrix(m, m);
    let om = &h + &h.adjoint();
    let k = rng.matrix(m, m).scale(c64(scale, 0.0));
    let op = &k + &k.transpose();
    LinearSLH::new(s, cm, cp, om, op).unwrap()
}

/// Rows whose margin `κ(α)+γ−ε` is below 0.01.
pub fn is_near_threshold(p: &DpaParams) -> bool {
    (p.total_damping() - p.epsilon).abs() < 1e-2
}

/// Truncated Fock-space matrices of `a` and `a*` on `dim` levels.
fn ladder(dim: usize) -> (ComplexMatrix, ComplexMatrix) {
    let a = ComplexMatrix::from_fn(dim, dim, |i, j| {
        if j == i + 1 {
            c64((j as f64).sqrt(), 0.0)
        } else {
            c64(0.0, 0.0)
        }
    });
    let ad = a.adjoint();
    (a, ad)
}

/// `Im{λ L†L}` with `L = c₋a + c₊a*`, expanded numerically in Fock space and
/// read back as the coefficients of `a*a`, `a*a*`, `aa` (plus `a a*`, which
/// normal-orders into `a*a` and a constant).
pub fn brute_force_correction(
    lambda: Complex64,
    cm: Complex64,
    cp: Complex64,
) -> (Complex64, Complex64) {
    let dim = 8;
    let (a, ad) = ladder(dim);
    let l = &a.scale(cm) + &ad.scale(cp);
    let x = (&l.adjoint() * &l).scale(lambda);
    let im = (&x - &x.adjoint()).scale(c64(0.0, -0.5));
    // H = ω₋ a*a + ½ω₊ a*a* + ½ω₊* aa + const
    let omega_minus = im[(1, 1)] - im[(0, 0)];
    let omega_plus = im[(2, 0)] * 2.0 / 2.0_f64.sqrt();
    let omega_plus_conj = im[(0, 2)] * 2.0 / 2.0_f64.sqrt();
    assert!((omega_plus_conj - omega_plus.conj()).norm() < 1e-12);
    // no linear terms, and the number-operator coefficient is level independent
    assert!(im[(1, 0)].norm() < 1e-12 && im[(0, 1)].norm() < 1e-12);
    assert!(((im[(2, 2)] - im[(1, 1)]) - omega_minus).norm() < 1e-12);
    (omega_minus, omega_plus)
}

pub fn fixtures(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(sub)
}

/// Parses and elaborates a shipped network with exactly one component.
pub fn load_network(name: &str) -> ElaboratedComponent {
    let text = fs::read_to_string(fixtures("networks").join(name)).unwrap();
    let doc = parse(&text).unwrap_or_else(|d| panic!("{name}: {d:?}"));
    let mut comps = elaborate(&doc).unwrap_or_else(|d| panic!("{name}: {d:?}"));
    assert_eq!(comps.len(), 1);
    comps.remove(0)
}

/// `two_mode_slh.sqn` built by hand.
pub fn two_mode_direct() -> LinearSLH {
    let m = |rows: &[&[(f64, f64)]]| {
        ComplexMatrix::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&(a, b)| c64(a, b)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    };
    let g = LinearSLH::new(
        m(&[&[(0.6, 0.8), (0.0, 0.0)], &[(0.0, 0.0), (1.0, 0.0)]]),
        m(&[&[(1.0, 0.0), (0.0, 0.5)], &[(0.3, 0.0), (0.7, 0.0)]]),
        m(&[&[(0.4, 0.0), (0.0, 0.0)], &[(0.0, 0.0), (0.1, 0.0)]]),
        m(&[&[(0.5, 0.0), (0.1, 0.2)], &[(0.1, -0.2), (-0.3, 0.0)]]),
        m(&[&[(0.0, 0.1), (0.05, 0.0)], &[(0.05, 0.0), (0.2, 0.0)]]),
    )
    .unwrap();
    feedback_reduce(&g, &standard_splitter(0.3).unwrap(), 0).unwrap()
}

/// Largest deviation of `N`, `M` and `𝒫(θ)` between two generators over the
/// probe grid of the component.
pub fn spectral_gap(comp: &ElaboratedComponent, direct: &LinearSLH) -> f64 {
    let a = build_state_space(&comp.generator);
    let b = build_state_space(direct);
    let mut gap = 0.0_f64;
    for probe in &comp.probes {
        let Some(grid) = &probe.options.omega else {
            continue;
        };
        let thetas = if probe.options.thetas.is_empty() {
            vec![0.0]
        } else {
            probe.options.thetas.clone()
        };
        for w in grid.points() {
            let (x, y) = (
                SpectralSample::compute(&a, w).unwrap(),
                SpectralSample::compute(&b, w).unwrap(),
            );
            gap = gap
                .max(x.response.doubled().max_abs_diff(&y.response.doubled()))
                .max(x.n.max_abs_diff(&y.n))
                .max(x.m.max_abs_diff(&y.m));
            for &th in &thetas {
                gap = gap.max(x.psd(th).max_abs_diff(&y.psd(th)));
            }
        }
    }
    gap
}

/// Parse diagnostics, or elaboration diagnostics for documents that parse,
/// with warnings, one per line.
pub fn render_diagnostics(text: &str) -> String {
    let diags = match parse(text) {
        Err(d) => d,
        Ok(doc) => {
            let mut all = doc.warnings.clone();
            if let Err(e) = elaborate(&doc) {
                all.extend(e);
            }
            all.sort_by_key(|d| (d.line, d.column));
            all
        }
    };
    diags.iter().map(|d| format!("{d}\n")).collect()
}
