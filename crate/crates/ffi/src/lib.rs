//! C ABI over `squeeznet`.
//!
//! Generators live behind the opaque [`SqnGenerator`] handle. Every fallible
//! function returns an [`SqnStatus`]; on failure a message describing the
//! last error on the calling thread is available from
//! [`sqn_last_error_message`]. Complex matrices cross the boundary as
//! row-major arrays of [`SqnComplex`].
//!
//! Panics never unwind into C: they are caught and reported as
//! [`SqnStatus::Internal`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use squeeznet::dpa::{self, DpaParams};
use squeeznet::netdsl::{elaborate, parse};
use squeeznet::slh::{feedback_reduce, standard_splitter};
use squeeznet::transfer::{build_state_space, frequency_response, is_hurwitz};
use squeeznet::{Complex64, ComplexMatrix, Error, LinearSLH, SpectralSample};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqnStatus {
    Ok = 0,
    NullPointer = 1,
    /// Bad dimensions, out-of-domain parameters or an invalid generator.
    InvalidArgument = 2,
    /// The network text did not parse or elaborate.
    Parse = 3,
    /// The system is not Hurwitz stable, or is at threshold.
    Unstable = 4,
    /// Evaluation hit a pole, a singular matrix or an algebraic loop.
    Singular = 5,
    /// No critical reflectivity exists for these parameters.
    NoCriticalPoint = 6,
    /// A Rust panic was caught; this is a bug.
    Internal = 7,
}

/// A complex number with the layout of C99 `double _Complex`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SqnComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for SqnComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// Opaque handle to a linear generator.
pub struct SqnGenerator(LinearSLH);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(SqnStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Unstable { .. } | Error::Divergent(_) | Error::OpenLoopUnstable(_) => {
                SqnStatus::Unstable
            }
            Error::Singular { .. } | Error::Pole { .. } | Error::AlgebraicLoop(_) => {
                SqnStatus::Singular
            }
            Error::NoCriticalPoint(_) => SqnStatus::NoCriticalPoint,
            Error::EigenNoConvergence(_) | Error::Bisection(_) => SqnStatus::Internal,
            _ => SqnStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn fail(status: SqnStatus, msg: impl Into<String>) -> Failure {
    Failure(status, msg.into())
}

/// Runs `f`, records any error for [`sqn_last_error_message`] and converts
/// panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SqnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            SqnStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal error: panic in squeeznet");
            SqnStatus::Internal
        }
    }
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(fail(SqnStatus::NullPointer, format!("`{what}` is null")))
    } else {
        Ok(())
    }
}

unsafe fn generator<'a>(g: *const SqnGenerator) -> Result<&'a LinearSLH, Failure> {
    non_null(g, "generator")?;
    Ok(&(*g).0)
}

unsafe fn read_matrix(
    p: *const SqnComplex,
    rows: usize,
    cols: usize,
    what: &str,
) -> Result<ComplexMatrix, Failure> {
    if rows * cols == 0 {
        return Ok(ComplexMatrix::zeros(rows, cols));
    }
    non_null(p, what)?;
    let data = std::slice::from_raw_parts(p, rows * cols)
        .iter()
        .map(|z| Complex64::new(z.re, z.im))
        .collect();
    Ok(ComplexMatrix::new(rows, cols, data)?)
}

unsafe fn write_matrix(m: &ComplexMatrix, out: *mut SqnComplex, what: &str) -> Result<(), Failure> {
    non_null(out, what)?;
    let dst = std::slice::from_raw_parts_mut(out, m.rows() * m.cols());
    for (d, s) in dst.iter_mut().zip(m.as_slice()) {
        *d = (*s).into();
    }
    Ok(())
}

unsafe fn publish(g: LinearSLH, out: *mut *mut SqnGenerator) {
    *out = Box::into_raw(Box::new(SqnGenerator(g)));
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sqn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the most recent failure on this thread; empty after a
/// successful call. Valid until the next call into the library.
#[no_mangle]
pub extern "C" fn sqn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a generator from row-major matrices: `s` is `ports×ports`,
/// `c_minus`/`c_plus` are `ports×modes`, `omega_minus`/`omega_plus` are
/// `modes×modes`.
///
/// # Safety
/// Each matrix pointer must reference the stated number of elements; `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqn_generator_new(
    ports: usize,
    modes: usize,
    s: *const SqnComplex,
    c_minus: *const SqnComplex,
    c_plus: *const SqnComplex,
    omega_minus: *const SqnComplex,
    omega_plus: *const SqnComplex,
    out: *mut *mut SqnGenerator,
) -> SqnStatus {
    guard(|| {
        non_null(out, "out")?;
        let g = LinearSLH::new(
            read_matrix(s, ports, ports, "s")?,
            read_matrix(c_minus, ports, modes, "c_minus")?,
            read_matrix(c_plus, ports, modes, "c_plus")?,
            read_matrix(omega_minus, modes, modes, "omega_minus")?,
            read_matrix(omega_plus, modes, modes, "omega_plus")?,
        )?;
        publish(g, out);
        Ok(())
    })
}

/// Degenerate parametric amplifier, closed through a standard splitter of
/// reflectivity `alpha` when `has_alpha` is true. `single_port` selects the
/// lossless one-port model (requires `gamma == 0`).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqn_generator_dpa(
    kappa: f64,
    gamma: f64,
    epsilon: f64,
    has_alpha: bool,
    alpha: f64,
    single_port: bool,
    out: *mut *mut SqnGenerator,
) -> SqnStatus {
    guard(|| {
        non_null(out, "out")?;
        let p = DpaParams::new(kappa, gamma, epsilon, has_alpha.then_some(alpha))?;
        publish(dpa::build_feedback_network(&p, single_port)?, out);
        Ok(())
    })
}

/// Parses a network document and returns the elaborated generator of
/// `component`, or of the only component when `component` is null.
///
/// # Safety
/// `text` (and `component`, if non-null) must be NUL-terminated UTF-8;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqn_generator_from_network(
    text: *const c_char,
    component: *const c_char,
    out: *mut *mut SqnGenerator,
) -> SqnStatus {
    guard(|| {
        non_null(text, "text")?;
        non_null(out, "out")?;
        let text = CStr::from_ptr(text).to_str().map_err(|e| {
            fail(
                SqnStatus::InvalidArgument,
                format!("text is not UTF-8: {e}"),
            )
        })?;
        let render = |d: Vec<squeeznet::netdsl::Diagnostic>| {
            let lines: Vec<String> = d.iter().map(|d| d.to_string()).collect();
            fail(SqnStatus::Parse, lines.join("\n"))
        };
        let doc = parse(text).map_err(render)?;
        let mut comps = elaborate(&doc).map_err(render)?;
        let idx = if component.is_null() {
            if comps.len() != 1 {
                return Err(fail(
                    SqnStatus::InvalidArgument,
                    format!("document defines {} components; name one", comps.len()),
                ));
            }
            0
        } else {
            let name = CStr::from_ptr(component).to_string_lossy();
            comps
                .iter()
                .position(|c| c.name == name)
                .ok_or_else(|| fail(SqnStatus::InvalidArgument, format!("no component `{name}`")))?
        };
        publish(comps.swap_remove(idx).generator, out);
        Ok(())
    })
}

/// Closes port `port` (0-based) of `g` through a standard splitter of
/// reflectivity `alpha`. `g` is left unchanged.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqn_generator_feedback(
    g: *const SqnGenerator,
    alpha: f64,
    port: usize,
    out: *mut *mut SqnGenerator,
) -> SqnStatus {
    guard(|| {
        let g = generator(g)?;
        non_null(out, "out")?;
        publish(feedback_reduce(g, &standard_splitter(alpha)?, port)?, out);
        Ok(())
    })
}

/// Number of field ports, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sqn_generator_ports(g: *const SqnGenerator) -> usize {
    g.as_ref().map_or(0, |g| g.0.ports())
}

/// Number of internal modes, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sqn_generator_modes(g: *const SqnGenerator) -> usize {
    g.as_ref().map_or(0, |g| g.0.modes())
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sqn_generator_free(g: *mut SqnGenerator) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Hurwitz test of the drift matrix: stable iff the spectral abscissa is
/// below `-margin`.
///
/// # Safety
/// `g` must be a live handle; the output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqn_is_hurwitz(
    g: *const SqnGenerator,
    margin: f64,
    stable: *mut bool,
    abscissa: *mut f64,
) -> SqnStatus {
    guard(|| {
        let g = generator(g)?;
        non_null(stable, "stable")?;
        non_null(abscissa, "abscissa")?;
        let st = is_hurwitz(&build_state_space(g), margin)?;
        *stable = st.stable;
        *abscissa = st.abscissa;
        Ok(())
    })
}

/// `𝒮₋(ω)` and `𝒮₊(ω)`, each `ports×ports`, row-major.
///
/// # Safety
/// `g` must be a live handle; each output must hold `ports²` elements.
#[no_mangle]
pub unsafe extern "C" fn sqn_frequency_response(
    g: *const SqnGenerator,
    omega: f64,
    s_minus: *mut SqnComplex,
    s_plus: *mut SqnComplex,
) -> SqnStatus {
    guard(|| {
        let g = generator(g)?;
        let fr = frequency_response(&build_state_space(g), omega)?;
        write_matrix(&fr.s_minus, s_minus, "s_minus")?;
        write_matrix(&fr.s_plus, s_plus, "s_plus")
    })
}

/// Correlation matrices `𝒩(ω)`, `ℳ(ω)` and the PSD `𝒫(ω, θ)` (each
/// `ports×ports`), plus `r(ω)` for single-port systems (NaN otherwise).
/// Refuses unstable systems. Any matrix output may be null to skip it.
///
/// # Safety
/// `g` must be a live handle; non-null outputs must hold `ports²` elements
/// and `r` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqn_spectral_sample(
    g: *const SqnGenerator,
    omega: f64,
    theta: f64,
    n: *mut SqnComplex,
    m: *mut SqnComplex,
    psd: *mut SqnComplex,
    r: *mut f64,
) -> SqnStatus {
    guard(|| {
        let g = generator(g)?;
        non_null(r, "r")?;
        let ss = build_state_space(g);
        let st = is_hurwitz(&ss, 0.0)?;
        if !st.stable {
            return Err(Error::Unstable {
                abscissa: st.abscissa,
            }
            .into());
        }
        let s = SpectralSample::compute(&ss, omega)?;
        for (mat, p, what) in [(&s.n, n, "n"), (&s.m, m, "m"), (&s.psd(theta), psd, "psd")] {
            if !p.is_null() {
                write_matrix(mat, p, what)?;
            }
        }
        *r = s.r.unwrap_or(f64::NAN);
        Ok(())
    })
}

/// Reflectivity at which a DPA loop reaches threshold.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sqn_dpa_critical_alpha(
    kappa: f64,
    gamma: f64,
    epsilon: f64,
    out: *mut f64,
) -> SqnStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = dpa::critical_alpha(&DpaParams::open_loop(kappa, gamma, epsilon)?)?;
        Ok(())
    })
}
