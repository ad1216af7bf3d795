//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 instability or divergence.

mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::algebra::{c64, Complex64, ComplexMatrix, DoubledMatrix};
use crate::dpa::{self, DpaParams};
use crate::error::Error;
use crate::grid::Grid;
use crate::netdsl::{self, ComponentKind, ProbeQuantity};
use crate::slh::LinearSLH;
use crate::spectra::{
    inelastic_component, squeezing_function, InelasticKind, Quadrature, SpectralSample,
};
use crate::transfer::{self, build_state_space, frequency_response, is_hurwitz};

pub use table::{fmt_num, Cell, Table};

const DEFAULT_OMEGA: &str = "-10:10:101";
const DEFAULT_ALPHA_GRID: &str = "0:0.9:10";

#[derive(Debug, Parser)]
#[command(
    name = "squeeznet",
    version,
    about = "Squeezing spectra and stability of linear quantum feedback networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Transfer function, correlations, squeezing and PSD over an ω grid.
    Spectrum(SpectrumArgs),
    /// Stability and squeezing of a DPA as the loop reflectivity varies.
    SweepAlpha(SweepArgs),
    /// Cross-check the numeric pipeline against the DPA closed forms.
    Verify(VerifyArgs),
    /// Static (broadband) limit of the DPA.
    StaticLimit(StaticArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Built-in scenario (`dpa-lossless`, `dpa-lossy`) or a network file.
    #[arg(default_value = "dpa-lossless")]
    input: String,
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<f64>,
    /// Loss rate (defaults to 0 for dpa-lossless, 0.1 for dpa-lossy).
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<f64>,
    /// Loop reflectivity; omitted means open loop.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Component to evaluate when a network file defines several.
    #[arg(long)]
    component: Option<String>,
    /// Exit with code 3 instead of emitting unstable rows.
    #[arg(long)]
    require_stable: bool,
    /// Override a tolerance, e.g. `--tolerance transfer=1e-9`.
    #[arg(long = "tolerance", value_name = "NAME=VALUE")]
    tolerances: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to a file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    out: OutputArgs,
    /// Frequency grid `start:stop:count` (inclusive).
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<Grid>,
    /// Quadrature angle for a PSD column; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    theta: Vec<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    out: OutputArgs,
    /// Reflectivity grid `start:stop:count` within [0, 1).
    #[arg(long, default_value = DEFAULT_ALPHA_GRID)]
    alpha_grid: Grid,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<Grid>,
}

#[derive(Debug, Args)]
struct StaticArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Refused(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            Self::Input(_) => 2,
            Self::Refused(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Unstable { .. }
            | Error::Divergent(_)
            | Error::OpenLoopUnstable(_)
            | Error::Pole { .. }
            | Error::AlgebraicLoop(_) => Self::Refused(e.to_string()),
            other => Self::Input(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Tolerances for `verify` plus the stability margin used everywhere.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Tolerances {
    transfer: f64,
    bogoliubov: f64,
    spectra: f64,
    lossless_identity: f64,
    psd: f64,
    damping: f64,
    stability: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            transfer: 1e-10,
            bogoliubov: 1e-9,
            spectra: 1e-10,
            lossless_identity: 1e-10,
            psd: 1e-10,
            damping: 1e-12,
            stability: 1e-12,
        }
    }
}

impl Tolerances {
    fn parse(overrides: &[String]) -> CliResult<Self> {
        let mut t = Self::default();
        for o in overrides {
            let (name, value) = o
                .split_once('=')
                .ok_or_else(|| CliError::Input(format!("expected NAME=VALUE, got `{o}`")))?;
            let v: f64 = value
                .trim()
                .parse()
                .ok()
                .filter(|v: &f64| *v >= 0.0 && v.is_finite())
                .ok_or_else(|| {
                    CliError::Input(format!("tolerance `{value}` is not a finite number >= 0"))
                })?;
            let slot = match name.trim() {
                "transfer" => &mut t.transfer,
                "bogoliubov" => &mut t.bogoliubov,
                "spectra" => &mut t.spectra,
                "lossless_identity" => &mut t.lossless_identity,
                "psd" => &mut t.psd,
                "damping" => &mut t.damping,
                "stability" => &mut t.stability,
                other => {
                    return Err(CliError::Input(format!(
                        "unknown tolerance `{other}` (expected transfer, bogoliubov, spectra, \
                         lossless_identity, psd, damping or stability)"
                    )))
                }
            };
            *slot = v;
        }
        Ok(t)
    }
}

/// What an input resolves to.
struct Resolved {
    generator: LinearSLH,
    /// DPA parameters (with the loop reflectivity) when the closed forms apply,
    /// and whether the generator is the single-port variant.
    dpa: Option<(DpaParams, bool)>,
    omega: Option<Grid>,
    thetas: Vec<f64>,
}

/// Runs the CLI with the process's standard streams and returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run`] but writing to the given streams.
pub fn run_with_io<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<u8> {
    let pool = thread_pool()?;
    match cli.command {
        Command::Spectrum(a) => {
            let t = cmd_spectrum(&a, &pool, err)?;
            emit(&t, &a.out, out)?;
            Ok(0)
        }
        Command::SweepAlpha(a) => {
            let t = cmd_sweep_alpha(&a, &pool, err)?;
            emit(&t, &a.out, out)?;
            Ok(0)
        }
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::StaticLimit(a) => {
            let t = cmd_static_limit(&a, err)?;
            emit(&t, &a.out, out)?;
            Ok(0)
        }
    }
}

fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let n = match std::env::var("SQUEEZNET_THREADS") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| {
                CliError::Input(format!(
                    "SQUEEZNET_THREADS must be a positive integer, got `{s}`"
                ))
            })?,
        Err(std::env::VarError::NotPresent) => 0,
        Err(e) => return Err(CliError::Input(format!("SQUEEZNET_THREADS: {e}"))),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| CliError::Input(e.to_string()))
}

fn emit(t: &Table, o: &OutputArgs, out: &mut dyn Write) -> CliResult<()> {
    let text = match o.format {
        Format::Csv => t.to_csv(),
        Format::Json => t.to_json(),
    };
    match &o.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(format!("cannot write output: {e}"))),
    }
}

fn resolve(a: &InputArgs, err: &mut dyn Write) -> CliResult<Resolved> {
    match a.input.as_str() {
        "dpa-lossless" | "dpa-lossy" => {
            if a.component.is_some() {
                return Err(CliError::Input(
                    "--component applies only to network files".into(),
                ));
            }
            let single = a.input == "dpa-lossless";
            let p = DpaParams::new(
                a.kappa.unwrap_or(1.0),
                a.gamma.unwrap_or(if single { 0.0 } else { 0.1 }),
                a.epsilon.unwrap_or(0.5),
                a.alpha,
            )?;
            let generator = dpa::build_feedback_network(&p, single)?;
            Ok(Resolved {
                generator,
                dpa: Some((p, single)),
                omega: None,
                thetas: Vec::new(),
            })
        }
        path => {
            for (flag, set) in [
                ("--kappa", a.kappa.is_some()),
                ("--gamma", a.gamma.is_some()),
                ("--epsilon", a.epsilon.is_some()),
                ("--alpha", a.alpha.is_some()),
            ] {
                if set {
                    return Err(CliError::Input(format!(
                        "{flag} applies only to built-in scenarios"
                    )));
                }
            }
            resolve_file(Path::new(path), a.component.as_deref(), err)
        }
    }
}

fn resolve_file(path: &Path, component: Option<&str>, err: &mut dyn Write) -> CliResult<Resolved> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Input(format!(
            "`{}` is neither a built-in scenario (dpa-lossless, dpa-lossy) nor a readable file: {e}",
            path.display()
        ))
    })?;
    let report = |err: &mut dyn Write, diags: &[netdsl::Diagnostic]| {
        for d in diags {
            let _ = writeln!(err, "{}:{d}", path.display());
        }
    };
    let doc = netdsl::parse(&text).map_err(|d| {
        report(err, &d);
        CliError::Input(format!("{} has errors", path.display()))
    })?;
    report(err, &doc.warnings);
    let elaborated = netdsl::elaborate(&doc).map_err(|d| {
        report(err, &d);
        CliError::Input(format!("{} has errors", path.display()))
    })?;
    let chosen = match component {
        Some(name) => elaborated
            .into_iter()
            .find(|c| c.name == name)
            .ok_or_else(|| {
                CliError::Input(format!("no component `{name}` in {}", path.display()))
            })?,
        None => {
            let n = elaborated.len();
            let mut it = elaborated.into_iter();
            match (it.next(), n) {
                (Some(c), 1) => c,
                (None, _) => {
                    return Err(CliError::Input(format!(
                        "{} defines no components",
                        path.display()
                    )))
                }
                _ => {
                    return Err(CliError::Input(format!(
                        "{} defines {n} components; choose one with --component",
                        path.display()
                    )))
                }
            }
        }
    };

    // closed forms apply to a dpa shorthand that is open or looped on its signal port
    let decl = doc
        .component(&chosen.name)
        .expect("elaborated from this document");
    let dpa = match &decl.kind {
        ComponentKind::Dpa(p) => {
            let lp = doc.loops.iter().find(|l| l.component == chosen.name);
            match lp {
                None => Some((*p, false)),
                Some(l) if l.port == 1 => {
                    let t = doc
                        .splitter(&l.splitter)
                        .expect("resolved by the parser")
                        .splitter;
                    Some((p.with_alpha(Some(t.alpha))?, false))
                }
                Some(_) => None,
            }
        }
        ComponentKind::Slh(_) => None,
    };
    let probe = chosen
        .probes
        .iter()
        .find(|p| matches!(p.quantity, ProbeQuantity::Spectrum | ProbeQuantity::Psd));
    Ok(Resolved {
        generator: chosen.generator.clone(),
        dpa,
        omega: probe.and_then(|p| p.options.omega),
        thetas: probe.map(|p| p.options.thetas.clone()).unwrap_or_default(),
    })
}

fn require_dpa(r: &Resolved, cmd: &str) -> CliResult<(DpaParams, bool)> {
    r.dpa.ok_or_else(|| {
        CliError::Input(format!(
            "{cmd} needs a DPA: a built-in scenario or a `dpa` component looped on port 1"
        ))
    })
}

fn default_grid(g: Option<Grid>) -> Grid {
    g.unwrap_or_else(|| DEFAULT_OMEGA.parse().expect("valid default grid"))
}

fn cmd_spectrum(
    a: &SpectrumArgs,
    pool: &rayon::ThreadPool,
    err: &mut dyn Write,
) -> CliResult<Table> {
    let tol = Tolerances::parse(&a.input.tolerances)?;
    let res = resolve(&a.input, err)?;
    let grid = default_grid(a.omega.or(res.omega));
    let thetas = if a.theta.is_empty() {
        res.thetas.clone()
    } else {
        a.theta.clone()
    };
    if let Some(t) = thetas.iter().find(|t| !t.is_finite()) {
        return Err(CliError::Input(format!("theta must be finite, got {t}")));
    }
    let ss = build_state_space(&res.generator);
    let st = is_hurwitz(&ss, tol.stability)?;
    if !st.stable && a.input.require_stable {
        return Err(Error::Unstable {
            abscissa: st.abscissa,
        }
        .into());
    }

    let mut headers: Vec<String> = [
        "omega",
        "S_minus_re",
        "S_minus_im",
        "S_plus_re",
        "S_plus_im",
        "N11",
        "M11_re",
        "M11_im",
        "r",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    headers.extend(thetas.iter().map(|t| format!("P_theta_{t}")));
    headers.push("stable".into());
    let width = headers.len();
    let mut table = Table::new(headers);

    let points = grid.points();
    let rows: Vec<crate::Result<Vec<Cell>>> = pool.install(|| {
        points
            .par_iter()
            .map(|&w| {
                if !st.stable {
                    let mut row = vec![Cell::Num(w)];
                    row.resize(width - 1, Cell::Empty);
                    row.push(Cell::Bool(false));
                    return Ok(row);
                }
                let s = SpectralSample::compute(&ss, w)?;
                let (sm, sp, m) = (
                    s.response.s_minus[(0, 0)],
                    s.response.s_plus[(0, 0)],
                    s.m[(0, 0)],
                );
                let mut row = vec![
                    Cell::Num(w),
                    sm.re.into(),
                    sm.im.into(),
                    sp.re.into(),
                    sp.im.into(),
                    s.n[(0, 0)].re.into(),
                    m.re.into(),
                    m.im.into(),
                    s.r.into(),
                ];
                row.extend(thetas.iter().map(|&t| Cell::Num(s.psd(t)[(0, 0)].re)));
                row.push(Cell::Bool(true));
                Ok(row)
            })
            .collect()
    });
    for row in rows {
        table.push(row?);
    }
    Ok(table)
}

fn cmd_sweep_alpha(
    a: &SweepArgs,
    pool: &rayon::ThreadPool,
    err: &mut dyn Write,
) -> CliResult<Table> {
    let tol = Tolerances::parse(&a.input.tolerances)?;
    if a.input.alpha.is_some() {
        return Err(CliError::Input(
            "sweep-alpha takes --alpha-grid, not --alpha".into(),
        ));
    }
    let res = resolve(&a.input, err)?;
    let (base, single) = require_dpa(&res, "sweep-alpha")?;
    let base = base.with_alpha(None)?;
    let alpha_crit = dpa::critical_alpha(&base).ok();
    let alphas = a.alpha_grid.points();
    let params: Vec<DpaParams> = alphas
        .iter()
        .map(|&x| base.with_alpha(Some(x)))
        .collect::<crate::Result<_>>()?;

    let rows: Vec<crate::Result<(bool, Vec<Cell>)>> = pool.install(|| {
        params
            .par_iter()
            .map(|q| {
                let g = dpa::build_feedback_network(q, single)?;
                let ss = build_state_space(&g);
                let st = is_hurwitz(&ss, tol.stability)?;
                let r = if st.stable && single {
                    let v = squeezing_function(&frequency_response(&ss, 0.0)?)?;
                    v.is_finite().then_some(v)
                } else {
                    None
                };
                Ok((
                    st.stable,
                    vec![
                        Cell::Num(q.alpha.unwrap_or(0.0)),
                        Cell::Num(q.effective_kappa()),
                        alpha_crit.into(),
                        Cell::Bool(st.stable),
                        Cell::Num(st.abscissa),
                        r.into(),
                    ],
                ))
            })
            .collect()
    });
    let mut table = Table::new(
        [
            "alpha",
            "kappa_eff",
            "alpha_crit",
            "stable",
            "abscissa",
            "r_at_omega0",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
    );
    for row in rows {
        let (stable, cells) = row?;
        if !stable && a.input.require_stable {
            let Cell::Num(alpha) = cells[0] else {
                unreachable!()
            };
            return Err(CliError::Refused(format!(
                "system is unstable at alpha = {alpha}"
            )));
        }
        table.push(cells);
    }
    Ok(table)
}

struct Check {
    name: &'static str,
    /// `None` when the check does not apply to these parameters.
    deviation: Option<f64>,
    tol: f64,
}

fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<u8> {
    let tol = Tolerances::parse(&a.input.tolerances)?;
    let res = resolve(&a.input, err)?;
    let (p, _single) = require_dpa(&res, "verify")?;
    let ss = build_state_space(&res.generator);
    let st = is_hurwitz(&ss, tol.stability)?;
    if !st.stable && a.input.require_stable {
        return Err(Error::Unstable {
            abscissa: st.abscissa,
        }
        .into());
    }
    let points = default_grid(a.omega.or(res.omega)).points();
    let ports = ss.ports();
    let lossless = p.gamma == 0.0;

    let expected_abscissa = -(p.total_damping() - p.epsilon) / 2.0;
    let mut checks = vec![Check {
        name: "drift_abscissa",
        deviation: Some((st.abscissa - expected_abscissa).abs()),
        tol: tol.transfer,
    }];

    let mut transfer_dev = 0.0_f64;
    for &w in &points {
        let s = c64(0.0, -w);
        let numeric = transfer::evaluate_transfer(&ss, s)?;
        let (cm, cp) = dpa::closed_form_transfer(&p, s)?;
        let closed =
            DoubledMatrix::new(cm.block(0, 0, ports, ports), cp.block(0, 0, ports, ports))?;
        transfer_dev = transfer_dev.max(numeric.max_abs_diff(&closed));
    }
    checks.push(Check {
        name: "transfer_closed_form",
        deviation: Some(transfer_dev),
        tol: tol.transfer,
    });

    let samples: Option<Vec<SpectralSample>> = if st.stable {
        Some(
            points
                .iter()
                .map(|&w| SpectralSample::compute(&ss, w))
                .collect::<crate::Result<_>>()?,
        )
    } else {
        None
    };
    let over = |f: &dyn Fn(&SpectralSample) -> crate::Result<f64>| -> CliResult<Option<f64>> {
        match &samples {
            None => Ok(None),
            Some(v) => {
                let mut m = 0.0_f64;
                for s in v {
                    m = m.max(f(s)?);
                }
                Ok(Some(m))
            }
        }
    };

    checks.push(Check {
        name: "bogoliubov",
        deviation: over(&|s| s.response.doubled().bogoliubov_defect())?,
        tol: tol.bogoliubov,
    });
    checks.push(Check {
        name: "spectra_closed_form",
        deviation: over(&|s| {
            let c = dpa::closed_form_spectra(&p, s.omega)?;
            let dn = rel_dev(s.n[(0, 0)].re, c.n11) + s.n[(0, 0)].im.abs();
            let dm = (s.m[(0, 0)] - Complex64::new(c.m11, 0.0)).norm() / c.m11.abs().max(1.0);
            Ok(dn.max(dm))
        })?,
        tol: tol.spectra,
    });
    checks.push(Check {
        name: "lossless_identity",
        deviation: if lossless {
            over(&|s| {
                let n = s.n[(0, 0)].re;
                Ok(rel_dev(s.m[(0, 0)].norm_sqr(), (n + 1.0) * n))
            })?
        } else {
            None
        },
        tol: tol.lossless_identity,
    });
    checks.push(Check {
        name: "psd_extremes",
        deviation: if lossless {
            over(&|s| {
                let r = dpa::lossless_squeezing(&p, s.omega)?;
                let hi = s.psd(0.0)[(0, 0)].re;
                let lo = s.psd(std::f64::consts::FRAC_PI_2)[(0, 0)].re;
                let mut d = rel_dev(hi, (2.0 * r).exp())
                    .max(rel_dev(lo, (-2.0 * r).exp()))
                    .max((hi * lo - 1.0).abs());
                if let Some(rn) = s.r {
                    d = d.max((rn - r).abs());
                }
                Ok(d)
            })?
        } else {
            None
        },
        tol: tol.psd,
    });
    checks.push(Check {
        name: "effective_damping",
        deviation: match p.alpha {
            Some(x) if x > 0.0 => {
                Some((res.generator.c_minus()[(0, 0)].norm() - p.effective_kappa().sqrt()).abs())
            }
            _ => None,
        },
        tol: tol.damping,
    });

    let _ = writeln!(
        out,
        "# kappa={} gamma={} epsilon={} alpha={} ports={} stable={}",
        p.kappa,
        p.gamma,
        p.epsilon,
        p.alpha.map_or("open".to_string(), |x| x.to_string()),
        ports,
        st.stable
    );
    let mut failed = false;
    for c in &checks {
        let line = match c.deviation {
            Some(d) => {
                let pass = d <= c.tol;
                failed |= !pass;
                format!(
                    "{} {:<22} max_dev={} tol={}",
                    if pass { "PASS" } else { "FAIL" },
                    c.name,
                    fmt_num(d),
                    fmt_num(c.tol)
                )
            }
            None => format!("SKIP {:<22} not applicable", c.name),
        };
        let _ = writeln!(out, "{line}");
    }
    Ok(if failed { 1 } else { 0 })
}

fn cmd_static_limit(a: &StaticArgs, err: &mut dyn Write) -> CliResult<Table> {
    let res = resolve(&a.input, err)?;
    let (p, _) = require_dpa(&res, "static-limit")?;
    // the loop only renormalises kappa
    let q = DpaParams::open_loop(p.effective_kappa(), p.gamma, p.epsilon)?;
    let sl = dpa::static_limit_matrices(&q)?;
    let numeric = transfer::static_limit(&dpa::build_open_loop_generator(&q))?;
    let printed = DoubledMatrix::new(sl.s_minus.clone(), sl.s_plus.clone())?;
    let inelastic = inelastic_component(InelasticKind::StaticLimitDpa {
        kappa: q.kappa,
        gamma: q.gamma,
        epsilon: q.epsilon,
        quadrature: Quadrature::Amplitude,
    })?;
    let mut eig: Vec<f64> = inelastic.eigenvalues()?.iter().map(|z| z.re).collect();
    eig.sort_by(f64::total_cmp);
    let kg = q.kappa + q.gamma;
    let expected = (kg + q.epsilon).powi(4) / (kg * kg - q.epsilon * q.epsilon).powi(2);

    let mut t = Table::new(vec!["key".into(), "re".into(), "im".into()]);
    let mut entry =
        |key: String, z: Complex64| t.push(vec![Cell::Text(key), z.re.into(), z.im.into()]);
    let mut matrix = |name: &str, m: &ComplexMatrix| {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                entry(format!("{name}_{}{}", i + 1, j + 1), m[(i, j)]);
            }
        }
    };
    matrix("S_minus", &sl.s_minus);
    matrix("S_plus", &sl.s_plus);
    let real = |key: &str, v: Option<f64>| vec![Cell::Text(key.into()), v.into(), Cell::Empty];
    t.push(real("r", sl.r));
    for (i, e) in eig.iter().enumerate() {
        t.push(real(&format!("inelastic_eig_{}", i + 1), Some(*e)));
    }
    t.push(real("inelastic_eig_expected", Some(expected)));
    t.push(real(
        "bogoliubov_defect",
        Some(printed.bogoliubov_defect()?),
    ));
    t.push(real(
        "numeric_deviation",
        Some(numeric.max_abs_diff(&printed)),
    ));
    Ok(t)
}
