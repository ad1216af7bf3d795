//! A small line-oriented language for describing feedback networks.
//!
//! ```text
//! # lossy DPA in a beam-splitter loop
//! param k = sqrt(4)
//! component amp dpa(kappa=k, gamma=0.1, epsilon=0.5)
//! splitter bs standard(alpha=0.3)
//! loop bs around amp port 1
//! probe amp spectrum omega=-10:10:101 theta=0
//! ```
//!
//! Statements:
//!
//! | statement | form |
//! |-----------|------|
//! | `param` | `param <name> = <expr>` |
//! | `component` | `component <name> dpa(kappa=<expr>, gamma=<expr>, epsilon=<expr>)` |
//! | | `component <name> slh { s=[[..]], cminus=[[..]], cplus=[[..]], omega_minus=[[..]], omega_plus=[[..]] }` |
//! | `splitter` | `splitter <name> standard(alpha=<expr>)` |
//! | `loop` | `loop <splitter> around <component> port <int>` |
//! | `probe` | `probe <component> spectrum omega=<a>:<b>:<n> [theta=<expr>]...` |
//! | | `probe <component> psd omega=<a>:<b>:<n> theta=<expr>...` |
//! | | `probe <component> stability` / `probe <component> static-limit` |
//!
//! Expressions support `+ - * /`, unary minus, parentheses, `sqrt()`, the
//! constant `pi`, previously defined parameters and complex literals such as
//! `0.5-2i`. A statement continues onto following lines while a bracket or
//! brace is open. Ports are numbered from 1.
//!
//! Parsing never aborts: every malformed statement yields exactly one error
//! diagnostic and the remaining statements are still checked.

mod elaborate;
mod lexer;
mod parser;

use std::fmt;

pub use elaborate::{elaborate, ElaboratedComponent};
pub use parser::parse;

use crate::dpa::DpaParams;
use crate::grid::Grid;
use crate::slh::{BeamSplitter, LinearSLH};

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub severity: Severity,
}

impl Diagnostic {
    pub fn error(span: Span, message: impl Into<String>) -> Self {
        Self {
            line: span.line,
            column: span.column,
            message: message.into(),
            severity: Severity::Error,
        }
    }

    pub fn warning(span: Span, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Warning,
            ..Self::error(span, message)
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(
            f,
            "{}:{}: {}: {}",
            self.line, self.column, sev, self.message
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ComponentKind {
    /// `dpa(...)` shorthand; the loop reflectivity is always absent here and
    /// comes from `loop` statements instead.
    Dpa(DpaParams),
    Slh(LinearSLH),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentDecl {
    pub name: String,
    pub kind: ComponentKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitterDecl {
    pub name: String,
    pub splitter: BeamSplitter,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LoopDecl {
    pub splitter: String,
    pub component: String,
    /// 1-based port number as written.
    pub port: usize,
    pub span: Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeQuantity {
    Spectrum,
    Psd,
    Stability,
    StaticLimit,
}

impl fmt::Display for ProbeQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Spectrum => "spectrum",
            Self::Psd => "psd",
            Self::Stability => "stability",
            Self::StaticLimit => "static-limit",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProbeOptions {
    pub omega: Option<Grid>,
    pub thetas: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Probe {
    pub component: String,
    pub quantity: ProbeQuantity,
    pub options: ProbeOptions,
    pub span: Span,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct NetworkDocument {
    pub params: Vec<(String, f64)>,
    pub components: Vec<ComponentDecl>,
    pub splitters: Vec<SplitterDecl>,
    pub loops: Vec<LoopDecl>,
    pub probes: Vec<Probe>,
    /// Non-fatal diagnostics.
    pub warnings: Vec<Diagnostic>,
}

impl NetworkDocument {
    pub fn component(&self, name: &str) -> Option<&ComponentDecl> {
        self.components.iter().find(|c| c.name == name)
    }

    pub fn splitter(&self, name: &str) -> Option<&SplitterDecl> {
        self.splitters.iter().find(|s| s.name == name)
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }
}
