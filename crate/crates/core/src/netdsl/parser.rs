use std::collections::{HashMap, HashSet};

use num_complex::Complex64;

use super::lexer::{tokenize, Tok, Token};
use super::{
    ComponentDecl, ComponentKind, Diagnostic, LoopDecl, NetworkDocument, Probe, ProbeOptions,
    ProbeQuantity, Span, SplitterDecl,
};
use crate::algebra::ComplexMatrix;
use crate::dpa::DpaParams;
use crate::grid::Grid;
use crate::slh::{standard_splitter, LinearSLH};

const STATEMENT_KEYWORDS: &[&str] = &["param", "component", "splitter", "loop", "probe"];
const RESERVED: &[&str] = &["pi", "sqrt"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum NameKind {
    Param,
    Component,
    Splitter,
}

impl NameKind {
    fn noun(self) -> &'static str {
        match self {
            Self::Param => "parameter",
            Self::Component => "component",
            Self::Splitter => "splitter",
        }
    }
}

/// `Silent` aborts a statement whose error was already reported elsewhere
/// (a reference to a name whose definition failed).
enum Fail {
    Report(Diagnostic),
    Silent,
}

type PResult<T> = std::result::Result<T, Fail>;

fn fail<T>(span: Span, msg: impl Into<String>) -> PResult<T> {
    Err(Fail::Report(Diagnostic::error(span, msg)))
}

struct Statement {
    tokens: Vec<Token>,
    /// Terminating newline or end of input.
    end: Token,
}

/// Newlines end a statement unless a bracket is open; an open bracket is
/// still closed off when the next line starts with a statement keyword, so
/// one missing `]` does not swallow the rest of the file.
fn split_statements(tokens: Vec<Token>) -> Vec<Statement> {
    let mut out = Vec::new();
    let mut cur: Vec<Token> = Vec::new();
    let mut depth = 0usize;
    let mut iter = tokens.into_iter().peekable();
    while let Some(t) = iter.next() {
        match &t.tok {
            Tok::Eof => {
                if !cur.is_empty() {
                    out.push(Statement {
                        tokens: std::mem::take(&mut cur),
                        end: t,
                    });
                }
                break;
            }
            Tok::Newline => {
                let next_is_keyword = matches!(
                    iter.peek().map(|n| &n.tok),
                    Some(Tok::Ident(k)) if STATEMENT_KEYWORDS.contains(&k.as_str())
                );
                if depth == 0 || next_is_keyword {
                    if !cur.is_empty() {
                        out.push(Statement {
                            tokens: std::mem::take(&mut cur),
                            end: t,
                        });
                    }
                    depth = 0;
                }
            }
            Tok::Punct('(' | '[' | '{') => {
                depth += 1;
                cur.push(t);
            }
            Tok::Punct(')' | ']' | '}') => {
                depth = depth.saturating_sub(1);
                cur.push(t);
            }
            _ => cur.push(t),
        }
    }
    out
}

/// First lexical or bracket-balance problem in a statement.
fn structural_error(stmt: &Statement) -> Option<Diagnostic> {
    let mut stack: Vec<(char, Span)> = Vec::new();
    for t in &stmt.tokens {
        match &t.tok {
            Tok::Error(msg) => return Some(Diagnostic::error(t.span, msg.clone())),
            Tok::Punct(c @ ('(' | '[' | '{')) => stack.push((*c, t.span)),
            Tok::Punct(c @ (')' | ']' | '}')) => {
                let open = match c {
                    ')' => '(',
                    ']' => '[',
                    _ => '{',
                };
                match stack.pop() {
                    Some((o, _)) if o == open => {}
                    _ => return Some(Diagnostic::error(t.span, format!("unmatched `{c}`"))),
                }
            }
            _ => {}
        }
    }
    stack
        .last()
        .map(|&(c, span)| Diagnostic::error(span, format!("unclosed `{c}`")))
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Number(v) => format!("number `{v}`"),
        Tok::Imag(v) => format!("number `{v}i`"),
        Tok::Punct(c) => format!("`{c}`"),
        Tok::Newline | Tok::Eof => "end of line".into(),
        Tok::Error(m) => m.clone(),
    }
}

struct Cursor<'a> {
    toks: &'a [Token],
    end: &'a Token,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> &'a Token {
        self.toks.get(self.pos).unwrap_or(self.end)
    }

    fn bump(&mut self) -> &'a Token {
        let t = self.peek();
        if self.pos < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Punct(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, c: char) -> PResult<Span> {
        let t = self.bump();
        if t.tok == Tok::Punct(c) {
            Ok(t.span)
        } else {
            fail(
                t.span,
                format!("expected `{c}`, found {}", describe(&t.tok)),
            )
        }
    }

    fn expect_ident(&mut self, what: &str) -> PResult<(String, Span)> {
        let t = self.bump();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.span)),
            other => fail(
                t.span,
                format!("expected {what}, found {}", describe(other)),
            ),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<Span> {
        let t = self.bump();
        match &t.tok {
            Tok::Ident(s) if s == kw => Ok(t.span),
            other => fail(
                t.span,
                format!("expected `{kw}`, found {}", describe(other)),
            ),
        }
    }

    fn finish(&self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            let t = self.peek();
            fail(t.span, format!("unexpected {}", describe(&t.tok)))
        }
    }
}

#[derive(Default)]
struct Parser {
    doc: NetworkDocument,
    names: HashMap<String, NameKind>,
    poisoned: HashSet<String>,
    params: HashMap<String, f64>,
    param_spans: Vec<(String, Span)>,
    used: HashSet<String>,
    /// component → its looped port
    loops: HashMap<String, usize>,
    /// Name being defined by the current statement; poisoned if it fails.
    pending: Option<String>,
    diags: Vec<Diagnostic>,
}

/// Parses a network document. On success the document carries any
/// warnings; otherwise all diagnostics (errors and warnings) are returned in
/// source order.
pub fn parse(text: &str) -> Result<NetworkDocument, Vec<Diagnostic>> {
    let mut p = Parser::default();
    for stmt in split_statements(tokenize(text)) {
        if let Some(d) = structural_error(&stmt) {
            p.poison_defined_name(&stmt);
            p.diags.push(d);
            continue;
        }
        p.pending = None;
        let mut cur = Cursor {
            toks: &stmt.tokens,
            end: &stmt.end,
            pos: 0,
        };
        let res = p.statement(&mut cur);
        if let Err(f) = res {
            if let Some(name) = p.pending.take() {
                p.poisoned.insert(name);
            }
            if let Fail::Report(d) = f {
                p.diags.push(d);
            }
        }
    }
    for (name, span) in &p.param_spans {
        if !p.used.contains(name) {
            p.diags.push(Diagnostic::warning(
                *span,
                format!("parameter `{name}` is never used"),
            ));
        }
    }
    p.diags.sort_by_key(|d| (d.line, d.column));
    if p.diags.iter().any(Diagnostic::is_error) {
        Err(p.diags)
    } else {
        p.doc.warnings = p.diags;
        Ok(p.doc)
    }
}

impl Parser {
    /// A statement rejected before parsing still shadows the name it was
    /// about to define, so later references stay quiet.
    fn poison_defined_name(&mut self, stmt: &Statement) {
        if let [Token {
            tok: Tok::Ident(kw),
            ..
        }, Token {
            tok: Tok::Ident(name),
            ..
        }, ..] = stmt.tokens.as_slice()
        {
            if matches!(kw.as_str(), "param" | "component" | "splitter")
                && !self.names.contains_key(name)
            {
                self.poisoned.insert(name.clone());
            }
        }
    }

    fn statement(&mut self, c: &mut Cursor) -> PResult<()> {
        let t = c.bump();
        let Tok::Ident(kw) = &t.tok else {
            return fail(
                t.span,
                format!("expected a statement, found {}", describe(&t.tok)),
            );
        };
        match kw.as_str() {
            "param" => self.param(c),
            "component" => self.component(c),
            "splitter" => self.splitter(c),
            "loop" => self.loop_stmt(c, t.span),
            "probe" => self.probe(c, t.span),
            other => fail(t.span, format!("unknown statement `{other}`")),
        }
    }

    fn new_name(&mut self, c: &mut Cursor, what: &str) -> PResult<(String, Span)> {
        let (name, span) = c.expect_ident(what)?;
        if RESERVED.contains(&name.as_str()) {
            return fail(span, format!("`{name}` is reserved"));
        }
        if let Some(kind) = self.names.get(&name) {
            return fail(
                span,
                format!("`{name}` is already defined as a {}", kind.noun()),
            );
        }
        if self.poisoned.contains(&name) {
            return Err(Fail::Silent);
        }
        self.pending = Some(name.clone());
        Ok((name, span))
    }

    fn define(&mut self, name: &str, kind: NameKind) {
        self.names.insert(name.to_string(), kind);
        self.pending = None;
    }

    fn lookup(&mut self, c: &mut Cursor, kind: NameKind) -> PResult<(String, Span)> {
        let (name, span) = c.expect_ident(&format!("a {} name", kind.noun()))?;
        if self.poisoned.contains(&name) {
            return Err(Fail::Silent);
        }
        match self.names.get(&name) {
            Some(&k) if k == kind => Ok((name, span)),
            Some(k) => fail(
                span,
                format!("`{name}` is a {}, not a {}", k.noun(), kind.noun()),
            ),
            None => fail(span, format!("undefined {} `{name}`", kind.noun())),
        }
    }

    fn param(&mut self, c: &mut Cursor) -> PResult<()> {
        let (name, span) = self.new_name(c, "a parameter name")?;
        c.expect_punct('=')?;
        let v = self.real_expr(c)?;
        c.finish()?;
        self.define(&name, NameKind::Param);
        self.params.insert(name.clone(), v);
        self.param_spans.push((name.clone(), span));
        self.doc.params.push((name, v));
        Ok(())
    }

    fn component(&mut self, c: &mut Cursor) -> PResult<()> {
        let (name, span) = self.new_name(c, "a component name")?;
        let (kind, kspan) = c.expect_ident("a component kind")?;
        let kind = match kind.as_str() {
            "dpa" => {
                c.expect_punct('(')?;
                let args =
                    self.keyword_args(c, ')', "dpa", &["kappa", "gamma", "epsilon"], |p, c| {
                        p.real_expr(c)
                    })?;
                c.finish()?;
                let get = |k: &str| args.iter().find(|(n, _)| n == k).map(|&(_, v)| v);
                let (Some(kappa), Some(epsilon)) = (get("kappa"), get("epsilon")) else {
                    let missing = if get("kappa").is_none() {
                        "kappa"
                    } else {
                        "epsilon"
                    };
                    return fail(kspan, format!("dpa is missing `{missing}`"));
                };
                let gamma = get("gamma").unwrap_or(0.0);
                match DpaParams::open_loop(kappa, gamma, epsilon) {
                    Ok(p) => ComponentKind::Dpa(p),
                    Err(e) => return fail(kspan, format!("invalid dpa `{name}`: {e}")),
                }
            }
            "slh" => {
                c.expect_punct('{')?;
                let fields = ["s", "cminus", "cplus", "omega_minus", "omega_plus"];
                let args = self.keyword_args(c, '}', "slh", &fields, |p, c| p.matrix(c))?;
                c.finish()?;
                let take = |k: &str| args.iter().find(|(n, _)| n == k).map(|(_, m)| m.clone());
                let Some(s) = take("s") else {
                    return fail(kspan, "slh is missing `s`");
                };
                let Some(cm) = take("cminus") else {
                    return fail(kspan, "slh is missing `cminus`");
                };
                let (n, m) = cm.shape();
                let cp = take("cplus").unwrap_or_else(|| ComplexMatrix::zeros(n, m));
                let om = take("omega_minus").unwrap_or_else(|| ComplexMatrix::zeros(m, m));
                let op = take("omega_plus").unwrap_or_else(|| ComplexMatrix::zeros(m, m));
                match LinearSLH::new(s, cm, cp, om, op) {
                    Ok(g) => ComponentKind::Slh(g),
                    Err(e) => return fail(kspan, format!("invalid slh `{name}`: {e}")),
                }
            }
            other => {
                return fail(
                    kspan,
                    format!("unknown component kind `{other}` (expected `dpa` or `slh`)"),
                )
            }
        };
        self.define(&name, NameKind::Component);
        self.doc.components.push(ComponentDecl { name, kind, span });
        Ok(())
    }

    fn splitter(&mut self, c: &mut Cursor) -> PResult<()> {
        let (name, span) = self.new_name(c, "a splitter name")?;
        let kspan = c.expect_keyword("standard")?;
        c.expect_punct('(')?;
        let args = self.keyword_args(c, ')', "standard", &["alpha"], |p, c| p.real_expr(c))?;
        c.finish()?;
        let Some(&(_, alpha)) = args.first() else {
            return fail(kspan, "standard is missing `alpha`");
        };
        let splitter = standard_splitter(alpha).or_else(|e| fail(kspan, e.to_string()))?;
        self.define(&name, NameKind::Splitter);
        self.doc.splitters.push(SplitterDecl {
            name,
            splitter,
            span,
        });
        Ok(())
    }

    fn loop_stmt(&mut self, c: &mut Cursor, span: Span) -> PResult<()> {
        let (splitter, _) = self.lookup(c, NameKind::Splitter)?;
        c.expect_keyword("around")?;
        let (component, _) = self.lookup(c, NameKind::Component)?;
        c.expect_keyword("port")?;
        let t = c.bump();
        let port = match t.tok {
            Tok::Number(v) if v >= 1.0 && v.fract() == 0.0 && v < 1e9 => v as usize,
            ref other => {
                return fail(
                    t.span,
                    format!(
                        "expected a positive integer port, found {}",
                        describe(other)
                    ),
                )
            }
        };
        c.finish()?;
        if let Some(&prev) = self.loops.get(&component) {
            return if prev == port {
                fail(
                    span,
                    format!("port {port} of `{component}` already has a loop"),
                )
            } else {
                fail(
                    span,
                    format!(
                        "`{component}` already has a loop on port {prev}; stacked loops are not supported"
                    ),
                )
            };
        }
        self.loops.insert(component.clone(), port);
        self.doc.loops.push(LoopDecl {
            splitter,
            component,
            port,
            span,
        });
        Ok(())
    }

    fn probe(&mut self, c: &mut Cursor, span: Span) -> PResult<()> {
        let (component, _) = self.lookup(c, NameKind::Component)?;
        let qt = c.bump();
        let quantity = match &qt.tok {
            Tok::Ident(q) if q == "spectrum" => ProbeQuantity::Spectrum,
            Tok::Ident(q) if q == "psd" => ProbeQuantity::Psd,
            Tok::Ident(q) if q == "stability" => ProbeQuantity::Stability,
            Tok::Ident(q) if q == "static" => {
                let dash = c.bump();
                let limit = c.bump();
                let adjacent = dash.tok == Tok::Punct('-')
                    && dash.start == qt.end
                    && limit.tok == Tok::Ident("limit".into())
                    && limit.start == dash.end;
                if !adjacent {
                    return fail(qt.span, "expected `static-limit`");
                }
                ProbeQuantity::StaticLimit
            }
            other => {
                return fail(
                    qt.span,
                    format!(
                    "unknown probe quantity {} (expected spectrum, psd, stability or static-limit)",
                    describe(other)
                ),
                )
            }
        };
        let mut options = ProbeOptions::default();
        while !c.at_end() {
            let (key, kspan) = c.expect_ident("a probe option")?;
            if matches!(
                quantity,
                ProbeQuantity::Stability | ProbeQuantity::StaticLimit
            ) {
                return fail(kspan, format!("`{quantity}` probes take no options"));
            }
            c.expect_punct('=')?;
            match key.as_str() {
                "omega" => {
                    if options.omega.is_some() {
                        return fail(kspan, "duplicate option `omega`");
                    }
                    options.omega = Some(self.grid(c, kspan)?);
                }
                "theta" => options.thetas.push(self.real_expr(c)?),
                other => {
                    return fail(
                        kspan,
                        format!("unknown probe option `{other}` (expected omega or theta)"),
                    )
                }
            }
        }
        match quantity {
            ProbeQuantity::Spectrum | ProbeQuantity::Psd if options.omega.is_none() => {
                return fail(
                    qt.span,
                    format!("`{quantity}` probe needs `omega=start:stop:count`"),
                );
            }
            ProbeQuantity::Psd if options.thetas.is_empty() => {
                return fail(qt.span, "`psd` probe needs at least one `theta`");
            }
            _ => {}
        }
        self.doc.probes.push(Probe {
            component,
            quantity,
            options,
            span,
        });
        Ok(())
    }

    fn grid(&mut self, c: &mut Cursor, span: Span) -> PResult<Grid> {
        let start = self.real_expr(c)?;
        c.expect_punct(':')?;
        let stop = self.real_expr(c)?;
        c.expect_punct(':')?;
        let t = c.bump();
        let count = match t.tok {
            Tok::Number(v) if v >= 0.0 && v.fract() == 0.0 && v < 1e9 => v as usize,
            ref other => {
                return fail(
                    t.span,
                    format!("expected an integer point count, found {}", describe(other)),
                )
            }
        };
        Grid::new(start, stop, count).or_else(|e| fail(span, e.to_string()))
    }

    /// `key=value, ...` up to `close`; each key at most once.
    fn keyword_args<T>(
        &mut self,
        c: &mut Cursor,
        close: char,
        owner: &str,
        allowed: &[&str],
        mut value: impl FnMut(&mut Self, &mut Cursor) -> PResult<T>,
    ) -> PResult<Vec<(String, T)>> {
        let mut out: Vec<(String, T)> = Vec::new();
        if c.eat_punct(close) {
            return Ok(out);
        }
        loop {
            let (key, kspan) = c.expect_ident("an argument name")?;
            if !allowed.contains(&key.as_str()) {
                return fail(
                    kspan,
                    format!(
                        "unknown argument `{key}` for {owner} (expected {})",
                        allowed.join(", ")
                    ),
                );
            }
            if out.iter().any(|(k, _)| *k == key) {
                return fail(kspan, format!("duplicate argument `{key}`"));
            }
            c.expect_punct('=')?;
            let v = value(self, c)?;
            out.push((key, v));
            if c.eat_punct(close) {
                return Ok(out);
            }
            if !c.eat_punct(',') {
                let t = c.peek();
                return fail(
                    t.span,
                    format!("expected `,` or `{close}`, found {}", describe(&t.tok)),
                );
            }
        }
    }

    fn matrix(&mut self, c: &mut Cursor) -> PResult<ComplexMatrix> {
        c.expect_punct('[')?;
        let mut rows: Vec<Vec<Complex64>> = Vec::new();
        loop {
            let rspan = c.expect_punct('[')?;
            let mut row = vec![self.expr(c)?];
            while c.eat_punct(',') {
                row.push(self.expr(c)?);
            }
            c.expect_punct(']')?;
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return fail(
                        rspan,
                        format!(
                            "row {} has {} {}, expected {}",
                            rows.len() + 1,
                            row.len(),
                            if row.len() == 1 { "entry" } else { "entries" },
                            first.len()
                        ),
                    );
                }
            }
            rows.push(row);
            if c.eat_punct(']') {
                break;
            }
            c.expect_punct(',')?;
        }
        Ok(ComplexMatrix::from_rows(&rows).expect("rectangular finite rows"))
    }

    fn real_expr(&mut self, c: &mut Cursor) -> PResult<f64> {
        let span = c.peek().span;
        let v = self.expr(c)?;
        if v.im != 0.0 {
            return fail(span, format!("expected a real value, got {v}"));
        }
        Ok(v.re)
    }

    fn expr(&mut self, c: &mut Cursor) -> PResult<Complex64> {
        let span = c.peek().span;
        let v = self.sum(c)?;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return fail(span, "expression is not finite");
        }
        Ok(v)
    }

    fn sum(&mut self, c: &mut Cursor) -> PResult<Complex64> {
        let mut v = self.product(c)?;
        loop {
            if c.eat_punct('+') {
                v += self.product(c)?;
            } else if c.eat_punct('-') {
                v -= self.product(c)?;
            } else {
                return Ok(v);
            }
        }
    }

    fn product(&mut self, c: &mut Cursor) -> PResult<Complex64> {
        let mut v = self.unary(c)?;
        loop {
            if c.eat_punct('*') {
                v *= self.unary(c)?;
            } else if c.peek().tok == Tok::Punct('/') {
                let span = c.bump().span;
                let d = self.unary(c)?;
                if d == Complex64::new(0.0, 0.0) {
                    return fail(span, "division by zero");
                }
                v /= d;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self, c: &mut Cursor) -> PResult<Complex64> {
        if c.eat_punct('-') {
            Ok(-self.unary(c)?)
        } else if c.eat_punct('+') {
            self.unary(c)
        } else {
            self.primary(c)
        }
    }

    fn primary(&mut self, c: &mut Cursor) -> PResult<Complex64> {
        let t = c.bump();
        match &t.tok {
            Tok::Number(v) => Ok(Complex64::new(*v, 0.0)),
            Tok::Imag(v) => Ok(Complex64::new(0.0, *v)),
            Tok::Punct('(') => {
                let v = self.sum(c)?;
                c.expect_punct(')')?;
                Ok(v)
            }
            Tok::Ident(name) if name == "pi" => Ok(Complex64::new(std::f64::consts::PI, 0.0)),
            Tok::Ident(name) if name == "sqrt" => {
                c.expect_punct('(')?;
                let v = self.sum(c)?;
                c.expect_punct(')')?;
                Ok(v.sqrt())
            }
            Tok::Ident(name) => {
                if self.poisoned.contains(name) {
                    return Err(Fail::Silent);
                }
                match self.names.get(name) {
                    Some(NameKind::Param) => {
                        self.used.insert(name.clone());
                        Ok(Complex64::new(self.params[name], 0.0))
                    }
                    Some(k) => fail(
                        t.span,
                        format!("`{name}` is a {}, not a parameter", k.noun()),
                    ),
                    None => fail(t.span, format!("undefined parameter `{name}`")),
                }
            }
            other => fail(
                t.span,
                format!("expected an expression, found {}", describe(other)),
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn errors(src: &str) -> Vec<String> {
        parse(src)
            .unwrap_err()
            .iter()
            .map(|d| d.to_string())
            .collect()
    }

    #[test]
    fn sqrt_param_feeds_dpa() {
        let doc =
            parse("param k = sqrt(4)\ncomponent a dpa(kappa=k, gamma=0, epsilon=1)\n").unwrap();
        let ComponentKind::Dpa(p) = &doc.components[0].kind else {
            panic!()
        };
        assert_eq!(p.kappa, 2.0);
        assert!(doc.warnings.is_empty());
    }

    #[test]
    fn duplicate_component_reports_second_definition() {
        let e = errors(
            "component a dpa(kappa=1, epsilon=0.5)\ncomponent a dpa(kappa=1, epsilon=0.5)\n",
        );
        assert_eq!(
            e,
            vec!["2:11: error: `a` is already defined as a component"]
        );
    }

    #[test]
    fn failed_definition_is_not_reported_again() {
        let e = errors("param k = 1/0\ncomponent a dpa(kappa=k, epsilon=0.5)\nprobe a stability\n");
        assert_eq!(e, vec!["1:12: error: division by zero"]);
    }

    #[test]
    fn one_error_per_bad_statement() {
        let src = "param a = 1 +\nparam b = 2\nsplitter s standard(alpha=b)\nparam c = $\n";
        let e = errors(src);
        assert_eq!(e.len(), 3, "{e:?}");
    }

    #[test]
    fn multiline_slh_block() {
        let src = "component c slh {\n  s=[[1]],\n  cminus=[[1]],\n  omega_plus=[[0.25i]]\n}\n";
        let doc = parse(src).unwrap();
        let ComponentKind::Slh(g) = &doc.components[0].kind else {
            panic!()
        };
        assert_eq!(g.omega_plus()[(0, 0)], Complex64::new(0.0, 0.25));
    }

    #[test]
    fn unclosed_bracket_does_not_swallow_next_statement() {
        let e = errors("component c slh { s=[[1]], cminus=[[1]\nprobe c stability\n");
        assert_eq!(e, vec!["1:35: error: unclosed `[`"]);
    }

    #[test]
    fn static_limit_needs_adjacent_tokens() {
        let base = "component a dpa(kappa=1, epsilon=0.5)\n";
        assert!(parse(&format!("{base}probe a static-limit\n")).is_ok());
        assert!(parse(&format!("{base}probe a static - limit\n")).is_err());
    }

    #[test]
    fn unused_parameter_warns() {
        let doc = parse("param z = 3\n").unwrap();
        assert_eq!(
            doc.warnings[0].to_string(),
            "1:7: warning: parameter `z` is never used"
        );
    }

    #[test]
    fn complex_value_rejected_where_real_needed() {
        let e = errors("param z = 1+2i\n");
        assert_eq!(e, vec!["1:11: error: expected a real value, got 1+2i"]);
    }

    #[test]
    fn deterministic() {
        let src = "param k=2\ncomponent a dpa(kappa=k, gamma=0.1, epsilon=0.5)\nprobe a spectrum omega=-1:1:3 theta=0\n";
        assert_eq!(parse(src), parse(src));
    }
}
