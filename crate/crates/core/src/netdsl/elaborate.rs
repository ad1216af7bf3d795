use super::{ComponentKind, Diagnostic, NetworkDocument, Probe};
use crate::dpa::build_generator;
use crate::slh::{feedback_reduce, LinearSLH};

/// A component with its loops applied and the probes that target it.
#[derive(Clone, Debug, PartialEq)]
pub struct ElaboratedComponent {
    pub name: String,
    pub generator: LinearSLH,
    pub probes: Vec<Probe>,
}

/// Applies each `loop` statement with `feedback_reduce`, in declaration
/// order. Failures are reported at the `loop` statement.
pub fn elaborate(doc: &NetworkDocument) -> Result<Vec<ElaboratedComponent>, Vec<Diagnostic>> {
    let mut out = Vec::with_capacity(doc.components.len());
    let mut diags = Vec::new();
    for comp in &doc.components {
        let mut g = match &comp.kind {
            ComponentKind::Dpa(p) => build_generator(p),
            ComponentKind::Slh(g) => g.clone(),
        };
        let mut ok = true;
        for lp in doc.loops.iter().filter(|l| l.component == comp.name) {
            let ports = g.ports();
            if lp.port == 0 || lp.port > ports {
                diags.push(Diagnostic::error(
                    lp.span,
                    format!(
                        "port {} is out of range: `{}` has {ports} port{}",
                        lp.port,
                        comp.name,
                        if ports == 1 { "" } else { "s" }
                    ),
                ));
                ok = false;
                break;
            }
            let Some(t) = doc.splitter(&lp.splitter) else {
                diags.push(Diagnostic::error(
                    lp.span,
                    format!("undefined splitter `{}`", lp.splitter),
                ));
                ok = false;
                break;
            };
            match feedback_reduce(&g, &t.splitter, lp.port - 1) {
                Ok(r) => g = r,
                Err(e) => {
                    diags.push(Diagnostic::error(lp.span, e.to_string()));
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            out.push(ElaboratedComponent {
                name: comp.name.clone(),
                generator: g,
                probes: doc
                    .probes
                    .iter()
                    .filter(|p| p.component == comp.name)
                    .cloned()
                    .collect(),
            });
        }
    }
    if diags.is_empty() {
        Ok(out)
    } else {
        Err(diags)
    }
}
