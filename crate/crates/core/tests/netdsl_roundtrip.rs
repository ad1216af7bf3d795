mod common;

use std::fs;

use squeeznet::dpa::{self, DpaParams};
use squeeznet::netdsl::{parse, ProbeQuantity};

use common::{fixtures, load_network, render_diagnostics as render, spectral_gap};

#[test]
fn lossy_closed_loop_matches_direct_construction() {
    let comp = load_network("lossy_closed_loop.sqn");
    let p = DpaParams::new(1.0, 0.1, 0.5, Some(0.2)).unwrap();
    let direct = dpa::build_feedback_network(&p, false).unwrap();
    assert!(spectral_gap(&comp, &direct) <= 1e-12);
    assert_eq!(
        comp.probes[0].options.thetas,
        vec![0.0, std::f64::consts::FRAC_PI_2]
    );
    assert_eq!(
        comp.probes[0]
            .options
            .omega
            .as_ref()
            .unwrap()
            .points()
            .len(),
        101
    );
}

#[test]
fn lossless_open_loop_matches_direct_construction() {
    let comp = load_network("lossless_open_loop.sqn");
    let p = DpaParams::open_loop(2.0, 0.0, 1.0).unwrap();
    assert!(spectral_gap(&comp, &dpa::build_generator(&p)) <= 1e-12);
    let kinds: Vec<_> = comp.probes.iter().map(|p| p.quantity).collect();
    assert_eq!(
        kinds,
        [
            ProbeQuantity::Spectrum,
            ProbeQuantity::Stability,
            ProbeQuantity::StaticLimit
        ]
    );
}

#[test]
fn two_mode_network_matches_direct_construction() {
    let comp = load_network("two_mode_slh.sqn");
    let direct = common::two_mode_direct();
    assert_eq!(comp.generator, direct);
    assert!(spectral_gap(&comp, &direct) <= 1e-12);
}

#[test]
fn six_line_example_has_the_expected_shape() {
    let text = fs::read_to_string(fixtures("networks").join("lossy_closed_loop.sqn")).unwrap();
    let doc = parse(&text).unwrap();
    assert_eq!(
        (
            doc.params.len(),
            doc.components.len(),
            doc.splitters.len(),
            doc.loops.len(),
            doc.probes.len()
        ),
        (1, 1, 1, 1, 1)
    );
    assert_eq!(doc.loops[0].port, 1);
    assert!(doc.warnings.is_empty());
}

#[test]
fn malformed_fixtures_match_golden_diagnostics() {
    let mut seen = 0;
    let mut entries: Vec<_> = fs::read_dir(fixtures("malformed"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    entries.sort();
    for path in entries
        .iter()
        .filter(|p| p.extension().is_some_and(|e| e == "sqn"))
    {
        let text = fs::read_to_string(path).unwrap();
        let golden = fs::read_to_string(path.with_extension("diag")).unwrap();
        assert_eq!(render(&text), golden, "{}", path.display());
        seen += 1;
    }
    assert_eq!(seen, 5);
}

#[test]
fn diagnostics_are_deterministic() {
    let text = fs::read_to_string(fixtures("malformed").join("names_and_lexing.sqn")).unwrap();
    let first = render(&text);
    for _ in 0..5 {
        assert_eq!(render(&text), first);
    }
}

#[test]
fn parser_recovers_after_each_broken_statement() {
    let text = fs::read_to_string(fixtures("malformed").join("syntax_errors.sqn")).unwrap();
    let diags = parse(&text).unwrap_err();
    // one diagnostic per broken statement, none for the good ones
    assert_eq!(diags.len(), 8);
    let lines: Vec<usize> = diags.iter().map(|d| d.line).collect();
    assert_eq!(lines, [2, 4, 6, 8, 9, 10, 11, 12]);
}

#[test]
fn well_formed_fixtures_produce_no_diagnostics() {
    for name in [
        "lossless_open_loop.sqn",
        "lossy_closed_loop.sqn",
        "two_mode_slh.sqn",
    ] {
        let text = fs::read_to_string(fixtures("networks").join(name)).unwrap();
        assert_eq!(render(&text), "", "{name}");
    }
}
