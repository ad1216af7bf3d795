//! Compiles a C program against the generated header, links it with the
//! static library and checks its output. Skipped when no C compiler is
//! available.

use std::path::{Path, PathBuf};
use std::process::Command;

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// `target/<profile>`, where cargo places `libsqueeznet_ffi.a`.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

fn compiler() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc)
        .arg("--version")
        .output()
        .ok()
        .filter(|o| o.status.success())
        .map(|_| cc)
}

#[test]
fn header_is_current_and_self_contained() {
    let header = std::fs::read_to_string(manifest_dir().join("include/squeeznet.h")).unwrap();
    for sym in [
        "sqn_generator_new",
        "sqn_generator_dpa",
        "sqn_generator_from_network",
        "sqn_generator_feedback",
        "sqn_generator_free",
        "sqn_frequency_response",
        "sqn_spectral_sample",
        "sqn_is_hurwitz",
        "sqn_dpa_critical_alpha",
        "sqn_last_error_message",
        "typedef struct SqnGenerator SqnGenerator;",
        "SQN_STATUS_OK = 0",
    ] {
        assert!(header.contains(sym), "header lacks {sym}");
    }
    let Some(cc) = compiler() else {
        eprintln!("skipping compile check: no C compiler");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("only_header.c");
    std::fs::write(
        &src,
        "#include \"squeeznet.h\"\nint main(void) { return 0; }\n",
    )
    .unwrap();
    let out = Command::new(&cc)
        .args([
            "-std=c99",
            "-Wall",
            "-Wextra",
            "-Werror",
            "-fsyntax-only",
            "-I",
        ])
        .arg(manifest_dir().join("include"))
        .arg(&src)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = compiler() else {
        eprintln!("skipping: no C compiler");
        return;
    };
    let lib = artifact_dir().join("libsqueeznet_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let out = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(manifest_dir().join("include"))
        .arg(manifest_dir().join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl"])
        .arg("-o")
        .arg(&exe)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let run = Command::new(&exe).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let text = String::from_utf8(run.stdout).unwrap();
    let value = |key: &str| -> String {
        let line = text
            .lines()
            .find(|l| l.starts_with(&format!("{key} ")))
            .unwrap_or_else(|| panic!("{key}"));
        line[key.len() + 1..].to_string()
    };
    let r0: f64 = value("r0").parse().unwrap();
    assert!((r0 - 3f64.ln()).abs() <= 1e-12);
    assert_eq!(value("loop_stable"), "0");
    assert_eq!(value("ports"), "2 modes 1");
    let alpha: f64 = value("alpha_crit").parse().unwrap();
    assert!((alpha - 3.0 / 7.0).abs() < 1e-15);
    assert_eq!(value("parse_status"), "3 parse");
    assert_eq!(value("parse_message"), "set");
}
