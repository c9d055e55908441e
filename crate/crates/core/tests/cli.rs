use std::path::Path;
use std::process::{Command, Output};

use algebraic_harmonics::io::{MatrixFile, StateFile};
use algebraic_harmonics::realbasis::named_state;

fn harmonics(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harmonics"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn matrices_prints_lz() {
    let out = harmonics(&["matrices", "--l", "2", "--op", "Lz"]);
    assert_eq!(out.status.code(), Some(0));
    let file: MatrixFile = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(file.ordering, "m-descending");
    assert_eq!(file.operator.as_deref(), Some("Lz"));
    let diag: Vec<f64> = (0..5).map(|i| file.entries[i][i][0]).collect();
    assert_eq!(diag, vec![2.0, 1.0, 0.0, -1.0, -2.0]);
}

#[test]
fn verify_small_lmax_passes() {
    let out = harmonics(&["verify", "--lmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 16);
    assert!(text.lines().last().unwrap().starts_with("# PASS"));
}

#[test]
fn mesh_reports_nodal_cones() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("z2.obj");
    let out = harmonics(&[
        "--degrees",
        "mesh",
        "--named",
        "2:z2",
        "--res",
        "32x48",
        "-o",
        path_str(&obj),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary = String::from_utf8(out.stdout).unwrap();
    assert!(summary.contains("54.7356, 125.2644"), "{summary}");
    let text = std::fs::read_to_string(&obj).unwrap();
    assert_eq!(
        text.lines().filter(|l| l.starts_with("v ")).count(),
        32 * 48
    );
    assert!(text.contains("usemtl phase_plus") && text.contains("usemtl phase_minus"));
}

#[test]
fn rotate_apply_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("xz.json");
    let turned = dir.path().join("turned.json");
    let back = dir.path().join("back.json");
    let xz = named_state(2, "xz").unwrap().vector;
    let text =
        algebraic_harmonics::io::to_json_string(&StateFile::from_state(&xz, Some("xz"))).unwrap();
    std::fs::write(&input, text).unwrap();

    let euler = "0.3,1.1,-0.7";
    let inverse = "0.7,-1.1,-0.3";
    let out = harmonics(&[
        "rotate",
        "--l",
        "2",
        "--euler",
        euler,
        "--apply",
        path_str(&input),
        "-o",
        path_str(&turned),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = harmonics(&[
        "rotate",
        "--l",
        "2",
        "--euler",
        inverse,
        "--apply",
        path_str(&turned),
        "-o",
        path_str(&back),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let turned = StateFile::read(&turned).unwrap().to_state().unwrap();
    assert!(turned.max_abs_diff(&xz).unwrap() > 0.1);
    let back = StateFile::read(&back).unwrap().to_state().unwrap();
    assert!(back.max_abs_diff(&xz).unwrap() < 1e-12);
}

#[test]
fn outputs_are_byte_identical() {
    for args in [
        &["rotate", "--l", "3", "--axis", "x", "--angle", "0.4"][..],
        &["mirror", "--l", "2", "--dir", "0.5,1.5"],
        &["eval", "--lm", "3,-2", "--grid", "5x7"],
        &["trig", "--named", "2:xy"],
    ] {
        let a = harmonics(args);
        let b = harmonics(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn eval_csv_layout() {
    let out = harmonics(&["eval", "--lm", "1,1", "--grid", "4x3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta,phi,re,im");
    assert_eq!(lines.len(), 1 + 12);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 4));
}

#[test]
fn usage_error_exits_2() {
    let out = harmonics(&["rotate", "--l", "2", "--angle", "1.0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = harmonics(&["mesh", "--lm", "1,0", "--res", "16x16"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validation_error_exits_1_with_single_line() {
    let out = harmonics(&["matrices", "--l", "513", "--op", "Lx"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");

    let dir = tempfile::tempdir().unwrap();
    let out = harmonics(&[
        "mesh",
        "--lm",
        "2,1",
        "--res",
        "16x16",
        "-o",
        path_str(&dir.path().join("m.obj")),
    ]);
    assert_eq!(out.status.code(), Some(1));
}
