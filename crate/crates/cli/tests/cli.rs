//! End-to-end tests of the apoly binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn apoly(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apoly"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("run apoly")
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("apoly-cli-{tag}"));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn validate_cube_round_trip() {
    let dir = tmpdir("validate");
    let out = apoly(&["catalog", "cube", "-o", "cube.apoly"], &dir);
    assert!(out.status.success());
    let out = apoly(&["validate", "cube.apoly"], &dir);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("valid polytope of rank 3"));
}

#[test]
fn validate_bad_file_exits_1() {
    let dir = tmpdir("badfile");
    std::fs::write(dir.join("bad.apoly"), "apoly 1\nrank 2\ncount 0 2\ncount 1 1\nf 1 0: 0 1\n")
        .unwrap();
    let out = apoly(&["validate", "bad.apoly"], &dir);
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn usage_error_exits_2() {
    let dir = tmpdir("usage");
    let out = apoly(&["frobnicate"], &dir);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_medial_then_analyze() {
    let dir = tmpdir("medial");
    assert!(apoly(&["catalog", "cube", "-o", "cube.apoly"], &dir).status.success());
    let out = apoly(&["construct", "medial", "cube.apoly", "-o", "m.apoly"], &dir);
    assert!(out.status.success());
    let out = apoly(&["analyze", "m.apoly"], &dir);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("orbits k=2 / class I=0,1 / hereditary true"), "{text}");
    let out = apoly(&["analyze", "m.apoly", "--report-format", "machine"], &dir);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.starts_with("orbits k=2\nclass I=0,1\nverdict 2-orbit\nhereditary true\n"), "{text}");
}

#[test]
fn group_order_and_build() {
    let dir = tmpdir("group");
    std::fs::write(
        dir.join("cube.grp"),
        "cgroup 1\nkind reflection\nrank 3\nauto-relators on\nrel (g0 g1)^4\nrel (g1 g2)^3\n",
    )
    .unwrap();
    let out = apoly(&["group", "cube.grp", "--order"], &dir);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "48");
    let out = apoly(&["group", "cube.grp", "--build", "-o", "cube.apoly"], &dir);
    assert!(out.status.success());
    let out = apoly(&["validate", "cube.apoly"], &dir);
    assert!(out.status.success());
}

#[test]
fn catalog_dir_override() {
    let dir = tmpdir("override");
    // a valid replacement presentation for "dodecahedron" that is really [4,3]
    std::fs::write(
        dir.join("dodecahedron.grp"),
        "cgroup 1\nkind reflection\nrank 3\norder 48\nauto-relators on\nrel (g0 g1)^4\nrel (g1 g2)^3\n",
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_apoly"))
        .args(["catalog", "dodecahedron"])
        .env("APOLY_CATALOG_DIR", &dir)
        .current_dir(&dir)
        .output()
        .unwrap();
    // override takes effect and trips the 120-flag assertion
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("failed assertion"));
}

#[test]
fn twopower_respects_max_vertices() {
    let dir = tmpdir("twopower");
    assert!(apoly(&["catalog", "cube", "-o", "cube.apoly"], &dir).status.success());
    let out = apoly(&["construct", "twopower", "cube.apoly", "-o", "t.apoly"], &dir);
    assert!(out.status.success());
    let out = apoly(
        &["construct", "twopower", "cube.apoly", "-o", "t.apoly", "--max-vertices", "4"],
        &dir,
    );
    assert_eq!(out.status.code(), Some(1));
}
