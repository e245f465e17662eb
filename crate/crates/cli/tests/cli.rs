//! End-to-end checks of the command-line surface and its exit codes.

use std::path::Path;
use std::process::Command;
use std::sync::Arc;

use xmodkit_core::group::{FiniteGroup, GroupAction, GroupHom};
use xmodkit_core::serial::XModJson;
use xmodkit_core::xmod::validate_xmod;

fn xmodkit() -> Command {
    Command::new(env!("CARGO_BIN_EXE_xmodkit"))
}

fn write_mod2_xmod(path: &Path) {
    let z4 = FiniteGroup::cyclic(4);
    let z2 = FiniteGroup::cyclic(2);
    let alpha = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
    let xm = Arc::new(validate_xmod(alpha, GroupAction::trivial(&z2, &z4)).unwrap());
    let json = XModJson::of(None, &xm);
    std::fs::write(path, serde_json::to_string(&json).unwrap()).unwrap();
}

#[test]
fn catalog_verify_and_corruption_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let catalog_path = dir.path().join("catalog.json");

    let out = xmodkit()
        .args(["catalog", "--max-order", "4", "--out"])
        .arg(&catalog_path)
        .env("XMODKIT_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(catalog_path.exists());

    let out = xmodkit()
        .args(["verify", "--catalog"])
        .arg(&catalog_path)
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    assert!(stdout.contains("catalog revalidation: PASS"));
    assert!(stdout.contains("suites passed"));

    // scoped run only executes the lifting suites
    let out = xmodkit()
        .args(["verify", "--scope", "liftings", "--catalog"])
        .arg(&catalog_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("liftings:"));
    assert!(!stdout.contains("equivalence:"));

    // one corrupted table entry must flip the exit code to 1
    let text = std::fs::read_to_string(&catalog_path).unwrap();
    let broken = text.replacen("[[0,1],[1,0]]", "[[0,1],[1,1]]", 1);
    assert_ne!(text, broken);
    std::fs::write(&catalog_path, broken).unwrap();
    let out = xmodkit()
        .args(["verify", "--catalog"])
        .arg(&catalog_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn liftings_report_for_pinned_base() {
    let dir = tempfile::tempdir().unwrap();
    let xmod_path = dir.path().join("mod2.json");
    write_mod2_xmod(&xmod_path);

    let out = xmodkit()
        .args(["liftings", "--xmod"])
        .arg(&xmod_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("2 total"), "{stdout}");

    let out = xmodkit()
        .args(["liftings", "--json", "--xmod"])
        .arg(&xmod_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let rows: Vec<serde_json::Value> =
        serde_json::from_slice(&out.stdout).expect("valid JSON report");
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["degree"], 2);
    assert_eq!(rows[1]["degree"], 1);
    assert_eq!(rows[0]["kernel"], serde_json::json!([0]));
    assert_eq!(rows[1]["kernel"], serde_json::json!([0, 2]));
}

#[test]
fn export_dot_counts_nodes_and_edges() {
    let dir = tempfile::tempdir().unwrap();
    // identity crossed module on Z2: 2 objects, 4 morphisms, 2 identities
    let z2 = FiniteGroup::cyclic(2);
    let xm = Arc::new(
        validate_xmod(GroupHom::identity(&z2), GroupAction::trivial(&z2, &z2)).unwrap(),
    );
    let xmod_path = dir.path().join("idz2.json");
    std::fs::write(
        &xmod_path,
        serde_json::to_string(&XModJson::of(None, &xm)).unwrap(),
    )
    .unwrap();
    let dot_path = dir.path().join("out.dot");
    let reference = format!("eta:{}", xmod_path.display());
    let out = xmodkit()
        .args(["export-dot", "--ref", &reference, "--out"])
        .arg(&dot_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("->")).count(), 2);
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 2);

    // deterministic output
    let out2 = xmodkit()
        .args(["export-dot", "--include-identities", "--ref", &reference, "--out"])
        .arg(&dot_path)
        .output()
        .unwrap();
    assert!(out2.status.success());
    let dot2 = std::fs::read_to_string(&dot_path).unwrap();
    assert_eq!(dot2.lines().filter(|l| l.contains("->")).count(), 4);
}

#[test]
fn usage_errors_exit_with_two() {
    let out = xmodkit().arg("no-such-command").output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = xmodkit()
        .args(["verify", "--scope", "bogus", "--catalog", "/nonexistent.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = xmodkit()
        .args(["catalog", "--max-order", "90", "--out", "/tmp/never.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
