use std::process::Command;

use dpwall::certifier::SuiteReport;
use dpwall_cli::commands::{ChargeOut, ClassifyOut, CurveRow, MaximalWall, ScanOut, SliceOut, WallOut};
use serde::de::DeserializeOwned;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["dpwall"];
    argv.extend_from_slice(args);
    let code = dpwall_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok<T: DeserializeOwned>(args: &[&str]) -> T {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?} output does not re-parse: {e}\n{out}"))
}

#[test]
fn charge_of_structure_sheaf() {
    let z: ChargeOut = ok(&["charge", "--frame", "1,1,-1/2", "--point", "0,0,0,1", "--chern", "1,(0,0,0),0"]);
    assert!((z.re - 0.5).abs() < 1e-12);
    assert_eq!(z.im, 0.0);
    assert_eq!(z.beta, None);
}

#[test]
fn maximal_walls_match_expected_coefficients() {
    let walls: Vec<MaximalWall> = ok(&["maximal-walls", "--frame", "4/15,2/15,-1/15", "--format", "json"]);
    let r = 15f64.sqrt();
    let expected = [[-3.0 / r, 2.0, -6.0 / r, 1.0], [-1.0 / r, -1.0, -7.0 / r, 1.0], [-1.0 / r, 0.0, 8.0 / r, 1.0]];
    assert_eq!(walls.len(), 3);
    for (w, e) in walls.iter().zip(expected) {
        // s u1 is compared up to the orientation of G1.
        let c = w.coefficients;
        assert!((c[0] - e[0]).abs() < 1e-9 && (c[1].abs() - e[1].abs()).abs() < 1e-9, "{}", w.label);
        assert!((c[2] - e[2]).abs() < 1e-9 && (c[3] - 1.0).abs() < 1e-12, "{}", w.label);
    }
}

#[test]
fn wall_classify_slice_curves_round_trip() {
    let w: WallOut = ok(&["wall", "--frame", "1,1,-1/2", "--sub", "1,(0,0,-1),-1/2"]);
    assert!(!w.reduced.is_empty() && w.full.iter().all(|t| t.t >= 1));
    let c: ClassifyOut = ok(&["classify", "--h", "-1", "--g", "1", "--c2", "1/2"]);
    assert_eq!(c.discriminant, "0");
    let c: ClassifyOut = ok(&["classify", "--h", "0", "--g", "1", "--c2", "1"]);
    assert!(c.conic.is_none() && c.note.is_some());
    let s: SliceOut = ok(&["slice", "--frame", "1,1,-1/2", "--sub", "1,(0,0,-1),-1/2", "--u0", "0.1"]);
    assert!(s.semicircle.is_some());
    let curves: Vec<CurveRow> = ok(&["curves", "--bound", "1"]);
    assert_eq!(curves.len(), 5);
}

#[test]
fn certify_and_scan_succeed() {
    let report: SuiteReport = ok(&["certify"]);
    assert_eq!(report.entries.len(), 19);
    let one: SuiteReport = ok(&["certify", "--id", "I-CHARPOLY"]);
    assert_eq!(one.entries.len(), 1);
    let scan: ScanOut = ok(&["scan-containment", "--bound", "2", "--frames", "2", "--grid", "100", "--seed", "3"]);
    assert_eq!(scan.violations, 0);
    assert!(scan.sampled > 0);
}

#[test]
fn deterministic_output() {
    let args = ["scan-containment", "--bound", "2", "--frames", "1", "--grid", "50", "--format", "csv"];
    assert_eq!(run(&args).1, run(&args).1);
    let args = ["maximal-walls", "--format", "json"];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, err) = run(&["charge", "--frame", "1,1,-1/2", "--point", "0,0,0,1", "--chern", "1,(0,0,0),0", "--nope"]);
    assert_eq!(code, 2);
    assert!(err.contains("--nope"));
    let (code, _, err) = run(&["charge", "--frame", "1,1,zz", "--point", "0,0,0,1", "--chern", "1,(0,0,0),0"]);
    assert_eq!(code, 2);
    assert!(err.contains("'zz'"));
    let (code, _, err) = run(&["charge", "--frame", "1,1,1", "--point", "0,0,0,1", "--chern", "1,(0,0,0),0"]);
    assert_eq!(code, 2);
    assert!(err.contains("invalid frame"));
    assert_eq!(run(&["certify", "--id", "nope"]).0, 2);
    assert_eq!(run(&["classify", "--h", "0", "--g", "0", "--c2", "0"]).0, 2);
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn svg_output() {
    let dir = std::env::temp_dir().join(format!("dpwall-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("walls.svg");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["maximal-walls", "--svg", p]).0, 0);
    let first = std::fs::read_to_string(&path).unwrap();
    assert!(first.contains("O(-E1)") && first.contains("O(-E2)") && first.contains("O(-E)"));
    assert_eq!(run(&["maximal-walls", "--svg", p]).0, 0);
    assert_eq!(first, std::fs::read_to_string(&path).unwrap());
    assert_eq!(run(&["maximal-walls", "--svg", "/nonexistent-dir/w.svg"]).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dpwall");
    let st = Command::new(bin).args(["curves", "--bound", "1", "--format", "csv"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&st.stdout).starts_with("curve,self_intersection,case"));
    let st = Command::new(bin).args(["curves", "--bound", "x"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
}
