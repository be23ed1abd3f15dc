//! Pins the output of the `dicrit` binary on three reference invocations.

use std::path::Path;
use std::process::Command;

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn dicrit(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dicrit"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn classify_t2_json() {
    let (code, out) = dicrit(&[
        "classify-t2",
        "--field",
        "Q",
        "--f",
        "x^2+x*y+y^2",
        "--alpha",
        "1",
        "--beta",
        "1",
        "--a0",
        "1",
        "--b0",
        "1",
        "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("classify_t2.json"));
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["regenerable"], false);
    assert_eq!(j["B_f"], serde_json::json!([0, 1, 2]));
}

#[test]
fn infinity_json() {
    let (code, out) = dicrit(&["infinity", "--field", "Q", "--f", "x", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("infinity_x.json"));
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["dicritical_divisors"].as_array().unwrap().len(), 1);
}

#[test]
fn newton_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("out.svg");
    let (code, _) = dicrit(&[
        "newton",
        "--field",
        "Q",
        "--f",
        "y^2-x^3",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let got = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(got, golden("newton_cusp.svg"));
    // vertices (0,2) and (3,0) on a 40px grid with 30px padding
    assert!(got.contains(r#"<circle cx="30" cy="70" r="4" fill="blue"/>"#));
    assert!(got.contains(r#"<circle cx="150" cy="150" r="4" fill="blue"/>"#));
}

#[test]
fn exit_codes() {
    let (code, _) = dicrit(&["infinity", "--f", "7"]);
    assert_eq!(code, 2);
    let (code, out) = dicrit(&["corollary", "--f", "x^2*y+x", "--field", "F5"]);
    assert_eq!(code, 0, "{out}");
}
