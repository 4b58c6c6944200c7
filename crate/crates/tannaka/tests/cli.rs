use std::path::{Path, PathBuf};

use serde_json::Value;
use tannaka::cli::{run_with, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_PASS};
use tannaka::{parse_bundle, serialize_bundle};
use tannaka_core::C64;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("tannaka").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tannaka-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../bundles").join(format!("{name}.json"))
}

#[test]
fn generated_bundle_passes_check() {
    let (code, text, _) = run(&["gen", "s3", "--braided"]);
    assert_eq!(code, EXIT_PASS);
    let p = scratch("s3.json", &text);
    let (code, out, err) = run(&["check", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    for k in ["validation", "construction", "axioms", "modular"] {
        assert_eq!(v[k]["pass"], Value::Bool(true), "{k}");
    }
}

#[test]
fn corrupted_bundle_names_the_failing_check() {
    let (_, text, _) = run(&["gen", "pointed", "--n", "3"]);
    let mut b = parse_bundle(&text).unwrap();
    b.perturb_scalar(0, C64::new(1e-3, 0.0));
    let p = scratch("corrupt.json", &serialize_bundle(&b));
    let (code, _, err) = run(&["check", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert!(err.starts_with("check failed: validation failed: ") && err.contains(" at "), "{err}");
}

#[test]
fn dims_text_lists_quantum_dimensions() {
    let (code, out, _) = run(&["--text", "dims", golden("suq2_q0.5_L3").to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    let dims: Vec<f64> = out.lines().skip(1).map(|l| l.split_whitespace().nth(2).unwrap().parse().unwrap()).collect();
    // [n+1]_q summed directly.
    let want: Vec<f64> = (0..4).map(|n: i32| (0..=n).map(|k| 0.5f64.powi(n - 2 * k)).sum()).collect();
    assert_eq!(dims.len(), want.len());
    for (d, w) in dims.iter().zip(&want) {
        assert!((d - w).abs() < 1e-9, "{d} vs {w}");
    }
}

#[test]
fn input_errors_exit_with_two() {
    let p = scratch("bad.json", "{ \"labels\": [");
    let (code, _, err) = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line"), "{err}");
    let (code, _, _) = run(&["check", "/nonexistent/bundle.json"]);
    assert_eq!(code, EXIT_INPUT);
    // Duality needs a closed bundle.
    let (code, _, err) = run(&["dual", golden("suq2_q0.5_L4").to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT, "{err}");
    let (code, _, _) = run(&["rmatrix", golden("suq2_q0.5_L4").to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = run(&["--abs-tol", "-1", "dims", golden("z2").to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn group_command_reports_order() {
    let (code, out, _) = run(&["group", golden("q8").to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["order"], 8);
    assert_eq!(v["order_statistics"]["4"], 6);
    assert_eq!(v["cocommutative"], true);
}

#[test]
fn golden_bundles_match_the_generators() {
    let cases: [(&str, &[&str]); 11] = [
        ("z2", &["z2", "--braided"]),
        ("z5", &["z5", "--braided"]),
        ("s3", &["s3", "--braided"]),
        ("d4", &["d4", "--braided"]),
        ("q8", &["q8", "--braided"]),
        ("pointed_z2", &["pointed", "--n", "2"]),
        ("pointed_z3", &["pointed", "--n", "3"]),
        ("pointed_z5", &["pointed", "--n", "5"]),
        ("suq2_q1_L4", &["suq2", "--q", "1", "--levels", "4"]),
        ("suq2_q0.5_L4", &["suq2", "--q", "0.5", "--levels", "4"]),
        ("suq2_q0.5_L3", &["suq2", "--q", "0.5", "--levels", "3"]),
    ];
    for (name, args) in cases {
        let mut argv = vec!["gen"];
        argv.extend_from_slice(args);
        let (code, out, _) = run(&argv);
        assert_eq!(code, EXIT_PASS);
        assert_eq!(out, std::fs::read_to_string(golden(name)).unwrap(), "{name}");
    }
}
