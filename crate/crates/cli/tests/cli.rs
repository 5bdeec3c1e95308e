use std::io::Write;
use std::process::{Command, Output, Stdio};

use recunitary::json::{decomposition_from_json, matrix_from_json, matrix_to_json};
use recunitary::{haar_random, Complex, ComplexMatrix};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_recunitary"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

/// Haar matrix with columns 1 and 2 rotated so that `V₂₂ = 0`.
fn vanishing_v22(seed: u64) -> ComplexMatrix {
    let x = haar_random(4, seed).unwrap();
    let (a, b) = (x[(1, 0)], x[(1, 1)]);
    let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let rot = ComplexMatrix::from_rows(&[
        vec![a.conj() / r, b / r, Complex::new(0.0, 0.0), Complex::new(0.0, 0.0)],
        vec![b.conj() / r, -a / r, Complex::new(0.0, 0.0), Complex::new(0.0, 0.0)],
        vec![Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)],
        vec![Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)],
    ])
    .unwrap();
    x.matmul(&rot).unwrap()
}

#[test]
fn gen_is_deterministic() {
    let a = run(&["gen", "--n", "5", "--seed", "42"], "");
    let b = run(&["gen", "--n", "5", "--seed", "42"], "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, run(&["gen", "--n", "5", "--seed", "43"], "").stdout);
    let x = matrix_from_json(&stdout(&a)).unwrap();
    assert!(x.unitarity_defect().unwrap() < 1e-13);
}

#[test]
fn pipeline_round_trip_and_file_input() {
    let generated = stdout(&run(&["gen", "--n", "4", "--seed", "7"], ""));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    std::fs::write(&path, &generated).unwrap();
    let params = run(&["decompose", path.to_str().unwrap()], "");
    assert!(params.status.success(), "{}", stderr(&params));
    let composed = run(&["compose", "-"], &stdout(&params));
    let x = matrix_from_json(&generated).unwrap();
    assert!(matrix_from_json(&stdout(&composed)).unwrap().max_diff(&x) < 1e-10);
    // byte-identical repeat
    assert_eq!(run(&["decompose", path.to_str().unwrap()], "").stdout, params.stdout);
}

#[test]
fn decompose_flags() {
    let generated = stdout(&run(&["gen", "--n", "4", "--seed", "3"], ""));
    let raw = decomposition_from_json(&stdout(&run(&["decompose", "--gauge", "raw"], &generated))).unwrap();
    assert!(raw.left_phases().is_zero());
    let asc = run(&["decompose", "--order", "asc"], &generated);
    let d = decomposition_from_json(&stdout(&asc)).unwrap();
    assert_eq!(d.orders(), vec![2, 3, 4]);
    assert!(d.compose().max_diff(&matrix_from_json(&generated).unwrap()) < 1e-10);
    let bad = matrix_to_json(&ComplexMatrix::from_fn(2, 2, |_, _| Complex::new(0.5, 0.0))).unwrap();
    assert_eq!(run(&["decompose"], &bad).status.code(), Some(1));
}

#[test]
fn csv_output() {
    let out = stdout(&run(&["gen", "--n", "2", "--seed", "1", "--format", "csv"], ""));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "row,col,re,im");
    assert_eq!(lines.len(), 5);
    let x = haar_random(2, 1).unwrap();
    let fields: Vec<f64> = lines[2].split(',').skip(2).map(|f| f.parse().unwrap()).collect();
    assert_eq!(Complex::new(fields[0], fields[1]), x[(0, 1)]);
}

#[test]
fn reorder_target() {
    let generated = stdout(&run(&["gen", "--n", "5", "--seed", "9"], ""));
    let params = stdout(&run(&["decompose"], &generated));
    let out = run(&["reorder", "--target", "3,5,2,4"], &params);
    assert!(out.status.success(), "{}", stderr(&out));
    let d = decomposition_from_json(&stdout(&out)).unwrap();
    assert_eq!(d.orders(), vec![3, 5, 2, 4]);
    assert!(d.compose().max_diff(&matrix_from_json(&generated).unwrap()) < 1e-11);
    assert_eq!(run(&["reorder", "--target", "2,3"], &params).status.code(), Some(1));
}

#[test]
fn invariants_report() {
    let generated = stdout(&run(&["gen", "--n", "4", "--seed", "5"], ""));
    let v = json(&run(&["invariants"], &generated));
    assert_eq!(v["plaquettes"].as_array().unwrap().len(), 36);
    assert_eq!(v["independent_phases"], 3);
    assert_eq!(v["triangles"].as_array().unwrap().len(), 12);
    assert!(v["omegas"].is_null());
    let first = &v["plaquettes"][0];
    assert_eq!(first["rows"], serde_json::json!([1, 2]));
    assert_eq!(first["cols"], serde_json::json!([1, 2]));
    let params = stdout(&run(&["decompose"], &generated));
    let v = json(&run(&["invariants"], &params));
    assert_eq!(v["omegas"].as_array().unwrap().len(), 3);
}

#[test]
fn panel_report_and_precondition() {
    let generated = stdout(&run(&["gen", "--n", "4", "--seed", "6"], ""));
    let v = json(&run(&["panel"], &generated));
    assert_eq!(v["lattice"].as_array().unwrap().len(), 3);
    assert!(v["relation_residuals"].as_array().unwrap().iter().all(|r| r.as_f64().unwrap().abs() < 1e-12));
    assert!(v["basis"]["max_deviation"].as_f64().unwrap() < 1e-10);

    let x = vanishing_v22(6);
    assert!(x[(1, 1)].norm() < 1e-15 && x.unitarity_defect().unwrap() < 1e-13);
    let out = run(&["panel"], &matrix_to_json(&x).unwrap());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("V22"), "{}", stderr(&out));
}

#[test]
fn zerotexture_report() {
    let x = recunitary::invariants::texture::texture_chain_matrix(
        [0.6, 0.9, 1.2],
        [Complex::from_polar(0.6, 0.2), Complex::from_polar(0.8, 1.4)],
        0.3,
    )
    .unwrap();
    let v = json(&run(&["zerotexture"], &matrix_to_json(&x).unwrap()));
    assert_eq!(v["vanishing_count"], 19);
    assert_eq!(v["zeros"], serde_json::json!([[3, 4], [4, 3]]));
    assert_eq!(v["triangle_areas"].as_array().unwrap().len(), 8);
    let ratio = v["ratio"].as_f64().unwrap();
    let (s3, s4) = (0.9f64.sin(), 1.2f64.sin());
    assert!((ratio + s4 * s4 / (s3 * s3)).abs() < 1e-11);
    let out = run(&["zerotexture"], &stdout(&run(&["gen", "--n", "4"], "")));
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("found 0"));
}

#[test]
fn symmetric_build_and_check() {
    let params = r#"{"n": 3, "thetas": [0.4, 0.9], "chars": [[1.0], [0.6, 0.8]], "half_angle": true}"#;
    let v = json(&run(&["symmetric"], params));
    assert_eq!(v["param_count"], 3);
    assert!(v["symmetry_defect"].as_f64().unwrap() < 1e-12);
    let j = recunitary::symmetric::j_sym_n3(0.4, 0.9, (0.6, 0.8)).unwrap();
    assert!((v["j"].as_f64().unwrap() - j).abs() < 1e-13);
    let composed = run(&["compose"], params);
    assert!(composed.status.success());
    assert!(run(&["symmetric"], &stdout(&composed)).status.success());
    let haar = stdout(&run(&["gen", "--n", "3", "--seed", "2"], ""));
    assert_eq!(run(&["symmetric"], &haar).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let v = json(&run(&["verify"], &matrix_to_json(&ComplexMatrix::identity(3)).unwrap()));
    assert_eq!(v["passed"], true);
    assert_eq!(v["max_residual"].as_f64().unwrap(), 0.0);
    for check in v["checks"].as_array().unwrap() {
        assert!(check["status"] == "skipped" || check["residual"].as_f64() == Some(0.0), "{check}");
    }
    let identity4 = run(&["verify"], &matrix_to_json(&ComplexMatrix::identity(4)).unwrap());
    assert_eq!(identity4.status.code(), Some(0));

    let mut bad = haar_random(3, 1).unwrap().as_slice().to_vec();
    bad[0] += Complex::new(1e-4, 0.0);
    let out = run(&["verify"], &matrix_to_json(&ComplexMatrix::from_row_major(3, 3, bad).unwrap()).unwrap());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unitarity"));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn malformed_input_exits_one_with_location() {
    let out = run(&["verify"], "{\n  \"n\": 2,\n  \"entries\": [[1, 0], [0, 0], [0, 0]\n");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line"), "{}", stderr(&out));
    let out = run(&["compose"], r#"{"n": 2, "entries": [[1, 0], [0, 0], [0, 0], [1, 0]]}"#);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["verify"], r#"{"n": 2, "entries": [[1, 0], [0, 0], [0, 0]]}"#);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("entries"));
    assert_eq!(run(&["panel", "/nonexistent/path.json"], "").status.code(), Some(1));
}
