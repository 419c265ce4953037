use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn symtwist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symtwist"))
        .args(args)
        .env_remove("SYMTWIST_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn diagnostic(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

#[test]
fn commuting_twist_in_su3_is_an_r_matrix() {
    let out = symtwist(&["rmatrix", "--algebra", "su3", "--twist", "Y23^(2Z1-Z2):0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["result"]["is_r_matrix"], true);
    assert_eq!(v["result"]["square_zero"], true);
    assert_eq!(v["config"]["twist"], "Y23^(2Z1-Z2):0.5");
    assert_eq!(v["tool"], "symtwist");
}

#[test]
fn generic_su2_twist_is_an_r_matrix_with_nonzero_square() {
    let out = symtwist(&["rmatrix", "--algebra", "su2", "--twist", "X12^Y12:1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["result"]["square_zero"], false);
}

#[test]
fn admissible_inside_and_outside_the_ball() {
    let inside = symtwist(&[
        "admissible",
        "--algebra",
        "su2",
        "--twist",
        "l12=0.9",
        "--image",
        "sphere:0.5",
        "--samples",
        "10000",
    ]);
    assert_eq!(inside.status.code(), Some(0));
    let v = report(&inside);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["result"]["n_samples"], 10_006);
    assert!((v["result"]["min_abs"].as_f64().unwrap() - 0.01).abs() < 1e-3);

    let outside = symtwist(&["admissible", "--twist", "l12=1.5"]);
    assert_eq!(outside.status.code(), Some(1));
    assert_eq!(report(&outside)["verdict"], false);
}

#[test]
fn cp_image_requires_matching_algebra() {
    let ok = symtwist(&[
        "admissible",
        "--algebra",
        "su3",
        "--twist",
        "Y23^(2Z1-Z2):0.1",
        "--image",
        "cp:2",
        "--samples",
        "500",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = symtwist(&[
        "admissible",
        "--algebra",
        "su2",
        "--twist",
        "l12=0.1",
        "--image",
        "cp:2",
    ]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(diagnostic(&bad)["error"]["field"], "image");
}

#[test]
fn volume_at_zero_is_pi() {
    let out = symtwist(&["volume", "--lambda", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    let vol = v["result"]["numeric_volume"].as_f64().unwrap();
    assert!((vol - std::f64::consts::PI).abs() < 1e-12);
    assert!(v["result"]["rel_error"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["tolerance"], 1e-6);
}

#[test]
fn volume_pole_is_a_structured_error() {
    let out = symtwist(&["volume", "--lambda", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let d = diagnostic(&out);
    assert_eq!(d["error"]["field"], "lambda");
}

#[test]
fn volume_sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("vol.csv");
    let out = symtwist(&[
        "sweep",
        "volume",
        "--lambda=-0.9:0.9:0.3",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["rows"].as_array().unwrap().len(), 7);
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "lambda,numeric_volume,closed_form,k_lambda,rel_error,verdict"
    );
    assert_eq!(lines.len(), 8);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
    assert!(lines[4].starts_with("0,"));
}

#[test]
fn admissible_sweep_crosses_the_threshold() {
    let out = symtwist(&[
        "sweep",
        "admissible",
        "--twist",
        "l12=0.48,l13=-0.6,l23=0.64",
        "--scales",
        "0.5,0.9,1.1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let verdicts: Vec<bool> = report(&out)["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["verdict"].as_bool().unwrap())
        .collect();
    assert_eq!(verdicts, vec![true, true, false]);
}

#[test]
fn grassmann_sweep_holds_everywhere() {
    let out = symtwist(&["sweep", "grassmann", "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = report(&out)["result"]["rows"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 6);
    for r in rows {
        assert_eq!(r["is_r_matrix"], true);
        assert_eq!(r["square_nonzero"], true);
        assert_eq!(r["quotient_vanishes"], true);
    }
}

#[test]
fn grassmann_single_instance_with_table() {
    let out = symtwist(&["grassmann", "--n", "4", "--r", "2", "--table"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["result"]["instances"].as_array().unwrap().len(), 1);
    assert!(!v["result"]["bracket_cases"][0]["rows"]
        .as_array()
        .unwrap()
        .is_empty());
    let bad = symtwist(&["grassmann", "--n", "4"]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(diagnostic(&bad)["error"]["field"], "r");
}

#[test]
fn validate_builtin_and_json_algebras() {
    let out = symtwist(&["validate-algebra", "--algebra", "su(4)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["dim"], 15);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    // [e1,e2] = e3, [e1,e3] = e3, [e2,e3] = e1 violates Jacobi
    fs::write(
        &path,
        r#"{"dim":3,"labels":["a","b","c"],"c":[[1,2,3,"1"],[1,3,3,"1"],[2,3,1,"1"]]}"#,
    )
    .unwrap();
    let out = symtwist(&["validate-algebra", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_ne!(report(&out)["result"]["max_jacobi"], "0");
}

#[test]
fn deform_cp1_scan_and_dump() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_symtwist"))
        .args([
            "deform",
            "--n",
            "1",
            "--twist",
            "l12=0.9",
            "--points-per-axis",
            "5",
            "--csv",
            "form.csv",
            "--out",
            "report.json",
        ])
        .env("SYMTWIST_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(v["result"]["n_points"], 25);
    assert_eq!(v["result"]["nondegenerate"], true);
    let text = fs::read_to_string(dir.path().join("form.csv")).unwrap();
    assert_eq!(text.lines().count(), 26);
    assert!(text.starts_with("x1,y1,"));
}

#[test]
fn deform_torus_cp3() {
    let out = symtwist(&[
        "deform",
        "--action",
        "torus",
        "--n",
        "3",
        "--twist",
        "l12=0.3,l13=-0.2",
        "--points-per-axis",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["n_points"], 729);
}

#[test]
fn malformed_twist_names_the_field() {
    let out = symtwist(&["rmatrix", "--algebra", "su2", "--twist", "X12^W9"]);
    assert_eq!(out.status.code(), Some(2));
    let d = diagnostic(&out);
    assert_eq!(d["error"]["field"], "twist");
    assert!(d["error"]["message"].as_str().unwrap().contains("W9"));
}

#[test]
fn bad_flags_and_values_are_structured() {
    let out = symtwist(&["volume", "--lambda", "abc"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(diagnostic(&out)["error"]["field"], "lambda");

    let out = symtwist(&["admissible", "--twist", "l12=0.5", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(diagnostic(&out)["error"]["field"], "samples");

    let out = symtwist(&["admissible", "--twist", "l12=0.5", "--tolerance", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(diagnostic(&out)["error"]["field"], "tolerance");

    let out = symtwist(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_configs_give_identical_bytes() {
    let args = [
        "admissible",
        "--algebra",
        "su3",
        "--twist",
        "canonical",
        "--image",
        "cp:2",
        "--samples",
        "300",
        "--seed",
        "7",
    ];
    let a = symtwist(&args);
    let b = symtwist(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut seq = vec!["--sequential"];
    seq.extend(args);
    let c = symtwist(&seq);
    assert_eq!(report(&a)["result"], report(&c)["result"]);
}
