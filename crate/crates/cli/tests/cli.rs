use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lhardy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lhardy")).args(args).env_remove("LHARDY_THREADS").output().expect("spawn lhardy")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report on stdout")
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    let mut out = vec![r.headers().unwrap().iter().map(String::from).collect()];
    out.extend(r.records().map(|x| x.unwrap().iter().map(String::from).collect()));
    out
}

#[test]
fn eval_table_has_one_row_per_point() {
    let o = lhardy(&["eval", "--alpha", "0.5", "--k", "0..10", "--u", "0.5,1,2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["tables"][0]["rows"].as_array().unwrap().len(), 33);
}

#[test]
fn eval_flags_boundary_limit() {
    let o = lhardy(&["eval", "--alpha", "-0.5", "--k", "0", "--u", "1e-9"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let cols: Vec<&str> = v["tables"][0]["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    let row = &v["tables"][0]["rows"][0];
    let at = |name: &str| &row[cols.iter().position(|c| *c == name).unwrap()];
    assert_eq!(at("limit"), &Value::Bool(true));
    // φ_0^{-1/2}(0) = (2/√π)^{1/2}.
    let expect = (2.0 / std::f64::consts::PI.sqrt()).sqrt();
    assert!((at("phi").as_f64().unwrap() - expect).abs() < 1e-14);
}

#[test]
fn invalid_alpha_is_a_config_error() {
    let o = lhardy(&["eval", "--alpha", "-2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("alpha > -1"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn config_file_errors_name_line_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "alpha = [0.5]\nnmaxx = 3\n").unwrap();
    let o = lhardy(&["verify", "orthonormality", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("line 2") && e.contains("nmaxx"), "{e}");
    std::fs::write(&cfg, "alpha = [0.5]\nnmax = 20\nseed = 9\n").unwrap();
    let o = lhardy(&["verify", "orthonormality", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["config"]["nmax"], 20);
}

#[test]
fn orthonormality_suite_passes() {
    let o = lhardy(&["verify", "orthonormality", "--alpha", "0.5", "--nmax", "40"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["pass"], true);
    assert!(v["assertions"][0]["value"].as_f64().unwrap() < 1e-8);
}

#[test]
fn trig_series_suite_passes() {
    let o = lhardy(&["verify", "trig-series", "--t", "1", "--K", "1e6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    let a = v["assertions"].as_array().unwrap().iter().find(|a| a["name"] == "naive vs limit").unwrap();
    assert!(a["value"].as_f64().unwrap() < 1e-2);
}

#[test]
fn norm_scaling_suite_passes() {
    let o = lhardy(&["verify", "norm-scaling", "--alpha", "0.5", "--p", "0.75", "--r", "0.9,0.99,0.999"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(json(&o)["assertions"][0]["value"].as_f64().unwrap() <= 10.0);
}

#[test]
fn failed_assertion_exits_one_and_names_anchor() {
    // The inner-series ratio fails at this scale; the exit code and the
    // quoted statement are what is checked here.
    let o = lhardy(&["verify", "sharpness", "--nmax", "1000"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stderr(&o).contains("FAIL inner-series ratio d=1"));
    assert!(stderr(&o).contains("|n|^{−d−1/4}"));
}

#[test]
fn budget_exhaustion_exits_three() {
    let o = lhardy(&["verify", "trig-series", "--K", "2e8"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let v = json(&o);
    let a = v["assertions"].as_array().unwrap();
    assert!(a.iter().any(|x| x["budget"] == true));
    assert!(a.iter().filter(|x| x["pass"] == false).all(|x| x["budget"] == true));
}

#[test]
fn unknown_suite_is_rejected() {
    let o = lhardy(&["verify", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("orthonormality"));
}

#[test]
fn json_is_deterministic_apart_from_timestamp() {
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_lhardy"))
            .args(["verify", "l1-uniform", "--alpha", "0.5", "--K", "2000", "--seed", "3"])
            .env("LHARDY_THREADS", threads)
            .output()
            .unwrap();
        let mut v = json(&o);
        v.as_object_mut().unwrap().remove("timestamp");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn outputs_are_not_overwritten() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o.json");
    let args = ["eval", "--k", "0..2", "--out", out.to_str().unwrap()];
    assert_eq!(lhardy(&args).status.code(), Some(0));
    let o = lhardy(&args);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--force"));
    let mut forced = args.to_vec();
    forced.push("--force");
    assert_eq!(lhardy(&forced).status.code(), Some(0));
}

#[test]
fn csv_output_writes_each_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e.csv");
    let o = lhardy(&["eval", "--k", "0..1", "--u", "0.5,1", "--r", "0.5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let phi = csv_rows(&out);
    assert_eq!(phi[0][0], "alpha");
    assert_eq!(phi.len(), 1 + 4);
    let kernel = csv_rows(&dir.path().join("e-kernel.csv"));
    assert_eq!(kernel.len(), 1 + 4);
}

#[test]
fn report_merges_runs() {
    let dir = tempfile::tempdir().unwrap();
    let mut inputs = Vec::new();
    for (i, a) in ["0.5", "-0.5", "0.5"].iter().enumerate() {
        let p = dir.path().join(format!("n{i}.json"));
        let o = lhardy(&["verify", "norm-scaling", "--alpha", a, "--p", "0.25", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        inputs.push(p);
    }
    let div = dir.path().join("d.json");
    assert_eq!(lhardy(&["verify", "sharpness", "--nmax", "1000", "--out", div.to_str().unwrap()]).status.code(), Some(1));
    inputs.push(div);
    let out = dir.path().join("merged");
    let mut args = vec!["report", "--out-dir", out.to_str().unwrap()];
    args.extend(inputs.iter().map(|p| p.to_str().unwrap()));
    let o = lhardy(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let long = csv_rows(&out.join("norm_scaling.csv"));
    assert_eq!(long[0][..3], ["run", "command", "seed"]);
    assert_eq!(long.len(), 1 + 9);
    let wide = csv_rows(&out.join("norm_scaling_wide.csv"));
    assert_eq!(wide[0], ["run", "kind", "alpha", "r=0.9", "r=0.99", "r=0.999"]);
    assert_eq!(wide.len(), 1 + 3);

    let plot = csv_rows(&out.join("divergence_plot.csv"));
    assert_eq!(plot[0], ["run", "series", "x", "y"]);
    let x: f64 = plot[1][2].parse().unwrap();
    assert!((x - 100f64.ln()).abs() < 1e-12);
}

#[test]
fn report_rejects_missing_and_empty_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("merged");
    let o = lhardy(&["report", "--out-dir", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
    let o = lhardy(&["report", "--out-dir", out.to_str().unwrap(), "absent1.json", "absent2.json"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("absent1.json") && e.contains("absent2.json"), "{e}");
    assert!(!out.exists());
}
