use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bending(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bending")).args(args).output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

/// The report without its run-dependent metadata.
fn payload(o: &Output) -> Value {
    let mut v = json(o);
    v.as_object_mut().unwrap().remove("metadata");
    v
}

#[test]
fn verify_hopf_on_unit_sphere() {
    let o = bending(&["verify", "--surface", "sphere:r=1", "--field", "hopf", "--grid", "24,24,48"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["report"]["degree"], 1);
    assert_eq!(v["report"]["pass"], true);
    assert!((v["report"]["total_bending"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!(v["metadata"]["generated_unix_seconds"].as_u64().unwrap() > 0);
}

#[test]
fn flipped_orientation_reverses_degree() {
    let o = bending(&["verify", "--field", "hopf", "--orientation", "flipped", "--grid", "12,12,24"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = &json(&o)["report"];
    assert_eq!(r["degree"], -1);
    assert_eq!(r["orientation"], "flipped");
    assert_eq!(r["main_bound_abs"]["pass"], true);
    assert!(stderr(&o).contains("|deg| PASS"));
}

#[test]
fn compute_on_ellipsoid_is_finite() {
    let o = bending(&["compute", "--surface", "ellipsoid:2,1,1,1", "--field", "perturbed_hopf:0.3", "--grid", "16,16,32"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = &json(&o)["report"];
    for key in ["total_bending", "energy", "vol_m", "vol_field", "s_tilde", "integral_eta2"] {
        assert!(r[key].as_f64().is_some_and(f64::is_finite), "{key}: {}", r[key]);
    }
    assert_eq!(r["degree_eta2"]["rounded"], 1);
}

#[test]
fn reports_are_reproducible_across_runs_and_threads() {
    let args = ["verify", "--surface", "bumpy_sphere:eps=0.1,mode=1", "--field", "random_smooth:seed=1,smoothness=2", "--grid", "12,12,24"];
    let a = bending(&[&args[..], &["--threads", "1"]].concat());
    let b = bending(&[&args[..], &["--threads", "1"]].concat());
    let c = bending(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(a.status.code(), b.status.code());
    let (pa, pb, pc) = (payload(&a), payload(&b), payload(&c));
    assert_eq!(serde_json::to_string(&pa).unwrap(), serde_json::to_string(&pb).unwrap());
    assert_eq!(serde_json::to_string(&pa).unwrap(), serde_json::to_string(&pc).unwrap());
    assert_eq!(json(&c)["metadata"]["threads"], 4);
}

#[test]
fn optimize_is_reproducible_and_writes_history() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let out = dir.path().join(name);
        let o = bending(&["optimize", "--seed", "2", "--grid", "8,8,16", "--tol-grad", "1e-5", "--threads", threads, "--output", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("metadata");
        v
    };
    let a = run("a.json", "1");
    let b = run("b.json", "3");
    assert_eq!(a, b);
    assert_eq!(a["report"]["seed"], 2);
    let history = std::fs::read_to_string(dir.path().join("a.history.csv")).unwrap();
    let mut lines = history.lines();
    assert_eq!(lines.next(), Some("iteration,B,gradient_norm,step_size"));
    assert_eq!(lines.count(), a["report"]["history"].as_array().unwrap().len());
}

#[test]
fn optimize_csv_format_writes_history_only() {
    let o = bending(&["optimize", "--grid", "8,8,16", "--max-iters", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("iteration,B,gradient_norm,step_size\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# sphere of radius two\nsurface = sphere:r=2\nfield = hopf_axis:0,1,1\ngrid = 8,8,16\n").unwrap();
    let o = bending(&["compute", "--config", cfg.to_str().unwrap(), "--grid", "10,10,20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let inputs = &json(&o)["inputs"];
    assert_eq!(inputs["surface"], "sphere:r=2");
    assert_eq!(inputs["field"], "hopf_axis:0,1,1");
    assert_eq!(inputs["grid"], serde_json::json!([10, 10, 20]));
}

fn assert_invalid(args: &[&str], key: &str) {
    let o = bending(args);
    assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    assert!(stderr(&o).contains(&format!("`{key}`")), "{args:?}: {}", stderr(&o));
}

#[test]
fn invalid_inputs_exit_with_two_and_name_the_key() {
    assert_invalid(&["compute", "--grid", "8,8"], "grid");
    assert_invalid(&["compute", "--surface", "torus:r=1"], "surface");
    assert_invalid(&["compute", "--surface", "ellipsoid:2,1,0,1"], "surface");
    assert_invalid(&["compute", "--field", "perturbed_hopf:abc"], "field");
    assert_invalid(&["verify", "--orientation", "sideways"], "orientation");
    assert_invalid(&["verify", "--format", "csv"], "format");
    assert_invalid(&["optimize", "--tol-grad", "-1"], "tol_grad");
    assert_invalid(&["optimize", "--surface", "sphere:r=2"], "surface");
    assert_invalid(&["compute", "--threads", "0"], "threads");

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "seed = 1\nlearning_rate = 0.1\n").unwrap();
    assert_invalid(&["optimize", "--config", cfg.to_str().unwrap()], "learning_rate");
    assert_invalid(&["compute", "--config", Path::new("/nonexistent/run.cfg").to_str().unwrap()], "config");
}

#[test]
fn catalog_lists_descriptors() {
    let o = bending(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v.get("inputs").is_none());
    let fields: Vec<&str> = v["report"]["fields"].as_array().unwrap().iter().map(|f| f.as_str().unwrap()).collect();
    assert!(fields.contains(&"hopf"));
    assert!(fields.contains(&"perturbed_hopf:0.3"));
}
