use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn scene(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenes").join(format!("{name}.json"));
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatfuk")).args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("flatfuk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

#[test]
fn fixtures_list_and_generate() {
    let o = run(&["fixtures", "list"]);
    assert!(o.status.success());
    let names = json(&o);
    let names: Vec<String> = names["fixtures"].as_array().unwrap().iter().map(|f| f.as_str().unwrap().to_string()).collect();
    assert!(names.len() >= 10);
    for n in ["torus-theta", "genus2-krelation"] {
        assert!(names.iter().any(|x| x == n), "{n}");
        let out = tmp(&format!("{n}.json"));
        assert!(run(&["fixtures", "generate", n, "--out", out.to_str().unwrap()]).status.success());
        assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(scene(n)).unwrap());
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["mk", &scene("torus-theta"), "L0", "Linf", "L1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn verify_d2() {
    let o = run(&["verify", "d2", &scene("torus-pushoff-equal"), "V", "V'"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["checked"], 1);
}

#[test]
fn verify_ainfty() {
    let o = run(&["verify", "ainfty", &scene("torus-four-slope"), "--max-k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["degree_violations"], 0);
}

#[test]
fn hf_of_unequal_pushoff_vanishes() {
    let r = json(&run(&["hf", &scene("torus-pushoff-unequal"), "V", "V2"]));
    assert_eq!((r["ranks"]["h0"].as_u64(), r["ranks"]["h1"].as_u64()), (Some(0), Some(0)));
}

fn error_kind(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(2), "{args:?}");
    let r = json(&o);
    assert_eq!(r["status"], "error");
    r["kind"].as_str().unwrap().to_string()
}

#[test]
fn input_errors_exit_2() {
    let bad = tmp("bad.json");
    std::fs::write(&bad, "{\"surface\": 3}").unwrap();
    error_kind(&["validate", bad.to_str().unwrap()]);
    error_kind(&["validate", "/nonexistent/scene.json"]);
    error_kind(&["hf", &scene("torus-theta"), "L0", "Nope"]);
    error_kind(&["hf", &scene("torus-theta"), "L0", "L1", "--cutoff=-1"]);
}

#[test]
fn non_transversal_scene() {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(scene("torus-pushoff-equal")).unwrap()).unwrap();
    let curves = v["curves"].as_array_mut().unwrap();
    let mut w = curves.iter().find(|c| c["name"] == "V").unwrap().clone();
    w["name"] = "W".into();
    curves.push(w);
    let p = tmp("overlap.json");
    std::fs::write(&p, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(error_kind(&["intersect", p.to_str().unwrap()]), "transversality");
}

#[test]
fn obstructed_curves_fail_validation() {
    let o = run(&["validate", &scene("genus2-subsurfaces")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["status"], "fail");
}

#[test]
fn cone_round_trip() {
    let out = tmp("cone.json");
    let o = run(&["cone", &scene("torus-cone"), "c", "--name", "K", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let before = json(&o)["invariants"].clone();
    let again = json(&run(&["invariants", out.to_str().unwrap(), "K"]));
    assert_eq!(again["invariants"], before);
}

#[test]
fn resolve_matches_cone() {
    let r = json(&run(&["resolve", &scene("torus-cone"), "V", "H", "at", "1/4,1/8"]));
    assert_eq!(r["status"], "pass");
    assert_eq!(r["invariants_equal"], true);
}

#[test]
fn twisted_complex_against_twist() {
    let o = run(&["twistcx", &scene("torus-twist"), "H", "V", "--compare", "T"]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!(r["maurer_cartan_ok"], true);
    assert_eq!(r["compare"]["invariants_equal"], true);
    assert_eq!(r["compare"]["ranks_equal"], true);
}

#[test]
fn pushoff_keeps_holonomy() {
    let o = run(&["pushoff", &scene("torus-theta"), "L0", "--lambda", "1/512", "--lambda-prime", "1/1024", "--name", "P"]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!(r["holonomy"]["equal"], true);
    assert_eq!(r["ranks"]["total"], 2);
}

#[test]
fn render_svg() {
    let o = run(&["render", &scene("torus-theta"), "--svg", "--polygons", "L0", "Linf", "L1"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
}
