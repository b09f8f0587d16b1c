use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use swduality::aff::{evaluation_module, Generator};
use swduality::exact::{rat, RatMatrix};

fn swd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swd")).args(args).output().expect("swd runs")
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn default_run_all_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = swd(&["run-all", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["status"], "pass");
    let tasks: Vec<&str> = r["results"].as_array().unwrap().iter().map(|x| x["task"].as_str().unwrap()).collect();
    for t in ["aff-relations", "toroidal", "alpha", "roundtrip", "glue", "compare-direct", "hom", "build-f"] {
        assert!(tasks.contains(&t), "missing {t}");
    }
}

#[test]
fn ell_above_n_is_a_usage_error() {
    let o = swd(&["extract-alpha", "--n", "1", "--ell", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ell <= n"));
}

#[test]
fn outside_hypothesis_relations_still_run() {
    let o = swd(&["run-all", "--n", "1", "--ell", "2", "--kmax", "1", "--suite", "relations", "--suite", "glue"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn bad_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"n": 2, "kmax": 0}"#).unwrap();
    assert_eq!(swd(&["verify-aff", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&cfg, r#"{"n": 2, "unknown": true}"#).unwrap();
    assert_eq!(swd(&["verify-aff", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(swd(&["verify-aff", "--fixtures", "eval:1,2"]).status.code(), Some(2));
}

#[test]
fn config_file_is_honoured_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let out = dir.path().join("report.json");
    std::fs::write(&cfg, r#"{"n": 3, "ell": 2, "m": 3, "kmax": 1, "fixtures": ["eval:1,2;3,4;5,6"]}"#).unwrap();
    let o = swd(&["glue", "--config", cfg.to_str().unwrap(), "--kmax", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    assert_eq!(r["config"]["m"], 3);
    assert_eq!(r["config"]["kmax"], 2);
    assert_eq!(r["command"], "glue");
}

#[test]
fn toroidal_commands_need_two_loops() {
    let o = swd(&["verify-toroidal", "--loops", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn mutated_module_file_fails_with_its_relation() {
    let dir = tempfile::tempdir().unwrap();
    let module = evaluation_module(&[vec![rat(2, 1), rat(3, 1)], vec![rat(5, 1), rat(7, 1)]]).unwrap();
    let y = module.y(2, 1).clone();
    let bumped = &y + &RatMatrix::unit(y.rows(), y.cols(), 0, 1);
    let broken = module.with_matrix(Generator::y(2, 1), bumped).unwrap();
    let file = dir.path().join("broken.json");
    std::fs::write(&file, serde_json::to_string(&broken).unwrap()).unwrap();
    let out = dir.path().join("report.json");

    let o = swd(&["verify-aff", "--module", file.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "fail");
    let witness = r["results"][0]["checks"][0]["witness"].as_str().unwrap();
    assert!(witness.contains("y.2.1"), "{witness}");
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL"));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = |p: &Path| {
        vec![
            "run-all".to_string(),
            "--seed".into(),
            "7".into(),
            "--fixtures".into(),
            "jordan:2,3;5,7".into(),
            "--fixtures".into(),
            "sign:2;3".into(),
            "--out".into(),
            p.to_str().unwrap().into(),
        ]
    };
    let run = |p: &Path| {
        let v = args(p);
        let refs: Vec<&str> = v.iter().map(String::as_str).collect();
        assert_eq!(swd(&refs).status.code(), Some(0));
    };
    run(&a);
    run(&b);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let seq = dir.path().join("seq.json");
    let mut v = args(&seq);
    v.push("--sequential".into());
    let refs: Vec<&str> = v.iter().map(String::as_str).collect();
    assert_eq!(swd(&refs).status.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&seq).unwrap());
}
