use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    out: PathBuf,
}

impl Run {
    fn report(&self) -> Value {
        serde_json::from_str(&std::fs::read_to_string(self.out.join("report.json")).unwrap()).unwrap()
    }

    fn file(&self, name: &str) -> String {
        std::fs::read_to_string(self.out.join(name)).unwrap()
    }
}

fn write_config(dir: &Path, name: &str, config: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(config).unwrap()).unwrap();
    path
}

fn conescope(config: &Path, command: &str, out: &Path, extra: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_conescope"));
    cmd.arg("--config").arg(config).arg("--command").arg(command).arg("--out").arg(out);
    cmd.args(extra);
    cmd.env_remove("CONESCOPE_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let status = cmd.output().unwrap().status;
    Run {
        code: status.code().unwrap(),
        out: out.to_path_buf(),
    }
}

fn magnus() -> Value {
    json!({"group": {"kind": "free", "rank": 2}, "order": {"kind": "magnus"}})
}

fn f2_times_z(leading_factor: usize) -> Value {
    let (leading, trailing) = if leading_factor == 0 {
        (json!({"kind": "magnus"}), json!({"kind": "hyperplane", "weights": [[1, 0]]}))
    } else {
        (json!({"kind": "hyperplane", "weights": [[1, 0]]}), json!({"kind": "magnus"}))
    };
    json!({
        "group": {"kind": "product", "factors": [{"kind": "free", "rank": 2}, {"kind": "abelian", "rank": 1}]},
        "order": {"kind": "lex_pair", "leading": leading, "trailing": trailing, "leading_factor": leading_factor}
    })
}

#[test]
fn ray_on_magnus() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "cfg.json", &magnus());
    let run = conescope(&cfg, "ray", &dir.path().join("out"), &["--radius", "5"], &[]);
    assert_eq!(run.code, 0);
    let report = run.report();
    assert_eq!(report["command"], "ray");
    assert_eq!(report["verdict"], "PASS");
    assert_eq!(report["result"]["maxima"].as_array().unwrap().len(), 6);
    assert!(run.file("report.txt").starts_with("ray: PASS"));
}

#[test]
fn swamp_certificate_file() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "cfg.json", &magnus());
    let run = conescope(&cfg, "swamp", &dir.path().join("out"), &["--width", "2"], &[]);
    assert_eq!(run.code, 0);
    let cert: Value = serde_json::from_str(&run.file("certificate.json")).unwrap();
    assert_eq!(cert["verdict"], "certified-tree");
    assert_eq!(cert["r"], 2);
    assert_eq!(cert["swamp"].as_array().unwrap().len(), 17);
    assert_eq!(cert["witnesses"].as_array().unwrap().len(), 2);
    let keys: Vec<&String> = cert.as_object().unwrap().keys().collect();
    assert_eq!(keys, vec!["center", "r", "swamp", "verdict", "witnesses"]);
}

#[test]
fn usage_errors() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let run = conescope(&dir.path().join("missing.json"), "ray", &out, &[], &[]);
    assert_eq!(run.code, 3);
    let mut bad = magnus();
    bad["params"] = json!({"radius": 3, "sides": 2});
    let cfg = write_config(dir.path(), "bad.json", &bad);
    assert_eq!(conescope(&cfg, "ray", &out, &[], &[]).code, 3);
    let cfg = write_config(dir.path(), "cfg.json", &magnus());
    assert_eq!(conescope(&cfg, "dfa-verify", &out, &[], &[]).code, 3);
    assert_eq!(conescope(&cfg, "axioms", &out, &["--radius", "12"], &[("CONESCOPE_CAP", "1000")]).code, 3);
    assert_eq!(conescope(&cfg, "axioms", &out, &[], &[("CONESCOPE_CAP", "lots")]).code, 3);
    assert!(!out.join("report.json").exists());
}

#[test]
fn positional_arguments() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "cfg.json", &magnus());
    let status = Command::new(env!("CARGO_BIN_EXE_conescope"))
        .arg(&cfg)
        .arg("axioms")
        .arg("--out")
        .arg(dir.path().join("out"))
        .arg("--radius")
        .arg("3")
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
}

#[test]
fn survey_exit_codes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let z2 = json!({
        "group": {"kind": "abelian", "rank": 2},
        "order": {"kind": "hyperplane", "weights": [[1, 0], [0, 1]]},
        "params": {"r": 1, "radii": [2, 4, 6]}
    });
    let run = conescope(&write_config(dir.path(), "z2.json", &z2), "survey", &out, &[], &[]);
    assert_eq!(run.code, 0);
    assert_eq!(run.report()["verdict"], "Prieto-consistent at (1, 6)");

    let mut f = magnus();
    f["params"] = json!({"radii": [4, 5]});
    let run = conescope(&write_config(dir.path(), "f2.json", &f), "survey", &out, &[], &[]);
    assert_eq!(run.code, 0);
    assert_eq!(run.report()["verdict"], "Hucha-certified at width 1");

    let mut p = f2_times_z(0);
    p["params"] = json!({"radii": [5]});
    let run = conescope(&write_config(dir.path(), "p.json", &p), "survey", &out, &[], &[]);
    assert_eq!(run.code, 2);
}

#[test]
fn product_swamp_is_not_separating() {
    let dir = TempDir::new().unwrap();
    let mut p = f2_times_z(0);
    p["params"] = json!({"r": 1, "radius": 5});
    let run = conescope(&write_config(dir.path(), "p.json", &p), "swamp", &dir.path().join("out"), &[], &[]);
    assert_eq!(run.code, 1);
    let report = run.report();
    assert_eq!(report["verdict"], "not-separating");
    assert!(report["result"]["avoiding_path"]["points"].as_array().unwrap().len() > 1);
}

#[test]
fn cofinal_paths() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let cfg = write_config(dir.path(), "p.json", &f2_times_z(1));
    let run = conescope(&cfg, "cofinal-path", &out, &[], &[]);
    assert_eq!(run.code, 0);
    assert_eq!(run.report()["result"]["paths"].as_array().unwrap().len(), 50);
    let cfg = write_config(dir.path(), "q.json", &f2_times_z(0));
    assert_eq!(conescope(&cfg, "cofinal-path", &out, &[], &[]).code, 3);
}

#[test]
fn automaton_commands() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    std::fs::write(dir.path().join("lex.json"), conescope::regular::z2_lex_dfa().to_json()).unwrap();
    let z2 = json!({"group": {"kind": "abelian", "rank": 2}, "dfa": "lex.json"});
    let cfg = write_config(dir.path(), "z2.json", &z2);
    let run = conescope(&cfg, "dfa-verify", &out, &["--radius", "3", "--lmax", "12"], &[]);
    assert_eq!(run.code, 0);
    assert_eq!(run.report()["result"]["verdict"], "PASS");
    assert_eq!(conescope(&cfg, "dfa-verify", &out, &["--radius", "2", "--lmax", "1"], &[]).code, 2);
    assert_eq!(conescope(&cfg, "dfa-qg", &out, &[], &[]).code, 0);
    let run = conescope(&cfg, "dfa-path", &out, &["--lmax", "6"], &[]);
    assert_eq!(run.code, 0);
    assert_eq!(run.report()["result"]["bound"], 11);

    let all = json!({"group": {"kind": "free", "rank": 2}, "dfa": serde_json::from_str::<Value>(&conescope::regular::all_accepting(2).to_json()).unwrap()});
    let cfg = write_config(dir.path(), "all.json", &all);
    assert_eq!(conescope(&cfg, "dfa-verify", &out, &["--radius", "1"], &[]).code, 1);
    let back = json!({"group": {"kind": "free", "rank": 2}, "dfa": serde_json::from_str::<Value>(&conescope::regular::backtracking().to_json()).unwrap()});
    let cfg = write_config(dir.path(), "back.json", &back);
    let run = conescope(&cfg, "dfa-qg", &out, &[], &[]);
    assert_eq!(run.code, 1);
    assert_eq!(run.report()["result"]["violation"]["word"], "aAa");
}

#[test]
fn dot_export() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "cfg.json", &magnus());
    let run = conescope(&cfg, "export-dot", &dir.path().join("out"), &["--radius", "2"], &[]);
    assert_eq!(run.code, 0);
    let dot = run.file("ball.dot");
    assert!(dot.starts_with("graph ball {"));
    assert_eq!(dot.lines().filter(|l| l.contains("[sign=")).count(), 17);
    assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 16);
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "cfg.json", &f2_times_z(1));
    for command in ["components", "survey", "export-dot"] {
        let a = conescope(&cfg, command, &dir.path().join("a"), &["--radius", "4"], &[]);
        let b = conescope(&cfg, command, &dir.path().join("b"), &["--radius", "4", "--traversal", "reversed"], &[]);
        assert_eq!(a.code, b.code);
        assert_eq!(a.file("report.json"), b.file("report.json"), "{command}");
        assert_eq!(a.file("report.txt"), b.file("report.txt"), "{command}");
    }
}
