use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use eirep::instances::InstanceSpec;
use eirep::json::module_to_json;
use eirep::repmod::{free_module, simple_module, zero_module, CatModule, Side};
use serde_json::{json, Value};
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn eirep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eirep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

/// Temp dir holding the FI N=2 category generated by the binary.
struct Workspace {
    dir: TempDir,
    category: String,
}

impl Workspace {
    fn fi2() -> Self {
        let dir = TempDir::new().unwrap();
        let category = dir.path().join("fi2.json").display().to_string();
        let out = eirep(&[
            "gen",
            fixture("fi2.toml").to_str().unwrap(),
            "--out",
            &category,
        ]);
        assert_eq!(out.status.code(), Some(0));
        Workspace { dir, category }
    }

    fn write_module(&self, name: &str, m: &CatModule) -> String {
        let path = self.dir.path().join(name);
        fs::write(&path, module_to_json(m, None).to_string()).unwrap();
        path.display().to_string()
    }
}

fn fi2() -> Arc<eirep::eicat::FiniteEICategory> {
    Arc::new(InstanceSpec::fi(None, 2).build().unwrap())
}

#[test]
fn gen_counts_and_errors() {
    let out = eirep(&["gen", fixture("fi2.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["morphisms"].as_array().unwrap().len(), 8);

    let out = eirep(&["gen", fixture("vi2.json").to_str().unwrap(), "--out", "-"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["morphisms"].as_array().unwrap().len(), 13);

    let out = eirep(&["gen", fixture("malformed.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "spec");
    assert!(out.stdout.is_empty());

    let out = eirep(&["gen", fixture("fi2.toml").to_str().unwrap(), "--cap", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_json(&out)["message"]
        .as_str()
        .unwrap()
        .contains("cap"));

    let out = eirep(&["gen", "/nonexistent/spec.toml"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "io");

    let out = eirep(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "usage");
}

#[test]
fn nakayama_command() {
    let ws = Workspace::fi2();
    let cat = fi2();
    let one = cat.object("1").unwrap();
    let a1 = ws.write_module("a1.json", &free_module(&cat, Side::Left, one));
    let out = eirep(&["nakayama", &ws.category, &a1]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["dims"], json!({"0": 1, "1": 1, "2": 0}));
    assert_eq!(v["module"]["side"], "left");
    assert_eq!(v["module"]["provenance"]["construction"], "nakayama");

    let zero = ws.write_module("zero.json", &zero_module(&cat, Side::Left));
    let v = stdout_json(&eirep(&["nakayama", &ws.category, &zero]));
    assert_eq!(v["dims"], json!({"0": 0, "1": 0, "2": 0}));

    let right = ws.write_module("e1.json", &free_module(&cat, Side::Right, one));
    let out = eirep(&["nakayama", &ws.category, &right]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "validation");

    let cofree = ws.write_module("d1.json", &free_module(&cat, Side::Right, one).dualize());
    let out = eirep(&["nakayama", &ws.category, &cofree, "--inverse"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["dims"], json!({"0": 0, "1": 1, "2": 2}));
}

#[test]
fn resolve_command() {
    let ws = Workspace::fi2();
    let cat = fi2();
    let one = cat.object("1").unwrap();
    let s1 = ws.write_module("s1.json", &simple_module(&cat, Side::Left, one));
    let out = eirep(&["resolve", &ws.category, &s1]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["length"], 1);
    assert_eq!(v["certificate"]["passed"], true);
    assert_eq!(v["complex"]["terms"].as_array().unwrap().len(), 3);

    let cofree = ws.write_module("d1.json", &free_module(&cat, Side::Right, one).dualize());
    let v = stdout_json(&eirep(&["resolve", &ws.category, &cofree]));
    assert_eq!(v["length"], 0);

    let broken = ws.dir.path().join("broken.json");
    fs::write(
        &broken,
        r#"{"side": "left", "dims": {"1": 1, "2": 1},
            "action": {"1-2:1|0": [["1"]], "1-2:2|0": [["2"]], "2-2:2,1|0,0": [["1"]]}}"#,
    )
    .unwrap();
    let out = eirep(&["resolve", &ws.category, broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "validation");
}

#[test]
fn check_command() {
    let ws = Workspace::fi2();
    let report_a = ws.dir.path().join("a.json");
    let report_b = ws.dir.path().join("b.json");
    for path in [&report_a, &report_b] {
        let out = eirep(&[
            "check",
            &ws.category,
            "--seed",
            "11",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = fs::read(&report_a).unwrap();
    assert_eq!(a, fs::read(&report_b).unwrap());
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["counts"]["fail"], 0);
    for r in v["records"].as_array().unwrap() {
        if r["verdict"] != "pass" {
            assert!(
                r["id"]
                    .as_str()
                    .unwrap()
                    .starts_with("self-injective-audit/"),
                "{r}"
            );
        }
    }
    let ids: Vec<&str> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);

    let out = eirep(&["check", fixture("z2.json").to_str().unwrap(), "--timing"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["counts"]["expected_fail"], 0);
    assert_eq!(v["counts"]["skipped"], 0);
    assert!(v["elapsed_ms"].is_u64());

    let out = eirep(&[
        "check",
        fixture("non_mono.json").to_str().unwrap(),
        "--suite",
        "mono-torsion",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let rec = &v["records"][0];
    assert_eq!(rec["verdict"], "pass");
    assert_eq!(rec["witness"]["non_monomorphisms"], json!(["f"]));

    let out = eirep(&["check", &ws.category, "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_reports_broken_category() {
    let dir = TempDir::new().unwrap();
    let mut cat: Value =
        serde_json::from_str(&fs::read_to_string(fixture("z2.json")).unwrap()).unwrap();
    cat["compose"].as_array_mut().unwrap().pop();
    let path = dir.path().join("broken.json");
    fs::write(&path, cat.to_string()).unwrap();
    let out = eirep(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["passed"], false);
    let axioms = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["id"] == "axioms/validate")
        .unwrap();
    assert_eq!(axioms["verdict"], "fail");
    let out = eirep(&["audit", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hom_and_audit_commands() {
    let ws = Workspace::fi2();
    let cat = fi2();
    let a0 = ws.write_module(
        "a0.json",
        &free_module(&cat, Side::Left, cat.object("0").unwrap()),
    );
    let a2 = ws.write_module(
        "a2.json",
        &free_module(&cat, Side::Left, cat.object("2").unwrap()),
    );
    // Hom(Ae_i, M) = M(i): maps out of Ae_2 are points of Ae_0 at 2, and no map goes back.
    let v = stdout_json(&eirep(&["hom", &ws.category, &a2, &a0]));
    assert_eq!(v["dim"], 1);
    let v = stdout_json(&eirep(&["hom", &ws.category, &a0, &a2]));
    assert_eq!(v["dim"], 0);
    let v = stdout_json(&eirep(&["hom", &ws.category, &a2, &a2]));
    assert_eq!(v["dim"], 2);
    assert_eq!(v["basis"].as_array().unwrap().len(), 2);

    let out = eirep(&["audit", &ws.category]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["locally_self_injective"], false);
    let top = v["objects"]
        .as_array()
        .unwrap()
        .iter()
        .find(|o| o["object"] == "2")
        .unwrap();
    assert_eq!(top["free_is_injective"], false);
    let v = stdout_json(&eirep(&["audit", fixture("z2.json").to_str().unwrap()]));
    assert_eq!(v["locally_self_injective"], true);
}
