use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clebsch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cartan_inverse_json() {
    let o = run(&["cartan-inv", "--group", "cyclic:3", "--method", "direct", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!([["2/3", "1/3"], ["1/3", "2/3"]]));
}

#[test]
fn every_method_agrees_on_the_cli() {
    let first = stdout(&run(&["cartan-inv", "--group", "bd:3", "--format", "json"]));
    for m in ["characters", "eta", "limit", "sylvester-limit"] {
        let o = run(&["cartan-inv", "--group", "bd:3", "--method", m, "--format", "json"]);
        assert_eq!(stdout(&o), first, "{m}");
    }
}

#[test]
fn mckay_text() {
    let o = run(&["mckay", "--group", "2T"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "affine E6: PASS, kernel: PASS");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["group", "--group", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["series", "--group", "cyclic:3", "--kind", "X"]).status.code(), Some(2));
    assert_eq!(run(&["kostka", "--lambda", "2,1", "--mu", "2"]).status.code(), Some(2));
    assert_eq!(run(&["group", "--group", "file:/nonexistent/g.json"]).status.code(), Some(2));
}

#[test]
fn json_is_deterministic() {
    let args = ["series", "--group", "2O", "--kind", "P", "--format", "json"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
    let args = ["cm", "--group", "2I", "--format", "json"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn group_json_round_trips() {
    let dir = std::env::temp_dir().join(format!("clebsch-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("2t.json");
    let first = stdout(&run(&["group", "--group", "2T", "--format", "json"]));
    std::fs::write(&path, &first).unwrap();
    let sel = format!("file:{}", path.display());
    assert_eq!(stdout(&run(&["group", "--group", &sel, "--format", "json"])), first);
    assert_eq!(stdout(&run(&["mckay", "--group", &sel])).trim(), "affine E6: PASS, kernel: PASS");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn symmetric_functions() {
    assert_eq!(stdout(&run(&["kostka", "--lambda", "2,1", "--mu", "1,1,1"])).trim(), "q + q^2");
    assert_eq!(stdout(&run(&["kron", "--lambda", "2,1", "--mu", "2,1", "--nu", "2,1"])).trim(), "1");
    assert_eq!(stdout(&run(&["spec", "--lambda", "2,1", "--range", "2"])).trim(), "q + q^2");
    assert_eq!(run(&["kf-check", "--lambda", "2,2", "--mu", "2,1,1"]).status.code(), Some(0));
    assert_eq!(run(&["supersym", "--mu", "2,1", "--t", "2"]).status.code(), Some(0));
    assert_eq!(run(&["fakedeg", "--d", "4"]).status.code(), Some(0));
}

#[test]
fn graphs() {
    let o = run(&["cf-check", "--graph", "affine:E8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equal: PASS"));
    let o = run(&["preproj", "--graph", "dynkin:D4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["H"].as_array().unwrap().len(), 4);
}

#[test]
fn weyl_and_latex() {
    let o = run(&["weyl", "--group", "2I", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["agree"], true);
    let o = run(&["series", "--group", "cyclic:2", "--format", "latex"]);
    assert!(stdout(&o).starts_with("\\begin{pmatrix}"));
}

#[test]
fn verify_fast() {
    let o = run(&["verify-all", "--level", "fast"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 14);
    assert!(text.contains("inverse-eta: 2 |G| (-1)^d sigma"));
}
