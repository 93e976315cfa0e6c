use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_preoperad"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn lists_laws() {
    let o = run(&["laws"]);
    assert_eq!(o.status.code(), Some(0));
    let ids: Vec<String> = stdout(&o)
        .lines()
        .filter_map(|l| l.split_whitespace().next().map(str::to_string))
        .collect();
    assert!(ids.len() >= 18);
    assert!(ids.iter().any(|i| i == "L08-main-theorem"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        run(&["verify", "--backend", "quantum"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--law", "L99-nothing"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "--prime", "91"]).status.code(), Some(2));
    assert_eq!(run(&["eval"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn free_tetrabrace_deviation() {
    let o = run(&[
        "verify",
        "--law",
        "L08-main-theorem",
        "--backend",
        "free",
        "--trials",
        "50",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["law_id"], "L08-main-theorem");
    assert_eq!(v[0]["status"], "pass");
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("cfg.json");
    std::fs::write(
        &config,
        r#"{"backend": "endo", "dim": 2, "trials": 7, "seed": 3, "law": "L22-bracket"}"#,
    )
    .unwrap();
    let c = config.to_str().unwrap();
    let o = run(&["verify", "--config", c, "--trials", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["trials"], 5);

    std::fs::write(&config, r#"{"colour": "red"}"#).unwrap();
    assert_eq!(run(&["verify", "--config", c]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "verify", "--law", "all", "--dim", "2", "--trials", "20", "--seed", "11",
    ];
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_str(&stdout(o)).unwrap();
        for r in v.as_array_mut().unwrap() {
            r["millis"] = Value::from(0);
        }
        v
    };
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn eval_scripts() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("cup.op");
    std::fs::write(
        &script,
        "# cup of two scalars\nlet mu: deg 2 = 1;\nlet f: deg 1 = 2;\nlet g: deg 1 = 3;\ncup(f, g)\n",
    )
    .unwrap();
    let o = run(&["eval", "--script", script.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"degree": 2, "backend": "endo", "payload": [91]})
    );

    std::fs::write(&script, "let h: deg 2; let f: deg 3; comp(h, f, 0)").unwrap();
    let o = run(&[
        "eval",
        "--backend",
        "free",
        "--script",
        script.to_str().unwrap(),
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["payload"][0]["tree"], "(h (f _ _ _) _)");

    std::fs::write(&script, "let f: deg 2; let g: deg 1; comp(f, g, 2)").unwrap();
    let o = run(&["eval", "--script", script.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of range"));
}
