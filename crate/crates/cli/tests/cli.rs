use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glq-stab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn decompose_m1_q2_table() {
    let o = run(&["decompose", "--m", "1", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("Σ c²·class = 7   oracle: PASS"), "{s}");
    assert!(s.contains("Σ c·deg·class = 28"));
    // header, rule, four entries
    assert_eq!(s.lines().take_while(|l| !l.starts_with("n =")).count(), 6);
}

#[test]
fn decompose_json_schema() {
    let v = json(&["decompose", "--m", "1", "--q", "3", "--format", "json"]);
    assert_eq!(v["entries"].as_array().unwrap().len(), 7);
    assert_eq!(v["checks"]["sum_sq"], 15);
    assert_eq!(v["checks"]["dim"], "234");
    assert_eq!(v["verification"]["oracle_sum_sq"], "PASS");
    assert!(v["entries"][0]["degree"].is_string());
    let back = glq_stab::branching::Decomposition::from_json(&v).unwrap();
    assert_eq!(back.sum_sq(), 15u32.into());
}

#[test]
fn decompose_trivial_csv() {
    let o = run(&["decompose", "--m", "0", "--q", "3", "--n", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "shape,mult,class_size,degree\nι:(),1,1,1\n");
}

#[test]
fn zigzag_examples() {
    for (from, to, q, want) in [("ι:(1)", "ι:(1,1)", "2", "2"), ("", "ι:(1,1)", "5", "5"), ("ι:(3)", "ι:(4)", "2", "1")] {
        let o = run(&["zigzag", "--from", from, "--to", to, "--q", q]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), want);
    }
    let v = json(&["zigzag", "--from", "", "--to", "ι:(1,1)", "--q", "7", "--format", "json"]);
    assert_eq!(v["value"], 7);
}

#[test]
fn usage_errors_exit_2_with_json() {
    for args in [
        &["zigzag", "--from", "ι:(3", "--to", "ι:(4)", "--q", "2"][..],
        &["zigzag", "--from", "ι:(1)", "--to", "ι:(3)", "--q", "2", "--m", "1"],
        &["decompose", "--m", "1", "--q", "6"],
        &["decompose", "--m", "3", "--n", "2", "--q", "2"],
        &["oracle", "double-cosets", "--n", "3", "--m", "1", "--q", "11"],
        &["oracle", "vic-count", "--m", "2", "--n", "7", "--q", "2"],
        &["hcheck", "--m", "2", "--l", "5", "--q", "2", "--strict"],
        &["stability", "--m", "2", "--q", "2", "--n-max", "5"],
        &["verify", "--criterion", "11"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err: Value = serde_json::from_slice(&o.stderr).unwrap_or_else(|_| panic!("{args:?}"));
        assert!(err["error"].is_string() && err["message"].is_string());
    }
    assert_eq!(run(&["decompose", "--q", "2"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn stability_reports() {
    let v = json(&["stability", "--m", "1", "--q", "2", "--n-max", "6", "--format", "json"]);
    assert!(v["observed_stability_degree"].as_u64().unwrap() <= 3);
    assert_eq!(v["bound_satisfied"], true);
    assert_eq!(v["decompositions"].as_array().unwrap().len(), 6);
    let v = json(&["stability", "--m", "0", "--q", "2", "--n-max", "2", "--format", "json"]);
    assert_eq!(v["observed_stability_degree"], 0);
    let o = run(&["stability", "--m", "2", "--q", "2", "--n-max", "8", "--format", "csv"]);
    let s = stdout(&o);
    assert!(s.starts_with("shape,n=2,n=3,n=4,n=5,n=6,n=7,n=8\n"), "{s}");
}

#[test]
fn verify_quick_and_degrees_suite() {
    let o = run(&["verify", "--quick", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summaries: Vec<&Value> = lines.iter().filter(|l| l.get("title").is_some()).collect();
    assert_eq!(summaries.len(), 10);
    assert!(summaries.iter().all(|l| l["status"] == "PASS"));
    let o = run(&["verify", "--suite", "degrees", "--q", "2", "--n-max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("criterion  2 PASS"));
}

#[test]
fn oracle_commands() {
    let one = |args: &[&str]| stdout(&run(args)).trim().to_string();
    assert_eq!(one(&["oracle", "double-cosets", "--n", "3", "--m", "1", "--q", "2"]), "7");
    assert_eq!(one(&["oracle", "classes", "--n", "3", "--q", "2"]), "6");
    assert_eq!(one(&["oracle", "vic-count", "--m", "2", "--n", "3", "--q", "2"]), "168");
    let v = json(&["oracle", "weakstab", "--l", "1", "--m", "1", "--r-max", "4", "--q", "2", "--format", "json"]);
    let vals: Vec<u64> = v["values"].as_array().unwrap().iter().map(|x| x["value"].as_u64().unwrap()).collect();
    assert_eq!(&vals[2..], &[7, 7, 7]);
}

#[test]
fn output_file_and_threads() {
    let dir = std::env::temp_dir().join(format!("glq-stab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dec.json");
    let o = run(&["--threads", "2", "decompose", "--m", "1", "--q", "2", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["checks"]["sum_sq"], 7);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let a = run(&["decompose", "--m", "2", "--q", "3", "--format", "json"]);
    let b = run(&["decompose", "--m", "2", "--q", "3", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn census_and_hcheck() {
    let o = run(&["census", "--n", "3", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("5 shapes, 6 irreducibles"));
    let v = json(&["hcheck", "--m", "1", "--l", "3", "--q", "2", "--label", "ι:(1)", "--format", "json"]);
    assert_eq!(v["holds"], true);
    assert_eq!(v["at_l"], 2);
    let o = run(&["hcheck", "--m", "2", "--l", "5", "--q", "2", "--label", "ι:(1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("warning"));
}
