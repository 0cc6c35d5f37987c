use std::path::PathBuf;
use std::process::{Command, Output};

fn knot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knot")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn corpus() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/corpus.txt").to_string()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("knot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn compute_examples() {
    let o = knot(&["compute", "PD[O*1]"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("jones: 1\n"));
    let o = knot(&["compute", "B2: 1 1 1"]);
    assert!(stdout(&o).contains("conway: z^2 + 1\n"));
    let o = knot(&["compute", "B3: 1 -2 1 -2"]);
    assert!(stdout(&o).contains("conway: -z^2 + 1\n"));
}

#[test]
fn compute_json() {
    let o = knot(&["compute", "B2: 1 1 1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["writhe"], 3);
    assert_eq!(v["jones_t"], "-t^4 + t^3 + t");
    assert_eq!(v["chirality"]["verdict"], "CHIRAL");
    assert_eq!(v["conway"]["ring"], serde_json::json!(["z"]));
}

#[test]
fn compute_from_file() {
    let p = temp_file("trefoil.txt", "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]\n");
    let o = knot(&["compute", "--file", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("crossings: 3\n"));
    let o = knot(&["compute", "--file", "/nonexistent/x.txt"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exit_codes_and_silent_stdout_on_error() {
    let o = knot(&["compute", "PD[X(1,2,3)]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte"));
    let o = knot(&["compute", "PD[X(1,1,2,3)]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let o = knot(&["compute", "B2: 2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = knot(&["compute", "PD[]"]);
    assert_eq!(o.status.code(), Some(2));
    let o = knot(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    let o = knot(&["compute"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn mirror_test_examples() {
    for (d, verdict) in [("B2: 1 1 1", "CHIRAL"), ("PD[O*1]", "INCONCLUSIVE"), ("B3: 1 -2 1 -2", "INCONCLUSIVE")] {
        let o = knot(&["mirror-test", d]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).lines().next(), Some(verdict), "{d}");
    }
    let o = knot(&["mirror-test", "B2: 1 1 1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "CHIRAL");
    assert_ne!(v["f"], v["f_mirror"]);
}

#[test]
fn scramble_verify_passes() {
    for policy in ["ambient", "regular", "framed"] {
        let o = knot(&["scramble-verify", "B2: 1 1 1", "--seed", "11", "--steps", "200", "--policy", policy]);
        assert!(o.status.success(), "{policy}: {}", stdout(&o));
        assert!(stdout(&o).starts_with(&format!("PASS policy={policy} seed=11 steps=200")));
    }
    let o = knot(&["scramble-verify", "B2: 1 1 1", "--seed", "1", "--steps", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("crossings 3 -> 3"));
    let o = knot(&["scramble-verify", "B2: 1 1 1", "--seed", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"], "PASS");
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn scramble_needs_a_seed() {
    let o = knot(&["scramble-verify", "B2: 1 1 1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = knot(&["scramble", "B2: 1 1 1", "--seed", "1", "--policy", "sideways"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["compute", "B3: 1 -2 1 -2", "--format", "json"][..],
        &["scramble", "B2: 1 1 1", "--seed", "5", "--steps", "50"][..],
        &["table-run", "--table", &corpus()][..],
    ] {
        assert_eq!(knot(args).stdout, knot(args).stdout, "{args:?}");
    }
}

#[test]
fn scramble_then_replay() {
    let o = knot(&["scramble", "B3: 1 -2 1 -2", "--seed", "9", "--steps", "40"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let (pd, log) = out.split_once('\n').unwrap();
    assert_eq!(log.lines().count(), 40);
    let p = temp_file("moves.log", log);
    let r = knot(&["replay", "B3: 1 -2 1 -2", "--log", p.to_str().unwrap()]);
    assert!(r.status.success());
    assert_eq!(stdout(&r).trim_end(), pd);
    let p = temp_file("bad.log", "R1 remove 0 -\n");
    let r = knot(&["replay", "B3: 1 -2 1 -2", "--log", p.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(2));
    let p = temp_file("garbled.log", "hello\n");
    let r = knot(&["replay", "B3: 1 -2 1 -2", "--log", p.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(1));
}

#[test]
fn table_run_bundled_corpus() {
    let o = knot(&["table-run", "--table", &corpus()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("PASS trefoil "));
    assert!(out.ends_with("0 failed\n"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("trefoil: "));
}

#[test]
fn table_run_reports_wrong_expectation() {
    let p = temp_file("wrong.txt", "unknot | PD[O*1] | jones=1\ntrefoil | B2: 1 1 1 | conway=1-z^2\n");
    let o = knot(&["table-run", "--table", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    assert!(out.contains("FAIL trefoil"));
    assert!(out.contains("conway: expected 1-z^2, got z^2 + 1"));
    let o = knot(&["table-run", "--table", p.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failed"], 1);
}

#[test]
fn table_run_empty_and_broken_tables() {
    let p = temp_file("empty.txt", "# nothing here\n");
    let o = knot(&["table-run", "--table", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0 entries, 0 failed\n");
    let p = temp_file("dup.txt", "a | PD[O*1]\na | PD[O*1]\n");
    assert_eq!(knot(&["table-run", "--table", p.to_str().unwrap()]).status.code(), Some(1));
    let p = temp_file("invalid.txt", "a | PD[X(1,1,2,3)]\n");
    assert_eq!(knot(&["table-run", "--table", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn state_dump_examples() {
    let o = knot(&["state-dump", "PD[O*1]"]);
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = knot(&["state-dump", "B2: 1 1 1"]);
    assert_eq!(stdout(&o).lines().count(), 9);
    let big = format!("B2:{}", " 1".repeat(17));
    let o = knot(&["state-dump", &big]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let o = knot(&["state-dump", &big, "--cap", "17", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 1 << 17);
}
