use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const K4: &str = "3\n0 1 1\n0 2 1\n0 3 1\n1 2 1\n1 3 1\n2 3 1\n";

fn skel(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skel"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn with_k4() -> TempDir {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("k4.txt"), K4).unwrap();
    dir
}

#[test]
fn dim_of_k4_one_skeleton() {
    let dir = with_k4();
    let o = skel(
        dir.path(),
        &["dim", "--graph-file", "k4.txt", "--skeleton", "1"],
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o), "20\n");
}

#[test]
fn det_of_k4_signless() {
    let dir = with_k4();
    let o = skel(
        dir.path(),
        &["det", "--graph-file", "k4.txt", "--matrix", "qtilde"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "20\n");
    let o = skel(
        dir.path(),
        &["det", "--graph-file", "k4.txt", "--matrix", "ltilde"],
    );
    assert_eq!(stdout(&o), "16\n");
}

#[test]
fn parking_count_matches_spanning_trees() {
    let dir = with_k4();
    let o = skel(dir.path(), &["dim", "--graph-file", "k4.txt", "--parking"]);
    assert_eq!(stdout(&o), "16\n");
}

#[test]
fn verify_rc_exits_zero_and_writes_report() {
    let dir = TempDir::new().unwrap();
    let o = skel(
        dir.path(),
        &["verify", "rc", "--n", "4", "--out", "rc.json"],
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("rc.json")).unwrap()).unwrap();
    assert_eq!(v["suite"], "rc");
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v["trials"]
        .as_array()
        .unwrap()
        .iter()
        .all(|t| t["pass"] == true));
}

#[test]
fn reports_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let strip = |s: String| -> Value {
        let mut v: Value = serde_json::from_str(&s).unwrap();
        v["summary"]["elapsed_ms"] = Value::Null;
        v
    };
    let a = stdout(&skel(
        dir.path(),
        &["verify", "ineq", "--trials", "20", "--seed", "9"],
    ));
    let b = stdout(&skel(
        dir.path(),
        &["verify", "ineq", "--trials", "20", "--seed", "9"],
    ));
    let c = stdout(&skel(
        dir.path(),
        &["verify", "ineq", "--trials", "20", "--seed", "10"],
    ));
    assert_eq!(strip(a.clone()), strip(b));
    assert_ne!(strip(a), strip(c));
}

#[test]
fn csv_and_text_formats() {
    let dir = TempDir::new().unwrap();
    let o = skel(
        dir.path(),
        &["verify", "lemma1", "--n", "2", "--format", "csv"],
    );
    assert!(stdout(&o).starts_with("id,relation,dim,det,formula,pass,error,instance\n"));
    let o = skel(
        dir.path(),
        &["verify", "remark", "--n", "2", "--format", "text"],
    );
    assert!(stdout(&o).contains("suite remark:"));
}

#[test]
fn generated_graph_round_trips() {
    let dir = TempDir::new().unwrap();
    let o = skel(
        dir.path(),
        &["gen", "gnr", "--n", "3", "--r", "1", "--out", "g.txt"],
    );
    assert!(o.status.success());
    let o = skel(
        dir.path(),
        &["dim", "--graph-file", "g.txt", "--skeleton", "1"],
    );
    assert_eq!(stdout(&o), "12\n");
    let o = skel(
        dir.path(),
        &[
            "gen",
            "random",
            "--n",
            "4",
            "--max-mult",
            "2",
            "--seed",
            "3",
            "--format",
            "json",
        ],
    );
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 4);
}

#[test]
fn malformed_graph_names_the_line() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("bad.txt"), "3\n0 1 1\n# fine\n1 2 x\n").unwrap();
    let o = skel(dir.path(), &["dim", "--graph-file", "bad.txt", "--parking"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
}

#[test]
fn usage_and_io_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    assert_eq!(skel(dir.path(), &["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        skel(dir.path(), &["det", "--graph-file", "missing.txt"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        skel(dir.path(), &["dim", "--skeleton", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        skel(dir.path(), &["verify", "rc", "--n", "0"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn ideal_sources() {
    let dir = TempDir::new().unwrap();
    let o = skel(dir.path(), &["ideal", "--inra", "2,1,2"]);
    assert_eq!(stdout(&o), "0 1\n1 0\n");
    fs::write(
        dir.path().join("h.json"),
        r#"[["2","1","0"],["1","2","1"],["0","1","1"]]"#,
    )
    .unwrap();
    let o = skel(dir.path(), &["dim", "--jh-file", "h.json"]);
    assert_eq!(stdout(&o), "2\n");
    fs::write(dir.path().join("h.txt"), "2 1 0\n1 2 1\n0 1 1\n").unwrap();
    let o = skel(dir.path(), &["det", "--matrix-file", "h.txt", "--psd"]);
    assert_eq!(stdout(&o), "1\npsd true\n");
    let o = skel(dir.path(), &["dim", "--lambda", "3,2,1"]);
    assert_eq!(stdout(&o), "16\n");
}

#[test]
fn enumeration_streams_to_file() {
    let dir = TempDir::new().unwrap();
    let o = skel(
        dir.path(),
        &["dim", "--lambda", "2,1", "--enumerate", "--out", "std.txt"],
    );
    assert_eq!(stdout(&o), "3\n");
    assert_eq!(
        fs::read_to_string(dir.path().join("std.txt")).unwrap(),
        "0 0\n1 0\n0 1\n"
    );
}

#[test]
fn formulas() {
    let dir = TempDir::new().unwrap();
    assert_eq!(
        stdout(&skel(
            dir.path(),
            &["formulas", "steck", "--lambda", "3,2,2"]
        )),
        "count 20\n"
    );
    assert_eq!(
        stdout(&skel(
            dir.path(),
            &["formulas", "theta", "--l", "3", "--x", "2"]
        )),
        "theta 20\n"
    );
    assert_eq!(
        stdout(&skel(
            dir.path(),
            &["formulas", "gnr", "--n", "3", "--r", "3"]
        )),
        "det 4\nfactored 4\n"
    );
    assert_eq!(
        stdout(&skel(
            dir.path(),
            &["formulas", "kab", "--n", "3", "--a", "2", "--b", "3"]
        )),
        "parking 242\nskeleton1 350\n"
    );
    let o = skel(dir.path(), &["formulas", "remark", "--n", "3", "--a", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = skel(
        dir.path(),
        &[
            "formulas", "remark", "--n", "4", "--a", "0", "--format", "json",
        ],
    );
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holds"], "true");
}
