use std::process::{Command, Output};

use serde_json::Value;

fn qflag_env(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qflag"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("QFLAG_THREADS", t),
        None => cmd.env_remove("QFLAG_THREADS"),
    };
    cmd.output().expect("qflag runs")
}

fn qflag(args: &[&str]) -> Output {
    qflag_env(args, None)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn record(args: &[&str]) -> Value {
    let out = qflag(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(stdout(&out).trim()).unwrap()
}

#[test]
fn value_commands_emit_one_record() {
    let r = record(&["qbinom", "--n", "4", "--k", "2"]);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["kind"], "qbinom");
    assert_eq!(r["inputs"]["n"], 4);
    assert_eq!(r["value"], "1 + q + 2*q^2 + q^3 + q^4");
    assert_eq!(r["status"], "ok");

    assert_eq!(record(&["qmultinom", "--comp", "1,1,1"])["value"], "1 + 2*q + 2*q^2 + q^3");
    assert_eq!(record(&["galois", "--n", "2"])["value"], "3 + q");
    assert_eq!(record(&["gengal", "--n", "2", "--m", "3", "--q", "2"])["value"], "12");
    assert_eq!(record(&["rs", "--n", "2", "--m", "2"])["value"], "1 + t1 + q*t1 + t1^2");
    assert_eq!(record(&["flagcount", "--p", "2", "--comp", "1,1,1"])["value"], 21);
}

#[test]
fn plain_output() {
    let out = qflag(&["galois", "--n", "3", "--q", "2", "--plain"]);
    assert_eq!(stdout(&out), "16\n");
    let out = qflag(&["flagcount", "--p", "2", "--e", "2", "--comp", "1,1", "--plain"]);
    assert_eq!(stdout(&out), "5\n");
    let out = qflag(&["special", "--n", "3", "--m", "2", "--plain"]);
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn homogeneous_form_is_symmetric_in_output() {
    let out = qflag(&["rs", "--n", "1", "--m", "3", "--homogeneous", "--plain"]);
    assert_eq!(stdout(&out), "t1 + t2 + t3\n");
}

#[test]
fn flag_listing() {
    let r = record(&["flagcount", "--p", "2", "--comp", "1,1", "--list"]);
    let flags = r["flags"].as_array().unwrap();
    assert_eq!(flags.len(), 3);
    let mut lines: Vec<String> = flags.iter().map(|f| f["subspaces"][0][0].to_string()).collect();
    lines.sort();
    assert_eq!(lines, ["[0,1]", "[1,0]", "[1,1]"]);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["qbinom", "--n", "2", "--k", "3"][..],
        &["qbinom", "--n", "2"],
        &["qmultinom", "--comp", "1,x"],
        &["rs", "--n", "2", "--m", "1"],
        &["flagcount", "--p", "4", "--comp", "1,1"],
        &["flagcount", "--p", "2", "--e", "11", "--comp", "1,1"],
        &["table", "rs", "--max-n", "11"],
        &["table", "qbinom", "--max-n", "41"],
        &["verify", "galois", "--max-n", "99"],
        &["verify", "galois", "--inject-fault", "qbinom:2,3,0,1"],
        &["verify", "galois", "--inject-fault", "qbinom:2,1,0,0"],
        &["frobnicate"],
    ] {
        let out = qflag(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let out = qflag_env(&["galois", "--n", "2"], Some("lots"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_table() {
    let out = qflag(&["table", "galois", "--max-n", "4", "--q", "2", "--format", "csv"]);
    assert_eq!(stdout(&out), "n,value\n0,1\n1,2\n2,5\n3,16\n4,67\n");
    let out = qflag(&["table", "gengal", "--max-n", "6", "--max-m", "4", "--format", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,m,value"));
    assert_eq!(lines.count(), 21);
}

#[test]
fn json_table() {
    let out = qflag(&["table", "qbinom", "--max-n", "3"]);
    let t: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(t["schema"], 1);
    assert_eq!(t["columns"], serde_json::json!(["n", "k", "value"]));
    let rows = t["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[7], serde_json::json!({"n": 3, "k": 1, "value": "1 + q + q^2"}));
}

#[test]
fn out_file_receives_the_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let out = qflag(&["galois", "--n", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(std::fs::read_to_string(&path).unwrap().trim()).unwrap();
    assert_eq!(r["value"], "4 + 2*q + 2*q^2");

    let path = dir.path().join("v.jsonl");
    let out = qflag(&["verify", "euler", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn verify_records() {
    let out = qflag(&["verify", "galois", "--max-n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let recs: Vec<Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summary = recs.last().unwrap();
    assert_eq!(summary["status"], "ok");
    for r in &recs {
        assert_eq!(r["schema"], 1);
        assert_eq!(r["status"], "ok");
    }
}

#[test]
fn verify_reports_faults() {
    let out = qflag(&["verify", "galois", "--max-n", "6", "--inject-fault", "qbinom:4,1,2,-1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.lines().any(|l| l == "verify: galois/qpascal-vs-division failed at n=4, k=1"), "{err}");
    let recs: Vec<Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(recs.iter().any(|r| r["status"] == "failed"));
    assert_eq!(recs.last().unwrap()["status"], "failed");
}

#[test]
fn output_is_deterministic_across_runs_and_thread_counts() {
    let cases: [&[&str]; 3] = [
        &["verify", "type-census"],
        &["verify", "flag-oracle", "--max-n", "3", "--max-m", "3"],
        &["flagcount", "--p", "3", "--comp", "1,1,1", "--list"],
    ];
    for args in cases {
        let baseline = qflag_env(args, Some("1"));
        assert_eq!(baseline.status.code(), Some(0), "{args:?}");
        for threads in [None, Some("1"), Some("2"), Some("4")] {
            let again = qflag_env(args, threads);
            assert_eq!(again.stdout, baseline.stdout, "{args:?} with {threads:?}");
            assert_eq!(again.status.code(), Some(0));
        }
    }
}
