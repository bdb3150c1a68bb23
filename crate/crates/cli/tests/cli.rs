use std::process::{Command, Output};

fn gkforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gkforge")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_then_quotient_table() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("state.json");
    let s = state.to_str().unwrap();
    assert_eq!(gkforge(&["build", "--max-power", "5", "--out", s]).status.code(), Some(0));
    let o = gkforge(&["dims", "--what", "quotient", "--n-range", "1..16", "--format", "csv", "--state", s]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,d,D,bound_ok");
    assert_eq!(lines[1], "1,2,2,true");
    assert_eq!(lines[2], "2,3,5,true");
    assert_eq!(lines.len(), 17);
}

#[test]
fn block_dims_rows() {
    let o = gkforge(&["dims", "--n-range", "3..3", "--format", "csv"]);
    assert_eq!(stdout(&o), "j,dimW,dimS,dimR,dimQ,3^j\n3,4,23,23,4,27\n");
}

#[test]
fn membership() {
    let o = gkforge(&["member", "--element", "z"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "IN E\n"));
    let o = gkforge(&["member", "--element", "xx + zy", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["member"], false);
    assert_eq!(v["witness"]["n"], 2);
    let o = gkforge(&["member", "--element", "1 + z"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_json_fields() {
    let o = gkforge(&["enumerate", "--count", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["i"], 5);
    assert_eq!(v[0]["f_i"], "x");
    assert_eq!(v[0]["t_i"], 1);
    assert_eq!(v[0]["w_i"], "17179869184");
}

#[test]
fn witness_and_growth() {
    let o = gkforge(&["witness", "--non-nilpotent", "--m", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3,xxxxxxxx,xx xx xx xx,true,true"));
    let o = gkforge(&["growth", "--max-degree", "4", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,d,D,bound_ok\n1,2,2,true\n2,3,5,true\n3,4,9,true\n4,5,14,true\n");
}

#[test]
fn exit_codes() {
    assert_eq!(gkforge(&["dims", "--state", "/nonexistent/state.json"]).status.code(), Some(2));
    assert_eq!(gkforge(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(gkforge(&["dims", "--n-range", "5..2"]).status.code(), Some(2));
    assert_eq!(gkforge(&["verify", "--suite", "lemma5", "--max-degree", "6"]).status.code(), Some(0));
    let o = gkforge(&[
        "verify",
        "--suite",
        "bwifi",
        "--onset",
        "2",
        "--i",
        "2",
        "--max-m",
        "6",
        "--inject-fault",
        "cond6",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("revalidated=true"));
}

#[test]
fn thread_cap() {
    let o = Command::new(env!("CARGO_BIN_EXE_gkforge"))
        .args(["verify", "--suite", "thm8"])
        .env("GKFORGE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_gkforge"))
        .args(["verify", "--suite", "thm8"])
        .env("GKFORGE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
