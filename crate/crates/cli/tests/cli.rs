use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fock-asymptotics"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_column(out: &str, name: &str) -> Vec<String> {
    let mut lines = out.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let k = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(k).unwrap().to_string()).collect()
}

#[test]
fn lln_unitary_errors_vanish() {
    let o = run(&[
        "lln", "--family", "unitary", "--omega", r#"{"alphaPlus":["1"]}"#, "--mu", "1",
        "--grid", "10:200:10", "--t", "1", "--out", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let errs = csv_column(&stdout(&o), "abs_error_exact");
    assert_eq!(errs.len(), 20);
    assert!(errs.iter().all(|e| e == "0"));
}

#[test]
fn clt_custom_errors_are_one_over_l() {
    let o = run(&[
        "clt", "--family", "custom", "--scalars", "1", "--m", "4", "--grid", "5,10,20,40",
        "--t", "1", "--normalization", "variance",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(csv_column(&out, "abs_error_exact"), ["1/5", "1/10", "1/20", "1/40"]);
    assert_eq!(csv_column(&out, "L"), ["5", "10", "20", "40"]);
}

#[test]
fn boundary_series_for_constant_nu() {
    let o = run(&["boundary", "--nu", "prefix=[];tail=1", "--q2", "1/4", "--K", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let h: Vec<&str> = v["h_exact"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(h, ["1", "-1", "0", "0", "0", "0"]);
}

#[test]
fn decimal_time_is_rejected() {
    let ok = run(&["lln", "--family", "custom", "--scalars", "1", "--grid", "5,10", "--t", "1/2"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&["lln", "--family", "custom", "--scalars", "1", "--grid", "5,10", "--t", "0.5"]);
    assert_eq!(bad.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&bad.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "usage");
}

#[test]
fn degenerate_variance_exits_3() {
    let o = run(&[
        "clt", "--family", "quantum", "--nu", "prefix=[];tail=0", "--q2", "1/4", "--mu", "1",
        "--grid", "5,10", "--t", "1",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "data");
}

#[test]
fn file_config_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exp.json");
    std::fs::write(
        &path,
        r#"{"kind":"lln","family":"custom","scalars":["1/2"],"grid":"2:6:2","t":"1"}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = run(&["--config", p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(csv_column(&stdout(&o), "N"), ["2", "4", "6"]);
    let o = run(&["--config", p, "--grid", "3,9"]);
    assert_eq!(csv_column(&stdout(&o), "N"), ["3", "9"]);
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exp.json");
    std::fs::write(&path, r#"{"kind":"lln","family":"custom","scalars":["1"],"grid":[2],"colour":1}"#).unwrap();
    let o = run(&["--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn float_in_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exp.json");
    std::fs::write(&path, r#"{"kind":"lln","family":"custom","scalars":["1"],"grid":[2],"t":0.5}"#).unwrap();
    let o = run(&["--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "clt", "--family", "unitary", "--omega", r#"{"alphaPlus":["1/2"],"betaPlus":["1/3"]}"#,
        "--mu", "1", "--mu", "2", "--m", "4", "--grid", "4,8,12", "--t", "1", "--out", "json",
    ];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = bin().args(args).env("FOCK_ASYMPTOTICS_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let args = ["lln", "--family", "custom", "--scalars", "2", "--grid", "3,6"];
    let direct = run(&args);
    let mut with_file: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    with_file.extend(["--output", &p]);
    let o = run(&with_file);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn missing_grid_is_usage_error() {
    let o = run(&["lln", "--family", "custom", "--scalars", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
