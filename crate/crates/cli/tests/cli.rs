use std::fs;
use std::process::{Command, Output};

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(args)
        .env_remove("HECKE_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn schur_json_has_one_record_per_shape() {
    let o = hecke(&["schur", "--m", "2", "--n", "2", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let pos: Vec<usize> = ["\"lambda\"", "\"schur_factored\"", "\"schur_value\"", "\"routes_agree\"", "\"palindromic\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "field order");
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for r in rows {
        assert_eq!(r["routes_agree"], true);
        assert!(r["schur_value"].is_string());
    }
}

#[test]
fn dims_identity() {
    let o = hecke(&["dims", "--m", "3", "--n", "2", "--output", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "m,n,shapes,dimension,sum_std_squared,agree\n3,2,9,18,18,true\n");
}

#[test]
fn csv_and_md_headers() {
    let o = hecke(&["schur", "--m", "1", "--n", "3", "--output", "csv"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("lambda,schur_factored,schur_value,routes_agree,palindromic"));
    assert_eq!(text.lines().count(), 4);
    let o = hecke(&["gamma", "--m", "2", "--n", "2", "--shape", "1|1", "--output", "md"]);
    let text = stdout(&o);
    assert!(text.starts_with("| lambda | tableau | gamma_factored | gamma_value |"));
    assert!(text.contains("1\\|1"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn worked_gamma_value() {
    let o = hecke(&["gamma", "--m", "2", "--n", "5", "--shape", "3.1|1", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 15);
    assert!(rows.iter().any(|r| r["gamma_factored"] == "6*(-1+q1-q2)*(q1-q2)*(1+q1-q2)*(2+q1-q2)"));
}

#[test]
fn exit_codes() {
    let o = hecke(&["schur", "--m", "2", "--n", "3", "--q", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("vanishes"), "{}", stderr(&o));
    assert_eq!(hecke(&["dims", "--m", "2"]).status.code(), Some(2));
    assert_eq!(hecke(&["dims", "--m", "2", "--n", "2", "--q", "0,1,2"]).status.code(), Some(2));
    assert_eq!(hecke(&["verify", "--m", "2", "--n", "2", "--suites", "bogus"]).status.code(), Some(2));
    assert_eq!(hecke(&["dims", "--m", "2", "--n", "2", "--shape", "2|1"]).status.code(), Some(2));
    let o = hecke(&["verify", "--m", "2", "--n", "2", "--suites", "relations,tau-z"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn verify_non_generic_runs_generic_free_suites() {
    let o = hecke(&["verify", "--m", "2", "--n", "3", "--q", "0,1", "--suites", "tau-z"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = hecke(&["verify", "--m", "2", "--n", "3", "--q", "0,1", "--suites", "schur"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"m": 3, "n": 2, "output": "csv"}"#).unwrap();
    let path = cfg.to_str().unwrap();
    let o = hecke(&["dims", "--config", path]);
    assert_eq!(stdout(&o).lines().nth(1), Some("3,2,9,18,18,true"));
    let o = hecke(&["dims", "--config", path, "--m", "2", "--output", "csv"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("2,2,5,8,8,true"));
    fs::write(&cfg, r#"{"m": 3, "colour": "red"}"#).unwrap();
    assert_eq!(hecke(&["dims", "--config", path]).status.code(), Some(2));
}

#[test]
fn cache_hit_corruption_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    let args = ["gram", "--m", "2", "--n", "3", "--cache-dir", c];
    let first = hecke(&args);
    assert_eq!(first.status.code(), Some(0));
    assert!(stderr(&first).contains("cache miss"));
    let second = hecke(&args);
    assert!(stderr(&second).contains("cache hit"));
    assert_eq!(first.stdout, second.stdout);

    let entries: Vec<_> = fs::read_dir(&cache).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    let mut text = fs::read_to_string(&entries[0]).unwrap();
    text = text.replacen("1", "2", 1);
    fs::write(&entries[0], text).unwrap();
    let third = hecke(&args);
    assert!(stderr(&third).contains("cache miss"));
    assert_eq!(first.stdout, third.stdout);

    let other = hecke(&["gram", "--m", "2", "--n", "3", "--q", "0,11", "--cache-dir", c]);
    assert!(stderr(&other).contains("cache miss"));
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 2);

    fs::remove_dir_all(&cache).unwrap();
    let fourth = hecke(&args);
    assert!(stderr(&fourth).contains("cache miss"));
    assert_eq!(first.stdout, fourth.stdout);
}

#[test]
fn byte_identical_reruns() {
    let args = ["verify", "--m", "2", "--n", "2", "--seed", "5", "--output", "json"];
    let a = hecke(&args);
    let b = hecke(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
}
