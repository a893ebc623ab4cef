use std::path::Path;
use std::process::{Command, Output};

use hecketrace::text::ReportRow;
use tempfile::TempDir;

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecketrace"))
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_rows(o: &Output) -> Vec<ReportRow> {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn csv_rows(o: &Output) -> Vec<ReportRow> {
    csv::Reader::from_reader(o.stdout.as_slice()).deserialize().collect::<Result<_, _>>().unwrap()
}

const TABLE: [&str; 11] = ["hecke", "--q", "3", "--P", "T", "--P", "T+1", "--n", "1..2", "--k", "2..8"];

#[test]
fn enumerate_examples() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), &["enumerate", "--q", "3", "--m", "1", "--P", "T"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["classes"].as_u64(), v["mass"].as_str(), v["mass_ok"].as_bool()), (Some(6), Some("3"), Some(true)));
    let o = run(dir.path(), &["enumerate", "--q", "3", "--m", "2", "--P", "T^2+1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mass"].as_str(), Some("9"));
    assert_eq!(code(&run(dir.path(), &["enumerate", "--q", "3", "--m", "1", "--P", "T^2+1"])), 2);
    assert_eq!(code(&run(dir.path(), &["enumerate", "--q", "6", "--m", "1", "--P", "T"])), 2);
    assert_eq!(code(&run(dir.path(), &["enumerate", "--q", "3", "--m", "7", "--P", "T"])), 3);
    let by_theta = run(dir.path(), &["enumerate", "--q", "3", "--m", "2", "--theta", "0,1"]);
    assert_eq!(code(&by_theta), 0);
    assert_eq!(stdout(&by_theta), stdout(&o));
}

#[test]
fn worked_hecke_values() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), &["hecke", "--q", "3", "--P", "T", "--n", "1", "--k", "4", "--l", "1"]);
    assert_eq!(code(&o), 0);
    let rows = json_rows(&o);
    assert_eq!((rows[0].trace_num.as_str(), rows[0].trace_den.as_str()), ("1", "T^2"));
    assert_eq!((rows[0].normalized_num.as_str(), rows[0].normalized_den.as_str()), ("T", "1"));
    let o = run(dir.path(), &["hecke", "--q", "3", "--P", "T", "--n", "1", "--k", "5", "--l", "1", "--cross-check"]);
    assert_eq!(json_rows(&o)[0].trace_num, "0");
}

#[test]
fn csv_and_json_agree() {
    let dir = TempDir::new().unwrap();
    let mut args = TABLE.to_vec();
    args.extend(["--l", "0,1"]);
    let json = run(dir.path(), &args);
    let mut csv_args = vec!["--format", "csv"];
    csv_args.extend(&args);
    let csv = run(dir.path(), &csv_args);
    assert_eq!((code(&json), code(&csv)), (0, 0));
    assert_eq!(json_rows(&json), csv_rows(&csv));
    assert_eq!(json_rows(&json).len(), 2 * 2 * 7 * 2);
    let header = stdout(&csv).lines().next().unwrap().to_string();
    assert_eq!(
        header,
        "q,P,n,k,l,trace_num,trace_den,normalized_num,normalized_den,exp_adelic,bound_adelic,exp_norm,bound_norm,ok,classes"
    );
}

#[test]
fn cache_round_trip() {
    let dir = TempDir::new().unwrap();
    let mut args = TABLE.to_vec();
    args.extend(["--l", "1"]);
    let first = run(dir.path(), &args);
    let listed = run(dir.path(), &["cache", "list"]);
    let entries: serde_json::Value = serde_json::from_slice(&listed.stdout).unwrap();
    assert_eq!(entries.as_array().unwrap().len(), 4);
    // second run reads every class list back from disk
    let second = run(dir.path(), &args);
    let mut fresh_args = args.clone();
    fresh_args.push("--no-cache");
    let fresh = run(dir.path(), &fresh_args);
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(stdout(&first), stdout(&fresh));
    assert_eq!(stdout(&run(dir.path(), &["cache", "clear"])).trim(), "removed 4 files");
    assert_eq!(stdout(&run(dir.path(), &["cache", "list"])).trim(), "[]");
}

#[test]
fn damaged_cache_is_reported() {
    let dir = TempDir::new().unwrap();
    let args = ["hecke", "--q", "3", "--P", "T", "--n", "1", "--k", "4", "--l", "1"];
    assert_eq!(code(&run(dir.path(), &args)), 0);
    let file = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let text = std::fs::read_to_string(&file).unwrap();
    // dropping a class breaks the mass formula
    let short: Vec<&str> = text.lines().skip(1).collect();
    std::fs::write(&file, short.join("\n")).unwrap();
    assert_eq!(code(&run(dir.path(), &args)), 4);
    std::fs::write(&file, "not json\n").unwrap();
    assert_eq!(code(&run(dir.path(), &args)), 2);
}

#[test]
fn config_file_and_overrides() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("config.json");
    std::fs::write(&cfg, r#"{"budget": 10, "format": "csv"}"#).unwrap();
    let cfg = cfg.to_str().unwrap();
    let args = ["--config", cfg, "hecke", "--q", "3", "--P", "T", "--n", "3", "--k", "4", "--l", "1"];
    assert_eq!(code(&run(dir.path(), &args)), 3);
    let mut more = args.to_vec();
    more.extend(["--budget", "729"]);
    let o = run(dir.path(), &more);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("q,P,n"));
    std::fs::write(dir.path().join("bad.json"), r#"{"budgett": 3}"#).unwrap();
    let bad = dir.path().join("bad.json");
    assert_eq!(code(&run(dir.path(), &["--config", bad.to_str().unwrap(), "cache", "list"])), 2);
}

#[test]
fn argument_errors() {
    let dir = TempDir::new().unwrap();
    let base = ["hecke", "--q", "3", "--n", "1", "--k", "4", "--l", "1", "--P"];
    for p in ["T^2", "2*T", "T^2+T+2*", "S"] {
        let mut args = base.to_vec();
        args.push(p);
        assert_eq!(code(&run(dir.path(), &args)), 2, "{p}");
    }
    let o = run(dir.path(), &["hecke", "--q", "3", "--P", "T", "--n", "1", "--k", "3..1", "--l", "1"]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&run(dir.path(), &["hecke", "--q", "3", "--P", "T", "--n", "1", "--k", "1", "--l", "1"])), 2);
    assert_eq!(code(&run(dir.path(), &["verify", "--suite", "nope"])), 2);
}

#[test]
fn verify_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = ["verify", "--suite", "twopath", "--seed", "7", "--instances", "20"];
    let a = run(dir.path(), &args);
    let b = run(dir.path(), &["--workers", "1", "verify", "--suite", "twopath", "--seed", "7", "--instances", "20"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("PASS twopath::recurrence_vs_crystal (40 cases)"));
}
