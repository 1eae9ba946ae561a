use std::path::Path;
use std::process::{Command, Output};

fn mrl(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mrl"))
        .args(args)
        .env_remove("MRL_ZEROS")
        .env_remove("MRL_T")
        .env_remove("MRL_L")
        .env_remove("MRL_FORMAT")
        .env_remove("MRL_PRECISION")
        .env("MRL_CACHE_DIR", cache)
        .output()
        .expect("spawn mrl")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(cache: &Path, args: &[&str]) -> String {
    let o = mrl(cache, args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

const FIRST_ZEROS: &str = "14.134725141734693\n21.022039638771555\n25.010857580145688\n30.424876125859513\n32.935061587739189\n";

#[test]
fn scalar_commands() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(ok(d.path(), &["mertens", "10"]).trim(), "-1");
    assert_eq!(ok(d.path(), &["mertens", "1000000"]).trim(), "212");
    assert_eq!(ok(d.path(), &["riesz", "4", "--tau", "1"]).trim(), "0");
    assert_eq!(ok(d.path(), &["integral", "2", "--kappa", "1"]).trim(), "0.6931471805599453");
    assert_eq!(ok(d.path(), &["integral", "3", "--weak"]).trim(), "0.5");
}

#[test]
fn exit_codes() {
    let d = tempfile::tempdir().unwrap();
    let o = mrl(d.path(), &["explicit", "10.5"]);
    assert_eq!(o.status.code(), Some(3));
    let o = mrl(d.path(), &["--zeros", "/nonexistent/zeros.txt", "explicit", "10.5"]);
    assert_eq!(o.status.code(), Some(3));
    let o = mrl(d.path(), &["identity", "hko", "--lambda", "7"]);
    assert_eq!(o.status.code(), Some(4));
    let o = mrl(d.path(), &["scan", "tau-regime", "--from", "10", "--to", "5", "--points", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = mrl(d.path(), &["scan", "tau-regime", "--from", "10", "--to", "50", "--points", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = mrl(d.path(), &["riesz", "0.5", "--tau", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = mrl(d.path(), &["mertens", "not-a-number"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn imported_table_and_bartz_warning() {
    let d = tempfile::tempdir().unwrap();
    let zf = d.path().join("zeros.txt");
    std::fs::write(&zf, FIRST_ZEROS).unwrap();
    let z = zf.to_str().unwrap();
    let o = mrl(d.path(), &["--zeros", z, "--T", "32", "explicit", "10.5", "--tau", "0"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("Bartz mode"));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("x,tau,T,L,zeros_used"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[4], "4");
    assert_eq!(row[9], "inf");
    assert_eq!(row[10], "true");
    // a cutoff above the table's completeness height is refused
    let o = mrl(d.path(), &["--zeros", z, "--T", "100", "explicit", "10.5"]);
    assert_eq!(o.status.code(), Some(2));
    // the imported table was cached under a content hash
    let cached = std::fs::read_dir(d.path()).unwrap().filter_map(Result::ok).any(|e| {
        let n = e.file_name().to_string_lossy().into_owned();
        n.starts_with("zeros-") && n.ends_with(".ztbl")
    });
    assert!(cached);
}

#[test]
fn empty_table_is_missing() {
    let d = tempfile::tempdir().unwrap();
    let zf = d.path().join("empty.txt");
    std::fs::write(&zf, "# nothing\n").unwrap();
    let o = mrl(d.path(), &["--zeros", zf.to_str().unwrap(), "explicit", "10.5"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn csv_is_byte_identical_on_repeat() {
    let d = tempfile::tempdir().unwrap();
    let args = ["--zeros", "builtin", "--T", "100", "explicit", "10.5", "50.5", "100.5", "--compare"];
    let a = ok(d.path(), &args);
    let b = ok(d.path(), &args);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 4);
    assert!(a.starts_with("x,tau,T,L,direct,explicit,abs_diff,error_estimate,within_estimate,note\n"));
}

#[test]
fn json_round_trip() {
    let d = tempfile::tempdir().unwrap();
    let text = ok(d.path(), &["--zeros", "builtin", "identity", "inv-zeta", "--s", "3"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["kind"], "inv_zeta");
    let value = v["value"].as_f64().unwrap();
    assert!((value - 1.0 / 1.2020569031595942).abs() < 1e-5);
    let again: serde_json::Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);

    let text = ok(d.path(), &["--zeros", "builtin", "--T", "100", "--format", "json", "explicit", "10.5", "--tau", "0"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    // the infinite error estimate survives as a string
    assert_eq!(v[0]["error_estimate"], "inf");
}

#[test]
fn environment_overrides_defaults() {
    let d = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_mrl"))
        .args(["explicit", "10.5"])
        .env("MRL_CACHE_DIR", d.path())
        .env("MRL_ZEROS", "builtin")
        .env("MRL_T", "50")
        .env("MRL_L", "12")
        .env_remove("MRL_FORMAT")
        .output()
        .unwrap();
    assert!(o.status.success());
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[2..5], ["50", "12", "10"]);
    // a flag beats the variable
    let o = Command::new(env!("CARGO_BIN_EXE_mrl"))
        .args(["--T", "30", "explicit", "10.5"])
        .env("MRL_CACHE_DIR", d.path())
        .env("MRL_ZEROS", "builtin")
        .env("MRL_T", "50")
        .output()
        .unwrap();
    let text = stdout(&o);
    assert_eq!(text.lines().nth(1).unwrap().split(',').nth(4), Some("3"));
}

#[test]
fn hko_without_zeros() {
    let d = tempfile::tempdir().unwrap();
    let v: serde_json::Value = serde_json::from_str(&ok(d.path(), &["identity", "hko", "--lambda", "0", "--T", "1000"])).unwrap();
    assert_eq!(v["kind"], "hko");
    assert!(v["extra"].get("observed").is_none());
    // λ = 0 predicts N(T) to leading order
    assert!((v["value"].as_f64().unwrap() / 649.0 - 1.0).abs() < 0.3);
}

#[test]
fn scans() {
    let d = tempfile::tempdir().unwrap();
    let t = ok(d.path(), &["scan", "tau-regime", "--from", "10", "--to", "1000", "--points", "3"]);
    let lines: Vec<&str> = t.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("10,"));
    assert!(lines[3].starts_with("1e3,"));
    let t = ok(d.path(), &["scan", "tau-regime", "--from", "100", "--to", "100", "--points", "1", "--schedule", "aszc"]);
    assert!(t.lines().nth(1).unwrap().contains("undefined"));
    let t = ok(d.path(), &["scan", "density", "--X", "1e4", "--grid", "3"]);
    assert_eq!(t.lines().count(), 4);
    let t = ok(d.path(), &["scan", "divIM-sign", "--kappa", "1.5", "--X", "1e5", "--keep", "3"]);
    assert!(t.starts_with("index,x,kappa,offset\n"));
}

#[test]
fn zeros_listing_and_verify() {
    let d = tempfile::tempdir().unwrap();
    let t = ok(d.path(), &["--zeros", "builtin", "zeros"]);
    let first: Vec<&str> = t.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first[0], "1");
    assert!((first[1].parse::<f64>().unwrap() - 14.134725141734693).abs() < 1e-9);
    let t = ok(d.path(), &["--zeros", "builtin", "zeros", "--verify"]);
    assert!(t.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn mertens_checkpoint_cache_is_reused() {
    let d = tempfile::tempdir().unwrap();
    let a = ok(d.path(), &["mertens", "2000000"]);
    let b = ok(d.path(), &["mertens", "2000000"]);
    assert_eq!(a, b);
    let has_checkpoint = std::fs::read_dir(d.path())
        .unwrap()
        .filter_map(Result::ok)
        .any(|e| e.file_name().to_string_lossy().ends_with(".mrtc"));
    assert!(has_checkpoint);
}
