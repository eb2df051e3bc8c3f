use hmf_cli::cache::{Cache, Lookup};
use std::path::Path;
use std::process::{Command, Output};

fn hmfk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hmfk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn field_info_for_sqrt5() {
    let o = hmfk(&["field-info", "--D", "5", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["eps0"], "-2 + 1*w");
    assert_eq!(v["eps0_norm"], -1);
    assert_eq!(v["zeta_F"]["-1"], "1/30");
    assert_eq!(v["narrow_class_number_one"], true);
}

#[test]
fn narrow_class_number_two_is_a_config_error() {
    let o = hmfk(&["eisenstein", "--D", "12", "--k", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NarrowClassNumberNotOne"), "{}", stderr(&o));
}

#[test]
fn bad_flags_are_config_errors() {
    assert_eq!(hmfk(&["eisenstein", "--D", "5", "--k", "3"]).status.code(), Some(2));
    assert_eq!(hmfk(&["eisenstein", "--D", "5"]).status.code(), Some(2));
    assert_eq!(hmfk(&["verify", "lipschitz", "--D", "5", "--s", "2"]).status.code(), Some(2));
    assert_eq!(hmfk(&["verify", "lipschitz", "--D", "5", "--z", "0,1,0"]).status.code(), Some(2));
}

#[test]
fn rationality_verifies_in_weight_eight() {
    let o = hmfk(&["verify", "rationality", "--D", "5", "--k", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
}

#[test]
fn unconverged_kernel_sum_fails_verification() {
    let o = hmfk(&["verify", "rc-numeric", "--D", "5", "--B", "3"]);
    assert_eq!(o.status.code(), Some(4), "{}", stdout(&o));
    assert!(stderr(&o).contains("verification failed"));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# weight eight\nD = 5\nk = 8\nN = 20\n").unwrap();
    let o = hmfk(&["eigenforms", "--config", cfg.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["weight"], 8);
    assert_eq!(v["config"]["N"], 20);
    let o = hmfk(&["eigenforms", "--config", cfg.to_str().unwrap(), "--k", "6", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["weight"], 6);
    std::fs::write(&cfg, "D = 5\ncolour = blue\n").unwrap();
    assert_eq!(hmfk(&["field-info", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

fn bracket_report(cache: &Path, report: &Path) -> (Output, String) {
    let o = hmfk(&[
        "bracket",
        "--D",
        "5",
        "--k1",
        "2",
        "--k2",
        "4",
        "--nu",
        "1",
        "--N",
        "12",
        "--cache-dir",
        cache.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(report).unwrap_or_default();
    (o, text)
}

#[test]
fn cache_roundtrip_and_corruption_recovery() {
    let dir = tempfile::tempdir().unwrap();
    let cache_dir = dir.path().join("cache");
    let report = dir.path().join("r.json");
    let (o1, cold) = bracket_report(&cache_dir, &report);
    assert_eq!(o1.status.code(), Some(0), "{}", stderr(&o1));
    let (o2, warm) = bracket_report(&cache_dir, &report);
    assert_eq!(o2.status.code(), Some(0));
    assert_eq!(cold, warm, "reports must be byte-identical");
    assert!(!stderr(&o2).contains("CacheCorrupt"));

    // damage every entry: the run recovers, warns and still agrees
    for e in std::fs::read_dir(&cache_dir).unwrap() {
        let p = e.unwrap().path();
        let mut s = std::fs::read_to_string(&p).unwrap();
        s = s.replacen("120", "121", 1);
        std::fs::write(&p, s).unwrap();
    }
    let (o3, healed) = bracket_report(&cache_dir, &report);
    assert_eq!(o3.status.code(), Some(0));
    assert!(stderr(&o3).contains("CacheCorrupt"), "{}", stderr(&o3));
    assert_eq!(cold, healed);
    let (o4, _) = bracket_report(&cache_dir, &report);
    assert!(!stderr(&o4).contains("CacheCorrupt"));
}

#[test]
fn cache_put_get_and_schema_bump() {
    let dir = tempfile::tempdir().unwrap();
    let c1 = Cache::open(dir.path()).unwrap();
    let key = c1.key(5, "eisenstein", &[("k", 4)], 10);
    assert_eq!(c1.get(&key), Lookup::Miss);
    let v = serde_json::json!({ "coeffs": ["1/2", "3"], "weight": 4 });
    c1.put(&key, &v).unwrap();
    assert_eq!(c1.get(&key), Lookup::Hit(v.clone()));
    // no temporary files are left behind
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 1);
    // a newer schema reads the same file as invalid
    let c2 = Cache::with_schema(dir.path(), hmf_cli::cache::SCHEMA_VERSION + 1).unwrap();
    assert!(matches!(c2.get(&key), Lookup::Corrupt(_)));
    let key2 = c2.key(5, "eisenstein", &[("k", 4)], 10);
    assert_ne!(key, key2);
    assert_eq!(c2.get(&key2), Lookup::Miss);
    // truncated file
    std::fs::write(c1.entry_path(&key), "{\"schema\":").unwrap();
    assert!(matches!(c1.get(&key), Lookup::Corrupt(_)));
}
