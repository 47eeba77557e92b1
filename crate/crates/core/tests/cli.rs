use std::path::Path;
use std::process::{Command, Output};

fn qfaudit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfaudit")).args(args).env_remove("QFAUDIT_PRECISION").output().unwrap()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bounds_scenarios() {
    for (base, p, want) in [("ramified", "2", "24.9"), ("inert", "2", "7.477"), ("ramified", "3", "5.74")] {
        let o = qfaudit(&["bounds", "--p", p, "--base", base, "--wild"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains(want), "{base} {p}");
    }
    let o = qfaudit(&["bounds", "--p", "2", "--base", "ramified", "--tame", "--format", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("142.50"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qfaudit(&["bounds", "--p", "two"]).status.code(), Some(2));
    assert_eq!(qfaudit(&["bounds", "--wild", "--tame"]).status.code(), Some(2));
    assert_eq!(qfaudit(&["bounds", "--base", "sideways"]).status.code(), Some(2));
    assert_eq!(qfaudit(&["walkthrough", "--precision", "10"]).status.code(), Some(2));
    assert_eq!(qfaudit(&["tables", "--which", "table3"]).status.code(), Some(2));
    assert_eq!(qfaudit(&["curve"]).status.code(), Some(2));
}

#[test]
fn rayclass_exit_codes() {
    let o = qfaudit(&["rayclass", "--d", "-3", "--p", "3", "--kmax", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"id\": \"d=-3 p=3 3-group\""));
    let o = qfaudit(&["rayclass", "--d", "5", "--p", "2", "--kmax", "1", "--infinity", "--format", "tsv"]);
    assert!(stdout(&o).contains("d=5 p=2 k=1\tquantity\t3-rank\t0\tderived"));
    let o = qfaudit(&["rayclass", "--d", "-1", "--p", "2", "--kmax", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let o = qfaudit(&["rayclass", "--d", "-7", "--p", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("splits"));
    assert_eq!(qfaudit(&["rayclass", "--d", "12"]).status.code(), Some(4));
}

#[test]
fn tables_with_corpus() {
    for which in ["table1", "table2", "p3field"] {
        assert_eq!(qfaudit(&["tables", "--which", which]).status.code(), Some(0), "{which}");
    }
    let o = qfaudit(&["tables", "--which", "table2", "--corpus", &fixture("sextics.csv"), "--format", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("corpus\trow 12\tverdict\t\tinconclusive"));
    assert!(out.contains("bad coefficient"));
    assert_eq!(out.matches("\tverdict\t\tpass").count(), 20);
    assert_eq!(qfaudit(&["tables", "--which", "table2", "--corpus", "/nonexistent.csv"]).status.code(), Some(2));
}

#[test]
fn curve_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("e.json");
    std::fs::write(&good, r#"{"d": -1, "a1": [0, 0], "a2": [0, 0], "a3": [0, 0], "a4": [-1, 0], "a6": [0, 0]}"#).unwrap();
    let o = qfaudit(&["curve", "--file", good.to_str().unwrap(), "--d", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("\"value\": \"64\""));
    assert!(out.contains("(1,1,1)"));
    assert!(out.contains("d=-1 rational 2-torsion"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"d\": -1, \"a1\": ").unwrap();
    assert_eq!(qfaudit(&["curve", "--file", bad.to_str().unwrap()]).status.code(), Some(2));

    let sing = dir.path().join("sing.json");
    std::fs::write(&sing, r#"{"d": 2, "a1": [0, 0], "a2": [0, 0], "a3": [0, 0], "a4": [0, 0], "a6": [0, 0]}"#).unwrap();
    assert_eq!(qfaudit(&["curve", "--file", sing.to_str().unwrap()]).status.code(), Some(4));
    assert_eq!(qfaudit(&["curve", "--file", good.to_str().unwrap(), "--d", "2"]).status.code(), Some(2));

    let o = qfaudit(&["curve", "--corollary3", "--d", "5", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("nonexistence"));
}

#[test]
fn config_env_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "precision = 40\nformat = \"tsv\"\n").unwrap();
    let o = qfaudit(&["bounds", "--config", cfg.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("section\t"));
    let o = qfaudit(&["bounds", "--config", cfg.to_str().unwrap(), "--format", "json", "--precision", "20"]);
    assert!(stdout(&o).contains("\"precision\": 20"));

    let o = Command::new(env!("CARGO_BIN_EXE_qfaudit")).args(["bounds"]).env("QFAUDIT_PRECISION", "60").output().unwrap();
    assert!(stdout(&o).contains("\"precision\": 60"));
    let o = Command::new(env!("CARGO_BIN_EXE_qfaudit")).args(["bounds"]).env("QFAUDIT_PRECISION", "lots").output().unwrap();
    assert_eq!(o.status.code(), Some(2));

    std::fs::write(&cfg, "precision = 40\ncolour = \"red\"\n").unwrap();
    assert_eq!(qfaudit(&["bounds", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));

    let out = dir.path().join("report.json");
    let o = qfaudit(&["bounds", "--output", out.to_str().unwrap(), "--timing"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().contains("timing_ms"));
}

#[test]
fn walkthrough_matches_fixture() {
    let o = qfaudit(&["walkthrough"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = std::fs::read_to_string(fixture("walkthrough.json")).unwrap();
    assert!(stdout(&o) == golden, "walkthrough output differs from the fixture");
}

#[test]
fn walkthrough_verdicts_stable_across_precision_and_format() {
    let verdicts = |args: &[&str]| -> Vec<String> {
        let o = qfaudit(args);
        stdout(&o).lines().filter(|l| l.contains("\tverdict\t")).map(str::to_string).collect()
    };
    let a = verdicts(&["walkthrough", "--format", "tsv"]);
    let b = verdicts(&["walkthrough", "--format", "tsv", "--precision", "50"]);
    assert_eq!(a, b);
    assert!(a.len() > 80);
    let text = stdout(&qfaudit(&["walkthrough", "--format", "text"]));
    assert!(text.contains("0 fail"));
}
