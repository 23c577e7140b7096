use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_trigather");

fn trigather(args: &[&str], cwd: &Path) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("spawn trigather")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn table(overrides: &[(u8, &str)]) -> String {
    (0u8..64)
        .map(|m| {
            let a = overrides.iter().find(|(k, _)| *k == m).map_or("stay", |(_, a)| a);
            format!("{m} {a}\n")
        })
        .collect()
}

const HEXAGON: &str = r#"{"robots":[[0,0],[1,0],[0,1],[-1,1],[-1,0],[0,-1],[1,-1]]}"#;
const SE_LINE: &str = r#"{"robots":[[0,0],[1,-1],[2,-2],[3,-3],[4,-4],[5,-5],[6,-6]]}"#;

#[test]
fn enumerate_counts() {
    let tmp = TempDir::new().unwrap();
    for (n, count) in [(1, 1), (2, 3), (3, 11), (7, 3652)] {
        let o = trigather(&["enumerate", "--n", &n.to_string()], tmp.path());
        assert!(o.status.success());
        assert_eq!(stdout(&o), format!("n={n} count={count}\n"));
    }
}

#[test]
fn enumerate_rejects_out_of_range() {
    let tmp = TempDir::new().unwrap();
    for n in ["0", "9"] {
        let o = trigather(&["enumerate", "--n", n], tmp.path());
        assert_eq!(o.status.code(), Some(2), "n={n}");
    }
}

#[test]
fn enumerate_writes_canonical_jsonl() {
    let tmp = TempDir::new().unwrap();
    let o = trigather(&["enumerate", "--n", "2", "--out", "two.jsonl"], tmp.path());
    assert!(o.status.success());
    let text = fs::read_to_string(tmp.path().join("two.jsonl")).unwrap();
    assert_eq!(
        text,
        "{\"robots\":[[0,0],[0,1]]}\n{\"robots\":[[0,0],[1,-1]]}\n{\"robots\":[[0,0],[1,0]]}\n"
    );
}

#[test]
fn verify_small_n_is_informational() {
    let tmp = TempDir::new().unwrap();
    let o = trigather(&["verify", "--n", "2"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("informational"));
    let csv = fs::read_to_string(tmp.path().join("trigather-out/summary.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn verify_unknown_algorithm_is_usage_error() {
    let tmp = TempDir::new().unwrap();
    let o = trigather(&["verify", "--algorithm", "nope"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("gather2-v1"));
}

#[test]
fn verify_all_stay_fails_and_writes_traces() {
    let tmp = TempDir::new().unwrap();
    let o = trigather(
        &[
            "verify",
            "--algorithm",
            "all-stay",
            "--format",
            "json",
            "--out-dir",
            "o",
        ],
        tmp.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total"], 3652);
    assert_eq!(v["gathered"], 1);
    let traces = fs::read_dir(tmp.path().join("o/failures")).unwrap().count();
    assert_eq!(traces, 3651);
}

#[test]
fn run_hexagon_is_already_gathered() {
    let tmp = TempDir::new().unwrap();
    let cfg = write(tmp.path(), "hex.json", HEXAGON);
    let o = trigather(&["run", "--config", &cfg], tmp.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o), "outcome=gathered steps=0\n");
    let trace = fs::read_to_string(tmp.path().join("trigather-out/trace.jsonl")).unwrap();
    assert_eq!(trace.lines().count(), 2);
}

#[test]
fn run_se_line_frozen_outcome() {
    let tmp = TempDir::new().unwrap();
    let cfg = write(tmp.path(), "se.json", SE_LINE);
    let o = trigather(&["run", "--config", &cfg], tmp.path());
    assert!(o.status.success());
    // Frozen from the first verified run.
    assert_eq!(stdout(&o), "outcome=livelock(1) steps=8\n");
}

#[test]
fn run_rejects_bad_configs() {
    let tmp = TempDir::new().unwrap();
    let cases = [
        ("dup.json", r#"{"robots":[[0,0],[0,0]]}"#),
        ("gap.json", r#"{"robots":[[0,0],[3,0]]}"#),
        ("junk.json", r#"{"robots":[[0,0]],"extra":1}"#),
    ];
    for (name, text) in cases {
        let cfg = write(tmp.path(), name, text);
        let o = trigather(&["run", "--config", &cfg], tmp.path());
        assert_eq!(o.status.code(), Some(2), "{name}");
    }
    let o = trigather(&["run", "--config", "missing.json"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn renderings_are_deterministic() {
    let tmp = TempDir::new().unwrap();
    let cfg = write(tmp.path(), "se.json", SE_LINE);
    let a = trigather(&["run", "--config", &cfg, "--render", "ascii"], tmp.path());
    let b = trigather(&["run", "--config", &cfg, "--render", "ascii"], tmp.path());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).matches("step ").count(), 9);

    let svg_run = |dir: &str| {
        let o = trigather(
            &["run", "--config", &cfg, "--render", "svg", "--out-dir", dir],
            tmp.path(),
        );
        assert!(o.status.success());
        let mut names: Vec<_> = fs::read_dir(tmp.path().join(dir))
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .filter(|n| n.ends_with(".svg"))
            .collect();
        names.sort();
        names
            .iter()
            .map(|n| fs::read(tmp.path().join(dir).join(n)).unwrap())
            .collect::<Vec<_>>()
    };
    let first = svg_run("s1");
    assert_eq!(first.len(), 9);
    assert_eq!(first, svg_run("s2"));
}

#[test]
fn range1_library_verdicts() {
    let tmp = TempDir::new().unwrap();
    let stay = write(tmp.path(), "stay.txt", &table(&[]));
    let o = trigather(&["range1", "--table", &stay, "--config", "fig5a-diagonal"], tmp.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o), "outcome=livelock(1) steps=0\n");

    let seed = write(tmp.path(), "seed.txt", &table(&[(32, "SW"), (2, "NW")]));
    let o = trigather(&["range1", "--table", &seed, "--config", "prop1a-geometry"], tmp.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o), "outcome=collision(same-target) steps=0\n");
}

#[test]
fn range1_accepts_config_file() {
    let tmp = TempDir::new().unwrap();
    let stay = write(tmp.path(), "stay.txt", &table(&[]));
    let cfg = write(tmp.path(), "hex.json", HEXAGON);
    let o = trigather(&["range1", "--table", &stay, "--config", &cfg], tmp.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o), "outcome=gathered steps=0\n");
}

#[test]
fn range1_rejects_bad_tables_and_names() {
    let tmp = TempDir::new().unwrap();
    let short = write(tmp.path(), "short.txt", "0 stay\n1 E\n");
    let o = trigather(&["range1", "--table", &short, "--config", "fig5a-diagonal"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing"));

    let moving_empty = write(tmp.path(), "bad.txt", &table(&[(0, "E")]));
    let o = trigather(
        &["range1", "--table", &moving_empty, "--config", "fig5a-diagonal"],
        tmp.path(),
    );
    assert_eq!(o.status.code(), Some(2));

    let stay = write(tmp.path(), "stay.txt", &table(&[]));
    let o = trigather(&["range1", "--table", &stay, "--config", "no-such-config"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dump_guards_is_stable() {
    let tmp = TempDir::new().unwrap();
    let a = trigather(&["dump-guards"], tmp.path());
    let b = trigather(&["dump-guards"], tmp.path());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("# gather2-v1 guard table\nL01 IF "));
    assert!(text.ends_with("DEFAULT stay\n"));
}
