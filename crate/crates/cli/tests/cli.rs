use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const SLIT: &str = r#"{
  "label": "slit-plane",
  "obstacles": [
    { "kind": "half_line", "anchor": [-1.0, 0.0], "direction": [-1.0, 0.0] }
  ],
  "scale_hint": 1.0
}"#;

const GRID_SLIT: &str = r#"{
  "label": "grid-slit-plane",
  "obstacles": [
    { "kind": "half_line", "anchor": [-1.0, 0.0], "direction": [-1.0, 0.0] },
    { "kind": "polar_lattice", "origin": [0.5, 0.5], "basis": [[1.0, 0.0], [0.0, 1.0]] }
  ],
  "scale_hint": 1.0
}"#;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardyscope"))
        .current_dir(dir)
        .env("HARDYSCOPE_THREADS", "1")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    fs::write(dir.join(name), text).unwrap();
    name.to_string()
}

#[test]
fn inclusion_remark_instance_is_false() {
    let dir = TempDir::new().unwrap();
    let o = run(
        dir.path(),
        &["check-inclusion", "--bergman", "5", "2", "2", "0"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "false");
    let o = run(dir.path(), &["check-inclusion", "--hardy", "1", "2", "0"]);
    assert_eq!(stdout(&o).trim(), "true");
}

#[test]
fn grid_spec_is_bloch() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "grid_slit.dom", GRID_SLIT);
    let o = run(dir.path(), &["bloch-check", "--spec", &spec]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("Bloch: true; b=+inf"), "{}", stdout(&o));
    let slit = write(dir.path(), "slit.dom", SLIT);
    let o = run(dir.path(), &["bloch-check", "--spec", &slit]);
    assert!(stdout(&o).contains("Bloch: false"), "{}", stdout(&o));
}

#[test]
fn bad_spec_names_the_obstacle() {
    let dir = TempDir::new().unwrap();
    let bad = SLIT.replace(
        "  ],",
        r#"  , { "kind": "closed_disk", "center": [3.0, 0.0], "radius": -1.0 } ],"#,
    );
    let spec = write(dir.path(), "bad.dom", &bad);
    let o = run(dir.path(), &["bloch-check", "--spec", &spec]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("obstacle #1"), "{}", stderr(&o));

    let spec = write(dir.path(), "junk.dom", "{ not json");
    assert_eq!(
        run(dir.path(), &["bloch-check", "--spec", &spec])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(dir.path(), &["bloch-check"]).status.code(), Some(1));
}

#[test]
fn estimates_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "slit.dom", SLIT);
    let args = [
        "estimate-hardy",
        "--spec",
        &spec,
        "--method",
        "both",
        "--seed",
        "7",
        "--samples",
        "4000",
        "--radii",
        "4,8,16,32,64,128",
    ];
    let a = run(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let csv_a = fs::read_to_string(dir.path().join("estimate-hardy.csv")).unwrap();
    let b = run(dir.path(), &args);
    let csv_b = fs::read_to_string(dir.path().join("estimate-hardy.csv")).unwrap();
    assert_eq!(csv_a, csv_b);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("gap"), "{}", stdout(&a));

    let manifest: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(dir.path().join("estimate-hardy.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["cfg"]["seed"], 7);
    assert_eq!(manifest["spec_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn built_spec_round_trips() {
    let dir = TempDir::new().unwrap();
    let o = run(
        dir.path(),
        &[
            "build-arc-domain",
            "--A",
            "0.77",
            "--rings",
            "0",
            "--samples",
            "2000",
        ],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(dir.path().join("arc_domain.dom")).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["obstacles"].as_array().unwrap().len(), 1);
    // The emitted file is accepted as input unchanged.
    let o = run(dir.path(), &["bloch-check", "--spec", "arc_domain.dom"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn consistency_violation_exits_two() {
    let dir = TempDir::new().unwrap();
    let ok = run(
        dir.path(),
        &[
            "consistency",
            "--h",
            "0.5",
            "--b",
            "inf",
            "--b-alpha",
            "0:inf",
        ],
    );
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    let bad = run(dir.path(), &["consistency", "--h", "1.0", "--b", "0.5"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn classify_map_lists_the_catalog() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), &["classify-map", "--list"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for label in ["identity", "koebe", "half-plane", "strip", "exp-poisson"] {
        assert!(stdout(&o).contains(label), "{label}");
    }
    let o = run(dir.path(), &["classify-map", "--map", "strip", "--p", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("Convergent"), "{}", stdout(&o));
}
