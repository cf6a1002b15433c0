//! End-to-end tests of the binary: the shipped demo corpus against golden
//! artifacts, exit-code contracts, and determinism across reruns and worker
//! counts.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_mackey")
}

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

fn golden(path: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(path);
    std::fs::read_to_string(&p)
        .unwrap_or_else(|e| panic!("missing golden file {}: {e}", p.display()))
}

fn run_to_dir(args: &[&str], out: &Path) -> std::process::Output {
    Command::new(bin())
        .args(args)
        .arg("--out")
        .arg(out)
        .current_dir(repo_root())
        .output()
        .expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("missing output {name}: {e}"))
}

#[test]
fn s3_trivial_tables_match_golden() {
    let dir = std::env::temp_dir().join("mackey_cli_s3_tables");
    let _ = std::fs::remove_dir_all(&dir);
    let out = run_to_dir(&["tables", "--spec", "specs/s3_trivial.json"], &dir);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(read(&dir, "tables.json"), golden("s3_trivial/tables.json"));
    assert_eq!(read(&dir, "tables.txt"), golden("s3_trivial/tables.txt"));
}

#[test]
fn s3_trivial_validate_matches_golden() {
    let dir = std::env::temp_dir().join("mackey_cli_s3_validate");
    let _ = std::fs::remove_dir_all(&dir);
    let out = run_to_dir(&["validate", "--spec", "specs/s3_trivial.json"], &dir);
    assert!(out.status.success());
    assert_eq!(
        read(&dir, "validate.json"),
        golden("s3_trivial/validate.json")
    );
}

#[test]
fn pointed_tables_match_golden() {
    let dir = std::env::temp_dir().join("mackey_cli_pointed_tables");
    let _ = std::fs::remove_dir_all(&dir);
    let out = run_to_dir(
        &["tables", "--spec", "specs/pointed_c3_inversion.json"],
        &dir,
    );
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        read(&dir, "tables.json"),
        golden("pointed_c3_inversion/tables.json")
    );
    assert_eq!(
        read(&dir, "tables.txt"),
        golden("pointed_c3_inversion/tables.txt")
    );
}

#[test]
fn smash_compare_matches_golden() {
    let dir = std::env::temp_dir().join("mackey_cli_smash");
    let _ = std::fs::remove_dir_all(&dir);
    let out = run_to_dir(
        &["smash-compare", "--spec", "specs/smash_s3_fields.json"],
        &dir,
    );
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        read(&dir, "smash-compare.json"),
        golden("smash_s3_fields/smash-compare.json")
    );
}

#[test]
fn parallel_run_is_byte_identical() {
    let dir1 = std::env::temp_dir().join("mackey_cli_jobs1");
    let dir4 = std::env::temp_dir().join("mackey_cli_jobs4");
    let _ = std::fs::remove_dir_all(&dir1);
    let _ = std::fs::remove_dir_all(&dir4);
    let out = run_to_dir(
        &["mackey", "--spec", "specs/s3_trivial.json", "--jobs", "1"],
        &dir1,
    );
    assert!(out.status.success());
    let out = run_to_dir(
        &["mackey", "--spec", "specs/s3_trivial.json", "--jobs", "4"],
        &dir4,
    );
    assert!(out.status.success());
    assert_eq!(read(&dir1, "mackey.json"), read(&dir4, "mackey.json"));
}

#[test]
fn exit_codes_follow_the_contract() {
    let tmp = std::env::temp_dir().join("mackey_cli_exit");
    std::fs::create_dir_all(&tmp).unwrap();
    // A spec violating the unit normalization of lambda.
    let broken = tmp.join("broken.json");
    std::fs::write(
        &broken,
        r#"{
  "prime": 7,
  "group": { "cyclic": 2 },
  "backend": { "abstract": { "simples": 1, "sigma": "trivial",
    "lambda": { "explicit": [[[1],[1]],[[2],[1]]] } } }
}"#,
    )
    .unwrap();
    // validate reports the violation with exit 1.
    let out = Command::new(bin())
        .args(["validate", "--spec"])
        .arg(&broken)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("\"status\": \"fail\""), "stdout: {stdout}");
    assert!(
        stdout.contains("lambda"),
        "the violation must be named: {stdout}"
    );
    // Other commands refuse invalid input with exit 2.
    let out = Command::new(bin())
        .args(["mackey", "--spec"])
        .arg(&broken)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Malformed JSON is an input error.
    let bad = tmp.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = Command::new(bin())
        .args(["validate", "--spec"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // A passing command exits 0.
    let out = Command::new(bin())
        .args(["validate", "--spec", "specs/s3_trivial.json"])
        .current_dir(repo_root())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn broken_pointed_compatibility_names_the_tuple() {
    let tmp = std::env::temp_dir().join("mackey_cli_pointed_broken");
    std::fs::create_dir_all(&tmp).unwrap();
    let spec = tmp.join("pointed_broken.json");
    // tau(g)_{1,1} = 2 with trivial lambda violates the tau-lambda
    // compatibility at (g,h,i,j) = (1,1,1,1).
    std::fs::write(
        &spec,
        r#"{
  "prime": 7,
  "group": { "cyclic": 2 },
  "backend": { "pointed": {
    "label_table": [[0,1],[1,0]],
    "sigma": "trivial",
    "lambda": "trivial",
    "tau": { "explicit": [[[1,1],[1,1]], [[1,1],[1,2]]] }
  } }
}"#,
    )
    .unwrap();
    let out = Command::new(bin())
        .args(["validate", "--spec"])
        .arg(&spec)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        stdout.contains("(g,h,i,j)=(1,1,1,1)"),
        "witness must name the offending tuple: {stdout}"
    );
}

#[test]
fn demo_runs_green() {
    let dir = std::env::temp_dir().join("mackey_cli_demo");
    let _ = std::fs::remove_dir_all(&dir);
    let out = Command::new(bin())
        .args(["demo", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    for artifact in [
        "s3_trivial/mackey.json",
        "s3_trivial/coherence.json",
        "s3_trivial/adjunction.json",
        "s3_trivial/tables.txt",
        "pointed_c3_inversion/tables.json",
        "smash_s3_fields/smash-compare.json",
    ] {
        assert!(
            dir.join(artifact).exists(),
            "missing demo artifact {artifact}"
        );
    }
}
