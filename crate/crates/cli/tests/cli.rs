//! End-to-end runs of the `ringsolve` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringsolve"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

const SOLVABLE: &str = "ring Z/4\nvars x\neq 2*x = 2\n";
const UNSOLVABLE: &str = "ring Z/4\nvars x\neq 2*x = 1\n";

#[test]
fn solvable_system_exits_zero_with_a_solution() {
    let dir = TempDir::new().unwrap();
    write(&dir, "a.sys", SOLVABLE);
    let out = run(dir.path(), &["solve", "a.sys"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("certificate solvable"));
    assert!(text.contains("x = 1"));
}

#[test]
fn unsolvable_system_exits_one_with_a_witness() {
    let dir = TempDir::new().unwrap();
    write(&dir, "b.sys", UNSOLVABLE);
    let out = run(dir.path(), &["solve", "b.sys"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.starts_with("certificate unsolvable"));
    assert!(text.contains("combination 2"));
}

#[test]
fn complement_flips_the_exit_code() {
    let dir = TempDir::new().unwrap();
    write(&dir, "b.sys", UNSOLVABLE);
    write(&dir, "a.sys", SOLVABLE);
    assert_eq!(code(&run(dir.path(), &["reduce", "complement", "b.sys", "-o", "nb.sys"])), 0);
    assert_eq!(code(&run(dir.path(), &["solve", "nb.sys"])), 0);
    assert_eq!(code(&run(dir.path(), &["reduce", "complement", "a.sys", "-o", "na.sys"])), 0);
    assert_eq!(code(&run(dir.path(), &["solve", "na.sys"])), 1);
}

#[test]
fn written_certificates_verify() {
    let dir = TempDir::new().unwrap();
    write(&dir, "a.sys", SOLVABLE);
    write(&dir, "b.sys", UNSOLVABLE);
    assert_eq!(code(&run(dir.path(), &["solve", "a.sys", "-o", "a.cert"])), 0);
    assert_eq!(code(&run(dir.path(), &["solve", "b.sys", "-o", "b.cert"])), 1);
    for (sys, cert) in [("a.sys", "a.cert"), ("b.sys", "b.cert")] {
        let out = run(dir.path(), &["verify", sys, cert]);
        assert_eq!(code(&out), 0, "{sys}: {}", stdout(&out));
        assert!(stdout(&out).contains("valid"));
    }
    // a witness for one system does not certify the other
    assert_eq!(code(&run(dir.path(), &["verify", "a.sys", "b.cert"])), 1);
}

#[test]
fn wrong_solution_is_rejected() {
    let dir = TempDir::new().unwrap();
    write(&dir, "a.sys", SOLVABLE);
    write(&dir, "bad.cert", "certificate solvable\nx = 0\n");
    let out = run(dir.path(), &["verify", "a.sys", "bad.cert"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("invalid"));
}

#[test]
fn parse_errors_exit_two_with_a_position() {
    let dir = TempDir::new().unwrap();
    write(&dir, "broken.sys", "ring Z/4\nvars x\neq 2*y = 1\n");
    let out = run(dir.path(), &["solve", "broken.sys"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
    assert_eq!(code(&run(dir.path(), &["solve", "missing.sys"])), 2);
    assert_eq!(code(&run(dir.path(), &["no-such-command"])), 2);
}

#[test]
fn element_cap_comes_from_the_environment() {
    let dir = TempDir::new().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ringsolve"))
        .current_dir(dir.path())
        .env("RINGSOLVE_MAX_ELEMS", "50")
        .args(["ring", "info", "Z/100"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("RINGSOLVE_MAX_ELEMS"));
    assert_eq!(code(&run(dir.path(), &["ring", "info", "Z/100"])), 0);
}

#[test]
fn oracle_check_agrees_across_a_corpus() {
    let dir = TempDir::new().unwrap();
    let corpus = [
        ("z6.sys", "ring Z/6\nvars x y\neq 2*x + 3*y = 1\neq 4*x = 2\n", 0),
        ("z12.sys", "ring Z/12\nvars x\neq 4*x = 6\n", 1),
        ("z9.sys", "ring Z/9\nvars x y\neq 3*x + 6*y = 3\neq 3*x = 6\n", 0),
        ("gr.sys", "ring GR(4,2)\nvars x\neq 2*x = 1\n", 1),
        ("prod.sys", "ring Z/2 x Z/4\nvars x\neq (1,2)*x = (1,1)\n", 1),
        ("ut.sys", "ring UT(Z/2)\nvars x\neq (1,1,0)*x + x*(0,1,1) = (1,0,1)\n", 0),
        ("grp.sys", "group Z/2 x Z/4\nvars x\neq 2*x = (0,2)\n", 0),
    ];
    for (name, text, expected) in corpus {
        write(&dir, name, text);
        let out = run(dir.path(), &["solve", name, "--oracle-check"]);
        assert_eq!(code(&out), expected, "{name}: {}{}", stdout(&out), stderr(&out));
        assert!(stderr(&out).contains("oracle agrees"), "{name}: {}", stderr(&out));
    }
}

#[test]
fn reduced_systems_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    write(&dir, "a.sys", "ring Z/6\nvars x y\neq 2*x + 3*y = 5\n");
    for name in ["normal-form", "ring-to-cyclic"] {
        let target = format!("{name}.sys");
        let out = run(dir.path(), &["reduce", name, "a.sys", "-o", &target, "--oracle-check"]);
        assert_eq!(code(&out), 0, "{name}: {}", stderr(&out));
        let first = fs::read_to_string(dir.path().join(&target)).unwrap();
        assert_eq!(code(&run(dir.path(), &["solve", &target])), 0, "{name}");
        // reductions are deterministic: stdout matches the written file
        let again = run(dir.path(), &["reduce", name, "a.sys"]);
        assert_eq!(stdout(&again), first);
    }
}

#[test]
fn matrix_commands() {
    let dir = TempDir::new().unwrap();
    write(&dir, "m.mat", "ring Z/9\nrows a b\ncols a b\nrow a = 0 1\nrow b = 1 0\n");
    let det = run(dir.path(), &["mat", "det", "m.mat", "--oracle-check"]);
    assert_eq!(code(&det), 0, "{}", stderr(&det));
    assert!(stdout(&det).contains('8'));
    let chi = run(dir.path(), &["mat", "charpoly", "m.mat"]);
    assert!(stdout(&chi).contains("X^2 + 8"));
    let inv = run(dir.path(), &["mat", "inverse", "m.mat"]);
    assert_eq!(code(&inv), 0);
    assert!(stdout(&inv).contains("row a = 0 1"));
    let pow = run(dir.path(), &["mat", "pow", "m.mat", "--exp", "1000000000000000000001"]);
    assert_eq!(code(&pow), 0);
    assert!(stdout(&pow).contains("row a = 0 1"));
}

#[test]
fn ring_and_oracle_commands() {
    let dir = TempDir::new().unwrap();
    let order = run(dir.path(), &["ring", "order", "Z/9"]);
    assert_eq!(code(&order), 0);
    // lines `rank element = representation` after the header
    let ranked: Vec<String> = stdout(&order)
        .lines()
        .filter(|l| l.contains('='))
        .map(|l| l.split_whitespace().nth(1).unwrap().to_string())
        .collect();
    assert_eq!(ranked, ["0", "3", "6", "1", "4", "7", "8", "2", "5"]);
    let gl = run(dir.path(), &["oracle", "gl", "Z/4", "2"]);
    assert!(stdout(&gl).contains("96"));
    let info = run(dir.path(), &["ring", "info", "Z/12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&info)).expect("valid JSON");
    assert_eq!(v["size"], 12);
}
