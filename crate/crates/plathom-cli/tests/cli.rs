use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn plathom(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plathom"))
        .args(args)
        .env("PLATHOM_CACHE_DIR", dir.join("cache"))
        .current_dir(dir)
        .output()
        .expect("run plathom")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn unknot_total_as_table_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let t = plathom(dir.path(), &["total", "n=1; word=[]"]);
    assert_eq!(t.status.code(), Some(0));
    assert!(stdout(&t).contains("    -1      1\n     1      1\n"));
    let j = plathom(dir.path(), &["--format", "json-like", "total", "n=1; word=[]"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(v["dims"][0]["entries"], serde_json::json!([{"at": [-1], "dim": 1}, {"at": [1], "dim": 1}]));
    assert_eq!(v["meta"]["command"], "total");
}

#[test]
fn trefoil_compare_is_all_zero() {
    let dir = tempfile::tempdir().unwrap();
    let o = plathom(dir.path(), &["--format", "json-like", "compare", "n=2; word=[+2,+2,+2]"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries = v["dims"][0]["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    assert!(entries.iter().all(|e| e["dim"] == 0));
    assert_eq!(v["checks"][0]["passed"], true);
}

#[test]
fn check_suites_pass_on_the_trefoil() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["check", "d2", "n=2; word=[+2,+2,+2]"],
        vec!["check", "u-action", "n=2; word=[+2,+2,+2]"],
        vec!["check", "commutativity", "n=2; word=[+2,+2,+2]"],
        vec!["check", "moy", "n=2; word=[+2]"],
        vec!["check", "sl1"],
        vec!["check", "sl1", "n=1; word=[+1]"],
        vec!["--degree-bound", "2", "check", "algebra", "--n", "1"],
        vec!["check", "invariance", "n=1; word=[]"],
        vec!["check", "invariance", "n=2; word=[+1,+2,+1]", "--move", "r3"],
        vec!["check", "invariance", "n=1; word=[]", "--other", "n=2; word=[+2]"],
    ] {
        let o = plathom(dir.path(), &args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn failing_checks_exit_one() {
    // The Hopf link and the unknot have different total homology.
    let dir = tempfile::tempdir().unwrap();
    let o = plathom(dir.path(), &["check", "invariance", "n=1; word=[]", "--other", "n=2; word=[+2,+2]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn errors_have_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let o = plathom(dir.path(), &["--format", "json-like", "total", "n=1; word=[+3]"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "parse");
    let o = plathom(dir.path(), &["resolution", "n=1; word=[+1]", "--bits", "11"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[usage]"));
    let o = plathom(dir.path(), &["check", "invariance", "n=1; word=[]", "--move", "cap-swap"]);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[move]"));
}

#[test]
fn diagrams_can_come_from_files() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("hopf.txt"), "n=2; word=[+2,+2]\n").unwrap();
    let o = plathom(dir.path(), &["kh", "hopf.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("n=2; word=[+2,+2]"));
}

#[test]
fn config_file_applies_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("plathom.conf"), "# test\nformat = json-like\nwindow-margin = 2\n").unwrap();
    let o = plathom(dir.path(), &["total", "n=1; word=[]"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["meta"]["params"]["window-margin"], "2");
    let o = plathom(dir.path(), &["--window-margin", "3", "total", "n=1; word=[]"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["meta"]["params"]["window-margin"], "3");
    let o = plathom(dir.path(), &["--format", "table", "total", "n=1; word=[]"]);
    assert!(stdout(&o).starts_with("total  n=1; word=[]"));
    fs::write(dir.path().join("plathom.conf"), "colour = red\n").unwrap();
    let o = plathom(dir.path(), &["total", "n=1; word=[]"]);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[config]"));
}

#[test]
fn cache_hits_and_survives_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "json-like", "e2", "n=2; word=[+2,+2,+2]"];
    let first = stdout(&plathom(dir.path(), &args));
    let entries: Vec<_> = fs::read_dir(dir.path().join("cache")).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    assert_eq!(stdout(&plathom(dir.path(), &args)), first);
    // Damage the stored result; the checksum catches it and the entry is rebuilt.
    let text = fs::read_to_string(&entries[0]).unwrap().replacen("\"dim\": 1", "\"dim\": 7", 1);
    fs::write(&entries[0], text).unwrap();
    assert_eq!(stdout(&plathom(dir.path(), &args)), first);
    let text = fs::read_to_string(&entries[0]).unwrap();
    assert!(!text.contains("\"dim\": 7"));
    // --no-cache leaves the directory alone.
    fs::remove_file(&entries[0]).unwrap();
    plathom(dir.path(), &["--no-cache", "e2", "n=2; word=[+2,+2,+2]"]);
    assert_eq!(fs::read_dir(dir.path().join("cache")).unwrap().count(), 0);
}

#[test]
fn structured_output_is_deterministic_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--no-cache", "--format", "json-like", "--output", "out.json", "resolution", "n=2; word=[+2,+2,+2]", "--bits", "101"];
    let a = plathom(dir.path(), &args);
    let b = plathom(dir.path(), &args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(fs::read(dir.path().join("out.json")).unwrap(), a.stdout);
}
