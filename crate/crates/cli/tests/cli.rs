use std::path::Path;
use std::process::{Command, Output, Stdio};
use std::io::Write;

const BOOL2: &str = "field 1\ndim 2\n1 0\n0 1\n";
const GENERIC4: &str = "field 1\ndim 3\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n";

fn freearr(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_freearr"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn catalog(args: &[&str]) -> String {
    let mut full = vec!["catalog"];
    full.extend_from_slice(args);
    let o = freearr(&full, None);
    assert!(o.status.success());
    stdout(&o)
}

#[test]
fn braid4_pipeline_is_free() {
    let text = catalog(&["--family", "braid", "--n", "4"]);
    let o = freearr(&["free", "-"], Some(&text));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exponents: 0 1 2 3"));

    let o = freearr(&["oracle", "-", "--max-degree", "3", "--json"], Some(&text));
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["degrees"][0]["dimension"], 1);
}

#[test]
fn saito_accepts_written_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bool2.txt", BOOL2);
    let basis = dir.path().join("basis.txt");
    let o = freearr(&["free", &input, "--certificate", basis.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    let o = freearr(&["saito", "--basis", basis.to_str().unwrap(), "--input", &input], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("c = 1"));

    let bad = write(dir.path(), "bad.txt", "basis ℓ 2 field 1\nx1, x2\n0, x1\n");
    let o = freearr(&["saito", "--basis", &bad, "--input", &input], None);
    assert_eq!(o.status.code(), Some(1));
    let short = write(dir.path(), "short.txt", "basis l 2 field 1\nx1, x2\n");
    let o = freearr(&["saito", "--basis", &short, "--input", &input], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("expected 2 derivations"));
}

#[test]
fn heredfree_json_is_stable_across_jobs() {
    let text = catalog(&["--family", "braid", "--n", "4"]);
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "braid4.txt", &text);
    let one = freearr(&["heredfree", "--input", &input, "--json", "--jobs", "1"], None);
    let four = freearr(&["heredfree", "--input", &input, "--json", "--jobs", "4"], None);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["hereditarily_free"], true);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 15);
}

#[test]
fn verdicts_drive_exit_codes() {
    for verb in ["free", "indfree", "heredfree"] {
        let o = freearr(&[verb, "-"], Some(GENERIC4));
        assert_eq!(o.status.code(), Some(1), "{verb}");
    }
    let b3 = catalog(&["--family", "coxeterB", "--l", "3"]);
    let o = freearr(&["indfree", "-", "--audit"], Some(&b3));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exponents: 1 3 5"));
}

#[test]
fn input_errors_exit_2() {
    let o = freearr(&["free", "-"], Some("field 1\ndim 2\n1 0\n0 0\n"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
    assert_eq!(freearr(&["free"], None).status.code(), Some(2));
    assert_eq!(freearr(&["nosuchverb"], None).status.code(), Some(2));
    assert_eq!(freearr(&["catalog", "--family", "monomial", "--r", "4", "--p", "3", "--l", "2"], None).status.code(), Some(2));
    assert_eq!(freearr(&["free", "/nonexistent/file"], None).status.code(), Some(2));
}

#[test]
fn duplicates_warn_but_succeed() {
    let o = freearr(&["exponents", "-"], Some("field 1\ndim 2\n1 0\n2 0\n0 1\n"));
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1 proportional duplicate"));
    assert_eq!(stdout(&o), "exponents: 1 1\n");
}

#[test]
fn restrict_and_lattice() {
    let text = catalog(&["--family", "braid", "--n", "4"]);
    let o = freearr(&["restrict", "-", "--forms", "1 -1 0 0"], Some(&text));
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| !l.starts_with('#')).count(), 2 + 3);

    // the restriction is itself a valid input
    let o = freearr(&["charpoly", "-"], Some(&out));
    assert!(stdout(&o).contains("(1 + 1t)(1 + 2t)"));

    let o = freearr(&["restrict", "-", "--forms", "1 1 1 1"], Some(&text));
    assert_eq!(o.status.code(), Some(2));

    let o = freearr(&["lattice", "-", "--json"], Some(&text));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["flats_per_rank"], serde_json::json!([1, 6, 7, 1]));
}

#[test]
fn cyclotomic_catalog_round_trips() {
    let text = catalog(&["--family", "monomial", "--r", "3", "--p", "3", "--l", "3"]);
    assert!(text.contains("field 3"));
    let o = freearr(&["exponents", "-", "--json"], Some(&text));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exponents"], serde_json::json!([1, 4, 4]));
    let o = freearr(&["derivations", "-"], Some(&text));
    assert!(stdout(&o).starts_with("3 minimal generator(s)"));
}
