use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn wgfam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wgfam"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn checks_on_fixtures() {
    let cases = [
        ("check-base", "example1_base.txt", 0),
        ("check-wg", "example1_base.txt", 0),
        ("check-learning-space", "example1_base.txt", 0),
        ("check-learning-space", "example2_base.txt", 0),
        ("check-wg", "non_partition.txt", 0),
        ("check-learning-space", "non_partition.txt", 1),
        ("check-base", "not_base.txt", 1),
        ("check-base", "example1_family.txt", 1),
    ];
    for (cmd, file, code) in cases {
        let out = wgfam(&[cmd, path_str(&fixture(file))]);
        assert_eq!(out.status.code(), Some(code), "{cmd} {file}: {}", stdout(&out));
    }
    let parallel = wgfam(&["check-wg", "--parallel", path_str(&fixture("non_partition.txt"))]);
    assert_eq!(parallel.status.code(), Some(0));
}

#[test]
fn check_base_names_the_union() {
    let out = wgfam(&["check-base", path_str(&fixture("not_base.txt"))]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        stdout(&out),
        "fails\nwitness {a b}: no endpoint (union of other sets)\n"
    );
}

#[test]
fn json_report_schema() {
    let out = wgfam(&["--format", "json", "check-base", path_str(&fixture("not_base.txt"))]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], false);
    assert_eq!(v["witnesses"][0]["set"], serde_json::json!(["a", "b"]));
    assert!(v["witnesses"][0]["reason"].as_str().unwrap().contains("endpoint"));
    assert!(v["timing_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn span_and_atoms_invert_each_other() {
    let dir = tempfile::tempdir().unwrap();
    let span = wgfam(&["span", path_str(&fixture("example1_base.txt"))]);
    assert_eq!(span.status.code(), Some(0));
    assert_eq!(stdout(&span).lines().count(), 13);
    let spanned = write_temp(&dir, "span.txt", &stdout(&span));
    let atoms = wgfam(&["atoms", &spanned]);
    assert_eq!(stdout(&atoms), "{}\na\nb\nc\nc d\na b c d e\n");
    let base = wgfam(&["base", path_str(&fixture("example1_family.txt"))]);
    assert_eq!(stdout(&base), stdout(&atoms));
}

#[test]
fn span_respects_its_limit() {
    let out = wgfam(&["span", "--limit", "5", path_str(&fixture("example1_base.txt"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    assert!(stderr(&out).contains("capacity"), "{}", stderr(&out));
}

#[test]
fn atoms_need_a_closed_family() {
    let out = wgfam(&["atoms", path_str(&fixture("example1_base.txt"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn surmise_reports_partition() {
    let out = wgfam(&["surmise", path_str(&fixture("non_partition.txt"))]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("c: {c d} {x y c}"), "{text}");
    assert!(text.ends_with("# partition: no\n"));
}

#[test]
fn tight_path_in_span() {
    let file = fixture("example1_base.txt");
    let inside = wgfam(&["tight-path", path_str(&file), "{}", "a b c d e", "--span"]);
    assert_eq!(inside.status.code(), Some(0));
    assert_eq!(stdout(&inside).lines().count(), 6);
    let base_only = wgfam(&["tight-path", path_str(&file), "c d", "a b c d e"]);
    assert_eq!(base_only.status.code(), Some(1));
    let unknown = wgfam(&["tight-path", path_str(&file), "{}", "q"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn extension_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_temp(&dir, "in.txt", "{}\na b\n");
    let paths = dir.path().join("paths.txt");
    let out = wgfam(&["extend", &input, "--verify", "--paths", path_str(&paths)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let base = stdout(&out);
    let lines: Vec<&str> = base.lines().filter(|l| !l.starts_with('@')).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.contains(&"{}") && lines.contains(&"a b"));
    assert!(lines.iter().any(|l| l.split_whitespace().count() == 1 && *l != "{}"));
    assert!(std::fs::read_to_string(&paths).unwrap().contains(" -> "));

    let written = write_temp(&dir, "out.txt", &base);
    assert_eq!(wgfam(&["check-wg", &written]).status.code(), Some(0));
    assert_eq!(wgfam(&["check-learning-space", &written]).status.code(), Some(0));
}

#[test]
fn reduce_sat_builds_a_base() {
    let dir = tempfile::tempdir().unwrap();
    let out = wgfam(&["reduce-sat", path_str(&fixture("unsat.cnf"))]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| !l.starts_with('@')).count(), 1 + 3 + 2 * 8);
    let family = write_temp(&dir, "reduced.txt", &text);
    assert_eq!(wgfam(&["check-base", &family]).status.code(), Some(0));
    let sat = wgfam(&["reduce-sat", path_str(&fixture("sat.cnf"))]);
    assert_eq!(sat.status.code(), Some(0));
}

#[test]
fn input_errors_exit_2_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write_temp(&dir, "dup.txt", "a b\na b\n");
    let out = wgfam(&["check-base", &dup]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
    assert_eq!(wgfam(&["--dedupe", "check-base", &dup]).status.code(), Some(0));

    let braces = write_temp(&dir, "braces.txt", "a\n\nb {c}\n");
    assert!(stderr(&wgfam(&["base", &braces])).contains("line 3"));

    let cnf = write_temp(&dir, "two.cnf", "p cnf 2 1\n1 2 0\n");
    let out = wgfam(&["reduce-sat", &cnf]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"));

    assert_eq!(wgfam(&["check-base", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(wgfam(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(wgfam(&["gen", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn gen_honors_its_parameters() {
    let dir = tempfile::tempdir().unwrap();
    for (n, ell, seed) in [(10, 3, 1), (40, 5, 2), (25, 6, 3)] {
        let (n_s, ell_s, seed_s) = (n.to_string(), ell.to_string(), seed.to_string());
        let out = wgfam(&["gen", "--n", &n_s, "--ell", &ell_s, "--seed", &seed_s]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        assert!(text.starts_with(&format!("# wgfam gen seed={seed} n={n} ell={ell}")));
        let sets: Vec<&str> = text
            .lines()
            .filter(|l| !l.starts_with('#') && !l.starts_with('@'))
            .collect();
        assert_eq!(sets.len(), n);
        let max = sets.iter().map(|l| l.split_whitespace().count()).max().unwrap();
        assert_eq!(max, ell);
        let file = write_temp(&dir, "gen.txt", &text);
        assert_eq!(wgfam(&["check-base", &file]).status.code(), Some(0));
    }
    let ls = wgfam(&["gen", "--n", "12", "--ell", "3", "--learning-space"]);
    let file = write_temp(&dir, "ls.txt", &stdout(&ls));
    assert_eq!(wgfam(&["check-learning-space", &file]).status.code(), Some(0));
}

#[test]
fn identical_invocations_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let ex1 = fixture("example1_base.txt");
    let np = fixture("non_partition.txt");
    let cnf = fixture("unsat.cnf");
    let ab = write_temp(&dir, "ab.txt", "{}\na b\nc\n");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["check-wg", path_str(&np)],
        vec!["span", path_str(&ex1)],
        vec!["surmise", path_str(&np)],
        vec!["extend", &ab],
        vec!["reduce-sat", path_str(&cnf)],
        vec!["gen", "--n", "30", "--ell", "4", "--seed", "9"],
        vec!["tight-path", path_str(&ex1), "{}", "a b c d e", "--span"],
    ];
    for args in invocations {
        for format in ["text", "json"] {
            let mut full = vec!["--format", format, "--no-timing"];
            full.extend(&args);
            let a = wgfam(&full);
            let b = wgfam(&full);
            assert_eq!(a.status.code(), Some(0), "{full:?}: {}", stderr(&a));
            assert_eq!(a.stdout, b.stdout, "{full:?}");
        }
    }
}

#[test]
fn bench_prints_a_table() {
    let out = wgfam(&[
        "bench",
        "--sizes",
        "10,20",
        "--workload",
        "is-base",
        "--workload",
        "endpoints",
        "--min-batch-ms",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("is_base ")).count(), 2);
    assert!(text.contains("fit endpoints"));
}

#[test]
fn stdin_input() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_wgfam"))
        .args(["check-base", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"a\nb\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
