use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data").join(name)
}

fn mpmc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mpmc")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn breakpoint_rows(csv: &str) -> Vec<(usize, String)> {
    csv.lines()
        .skip(1)
        .map(|l| {
            let (v, b) = l.split_once(',').unwrap();
            (v.parse().unwrap(), b.to_string())
        })
        .collect()
}

fn distinct_finite(csv: &str) -> usize {
    let mut values: Vec<String> = breakpoint_rows(csv).into_iter().map(|(_, b)| b).filter(|b| b != "inf").collect();
    values.sort();
    values.dedup();
    values.len()
}

#[test]
fn solve_f2_prints_breakpoints() {
    let out = mpmc(&["solve", "--alg", "pbfs", "--input", path(&data("f2.pmax"))]);
    assert_eq!(out.status.code(), Some(0));
    let rows = breakpoint_rows(&stdout(&out));
    assert_eq!(rows[2], (3, "1.5".to_string()));
    assert_eq!(rows[3], (4, "1".to_string()));
}

#[test]
fn solve_writes_csv_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, json) = (dir.path().join("b.csv"), dir.path().join("s.json"));
    let out = mpmc(&[
        "solve", "--alg", "ds-prf", "--input", path(&data("f2.pmax")), "--output", path(&csv), "--stats", path(&json),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), "vertex,breakpoint\n1,0\n2,inf\n3,1.5\n4,1\n");
    assert!(std::fs::read_to_string(&json).unwrap().contains("\"breakpoints\": 2"));
}

#[test]
fn epsilon_does_not_add_breakpoints() {
    let input = data("mixed.pmax");
    let exact = mpmc(&["solve", "--alg", "ds-ibfs", "--input", path(&input)]);
    let coarse = mpmc(&["solve", "--alg", "ds-ibfs", "--epsilon", "0.1", "--input", path(&input)]);
    assert_eq!(coarse.status.code(), Some(0));
    assert!(distinct_finite(&stdout(&coarse)) <= distinct_finite(&stdout(&exact)));
}

#[test]
fn missing_input_fails_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("b.csv");
    let out = mpmc(&["solve", "--alg", "pbfs", "--input", "/no/such/file.pmax", "--output", path(&csv)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!csv.exists());
    assert!(!out.stderr.is_empty());
}

#[test]
fn epsilon_with_pbfs_is_rejected() {
    let out = mpmc(&["solve", "--alg", "pbfs", "--epsilon", "0.5", "--input", path(&data("f1.pmax"))]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_accepts_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.csv");
    std::fs::write(&good, "vertex,breakpoint\n1,0\n2,inf\n3,1.5\n4,1\n").unwrap();
    let out = mpmc(&["verify", "--input", path(&data("f2.pmax")), "--breakpoints", path(&good)]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "vertex,breakpoint\n1,0\n2,inf\n3,2\n4,1\n").unwrap();
    let out = mpmc(&["verify", "--input", path(&data("f2.pmax")), "--breakpoints", path(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("lambda"));

    let short = dir.path().join("short.csv");
    std::fs::write(&short, "vertex,breakpoint\n1,0\n2,inf\n3,1\n").unwrap();
    let out = mpmc(&["verify", "--input", path(&data("f2.pmax")), "--breakpoints", path(&short)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out_path = dir.path().join(name);
        let out = mpmc(&[
            "generate", "synth", "--input", path(&data("static.dimacs")), "--y", "10", "--seed", "5", "--out",
            path(&out_path),
        ]);
        assert_eq!(out.status.code(), Some(0));
        std::fs::read(out_path).unwrap()
    };
    assert_eq!(run("a.pmax"), run("b.pmax"));
}

#[test]
fn generate_agg_on_two_faces() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("agg.pmax");
    let out = mpmc(&["generate", "agg", "--input", path(&data("two_faces.fg")), "--out", path(&out_path)]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("p pmax 4 "));
    let solved = mpmc(&["solve", "--alg", "pbfs", "--input", path(&out_path)]);
    assert_eq!(solved.status.code(), Some(0));
}

#[test]
fn generate_random_is_monotone() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.pmax");
    let out = mpmc(&["generate", "random", "--n", "10", "--seed", "7", "--decreasing", "--out", path(&out_path)]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("p pmax 10 "));
    // loading checks monotonicity
    let solved = mpmc(&["solve", "--alg", "ds-ibfs", "--input", path(&out_path)]);
    assert_eq!(solved.status.code(), Some(0));
}

#[test]
fn generate_rejects_bad_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.pmax");
    let out = mpmc(&[
        "generate", "synth", "--input", path(&data("static.dimacs")), "--y", "0.5", "--seed", "1", "--out",
        path(&out_path),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out_path.exists());
}

#[test]
fn bench_reports_both_algorithms() {
    let out = mpmc(&["bench", "--input", path(&data("f2.pmax")), "--algs", "pbfs,ds-ibfs", "--repeat", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("alg,time_ms,BP,Ad/BP,Loop/Init,Bot/BP,Dist,Vert,Contr%"));
    for (line, alg) in lines.zip(["pbfs", "ds-ibfs"]) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 9);
        assert_eq!(fields[0], alg);
        assert_eq!(fields[2], "2");
    }
}

#[test]
fn bench_rejects_unknown_algorithm() {
    let out = mpmc(&["bench", "--input", path(&data("f2.pmax")), "--algs", "simplex"]);
    assert_eq!(out.status.code(), Some(1));
}
