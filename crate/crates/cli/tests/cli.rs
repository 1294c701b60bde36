use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn mathplay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mathplay")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden").join(format!("{name}.svg"));
    std::fs::read_to_string(path).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

const KOCH: &str = "# Koch curve\naxiom = F\nangle = 60\nF -> F-F++F-F\n";

#[test]
fn documented_examples() {
    let out = mathplay(&["solve", "nim", "5", "6", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "outcome: First\ngrundy: 4\nmove: heap 1 take 4\n");

    let out = mathplay(&["count", "squares", "8"]);
    assert_eq!(stdout(&out), "204\n");
    assert_eq!(stdout(&mathplay(&["count", "rooks", "8"])), "40320\n");
    assert_eq!(stdout(&mathplay(&["count", "triangles", "5"])), "48\n");

    let out = mathplay(&["solve", "make", "10", "--moves", "1,2"]);
    assert_eq!(stdout(&out), "outcome: First\ngrundy: 1\nmove: take 1\n");
    let out = mathplay(&["solve", "make", "15"]);
    assert_eq!(stdout(&out), "outcome: Second\ngrundy: 0\nmove: none\n");
}

#[test]
fn rules_file_renders_to_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let rules = write(dir.path(), "koch.txt", KOCH);
    let svg = dir.path().join("koch.svg");
    let out = mathplay(&["render", "lsystem", "--rules-file", &rules, "--order", "4", "--out", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read_to_string(&svg).unwrap(), golden("koch-4"));

    let bad = write(dir.path(), "bad.txt", "axiom = F\nF -> F]\n");
    let out = mathplay(&["render", "lsystem", "--rules-file", &bad, "--order", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error: ") && err.contains("unbalanced"), "{err}");
}

#[test]
fn renders_match_golden_files() {
    let cases: &[(&str, &[&str])] = &[
        ("modular-360-2", &["render", "modular", "-n", "360", "-k", "2"]),
        ("koch-4", &["render", "lsystem", "--preset", "koch", "--order", "4"]),
        ("sierpinski-4", &["render", "lsystem", "--preset", "sierpinski", "--order", "4"]),
        ("cardioid", &["render", "curve", "--kind", "cardioid"]),
        ("cycloid", &["render", "curve", "--kind", "cycloid", "--r", "1"]),
        ("stitch-10", &["render", "stitch", "-n", "10"]),
        ("tree-60-20", &["render", "tree", "--len", "60", "--theta", "20"]),
        ("skip-10-1", &["render", "skip", "-n", "10", "--skip", "1"]),
    ];
    for (name, args) in cases {
        let first = mathplay(args);
        assert_eq!(first.status.code(), Some(0), "{name}");
        assert_eq!(stdout(&first), golden(name), "{name}");
        assert_eq!(first.stdout, mathplay(args).stdout, "{name} differs between runs");
    }
}

#[test]
fn every_subcommand_is_repeatable() {
    let dir = tempfile::tempdir().unwrap();
    let grid = write(dir.path(), "grid.txt", "# puzzle\n1 0 0 0\n0 0 3 0\n0 4 0 0\n0 0 0 2\n");
    let board = write(dir.path(), "board.txt", "# 2x4, nothing removed\n4 2\n");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["solve", "nim", "1", "2", "3"],
        vec!["--json", "solve", "nim", "4", "9"],
        vec!["solve", "make", "21", "--moves", "1,3,4"],
        vec!["solve", "sudoku4", &grid],
        vec!["--json", "solve", "sudoku4", &grid],
        vec!["solve", "dominoes", &board],
        vec!["count", "triangles", "25"],
        vec!["--json", "count", "squares", "100"],
        vec!["render", "curve", "--kind", "epicycloid", "--big", "3", "--small", "1", "--points"],
        vec!["--json", "render", "modular", "-n", "10", "-k", "3"],
        vec!["estimate", "pi", "--drops", "20000", "--seed", "9"],
        vec!["--json", "estimate", "pi", "--drops", "20000", "--seed", "9"],
    ];
    for args in &invocations {
        let a = mathplay(args);
        let b = mathplay(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert!(!a.stdout.is_empty(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }

    for name in ["a.svg", "b.svg"] {
        let path = dir.path().join(name);
        let out = mathplay(&["render", "lsystem", "--preset", "plant", "--order", "4", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(dir.path().join("a.svg")).unwrap(), std::fs::read(dir.path().join("b.svg")).unwrap());
}

#[test]
fn exit_code_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let grid = write(dir.path(), "grid.txt", "1 1 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 0\n");
    let short = write(dir.path(), "short.txt", "1 2 3\n");
    let board = write(dir.path(), "board.txt", "4 4\n0 0\n3 3\n");
    let missing = dir.path().join("missing.txt");
    let missing = missing.to_str().unwrap();
    let matrix: Vec<(Vec<&str>, i32)> = vec![
        (vec![], 2),
        (vec!["frobnicate"], 2),
        (vec!["solve", "nim"], 2),
        (vec!["solve", "nim", "x"], 2),
        (vec!["count", "hexagons", "3"], 2),
        (vec!["render", "curve", "--kind", "spiral"], 2),
        (vec!["render", "lsystem", "--order", "3"], 2),
        (vec!["render", "modular", "-n", "10"], 2),
        (vec!["estimate", "pi", "--drops", "many"], 2),
        (vec!["solve", "nim", "0", "0"], 0),
        (vec!["solve", "dominoes", &board], 0),
        (vec!["solve", "sudoku4", &grid], 1),
        (vec!["solve", "sudoku4", &short], 1),
        (vec!["solve", "sudoku4", missing], 1),
        (vec!["solve", "make", "10", "--moves", "0"], 1),
        (vec!["render", "modular", "-n", "1", "-k", "2"], 1),
        (vec!["render", "modular", "-n", "5000", "-k", "2"], 1),
        (vec!["render", "lsystem", "--preset", "koch", "--order", "13"], 1),
        (vec!["render", "lsystem", "--preset", "nonesuch", "--order", "1"], 1),
        (vec!["render", "lsystem", "--rules-file", missing, "--order", "1"], 1),
        (vec!["render", "stitch", "-n", "10", "--style", "zigzag"], 1),
        (vec!["render", "tree", "--len", "1000", "--theta", "20"], 1),
        (vec!["count", "rooks", "40"], 1),
        (vec!["estimate", "pi", "--drops", "0"], 1),
        (vec!["estimate", "pi", "--drops", "100000000"], 1),
        (vec!["estimate", "pi", "--length", "2"], 1),
    ];
    for (args, code) in &matrix {
        let out = mathplay(args);
        assert_eq!(out.status.code(), Some(*code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        if *code != 0 {
            assert!(out.stdout.is_empty(), "{args:?}");
            assert!(!out.stderr.is_empty(), "{args:?}");
        }
        if *code == 2 {
            assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"), "{args:?}");
        }
    }
}

#[test]
fn json_errors_use_service_codes() {
    let out = mathplay(&["--json", "render", "modular", "-n", "5000", "-k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["code"], "parameter_out_of_range");
}

#[test]
fn json_shapes_match_service() {
    let out = mathplay(&["--json", "solve", "nim", "5", "6", "7"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["outcome"], "First");
    assert_eq!(v["grundy"], 4);
    assert_eq!(v["optimalMoves"][0], serde_json::json!({"heap": 0, "take": 4}));

    let out = mathplay(&["--json", "estimate", "pi", "--drops", "1000", "--seed", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["prng"], "chacha8");
    assert_eq!(v["drops"], 1000);

    let out = mathplay(&["--json", "render", "stitch", "-n", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["svg"].as_str().unwrap().starts_with("<?xml"));
}

#[test]
fn serve_answers_http() {
    use std::io::{BufRead, BufReader, Read, Write};
    use std::process::Stdio;

    let mut child = Command::new(env!("CARGO_BIN_EXE_mathplay"))
        .args(["serve", "--port", "0"])
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut line = String::new();
    BufReader::new(child.stderr.take().unwrap()).read_line(&mut line).unwrap();
    let addr = line.trim().rsplit("http://").next().unwrap().to_owned();

    let mut stream = std::net::TcpStream::connect(&addr).unwrap();
    write!(stream, "GET /api/puzzle/squares?n=8 HTTP/1.1\r\nHost: {addr}\r\nConnection: close\r\n\r\n").unwrap();
    let mut reply = String::new();
    stream.read_to_string(&mut reply).unwrap();
    child.kill().unwrap();
    child.wait().unwrap();

    assert!(reply.starts_with("HTTP/1.1 200"), "{reply}");
    assert!(reply.ends_with(r#"{"puzzle":"squares","n":8,"count":204}"#), "{reply}");
}
