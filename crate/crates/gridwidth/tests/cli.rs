use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gridwidth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridwidth"))
        .args(args)
        .env_remove("GRIDWIDTH_MEM")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn assert_schema(v: &Value) {
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["argmax_k", "conjectured", "method", "shape", "value"]);
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn formula_three_cubed() {
    let o = gridwidth(&["formula", "3", "3", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("method: ThreeD"), "{text}");
    assert!(text.contains("value: 8\n"), "{text}");

    let o = gridwidth(&["formula", "3", "3", "3", "--format", "json"]);
    let v = &json_lines(&o)[0];
    assert_schema(v);
    assert_eq!(v["value"], 8);
    assert_eq!(v["method"], "ThreeD");
    assert_eq!(v["conjectured"], false);
}

#[test]
fn formula_echoes_sorted_shape() {
    let o = gridwidth(&["formula", "5", "2", "1", "3"]);
    let text = stdout(&o);
    assert!(text.contains("shape: P2 x P3 x P5"), "{text}");
    assert!(text.contains("sorted from input axes: 1 3 0"), "{text}");
}

#[test]
fn formula_flags_conjecture() {
    let o = gridwidth(&["--format", "json", "formula", "6", "6", "6", "6"]);
    let v = &json_lines(&o)[0];
    assert_schema(v);
    assert_eq!(v["method"], "Conjecture4D");
    assert_eq!(v["conjectured"], true);
    assert!(stdout(&gridwidth(&["formula", "6", "6", "6", "6"])).contains("(conjectured)"));
}

#[test]
fn conjecture_small_scan() {
    let o = gridwidth(&["conjecture4d", "--max-n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n=2: sweep 7, conjecture 7, MATCH\n");

    let o = gridwidth(&["conjecture4d", "--max-n", "8", "--threads", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json_lines(&o);
    assert_eq!(rows.len(), 14);
    for (i, pair) in rows.chunks(2).enumerate() {
        pair.iter().for_each(assert_schema);
        assert_eq!(pair[0]["shape"][0], i + 2, "output is ordered by n");
        assert_eq!(pair[0]["value"], pair[1]["value"]);
        assert_eq!(pair[1]["conjectured"], true);
    }
}

#[test]
fn torus_examples() {
    let o = gridwidth(&["torus", "4", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("vbw = pw = bw: 7"), "{}", stdout(&o));

    let o = gridwidth(&["torus", "10", "4", "4", "--format", "json"]);
    let v = &json_lines(&o)[0];
    assert_schema(v);
    assert_eq!(v["value"], 32);
    assert_eq!(v["method"], "TorusLargeMax");
    assert_eq!(v["shape"], serde_json::json!([4, 4, 10]));
}

#[test]
fn sweep_json_and_profile() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("profile.csv");
    let o = gridwidth(&["sweep", "3", "3", "2", "--profile", path_str(&csv), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_schema(v);
    assert_eq!(v["value"], 6);
    assert_eq!(v["method"], "Sweep");
    assert_eq!(v["shape"], serde_json::json!([2, 3, 3]));

    let text = fs::read_to_string(&csv).unwrap();
    let rows: Vec<(u64, u64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let (k, b) = l.split_once(',').unwrap();
            (k.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert!(text.starts_with("k,boundary\n"));
    assert_eq!(rows.len(), 19);
    assert_eq!(rows.iter().map(|r| r.1).max(), Some(6));
    let argmax = rows.iter().find(|r| r.1 == 6).unwrap().0;
    assert_eq!(v["argmax_k"], argmax);
}

#[test]
fn certificates_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let ord = dir.path().join("order.txt");
    let dec = dir.path().join("decomp.txt");
    let (ord_s, dec_s) = (path_str(&ord), path_str(&dec));

    let emitted = gridwidth(&["certify", "4", "2", "3", "--ordering", ord_s, "--decomp", dec_s]);
    assert_eq!(emitted.status.code(), Some(0), "{}", stderr(&emitted));
    let verified =
        gridwidth(&["certify", "4", "2", "3", "--ordering", ord_s, "--decomp", dec_s, "--verify-only"]);
    assert_eq!(verified.status.code(), Some(0), "{}", stderr(&verified));
    assert_eq!(stdout(&emitted), stdout(&verified));
    assert!(stdout(&verified).contains("decomposition width: 6"), "{}", stdout(&verified));

    // Ordering lines carry coordinates in the caller's axis order.
    let first = fs::read_to_string(&ord).unwrap();
    assert_eq!(first.lines().count(), 24);
    assert_eq!(first.lines().next(), Some("1\t0 0 0"));
    assert!(fs::read_to_string(&dec).unwrap().starts_with("1\t"));
}

#[test]
fn tampered_certificates_fail_verification() {
    let dir = tempfile::tempdir().unwrap();
    let ord = dir.path().join("order.txt");
    let dec = dir.path().join("decomp.txt");
    let (ord_s, dec_s) = (path_str(&ord), path_str(&dec));
    gridwidth(&["certify", "3", "3", "--ordering", ord_s, "--decomp", dec_s]);

    // Swapping the first and last vertices stretches an edge.
    let text = fs::read_to_string(&ord).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let coords = |l: &str| l.split_once('\t').unwrap().1.to_string();
    let (first, last) = (coords(&lines[0]), coords(&lines[8]));
    lines[0] = format!("1\t{last}");
    lines[8] = format!("9\t{first}");
    fs::write(&ord, lines.join("\n") + "\n").unwrap();
    let o = gridwidth(&["certify", "3", "3", "--ordering", ord_s, "--verify-only"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error:"));

    // Only the first bag holds the first vertex; dropping it uncovers that vertex.
    let text = fs::read_to_string(&dec).unwrap();
    let kept: Vec<String> = text
        .lines()
        .skip(1)
        .enumerate()
        .map(|(i, l)| format!("{}\t{}", i + 1, l.split_once('\t').unwrap().1))
        .collect();
    fs::write(&dec, kept.join("\n")).unwrap();
    let o = gridwidth(&["certify", "3", "3", "--decomp", dec_s, "--verify-only"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("vertex 0 is in no bag"), "{}", stderr(&o));
}

#[test]
fn oracle_sources() {
    let o = gridwidth(&["oracle", "--grid", "2", "2", "2", "--what", "phi", "--k", "4"]);
    assert!(stdout(&o).contains("phi(4) = 3"), "{}", stdout(&o));

    let o = gridwidth(&["oracle", "--torus", "4", "4", "--format", "json"]);
    let v = &json_lines(&o)[0];
    assert_schema(v);
    assert_eq!(v["value"], 7);

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k4.txt");
    fs::write(&file, "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    for (what, expected) in [("vbw", 3), ("bw", 3), ("pw", 3)] {
        let o = gridwidth(&["oracle", "--file", path_str(&file), "--what", what, "--format", "json"]);
        assert_eq!(json_lines(&o)[0]["value"], expected, "{what}");
    }

    let o = gridwidth(&["oracle", "--grid", "5", "5"]);
    assert_eq!(o.status.code(), Some(3), "over the oracle cap");
}

#[test]
fn exit_codes() {
    let usage = [
        &["formula"][..],
        &["formula", "0", "3"],
        &["torus", "5"],
        &["sweep", "x"],
        &["oracle", "--grid", "2", "--torus", "4"],
        &["conjecture4d", "--max-n", "1"],
        &["certify", "3", "--verify-only"],
        &["frobnicate"],
    ];
    for args in usage {
        let o = gridwidth(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).starts_with("error:"), "{args:?}: {}", stderr(&o));
    }

    let o = gridwidth(&["sweep", "100", "100", "100", "--mem", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error:"));

    let o = Command::new(env!("CARGO_BIN_EXE_gridwidth"))
        .args(["certify", "20", "20"])
        .env("GRIDWIDTH_MEM", "64")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3), "memory cap from the environment");

    assert_eq!(gridwidth(&["--help"]).status.code(), Some(0));
}

#[test]
fn selfcheck_passes() {
    let o = gridwidth(&["selfcheck"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}

/// The full published range; takes minutes. Run with `--ignored`.
#[test]
#[ignore]
fn conjecture_up_to_100() {
    let o = gridwidth(&["conjecture4d", "--max-n", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.ends_with("MATCH")).count(), 99);
}
