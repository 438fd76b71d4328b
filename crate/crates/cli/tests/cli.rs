use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

const RING: &str = r#"{"generators":[{"name":"E","rank":2},{"name":"F","rank":3}]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambda-conn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn chern_json_matches_expected_bytes() {
    let o = run(&["chern", "[E]", "2", "--ring", RING, "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o).trim_end(),
        r#"{"degree":2,"class":[{"coeff":1,"monomial":[]},{"coeff":-1,"monomial":["E"]},{"coeff":1,"monomial":["L2 E"]}]}"#
    );
}

#[test]
fn ring_from_file() {
    let ring = file(RING);
    let o = run(&["chern", "[E]", "1", "--ring", path(&ring)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim_end(), "2*[1] - [E]");
}

#[test]
fn chern_listing_vanishes_past_rank() {
    let o = run(&["chern", "[E]", "--ring", RING]);
    let text = stdout(&o);
    assert!(text.contains("c_3: 0"));
    assert!(text.contains("c_4: 0"));
}

#[test]
fn segre_and_total_and_gamma() {
    let o = run(&["segre", "[E]", "1", "--ring", RING]);
    assert_eq!(stdout(&o).trim_end(), "-2*[1] + [E]");
    let o = run(&["total", "[E]", "--ring", RING, "--format", "latex"]);
    assert_eq!(
        stdout(&o).trim_end(),
        "4[\\mathbf{1}] - 2[E] + [\\wedge^{2} E]"
    );
    let o = run(&["gamma", "[E]", "--ring", RING, "--max-degree", "2"]);
    assert_eq!(
        stdout(&o).trim_end(),
        "t^0: [1]\nt^1: [E]\nt^2: [E] + [L2 E]"
    );
}

#[test]
fn total_rejects_non_effective() {
    let o = run(&["total", "--ring", RING, "--", "-[E]"]);
    assert_eq!(code(&o), 2);
    let o = run(&["total", "--ring", RING, "--max-degree", "2", "--", "-[E]"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn cartier_pcurv_dlog() {
    let o = run(&["cartier", "(1/t) dt", "--p", "3"]);
    assert_eq!(stdout(&o).trim_end(), "1/t");
    let o = run(&["pcurv", "t*dt", "--p", "3"]);
    assert_eq!(stdout(&o).trim_end(), "2*t^3");
    let o = run(&["pcurv", "dt", "--p", "3"]);
    assert_eq!(stdout(&o).trim_end(), "2");
    let o = run(&["dlog", "(2/t) dt", "--p", "3"]);
    assert_eq!(stdout(&o).trim_end(), "t^2");
    let o = run(&["dlog", "t dt", "--p", "3"]);
    assert_eq!(stdout(&o).trim_end(), "none");
}

#[test]
fn cartier_with_derivation() {
    let o = run(&["cartier", "(1/t) dt", "--derivation", "t^2", "--p", "3"]);
    assert_eq!(stdout(&o).trim_end(), "t");
    let o = run(&[
        "cartier",
        "t^2 dt",
        "--derivation",
        "t+1",
        "--p",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(
        stdout(&o).trim_end(),
        r#"{"p":3,"value":"t+1","in_k":true}"#
    );
}

#[test]
fn matrix_commands() {
    let a = file(r#"{"p":3,"matrix":[["t"]]}"#);
    let o = run(&["pcurv", "--matrix", path(&a)]);
    assert_eq!(stdout(&o).trim_end(), "[[2*t^3]]");
    let o = run(&["descend", "--matrix", path(&a)]);
    assert_eq!(stdout(&o).trim_end(), "dimension: 0");

    let n = file(r#"[["0","1"],["0","0"]]"#);
    let o = run(&[
        "descend",
        "--matrix",
        path(&n),
        "--p",
        "3",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim_end()).unwrap();
    assert_eq!(v["dimension"], 2);

    let o = run(&["conn-chern", "1", "--matrix", path(&n), "--p", "3"]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "2*[1] - [C1]");
}

#[test]
fn filtration_and_triples() {
    let t = file(r#"{"p":3,"a_u":[["1/t"]],"b":[["1"]],"a_w":[["t"]]}"#);
    let o = run(&["filtration-check", "--triple", path(&t), "--l", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("result: PASS\n"));
    let o = run(&["filtration-check", "--triple", path(&t), "--l", "3"]);
    assert_eq!(code(&o), 2);
    let o = run(&["conn-chern", "1", "--triple", path(&t)]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "[1] - [C1]");
}

#[test]
fn ore_commands() {
    let o = run(&["ore", "mul", "T", "t", "--p", "3"]);
    assert_eq!(stdout(&o).trim_end(), "t*T + 1");
    let o = run(&["ore", "div", "T^2 + t", "T - 1", "--p", "5"]);
    assert_eq!(stdout(&o).trim_end(), "quotient: T + 1\nremainder: (t+1)");
    let o = run(&["ore", "pcurv", "T - t", "--p", "3"]);
    assert_eq!(stdout(&o).trim_end(), "[[2*t^3]]");
    let o = run(&["ore", "div", "T", "0", "--p", "5"]);
    assert_eq!(code(&o), 2);
    let o = run(&["ore", "pcurv", "2*T", "--p", "5"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn ore_cyclic_reports_failure_without_crashing() {
    let zero = file(r#"{"p":2,"matrix":[["0","0","0"],["0","0","0"],["0","0","0"]]}"#);
    let o = run(&["ore", "cyclic", "--matrix", path(&zero), "--attempts", "20"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim_end(), "none found in 20 attempts");
    let c = file(r#"{"p":5,"matrix":[["0","t"],["1","1/t"]]}"#);
    let o = run(&["ore", "cyclic", "--matrix", path(&c)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("vector: "));
}

#[test]
fn verify_exit_codes_and_reproducibility() {
    let a = run(&["verify", "whitney", "--trials", "20", "--seed", "7"]);
    let b = run(&["verify", "whitney", "--trials", "20", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("result: PASS\n"));

    let o = run(&[
        "verify",
        "pcurv-theorem",
        "--signed",
        "--p",
        "3",
        "--trials",
        "10",
    ]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("result: FAIL"));
    let o = run(&[
        "verify",
        "pcurv-theorem",
        "--signed",
        "--p",
        "2",
        "--trials",
        "10",
    ]);
    assert_eq!(code(&o), 0);

    let o = run(&["verify", "ore", "--trials", "0"]);
    assert_eq!(code(&o), 0);
    let o = run(&["verify", "nope"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn usage_and_parse_errors_exit_1() {
    assert_eq!(code(&run(&["chern", "[E", "--ring", RING])), 1);
    assert_eq!(code(&run(&["bogus"])), 1);
    assert_eq!(code(&run(&["chern", "[E]"])), 1);
    assert_eq!(code(&run(&["cartier", "(1/t) dt"])), 1);
    assert_eq!(code(&run(&["cartier", "(1/t dt", "--p", "3"])), 1);
    assert_eq!(
        code(&run(&["chern", "[E]", "--ring", "/nonexistent.json"])),
        1
    );
    assert_eq!(
        code(&run(&["chern", "[E]", "--ring", "{\"generators\":3}"])),
        1
    );
    assert_eq!(code(&run(&["--help"])), 0);
    let err = run(&["chern", "[E", "--ring", RING]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("position"));
}

#[test]
fn precondition_violations_exit_2() {
    assert_eq!(code(&run(&["chern", "[G]", "1", "--ring", RING])), 2);
    assert_eq!(code(&run(&["chern", "[E]*[F]", "1", "--ring", RING])), 2);
    assert_eq!(code(&run(&["chern", "[L3 E]", "1", "--ring", RING])), 2);
}
