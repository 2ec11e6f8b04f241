use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use artinloc::localization::localization_report;
use artinloc::{fixtures, Options, Side};
use artinloc_cli::input::parse_algebra;
use artinloc_cli::output::ReportJson;

const L2: &str = r#"{"scalar":{"prime":7},"kind":"constructor","name":"lower_triangular","n":2}"#;
const L3: &str = r#"{"scalar":{"prime":7},"kind":"constructor","name":"lower_triangular","n":3}"#;
const U2: &str = r#"{"scalar":{"prime":7},"kind":"constructor","name":"upper_triangular","n":2}"#;
const P1: &str = r#"{"scalar":{"prime":7},"kind":"constructor","name":"product","factors":[
    {"kind":"constructor","name":"full_matrix","n":2},{"kind":"constructor","name":"full_matrix","n":1}]}"#;
const T7F7: &str = r#"{"scalar":{"prime":7},"kind":"constructor","name":"product","factors":[
    {"kind":"constructor","name":"truncated_poly","n":2},{"kind":"constructor","name":"full_matrix","n":1}]}"#;
const T7_RAW: &str = r#"{"scalar":{"prime":7},"kind":"structure_constants","dim":2,"one":[1,0],
    "mul_table":[[[1,0],[0,1]],[[0,1],[0,0]]]}"#;

struct Dir(tempfile::TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }
}

fn run(args: &[&str], input: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artinloc"))
        .args(args)
        .arg("--input")
        .arg(input)
        .env_remove("ARTINLOC_GUARD")
        .output()
        .unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn report_on_l3() {
    let d = Dir::new();
    let o = run(&["report"], &d.file("l3.json", L3));
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["loc_count"], 3);
    assert_eq!(v["minima"], serde_json::json!(["{1}"]));
    assert_eq!(v["l_rad_dim"], 5);
    assert_eq!(v["little_rad_dim"], 3);
}

#[test]
fn report_round_trips() {
    let d = Dir::new();
    for (name, doc) in [("l3", L3), ("p1", P1), ("u2", U2)] {
        for side in ["left", "right"] {
            let o = run(&["report", "--side", side], &d.file(&format!("{name}.json"), doc));
            let parsed: ReportJson = serde_json::from_slice(&o.stdout).unwrap();
            let a = parse_algebra(doc).unwrap();
            let s = if side == "left" { Side::Left } else { Side::Right };
            let r = localization_report(&a, s, &Options::default()).unwrap();
            assert_eq!(parsed, ReportJson::new(&a, &r), "{name} {side}");
        }
    }
}

#[test]
fn output_is_deterministic() {
    let d = Dir::new();
    let input = d.file("p1.json", P1);
    for cmd in ["report", "dual", "twosided"] {
        let a = run(&[cmd, "--side", "both"], &input);
        let b = run(&[cmd, "--side", "both"], &input);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
    let v = json(&run(&["report", "--side", "both"], &input));
    assert!(v["left"].is_object() && v["right"].is_object());
}

#[test]
fn powers_example_with_oracle() {
    let d = Dir::new();
    let o = run(&["check-powers", "--element", "[[2,0],[1,0]]", "--oracle"], &d.file("l2.json", L2));
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["ass_dim"], 2);
    assert_eq!(v["quotient_dim"], 1);
    assert_eq!(v["agrees"], true);
    assert_eq!(v["oracle"]["closure_size"], 4);
}

#[test]
fn false_verdicts_exit_one() {
    let d = Dir::new();
    let l2 = d.file("l2.json", L2);
    let o = run(&["check-powers", "--element", "[0,1,0]", "--oracle"], &l2);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["agrees"], true);
    // E_11 is a left but not a right denominator idempotent in L2.
    assert_eq!(run(&["check-idempotent", "--element", "[1,0,0]", "--oracle"], &l2).status.code(), Some(0));
    let o = run(&["check-idempotent", "--element", "[1,0,0]", "--side", "right", "--oracle"], &l2);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["agrees"], true);
    let u2 = d.file("u2.json", U2);
    let o = run(&["check-idempotent", "--element", "[[1,0],[0,0]]", "--oracle"], &u2);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["oracle"]["counterexample"].is_array());
}

#[test]
fn monoid_generators() {
    let d = Dir::new();
    let l2 = d.file("l2.json", L2);
    let gens = d.file("g.json", "[[[2,0],[1,0]], [[3,0],[0,1]]]");
    let o = run(&["check-monoid", "--generators", gens.to_str().unwrap(), "--oracle"], &l2);
    let v = json(&o);
    assert_eq!(v["agrees"], true);
    assert_eq!(o.status.code(), Some(if v["verdict"] == true { 0 } else { 1 }));
    let zero = d.file("z.json", "[[0,1,0]]");
    assert_eq!(run(&["check-monoid", "--generators", zero.to_str().unwrap()], &l2).status.code(), Some(1));
}

#[test]
fn dual_on_l2() {
    let d = Dir::new();
    let v = json(&run(&["dual"], &d.file("l2.json", L2)));
    assert_eq!(v["counts_equal"], true);
    assert_eq!(v["l_neq_r"], true);
    assert_eq!(v["pairing"], serde_json::json!([["{1}", "{2}"]]));
}

#[test]
fn two_sided_commands() {
    let d = Dir::new();
    let p1 = d.file("p1.json", P1);
    let v = json(&run(&["twosided"], &p1));
    assert_eq!(v["factors"], 2);
    assert_eq!(v["loc_count"], "3");
    let o = run(&["twosided", "--element", "[1,0,0,0,1]", "--oracle"], &p1);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["powers"]["agrees"], true);
    let o = run(&["twosided", "--element", "[0,1,3]", "--oracle"], &d.file("t.json", T7F7));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn classify_and_verify() {
    let d = Dir::new();
    let l2 = d.file("l2.json", L2);
    let v = json(&run(&["classify-element", "--element", "[1,0,0]", "--side", "both"], &l2));
    assert_eq!(v["idempotent"], true);
    assert_eq!(v["localization"]["left"]["localizable"], true);
    assert_eq!(v["localization"]["left"]["completely_localizable"], true);
    let t7 = d.file("t7.json", T7_RAW);
    let o = run(&["verify"], &t7);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["ok"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] != "fail"));
}

#[test]
fn input_errors_exit_two() {
    let d = Dir::new();
    let bad_prime = d.file("b.json", r#"{"scalar":{"prime":4},"kind":"constructor","name":"full_matrix","n":1}"#);
    let o = run(&["report"], &bad_prime);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not prime"));
    let small = d.file("s.json", r#"{"scalar":{"prime":3},"kind":"constructor","name":"lower_triangular","n":2}"#);
    assert_eq!(run(&["report"], &small).status.code(), Some(2));
    let l2 = d.file("l2.json", L2);
    assert_eq!(run(&["check-powers", "--element", "[1,2]"], &l2).status.code(), Some(2));
    assert_eq!(run(&["check-powers"], &l2).status.code(), Some(2));
    assert_eq!(run(&["check-idempotent", "--element", "[0,1,0]"], &l2).status.code(), Some(2));
    let garbled = d.file("g.json", "{\n  \"scalar\": {\"prime\": 7},\n  \"kind\": 5\n}");
    let o = run(&["report"], &garbled);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn guard_limits_brute_force() {
    let d = Dir::new();
    let l3 = d.file("l3.json", L3);
    // 3 has order 6 mod 7, so the monoid of powers has 6 elements.
    let s = "[[3,0,0],[0,1,0],[0,0,1]]";
    assert_eq!(run(&["check-powers", "--element", s, "--oracle", "--guard", "6"], &l3).status.code(), Some(0));
    let o = run(&["check-powers", "--element", s, "--oracle", "--guard", "5"], &l3);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("guard"));
    let o = Command::new(env!("CARGO_BIN_EXE_artinloc"))
        .args(["check-powers", "--element", s, "--oracle", "--input"])
        .arg(&l3)
        .env("ARTINLOC_GUARD", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["report", "--guard", "1000"], &l3).status.code(), Some(0));
}

#[test]
fn text_and_output_file() {
    let d = Dir::new();
    let l2 = d.file("l2.json", L2);
    let out = d.0.path().join("out.txt");
    let o = run(&["report", "--format", "text", "--output", out.to_str().unwrap()], &l2);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.contains("loc_count: 2"), "{text}");
    assert!(text.contains("minima: [{1}]"), "{text}");
}

#[test]
fn fixtures_parse_equivalently() {
    let a = parse_algebra(L3).unwrap();
    let b = fixtures::by_name("L3_7").unwrap();
    assert!(a.same_structure(&b));
}
