use serde_json::Value;
use zerodiv_cli::{run_command, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String) {
    run_command(std::iter::once("zerodiv").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut v: Vec<&str> = args.to_vec();
    v.extend(["--json", "--no-timing"]);
    let (code, out) = run(&v);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

#[test]
fn eval_telescoping() {
    let (code, out) = run(&["eval", "--group", "cyclic:3", "--expr", "(1-a)*(1+a+a^2)"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().any(|l| l == "0"), "{out}");
}

#[test]
fn verify_theorem1() {
    let (code, out) = run(&["verify", "theorem1", "--n", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("AB = 0, |supp A| = 6"), "{out}");
}

#[test]
fn verify_lemma3_two_two() {
    let (code, v) = json(&["verify", "lemma3", "--q", "2", "--r", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["details"]["supp A"], "{1, a, b, a*b, b*a, a*b*a}");
    assert_eq!(v["verdict"], "verified");
}

#[test]
fn verify_lemma3_rejects_bad_hypotheses() {
    assert_eq!(run(&["verify", "lemma3", "--q", "3", "--r", "2"]).0, EXIT_USAGE);
    assert_eq!(run(&["verify", "lemma3", "--q", "3", "--r", "x"]).0, EXIT_USAGE);
}

#[test]
fn verify_theorem2_tables() {
    let (code, v) = json(&["verify", "theorem2", "--table", &data("klein4.table"), "--h1", "x", "--h2", "y"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["details"]["A"], "2 - x - y");
    let (code, _) = json(&["verify", "theorem2", "--table", &data("s3.table"), "--h1", "r", "--h2", "s"]);
    assert_eq!(code, EXIT_OK);
    let (code, out) = run(&["verify", "theorem2", "--table", &data("c6.table"), "--h1", "g2", "--h2", "g3"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("cyclic"), "{out}");
}

#[test]
fn verify_theorem2_free_product() {
    let (code, v) = json(&["verify", "theorem2", "--q", "3", "--r", "5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["details"]["images of a, b"], "a, b*a*b*a*b");
    let (code, v) = json(&["verify", "theorem2", "--q", "inf", "--r", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["details"]["factors swapped"], true);
}

#[test]
fn verify_fox() {
    let (code, v) = json(&["verify", "fox", "--n", "5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["checks"].as_array().unwrap().len(), 6);
}

#[test]
fn mul_command() {
    let (code, v) = json(&["mul", "--group", "freeprod:3,inf", "1-a", "a+a^2+1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["details"]["result"], "0");
}

#[test]
fn trivial_check_outcomes() {
    let klein = format!("table:{}", data("klein4.table"));
    let (code, v) = json(&["trivial-check", "--group", &klein, "--A", "2-x-y", "--B", "1+x+y+xy"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(v["verdict"], "none-found");
    assert!(v.get("witness").is_none());
    let (code, v) = json(&["trivial-check", "--group", "cyclic:2", "--A", "1-a", "--B", "1+a"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["witness"]["h"], "a");
    let (code, _) = json(&["trivial-check", "--group", "cyclic:2", "--A", "1-a", "--B", "1-a"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn trivial_check_free_product_needs_bound() {
    let (code, _) = run(&["trivial-check", "--group", "freeprod:2,2", "--A", "1-a", "--B", "1+a"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _) = run(&["trivial-check", "--group", "freeprod:2,2", "--A", "1-a", "--B", "1+a", "--bound", "1"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn primitive_check_lemma3() {
    let (_, built) = json(&["verify", "lemma3", "--q", "2", "--r", "inf"]);
    let a = built["details"]["A"].as_str().unwrap().to_string();
    let b = built["details"]["B"].as_str().unwrap().to_string();
    let (code, v) = json(&["primitive-check", "--group", "freeprod:2,inf", "--A", &a, "--B", &b, "--bound", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["witness"]["A U^-1"], "1 - a");
    assert_eq!(v["witness"]["U B"], "1 + a");
}

#[test]
fn primitive_check_theorem1_not_shown() {
    let (_, built) = json(&["verify", "theorem1", "--n", "3"]);
    let a = built["details"]["A"].as_str().unwrap().to_string();
    let b = built["details"]["B"].as_str().unwrap().to_string();
    let (code, v) = json(&["primitive-check", "--group", "nil2:3", "--A", &a, "--B", &b]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(v["verdict"], "not-shown");
}

#[test]
fn annihilate_and_cosets() {
    let (code, v) = json(&["annihilate", "--table", &data("klein4.table"), "--expr", "2-x-y"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["witness"]["annihilator"], "1 + x + y + xy");
    let (code, _) = json(&["annihilate", "--table", &data("klein4.table"), "--expr", "1+x+y"]);
    assert_eq!(code, EXIT_NEGATIVE);
    let klein = format!("table:{}", data("klein4.table"));
    let (code, v) = json(&["coset-report", "--group", &klein, "--set", "e,x,y", "--h", "x", "--side", "left"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(v["details"]["class sizes"], serde_json::json!([2, 1]));
}

#[test]
fn antinormal_examples() {
    let klein = format!("table:{}", data("klein4.table"));
    let (code, v) = json(&["antinormal", "--group", &klein, "--h", "x", "--bound", "2"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(v["witness"]["g"], "y");
    let (code, _) = json(&["antinormal", "--group", "freeprod:3,inf", "--h", "a", "--bound", "6"]);
    assert_eq!(code, EXIT_OK);
    let (code, _) = json(&["antinormal", "--group", "nil2:3", "--h", "c", "--bound", "3"]);
    assert_eq!(code, EXIT_NEGATIVE);
}

#[test]
fn json_is_byte_identical() {
    let args = ["verify", "lemma3", "--q", "3", "--r", "inf", "--json", "--no-timing"];
    let first = run(&args);
    for _ in 0..3 {
        assert_eq!(run(&args), first);
    }
    let klein = format!("table:{}", data("klein4.table"));
    let args = ["trivial-check", "--group", &klein, "--A", "2-x-y", "--B", "1+x+y+xy", "--json", "--no-timing"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn timing_is_reported_unless_disabled() {
    let (_, out) = run(&["eval", "--group", "cyclic:3", "--expr", "a", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["eval", "--group", "freeprod:1,2", "--expr", "1"]).0, EXIT_USAGE);
    let (code, out) = run(&["eval", "--group", "cyclic:3", "--expr", "1 + b"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("position 4"), "{out}");
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}
