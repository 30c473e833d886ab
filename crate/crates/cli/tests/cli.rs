use std::process::Command;

use legendre_cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("legendre").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out, err) = call(&all);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

const TABLE_FAMILY: [&str; 8] = ["--N", "5", "--i", "1", "--j", "4", "--k", "1"];

fn with_family(family: &[&str], rest: &[&str]) -> Vec<String> {
    family.iter().chain(rest).map(|s| s.to_string()).collect()
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

#[test]
fn count_both_methods_agree() {
    let mut args = vec!["count"];
    let rest = with_family(&TABLE_FAMILY, &["--lambda", "2/1", "--p", "11", "--method", "both"]);
    args.extend(strs(&rest));
    let (code, doc) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["items"][0]["observed"]["trace"], 8);
    assert_eq!(doc["items"][2]["item_id"], "agreement");
    assert_eq!(doc["invocation"]["command"], "count");
    assert_eq!(doc["invocation"]["lambda"], "2/1");
}

#[test]
fn sextic_count_agrees() {
    let (code, doc) = json(&["count", "--N", "6", "--i", "4", "--j", "3", "--k", "1", "--lambda", "2/1", "--p", "7"]);
    assert_eq!(code, 0);
    assert_eq!(doc["summary"]["passed"], 3);
}

#[test]
fn degenerate_lambda_is_a_usage_error() {
    let (code, out, err) = call(&["count", "--N", "5", "--i", "1", "--j", "4", "--k", "1", "--lambda", "1/1", "--p", "11"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn lpoly_rows() {
    let expand = |p: &str| {
        let mut args = vec!["lpoly"];
        args.extend(TABLE_FAMILY);
        args.extend(["--p", p]);
        let (code, doc) = json(&args);
        assert_eq!(code, 0);
        doc["items"][0]["observed"]["l_polynomial"]["coeffs"].clone()
    };
    // (49T⁴+10T²+1)(49T⁴-10T²+1)
    assert_eq!(expand("7"), serde_json::json!([1, 0, 0, 0, -2, 0, 0, 0, 2401]));
    // (169T⁴+1)²
    assert_eq!(expand("13"), serde_json::json!([1, 0, 0, 0, 338, 0, 0, 0, 28561]));
    // (289T⁴-20T²+1)(289T⁴+20T²+1)
    assert_eq!(expand("17"), serde_json::json!([1, 0, 0, 0, 178, 0, 0, 0, 83521]));
}

#[test]
fn lpoly_needs_lambda_off_the_table() {
    let (code, _, err) = call(&["lpoly", "--N", "6", "--i", "4", "--j", "3", "--k", "1", "--p", "7"]);
    assert_eq!(code, 2);
    assert!(err.contains("--lambda"));
}

#[test]
fn jacobi_quotient_is_a_character_value() {
    let (code, doc) = json(&[
        "charsum", "jacobi", "--p", "11", "--M", "10", "--a", "1", "--b", "6", "--c", "2", "--d", "5", "--argument", "2",
    ]);
    assert_eq!(code, 0);
    let q = &doc["items"][2]["observed"];
    assert_eq!(q["verdict"], "character_like");
    assert_eq!(q["character_powers"]["powers"], serde_json::json!([8]));
}

#[test]
fn trivial_gauss_sum() {
    let (code, doc) = json(&["charsum", "gauss", "--p", "7", "--M", "6", "--a", "0"]);
    assert_eq!(code, 0);
    assert_eq!(doc["items"][0]["observed"]["complex"][0], -1.0);
}

#[test]
fn hypergeometric_routes_agree() {
    let (code, doc) =
        json(&["charsum", "hgf", "--p", "7", "--M", "6", "--A", "1", "--B", "2", "--C", "-1", "--lambda", "3", "--via", "both"]);
    assert_eq!(code, 0);
    assert_eq!(doc["items"][2]["observed"]["agree"], true);
}

#[test]
fn sextic_periods() {
    let (code, doc) = json(&["periods", "--N", "6", "--i", "4", "--j", "3", "--k", "1", "--lambda", "0.3"]);
    assert_eq!(code, 0);
    let items = doc["items"].as_array().unwrap();
    let prod = items.iter().find(|i| i["item_id"] == "beta1*beta2").unwrap();
    assert_eq!(prod["status"], "pass");
    assert!(prod["observed"]["residual_log10"].as_f64().unwrap() <= -40.0);
}

#[test]
fn duodecic_relations() {
    let (code, doc) = json(&["periods", "--N", "12", "--i", "9", "--j", "5", "--k", "1", "--lambda", "0.4"]);
    assert_eq!(code, 0);
    let items = doc["items"].as_array().unwrap();
    let rel = items.iter().find(|i| i["item_id"] == "relations").unwrap();
    assert_eq!(rel["observed"]["holds"], true);
}

#[test]
fn periods_reject_lambda_outside_unit_interval() {
    let (code, _, _) = call(&["periods", "--N", "6", "--i", "4", "--j", "3", "--k", "1", "--lambda", "1.5"]);
    assert_eq!(code, 2);
}

#[test]
fn qm_verdicts() {
    let (code, doc) = json(&["qm-check", "--N", "6", "--i", "4", "--j", "3", "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["items"][0]["observed"]["verdict"], "qm");
    let (_, doc) = json(&["qm-check", "--N", "6", "--i", "1", "--j", "1", "--k", "1", "--primes", "7,13"]);
    assert_eq!(doc["items"][0]["observed"]["verdict"], "no_qm");
    let (code, _, _) = call(&["qm-check", "--N", "5", "--i", "1", "--j", "1", "--k", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn table_suite_verifies() {
    let (code, doc) = json(&["verify", "--suite", "l-table"]);
    assert_eq!(code, 0);
    assert_eq!(doc["summary"]["passed"], 7);
}

#[test]
fn greene_and_trace_suites_verify() {
    assert_eq!(call(&["verify", "--suite", "greene", "--pmax", "13"]).0, 0);
    assert_eq!(call(&["verify", "--suite", "trace-identity", "--pmax", "100"]).0, 0);
}

#[test]
fn failing_items_set_exit_one() {
    let (code, doc) = json(&["verify", "--suite", "elliptic-factor", "--primes", "7"]);
    assert_eq!(code, 1);
    assert_eq!(doc["items"][0]["status"], "fail");
}

#[test]
fn verify_usage_errors() {
    for args in [
        &["verify", "--suite", "nope"][..],
        &["verify", "--suite", "greene", "--primes", "7,9"],
        &["verify", "--suite", "weil", "--samples", "0"],
        &["verify", "--suite", "greene", "--jobs", "0"],
        &["verify"],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty());
        assert_eq!(err.lines().count(), 1, "{err}");
    }
}

#[test]
fn output_does_not_depend_on_jobs() {
    let base = ["verify", "--suite", "weil", "--samples", "12", "--seed", "5", "--format", "json"];
    let one = call(&[&base[..], &["--jobs", "1"]].concat());
    let many = call(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one, many);
    let other_seed = call(&["verify", "--suite", "weil", "--samples", "12", "--seed", "6", "--format", "json"]);
    assert_ne!(one.1, other_seed.1);
}

#[test]
fn timing_is_opt_in() {
    let (_, doc) = json(&["verify", "--suite", "jacobi-example"]);
    assert!(doc.get("elapsed_ms").is_none());
    let (_, doc) = json(&["verify", "--suite", "jacobi-example", "--timing"]);
    assert!(doc["elapsed_ms"].is_u64());
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_legendre");
    let ok = Command::new(bin).args(["verify", "--suite", "jacobi-example"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("PASS"));
    let bad = Command::new(bin).args(["count", "--N", "5"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn expectation_seeds_parse() {
    use legendre_cli::expectations::Expectations;
    let dir = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/expectations");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        assert!(Expectations::parse(&text).is_ok());
        n += 1;
    }
    assert!(n >= 2);
}
