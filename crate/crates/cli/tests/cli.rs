use std::process::{Command, Output};

use modpk::oracle::{brute_count_factors, OracleBudget};
use modpk::parse::parse_poly;
use modpk::PrimePower;
use serde_json::Value;

fn modpk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modpk")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = modpk(&a);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {:?}", out));
    (out.status.code().unwrap(), v)
}

fn product_of(v: &Value, m: u128) -> modpk::DensePoly {
    v["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| parse_poly(g.as_str().unwrap(), m).unwrap())
        .fold(modpk::DensePoly::one(m), |acc, g| acc.mul(&g))
}

#[test]
fn factor_cubic_mod_27() {
    let f = "x^3+12*x^2+3*x+36";
    let (code, v) = json(&["factor", "-p", "3", "-k", "3", f]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "factored");
    assert_eq!(v["modulus"]["p"], 3);
    assert_eq!(v["modulus"]["k"], 3);
    assert_eq!(v["seed"], 0);
    assert_eq!(product_of(&v, 27), parse_poly(f, 27).unwrap());
}

#[test]
fn irreducible_exit_code() {
    let (code, v) = json(&["factor", "-p", "3", "-k", "2", "x^2+3"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "irreducible");
    assert_eq!(v["factors"], Value::Array(vec![]));
    let out = modpk(&["factor", "-p", "3", "-k", "2", "x^2+3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("IRREDUCIBLE"));
}

#[test]
fn factor_split_quadratic() {
    let f = "x^2+10*x+21";
    let (code, v) = json(&["factor", "-p", "3", "-k", "2", f]);
    assert_eq!(code, 0);
    assert_eq!(product_of(&v, 9), parse_poly(f, 9).unwrap());
}

#[test]
fn non_monic_input_reports_unit() {
    let (code, v) = json(&["factor", "-p", "3", "-k", "2", "[0,6,2]"]);
    assert_eq!(code, 0);
    assert_eq!(v["unit"], 2);
    assert_eq!(product_of(&v, 9).scale(2), parse_poly("2x^2+6x", 9).unwrap());
}

#[test]
fn lift_counts() {
    let (code, v) = json(&["lifts", "-p", "3", "-k", "2", "-g", "x", "--expand", "10", "x^2+3*x"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 3);
    assert_eq!(v["factors"], serde_json::json!(["x", "x + 3", "x + 6"]));
    let (_, v) = json(&["lifts", "-p", "3", "-k", "4", "-g", "x", "x^2+3*x"]);
    assert_eq!(v["count"], 6);
}

#[test]
fn count_matches_search() {
    for (f, p, k) in [("x^3+12*x^2+3*x+36", 3, 3), ("x^4+6x^3+6x^2+2x+1", 2, 3), ("x^2+3x", 3, 4)] {
        let pp = PrimePower::new(p, k).unwrap();
        let brute = brute_count_factors(&parse_poly(f, pp.modulus()).unwrap(), &pp, OracleBudget::default()).unwrap();
        let (code, v) = json(&["count", "-p", &p.to_string(), "-k", &k.to_string(), f]);
        assert_eq!(code, 0);
        assert_eq!(v["count"].as_u64().unwrap() as u128, brute.total, "{f}");
        assert_eq!(v["nontrivial"].as_u64().unwrap() as u128, brute.nontrivial, "{f}");
    }
}

#[test]
fn roots_in_both_rings() {
    let (code, v) = json(&["roots", "-p", "3", "-k", "2", "--expand", "9", "x^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 3);
    assert_eq!(v["elements"], serde_json::json!(["0", "3", "6"]));
    let (_, v) = json(&["roots", "-p", "3", "-k", "2", "-g", "x", "y^2 - x^2"]);
    assert_eq!(v["count"], 3);
}

#[test]
fn same_seed_same_bytes() {
    for seed in ["0", "17"] {
        let args = ["factor", "-p", "5", "-k", "4", "--seed", seed, "--format", "json", "x^4+5x+25"];
        assert_eq!(modpk(&args).stdout, modpk(&args).stdout);
        let args = ["count", "-p", "7", "-k", "3", "--seed", seed, "x^4+3x^2+7"];
        assert_eq!(modpk(&args).stdout, modpk(&args).stdout);
    }
}

#[test]
fn errors_exit_one() {
    for args in [
        vec!["factor", "-p", "4", "-k", "2", "x^2+1"],
        vec!["factor", "-p", "3", "-k", "5", "x^2+1"],
        vec!["factor", "-p", "3", "-k", "2", "x^"],
        vec!["factor", "-p", "3", "-k", "2", "3x^2+1"],
        vec!["factor", "-p", "3", "-k", "2", "0"],
        vec!["lifts", "-p", "3", "-k", "2", "-g", "x+1", "x^2+3x"],
    ] {
        let (code, v) = json(&args);
        assert_eq!(code, 1, "{args:?}");
        assert_eq!(v["status"], "error");
    }
}

#[test]
fn leading_minus_is_a_polynomial() {
    let (code, v) = json(&["factor", "-p", "3", "-k", "2", "-x^2-3x"]);
    assert_eq!(code, 0);
    assert_eq!(product_of(&v, 9).scale(8), parse_poly("-x^2-3x", 9).unwrap());
}

#[test]
fn verify_grid_passes() {
    let out = modpk(&["verify", "--pmax", "3", "--degmax", "4", "--kmax", "4", "--samples", "30"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.lines().last().unwrap().starts_with("PASS"));
}

#[test]
fn verify_reports_injected_fault() {
    let out = modpk(&["verify", "--pmax", "2", "--degmax", "3", "--kmax", "2", "--samples", "5", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("reproduce with\n  modpk factor -p 2 -k 2"), "{text}");
    let (code, v) = json(&["verify", "--pmax", "2", "--degmax", "3", "--kmax", "2", "--samples", "5", "--inject-fault"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
    assert!(v["reproducer"].as_str().unwrap().starts_with("modpk factor"));
}
