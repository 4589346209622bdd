use freearr_web::{catalog_text, freeness, lattice, restrict};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

fn braid(n: u32) -> String {
    parse(&catalog_text("braid", n, 0, 0))["text"].as_str().unwrap().to_string()
}

#[test]
fn lattice_of_braid4() {
    let v = parse(&lattice(&braid(4)));
    assert_eq!(v["poincare"], "1 + 6t + 11t^2 + 6t^3");
    assert_eq!(v["roots"], serde_json::json!([1, 2, 3]));
    let counts: Vec<usize> = v["ranks"].as_array().unwrap().iter().map(|r| r["flats"].as_array().unwrap().len()).collect();
    assert_eq!(counts, [1, 6, 7, 1]);
}

#[test]
fn freeness_of_families() {
    let v = parse(&freeness(&braid(3)));
    assert_eq!(v["free"], true);
    assert_eq!(v["exponents"], serde_json::json!([0, 1, 2]));
    let g = parse(&catalog_text("monomial", 3, 3, 3));
    let v = parse(&freeness(g["text"].as_str().unwrap()));
    assert_eq!(v["exponents"], serde_json::json!([1, 4, 4]));
    let v = parse(&freeness("field 1\ndim 3\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n"));
    assert_eq!(v["free"], false);
}

#[test]
fn restriction_collapses() {
    let v = parse(&restrict(&braid(4), "1 -1 0 0"));
    assert_eq!(v["hyperplanes"], 3);
    let v = parse(&restrict(&braid(4), "1 1 1 1"));
    assert!(v["error"].is_string());
}

#[test]
fn errors_are_json() {
    assert!(parse(&lattice("field 1\ndim 2\n0 0\n"))["error"].as_str().unwrap().contains("line 3"));
    assert!(parse(&catalog_text("monomial", 4, 3, 2))["error"].is_string());
    assert!(parse(&catalog_text("E8", 0, 0, 0))["error"].is_string());
}
