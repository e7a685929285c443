//! The checked-in fuzz seeds must stay valid inputs, otherwise the fuzzers
//! start from nothing but parse errors.

use std::fs;
use std::path::PathBuf;

use gapforge::format::{code_from_json, maxcover_from_json, setcover_from_json};
use gapforge::frontends::{parse_dimacs_cnf, parse_edge_list};

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fuzz/corpus")
        .join(target);
    let mut out: Vec<(PathBuf, String)> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            let text = fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn every_seed_parses() {
    for (p, text) in seeds("parse_dimacs") {
        parse_dimacs_cnf(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
    for (p, text) in seeds("parse_edge_list") {
        parse_edge_list(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
    for (p, text) in seeds("code_json") {
        code_from_json(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
    for (p, text) in seeds("maxcover_json") {
        maxcover_from_json(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
    for (p, text) in seeds("setcover_json") {
        setcover_from_json(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
}
