//! The checked-in fuzz seeds must decode, so the fuzzers start from valid inputs.

use std::fs;
use std::path::PathBuf;

use glq_stab::branching::Decomposition;
use glq_stab::qpoly::QPolynomial;
use glq_stab::{LabelFunction, LabelShape, Partition};

fn seeds(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            let bytes = fs::read(&p).unwrap();
            (p, bytes)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn text(b: &[u8]) -> &str {
    std::str::from_utf8(b).unwrap()
}

fn value(b: &[u8]) -> serde_json::Value {
    serde_json::from_slice(b).unwrap()
}

#[test]
fn seeds_decode() {
    for (p, b) in seeds("partition_parse") {
        Partition::parse(text(&b)).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
    for (p, b) in seeds("label_parse") {
        LabelFunction::parse(text(&b)).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
    for (p, b) in seeds("shape_json") {
        LabelShape::from_json(&value(&b)).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
    for (p, b) in seeds("qpoly_json") {
        QPolynomial::from_json(&value(&b)).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
    for (p, b) in seeds("decomposition_json") {
        Decomposition::from_json(&value(&b)).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    }
}
