//! Loader for the hand-computed oracle sheet in `fixtures/oracle`.
#![allow(dead_code)]

use std::path::{Path, PathBuf};

use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Text(String),
}

impl Value {
    /// `None` for "undefined"; fractions are evaluated with one division.
    pub fn real(&self) -> Option<f64> {
        match self {
            Value::Int(n) => Some(*n as f64),
            Value::Text(t) if t == "undefined" => None,
            Value::Text(t) => {
                let (n, d) = t.split_once('/').unwrap_or((t, "1"));
                let n: i64 = n.trim().parse().expect("fraction numerator");
                let d: i64 = d.trim().parse().expect("fraction denominator");
                Some(n as f64 / d as f64)
            }
        }
    }

    pub fn count(&self) -> Option<u32> {
        match self {
            Value::Int(n) => Some(*n as u32),
            Value::Text(t) if t == "undefined" => None,
            Value::Text(t) => panic!("expected an integer, got {t}"),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct Expected {
    pub file: String,
    pub name: String,
    pub k: usize,
    pub l_attr: usize,
    pub l_types: usize,
    pub access_sum: usize,
    pub lcom5: Value,
    pub nhd: Value,
    pub method_cc: Vec<u32>,
    pub method_coco: Vec<u32>,
    pub cc_total: Value,
    pub coco_total: Value,
    pub coco_avg: Value,
    pub coco_min: Value,
    pub coco_max: Value,
}

#[derive(Deserialize)]
struct Sheet {
    class: Vec<Expected>,
}

pub fn oracle_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/oracle")
}

pub fn load(dir: &Path) -> Vec<Expected> {
    let text = std::fs::read_to_string(dir.join("expected.toml")).expect("oracle sheet");
    toml::from_str::<Sheet>(&text)
        .expect("oracle sheet parses")
        .class
}

pub fn close(actual: Option<f64>, expected: Option<f64>, tol: f64) -> bool {
    match (actual, expected) {
        (Some(a), Some(e)) => (a - e).abs() <= tol,
        (None, None) => true,
        _ => false,
    }
}
