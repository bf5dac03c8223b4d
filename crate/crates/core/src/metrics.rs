//! Per-class cohesion and complexity metrics.
//!
//! Every metric is computed over non-constructor methods only. A metric whose
//! formula has a zero denominator is reported as `None` rather than clamped.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::source::{MethodView, SourceClass};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub lcom5: Option<f64>,
    pub nhd: Option<f64>,
    pub cc_total: Option<u32>,
    pub coco_total: Option<u32>,
    pub coco_avg: Option<f64>,
    pub coco_min: Option<u32>,
    pub coco_max: Option<u32>,
    /// Number of methods.
    pub k: usize,
    /// Number of attributes.
    pub l_attr: usize,
    /// Number of distinct parameter types.
    pub l_types: usize,
}

/// Henderson-Sellers lack of cohesion: `(a - k*l) / (l - k*l)`.
///
/// `a` sums, over methods, the number of distinct attributes each accesses.
/// Ranges over `[0, k/(k-1)]`; undefined for `l = 0` or `k <= 1`.
pub fn lcom5(class: &SourceClass) -> Option<f64> {
    let k = class.methods.len() as i64;
    let l = class.attributes.len() as i64;
    if l == 0 || k <= 1 {
        return None;
    }
    let a: i64 = class
        .methods
        .iter()
        .map(|m| m.accessed_attributes.len() as i64)
        .sum();
    Some((a - k * l) as f64 / (l - k * l) as f64)
}

/// Number of methods taking at least one parameter of each distinct type.
fn parameter_type_usage(class: &SourceClass) -> BTreeMap<&str, i64> {
    let mut usage = BTreeMap::new();
    for method in &class.methods {
        let mut types: Vec<&str> = method.parameter_types.iter().map(String::as_str).collect();
        types.sort_unstable();
        types.dedup();
        for ty in types {
            *usage.entry(ty).or_insert(0) += 1;
        }
    }
    usage
}

/// Normalized Hamming distance over method parameter types:
/// `1 - 2/(l*k*(k-1)) * sum_j x_j*(k - x_j)`.
///
/// Undefined for `k < 2` or when no method declares a parameter.
pub fn nhd(class: &SourceClass) -> Option<f64> {
    let k = class.methods.len() as i64;
    let usage = parameter_type_usage(class);
    let l = usage.len() as i64;
    if k < 2 || l == 0 {
        return None;
    }
    let disagreement: i64 = usage.values().map(|x| x * (k - x)).sum();
    let scale = l * k * (k - 1);
    Some((scale - 2 * disagreement) as f64 / scale as f64)
}

/// Decision-count cyclomatic complexity, one plus each branching construct
/// and each short-circuit operator.
pub fn method_cc(method: &MethodView) -> u32 {
    1 + method.decision_profile.decisions()
}

/// Cognitive complexity from the recorded events.
pub fn method_coco(method: &MethodView) -> u32 {
    method
        .cognitive_events
        .iter()
        .map(|e| if e.kind.is_nesting() { 1 + e.depth } else { 1 })
        .sum()
}

pub fn class_metrics(class: &SourceClass) -> ClassMetrics {
    let k = class.methods.len();
    let l_types = parameter_type_usage(class).len();
    let base = ClassMetrics {
        lcom5: lcom5(class),
        nhd: nhd(class),
        cc_total: None,
        coco_total: None,
        coco_avg: None,
        coco_min: None,
        coco_max: None,
        k,
        l_attr: class.attributes.len(),
        l_types,
    };
    if k == 0 {
        return base;
    }
    let coco: Vec<u32> = class.methods.iter().map(method_coco).collect();
    let coco_total: u32 = coco.iter().sum();
    ClassMetrics {
        cc_total: Some(class.methods.iter().map(method_cc).sum()),
        coco_total: Some(coco_total),
        coco_avg: Some(f64::from(coco_total) / k as f64),
        coco_min: coco.iter().copied().min(),
        coco_max: coco.iter().copied().max(),
        ..base
    }
}
