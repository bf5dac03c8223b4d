use std::collections::BTreeMap;
use std::time::Instant;

use functor_audit::metrics::{class_metrics, method_cc, method_coco};
use functor_audit::source::{parse_compilation_unit, SourceClass};

#[path = "support/sheet.rs"]
mod sheet;

use sheet::{close, load, oracle_dir};

const TOL: f64 = 1e-12;

fn parse_fixtures() -> BTreeMap<String, Vec<SourceClass>> {
    let dir = oracle_dir();
    let mut files = BTreeMap::new();
    for expected in load(&dir) {
        files.entry(expected.file.clone()).or_insert_with(|| {
            let path = dir.join(&expected.file);
            let text = std::fs::read_to_string(&path).unwrap();
            parse_compilation_unit(&text, &path).unwrap()
        });
    }
    files
}

#[test]
fn sheet_covers_at_least_twelve_classes() {
    assert!(load(&oracle_dir()).len() >= 12);
}

#[test]
fn engine_matches_hand_computed_sheet() {
    let start = Instant::now();
    let files = parse_fixtures();
    let mut failures = Vec::new();
    for e in load(&oracle_dir()) {
        let class = files[&e.file]
            .iter()
            .find(|c| c.name == e.name)
            .unwrap_or_else(|| panic!("{} not found in {}", e.name, e.file));
        let m = class_metrics(class);
        let cc: Vec<u32> = class.methods.iter().map(method_cc).collect();
        let coco: Vec<u32> = class.methods.iter().map(method_coco).collect();
        let access_sum: usize = class
            .methods
            .iter()
            .map(|m| m.accessed_attributes.len())
            .sum();

        let checks = [
            ("k", m.k == e.k),
            ("l_attr", m.l_attr == e.l_attr),
            ("l_types", m.l_types == e.l_types),
            ("access_sum", access_sum == e.access_sum),
            ("lcom5", close(m.lcom5, e.lcom5.real(), TOL)),
            ("nhd", close(m.nhd, e.nhd.real(), TOL)),
            ("method_cc", cc == e.method_cc),
            ("method_coco", coco == e.method_coco),
            ("cc_total", m.cc_total == e.cc_total.count()),
            ("coco_total", m.coco_total == e.coco_total.count()),
            ("coco_avg", close(m.coco_avg, e.coco_avg.real(), TOL)),
            ("coco_min", m.coco_min == e.coco_min.count()),
            ("coco_max", m.coco_max == e.coco_max.count()),
        ];
        for (field, ok) in checks {
            if !ok {
                failures.push(format!(
                    "{}.{field}: got {m:?} cc={cc:?} coco={coco:?}",
                    e.name
                ));
            }
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
    assert!(
        start.elapsed().as_secs_f64() < 1.0,
        "took {:?}",
        start.elapsed()
    );
}

#[test]
fn undefined_metrics_are_none_not_numbers() {
    let files = parse_fixtures();
    let calculator = files["Calculator.java"]
        .iter()
        .find(|c| c.name == "Calculator")
        .unwrap();
    let m = class_metrics(calculator);
    assert_eq!(m.k, 0);
    assert!(m.lcom5.is_none() && m.nhd.is_none() && m.cc_total.is_none());
    assert!(m.coco_avg.is_none() && m.coco_min.is_none() && m.coco_max.is_none());
}
