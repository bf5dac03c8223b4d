//! Ingestion of precomputed per-class metrics from a CAM-style CSV export.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use serde::Deserialize;

use crate::classify::{classify, SuffixRules};
use crate::error::{AuditError, Result};

use super::ingest::Ingest;
use super::record::{ClassRecord, MetricValues};

/// Binds record fields to CSV header names.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ColumnMap {
    /// Class name, or the path of the `.java` file declaring it.
    pub name: String,
    pub lcom5: String,
    pub nhd: String,
    pub cc: String,
    pub coco_total: String,
    pub coco_avg: String,
    pub coco_min: String,
    pub coco_max: String,
    pub loc: String,
    pub blank: String,
    /// Columns whose non-zero / true value marks a static member.
    pub static_members: Vec<String>,
    pub repository: Option<String>,
}

impl Default for ColumnMap {
    fn default() -> Self {
        Self {
            name: "java_file".into(),
            lcom5: "LCOM5".into(),
            nhd: "NHD".into(),
            cc: "CC".into(),
            coco_total: "CoCo".into(),
            coco_avg: "ACoCo".into(),
            coco_min: "MnCoCo".into(),
            coco_max: "MxCoCo".into(),
            loc: "LoC".into(),
            blank: "NoBL".into(),
            static_members: Vec::new(),
            repository: Some("repo".into()),
        }
    }
}

impl ColumnMap {
    /// Reads a TOML mapping; keys left out keep their defaults.
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| AuditError::Config(format!("column map: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| AuditError::io(path, e))?;
        Self::from_toml(&text)
    }

    fn metric_fields(&self) -> [(&'static str, &str); 7] {
        [
            ("lcom5", &self.lcom5),
            ("nhd", &self.nhd),
            ("cc", &self.cc),
            ("coco_total", &self.coco_total),
            ("coco_avg", &self.coco_avg),
            ("coco_max", &self.coco_max),
            ("coco_min", &self.coco_min),
        ]
    }
}

struct Columns {
    name: usize,
    metrics: [usize; 7],
    loc: usize,
    blank: usize,
    statics: Vec<usize>,
    repository: Option<usize>,
}

fn resolve(path: &Path, header: &csv::StringRecord, map: &ColumnMap) -> Result<Columns> {
    let index: HashMap<&str, usize> = header
        .iter()
        .enumerate()
        .map(|(i, h)| (h.trim(), i))
        .collect();
    let find = |field: &str, column: &str| {
        index
            .get(column)
            .copied()
            .ok_or_else(|| AuditError::MissingColumn {
                path: path.to_path_buf(),
                field: field.to_owned(),
                column: column.to_owned(),
            })
    };
    let mut metrics = [0; 7];
    for (slot, (field, column)) in metrics.iter_mut().zip(map.metric_fields()) {
        *slot = find(field, column)?;
    }
    Ok(Columns {
        name: find("name", &map.name)?,
        metrics,
        loc: find("loc", &map.loc)?,
        blank: find("blank", &map.blank)?,
        statics: map
            .static_members
            .iter()
            .map(|c| find("static_members", c))
            .collect::<Result<_>>()?,
        repository: map
            .repository
            .as_deref()
            .and_then(|c| index.get(c).copied()),
    })
}

/// Simple class name from a name cell that may hold a file path or a
/// dotted qualified name.
fn simple_name(cell: &str) -> &str {
    let base = cell.rsplit(['/', '\\']).next().unwrap_or(cell);
    let base = base.strip_suffix(".java").unwrap_or(base);
    base.rsplit('.').next().unwrap_or(base)
}

fn parse_metric(cell: &str) -> std::result::Result<Option<f64>, String> {
    let cell = cell.trim();
    if cell.is_empty() || cell == "-" {
        return Ok(None);
    }
    let value: f64 = cell
        .parse()
        .map_err(|_| format!("`{cell}` is not a number"))?;
    Ok(value.is_finite().then_some(value))
}

fn parse_count(cell: &str, what: &str) -> std::result::Result<u64, String> {
    match parse_metric(cell)? {
        Some(v) if v >= 0.0 && v.fract() == 0.0 => Ok(v as u64),
        Some(v) => Err(format!("{what} `{v}` is not a non-negative integer")),
        None => Err(format!("{what} is missing")),
    }
}

fn parse_flag(cell: &str) -> std::result::Result<bool, String> {
    match cell.trim().to_ascii_lowercase().as_str() {
        "" | "false" | "no" => Ok(false),
        "true" | "yes" => Ok(true),
        other => other
            .parse::<f64>()
            .map(|v| v != 0.0)
            .map_err(|_| format!("`{other}` is not a static-member flag")),
    }
}

fn row_record(
    row: &csv::StringRecord,
    cols: &Columns,
    origin: String,
    rules: &SuffixRules,
) -> std::result::Result<ClassRecord, String> {
    let cell = |i: usize| row.get(i).unwrap_or("");
    let raw_name = cell(cols.name).trim();
    let name = simple_name(raw_name);
    if name.is_empty() {
        return Err("empty class name".into());
    }
    let mut values = [None; 7];
    for (slot, idx) in values.iter_mut().zip(cols.metrics) {
        *slot = parse_metric(cell(idx))?;
    }
    let loc = parse_count(cell(cols.loc), "LoC")?;
    let blank_lines = parse_count(cell(cols.blank), "blank line count")?;
    if blank_lines > loc {
        return Err(format!("blank lines {blank_lines} exceed LoC {loc}"));
    }
    let mut has_static = false;
    for &idx in &cols.statics {
        has_static |= parse_flag(cell(idx))?;
    }
    let [lcom5, nhd, cc, coco_total, coco_avg, coco_max, coco_min] = values;
    Ok(ClassRecord {
        qualified_name: raw_name.to_owned(),
        origin,
        repository: cols.repository.map(|i| cell(i).trim().to_owned()),
        metrics: MetricValues {
            lcom5,
            nhd,
            cc,
            coco_total,
            coco_avg,
            coco_max,
            coco_min,
        },
        loc,
        blank_lines,
        label: classify(name, has_static, rules),
    })
}

/// Reads one record per CSV data row.
///
/// Empty metric cells become undefined metrics (the filter drops them
/// later). Unparseable rows are skipped and reported; a missing mapped
/// column aborts the ingest.
pub fn ingest_cam_csv(path: &Path, map: &ColumnMap, rules: &SuffixRules) -> Result<Ingest> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| csv_fatal(path, e))?;
    let header = reader.headers().map_err(|e| csv_fatal(path, e))?.clone();
    let cols = resolve(path, &header, map)?;

    let mut ingest = Ingest::default();
    if cols.statics.is_empty() {
        ingest.warnings.push(format!(
            "{}: no static-member column mapped; every class is treated as having no static members",
            path.display()
        ));
    }
    let mut repos = BTreeSet::new();
    for row in reader.records() {
        ingest.inputs_seen += 1;
        let row = match row {
            Ok(row) => row,
            Err(e) => {
                if matches!(e.kind(), csv::ErrorKind::Io(_)) {
                    return Err(csv_fatal(path, e));
                }
                let line = e.position().map(|p| p.line()).unwrap_or(0);
                ingest.skipped.push(AuditError::RowParse {
                    path: path.to_path_buf(),
                    line,
                    message: e.to_string(),
                });
                continue;
            }
        };
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        let origin = format!("{}:{line}", path.display());
        match row_record(&row, &cols, origin, rules) {
            Ok(record) => {
                if let Some(repo) = &record.repository {
                    repos.insert(repo.clone());
                }
                ingest.records.push(record);
            }
            Err(message) => ingest.skipped.push(AuditError::RowParse {
                path: path.to_path_buf(),
                line,
                message,
            }),
        }
    }
    ingest.repositories = cols.repository.map(|_| repos.len());
    Ok(ingest)
}

fn csv_fatal(path: &Path, e: csv::Error) -> AuditError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => AuditError::io(path, io),
        other => AuditError::Config(format!("{}: {other:?}", path.display())),
    }
}
