use serde::Serialize;

use crate::classify::GroupLabel;
use crate::metrics::ClassMetrics;

/// The study's seven per-class values. Any of them may be missing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct MetricValues {
    pub lcom5: Option<f64>,
    pub nhd: Option<f64>,
    pub cc: Option<f64>,
    pub coco_total: Option<f64>,
    pub coco_avg: Option<f64>,
    pub coco_max: Option<f64>,
    pub coco_min: Option<f64>,
}

impl MetricValues {
    pub fn all_defined(&self) -> bool {
        self.as_array().iter().all(Option::is_some)
    }

    /// Values in report order: LCOM5, NHD, CC, CoCo, ACoCo, MxCoCo, MnCoCo.
    pub fn as_array(&self) -> [Option<f64>; 7] {
        [
            self.lcom5,
            self.nhd,
            self.cc,
            self.coco_total,
            self.coco_avg,
            self.coco_max,
            self.coco_min,
        ]
    }
}

impl From<&ClassMetrics> for MetricValues {
    fn from(m: &ClassMetrics) -> Self {
        MetricValues {
            lcom5: m.lcom5,
            nhd: m.nhd,
            cc: m.cc_total.map(f64::from),
            coco_total: m.coco_total.map(f64::from),
            coco_avg: m.coco_avg,
            coco_max: m.coco_max.map(f64::from),
            coco_min: m.coco_min.map(f64::from),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassRecord {
    pub qualified_name: String,
    /// Source path, or `path:line` of the CSV row.
    pub origin: String,
    pub repository: Option<String>,
    pub metrics: MetricValues,
    pub loc: u64,
    pub blank_lines: u64,
    pub label: GroupLabel,
}

impl ClassRecord {
    pub fn ncloc(&self) -> u64 {
        self.loc.saturating_sub(self.blank_lines)
    }
}
