use serde::Serialize;

use crate::classify::StudyGroup;

use super::record::ClassRecord;

/// Per-group means, in report order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct MetricMeans {
    pub lcom5: Option<f64>,
    pub nhd: Option<f64>,
    pub cc: Option<f64>,
    pub coco_total: Option<f64>,
    pub coco_avg: Option<f64>,
    pub coco_max: Option<f64>,
    pub coco_min: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupSummary {
    pub group: StudyGroup,
    pub class_count: usize,
    pub loc_total: u64,
    pub loc_per_class: Option<f64>,
    pub means: MetricMeans,
}

/// Neumaier-compensated mean over values sorted first, so the result does
/// not depend on input order.
pub(crate) fn stable_mean(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mut sum = 0.0f64;
    let mut compensation = 0.0f64;
    for &v in values.iter() {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            compensation += (sum - t) + v;
        } else {
            compensation += (v - t) + sum;
        }
        sum = t;
    }
    Some((sum + compensation) / values.len() as f64)
}

/// One summary per study group, in the order ErOr, Utils, Rest. Means skip
/// undefined values; `loc_per_class` divides total LoC (not NCLoC).
pub fn aggregate_groups(records: &[ClassRecord]) -> Vec<GroupSummary> {
    StudyGroup::ALL
        .iter()
        .map(|&group| {
            let members: Vec<&ClassRecord> = records
                .iter()
                .filter(|r| r.label.group() == Some(group))
                .collect();
            let loc_total: u64 = members.iter().map(|r| r.loc).sum();
            let mut columns: [Vec<f64>; 7] = Default::default();
            for record in &members {
                for (column, value) in columns.iter_mut().zip(record.metrics.as_array()) {
                    if let Some(v) = value {
                        column.push(v);
                    }
                }
            }
            let [lcom5, nhd, cc, coco_total, coco_avg, coco_max, coco_min] =
                columns.map(|mut c| stable_mean(&mut c));
            GroupSummary {
                group,
                class_count: members.len(),
                loc_total,
                loc_per_class: (!members.is_empty())
                    .then(|| loc_total as f64 / members.len() as f64),
                means: MetricMeans {
                    lcom5,
                    nhd,
                    cc,
                    coco_total,
                    coco_avg,
                    coco_max,
                    coco_min,
                },
            }
        })
        .collect()
}
