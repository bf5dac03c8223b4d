use serde::Serialize;

use crate::error::{AuditError, Result};

use super::record::ClassRecord;

/// Nearest-rank quantile of an ascending slice: the element at index
/// `ceil(p * n) - 1`, clamped to the slice.
///
/// Ranks within 1e-9 of an integer snap to it, so `0.07 * 100` picks the
/// 7th element rather than the 8th.
pub fn quantile<T: Copy>(sorted: &[T], p: f64) -> Result<T> {
    if sorted.is_empty() {
        return Err(AuditError::EmptyInput);
    }
    let n = sorted.len();
    let rank = p.clamp(0.0, 1.0) * n as f64;
    let nearest = rank.round();
    let rank = if (rank - nearest).abs() < 1e-9 {
        nearest
    } else {
        rank.ceil()
    };
    let index = (rank as usize).saturating_sub(1).min(n - 1);
    Ok(sorted[index])
}

/// Quantile levels of the NCLoC outlier filter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantileBounds {
    pub low: f64,
    pub high: f64,
}

impl Default for QuantileBounds {
    fn default() -> Self {
        Self {
            low: 0.01,
            high: 0.99,
        }
    }
}

/// NCLoC values at the quantile bounds; records strictly outside are
/// outliers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Thresholds {
    pub low: u64,
    pub high: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FilterTally {
    pub input: usize,
    pub dropped_metrics: usize,
    pub dropped_quantile: usize,
    pub dropped_label: usize,
    pub output: usize,
}

impl FilterTally {
    pub fn is_conserved(&self) -> bool {
        self.input
            == self.output + self.dropped_metrics + self.dropped_quantile + self.dropped_label
    }
}

#[derive(Debug, Clone)]
pub struct FilterOutcome {
    pub records: Vec<ClassRecord>,
    pub tally: FilterTally,
    /// `None` when nothing survived the metric filter.
    pub thresholds: Option<Thresholds>,
}

/// Computes the NCLoC thresholds over the records that have every metric
/// (or over all records when `require_metrics` is off).
pub fn thresholds(
    records: &[ClassRecord],
    bounds: QuantileBounds,
    require_metrics: bool,
) -> Option<Thresholds> {
    let mut ncloc: Vec<u64> = records
        .iter()
        .filter(|r| !require_metrics || r.metrics.all_defined())
        .map(ClassRecord::ncloc)
        .collect();
    ncloc.sort_unstable();
    Some(Thresholds {
        low: quantile(&ncloc, bounds.low).ok()?,
        high: quantile(&ncloc, bounds.high).ok()?,
    })
}

/// Drops records with an undefined metric, then NCLoC outliers, then
/// records labeled `Dropped`, in that order.
pub fn filter_records(
    records: Vec<ClassRecord>,
    bounds: QuantileBounds,
    require_metrics: bool,
) -> FilterOutcome {
    let frozen = thresholds(&records, bounds, require_metrics);
    filter_with_thresholds(records, frozen, require_metrics)
}

/// [`filter_records`] with thresholds fixed in advance.
pub fn filter_with_thresholds(
    records: Vec<ClassRecord>,
    thresholds: Option<Thresholds>,
    require_metrics: bool,
) -> FilterOutcome {
    let mut tally = FilterTally {
        input: records.len(),
        ..FilterTally::default()
    };
    let mut kept = Vec::with_capacity(records.len());
    let mut outliers_or_labels = Vec::new();

    for record in records {
        if require_metrics && !record.metrics.all_defined() {
            tally.dropped_metrics += 1;
        } else {
            outliers_or_labels.push(record);
        }
    }
    for record in outliers_or_labels {
        let outside = thresholds
            .map(|t| record.ncloc() < t.low || record.ncloc() > t.high)
            .unwrap_or(false);
        if outside {
            tally.dropped_quantile += 1;
        } else if record.label.group().is_none() {
            tally.dropped_label += 1;
        } else {
            kept.push(record);
        }
    }
    tally.output = kept.len();
    FilterOutcome {
        records: kept,
        tally,
        thresholds,
    }
}
