//! From classes to group statistics: ingestion, filtering, aggregation.

mod aggregate;
mod cam;
mod filter;
mod ingest;
mod record;

pub use aggregate::{aggregate_groups, GroupSummary, MetricMeans};
pub use cam::{ingest_cam_csv, ColumnMap};
pub use filter::{
    filter_records, filter_with_thresholds, quantile, thresholds, FilterOutcome, FilterTally,
    QuantileBounds, Thresholds,
};
pub use ingest::{ingest_sources, Ingest};
pub use record::{ClassRecord, MetricValues};
