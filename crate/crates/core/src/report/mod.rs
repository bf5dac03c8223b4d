//! Report tables, charts and the end-to-end run.

mod chart;
mod run;
mod tables;

pub use chart::{emit_chart_data, render_bar_chart, Bar, ChartReport};
pub use run::{render_report, run, Mode, RunConfig, RunOutcome, SKIP_RATE_LIMIT};
pub use tables::{format_real, render_tables, render_tables_styled, OutputFormat, TableKind};
