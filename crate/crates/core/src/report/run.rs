//! One end-to-end audit: ingest, filter, aggregate, render.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use serde_json::{json, Map, Value};

use crate::classify::{ExcludedPolicy, SuffixRules};
use crate::corpus::{
    aggregate_groups, filter_records, ingest_cam_csv, ingest_sources, ColumnMap, FilterTally,
    GroupSummary, Ingest, QuantileBounds, Thresholds,
};
use crate::error::{AuditError, Result};

use super::chart::emit_chart_data;
use super::tables::{render_tables_styled, tables_value, OutputFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Source,
    Cam,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: Mode,
    pub inputs: Vec<PathBuf>,
    pub cam_map: Option<PathBuf>,
    pub rules: Option<PathBuf>,
    pub bounds: QuantileBounds,
    pub excluded_to: ExcludedPolicy,
    pub format: OutputFormat,
    pub charts: Option<PathBuf>,
    /// Keep classes with undefined metrics and average over what is defined.
    /// Source mode only.
    pub lenient: bool,
    /// Underline the worst cells in text output.
    pub styled: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Source,
            inputs: Vec::new(),
            cam_map: None,
            rules: None,
            bounds: QuantileBounds::default(),
            excluded_to: ExcludedPolicy::default(),
            format: OutputFormat::Text,
            charts: None,
            lenient: false,
            styled: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let QuantileBounds { low, high } = self.bounds;
        if !(0.0..=1.0).contains(&low) || !(0.0..=1.0).contains(&high) || low >= high {
            return Err(AuditError::Config(format!(
                "quantile bounds must satisfy 0 <= q-low < q-high <= 1 (got {low} and {high})"
            )));
        }
        if self.inputs.is_empty() {
            return Err(AuditError::Config("no input given".into()));
        }
        if self.cam_map.is_some() && self.mode != Mode::Cam {
            return Err(AuditError::Config(
                "--cam-map applies to cam mode only".into(),
            ));
        }
        if self.lenient && self.mode != Mode::Source {
            return Err(AuditError::Config(
                "--lenient applies to source mode only".into(),
            ));
        }
        Ok(())
    }
}

/// Share of skipped inputs above which a run exits with status 2.
pub const SKIP_RATE_LIMIT: f64 = 0.10;

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub summaries: Vec<GroupSummary>,
    pub tally: FilterTally,
    pub thresholds: Option<Thresholds>,
    pub inputs_seen: usize,
    pub inputs_skipped: usize,
    pub repositories: Option<usize>,
    pub chart_files: Vec<PathBuf>,
}

impl RunOutcome {
    pub fn skip_rate(&self) -> f64 {
        if self.inputs_seen == 0 {
            0.0
        } else {
            self.inputs_skipped as f64 / self.inputs_seen as f64
        }
    }

    /// 0 on success, 2 when more than a tenth of the inputs were skipped.
    pub fn exit_code(&self) -> i32 {
        if self.skip_rate() > SKIP_RATE_LIMIT {
            2
        } else {
            0
        }
    }
}

fn ingest(config: &RunConfig, rules: &SuffixRules) -> Result<Ingest> {
    match config.mode {
        Mode::Source => ingest_sources(&config.inputs, rules),
        Mode::Cam => {
            let map = match &config.cam_map {
                Some(path) => ColumnMap::from_file(path)?,
                None => ColumnMap::default(),
            };
            let mut all = Ingest::default();
            let mut repositories = Some(0);
            for path in &config.inputs {
                let part = ingest_cam_csv(path, &map, rules)?;
                all.records.extend(part.records);
                all.skipped.extend(part.skipped);
                all.warnings.extend(part.warnings);
                all.inputs_seen += part.inputs_seen;
                repositories = repositories.zip(part.repositories).map(|(a, b)| a + b);
            }
            all.repositories = repositories;
            Ok(all)
        }
    }
}

/// Runs the audit, writing the report to `out` and one `SKIP`/`WARN` line per
/// problem to `diag`.
pub fn run(config: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> Result<RunOutcome> {
    config.validate()?;
    let rules = match &config.rules {
        Some(path) => SuffixRules::from_file(path)?,
        None => SuffixRules::default(),
    }
    .with_excluded_to(config.excluded_to);

    let ingest = ingest(config, &rules)?;
    let diag_err = |e: std::io::Error| AuditError::io("<diagnostics>", e);
    for skipped in &ingest.skipped {
        writeln!(diag, "SKIP {skipped}").map_err(diag_err)?;
    }
    for warning in &ingest.warnings {
        writeln!(diag, "WARN {warning}").map_err(diag_err)?;
    }

    let filtered = filter_records(ingest.records, config.bounds, !config.lenient);
    let summaries = aggregate_groups(&filtered.records);

    let mut outcome = RunOutcome {
        summaries,
        tally: filtered.tally,
        thresholds: filtered.thresholds,
        inputs_seen: ingest.inputs_seen,
        inputs_skipped: ingest.skipped.len(),
        repositories: ingest.repositories,
        chart_files: Vec::new(),
    };

    let report = render_report(&outcome, config.format, config.styled);
    out.write_all(report.as_bytes())
        .map_err(|e| AuditError::io("<stdout>", e))?;

    if let Some(dir) = &config.charts {
        let charts = emit_chart_data(&outcome.summaries, dir)?;
        for warning in &charts.warnings {
            writeln!(diag, "WARN {warning}").map_err(diag_err)?;
        }
        outcome.chart_files = charts.files;
    }
    if outcome.exit_code() != 0 {
        writeln!(
            diag,
            "WARN {} of {} inputs skipped",
            outcome.inputs_skipped, outcome.inputs_seen
        )
        .map_err(diag_err)?;
    }
    Ok(outcome)
}

fn filtering_rows(outcome: &RunOutcome) -> Vec<(&'static str, Option<u64>)> {
    let t = &outcome.tally;
    vec![
        ("input", Some(t.input as u64)),
        ("dropped_undefined_metric", Some(t.dropped_metrics as u64)),
        ("dropped_ncloc_outlier", Some(t.dropped_quantile as u64)),
        ("dropped_label", Some(t.dropped_label as u64)),
        ("kept", Some(t.output as u64)),
        ("ncloc_low", outcome.thresholds.map(|t| t.low)),
        ("ncloc_high", outcome.thresholds.map(|t| t.high)),
        ("repositories", outcome.repositories.map(|r| r as u64)),
        ("inputs_seen", Some(outcome.inputs_seen as u64)),
        ("inputs_skipped", Some(outcome.inputs_skipped as u64)),
    ]
}

/// The three tables followed by the filtering summary.
pub fn render_report(outcome: &RunOutcome, format: OutputFormat, styled: bool) -> String {
    let rows = filtering_rows(outcome);
    match format {
        OutputFormat::Json => {
            let mut value = tables_value(&outcome.summaries);
            let filtering: Map<String, Value> = rows
                .iter()
                .map(|(k, v)| ((*k).to_owned(), json!(v)))
                .collect();
            if let Value::Object(obj) = &mut value {
                obj.insert("filtering".into(), Value::Object(filtering));
            }
            let mut text = serde_json::to_string_pretty(&value).unwrap_or_default();
            text.push('\n');
            text
        }
        OutputFormat::Csv => {
            let mut text = render_tables_styled(&outcome.summaries, format, false);
            text.push_str("\nfiltering,value\n");
            for (key, value) in rows {
                let _ = writeln!(
                    text,
                    "{key},{}",
                    value.map(|v| v.to_string()).unwrap_or_default()
                );
            }
            text
        }
        OutputFormat::Text => {
            let mut text = render_tables_styled(&outcome.summaries, format, styled);
            text.push_str("\nFiltering\n");
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (key, value) in rows {
                let value = value.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
                let _ = writeln!(text, "{key:<width$}  {value}");
            }
            text
        }
    }
}
