//! Bar charts of the per-group means, as SVG plus the CSV they were drawn
//! from.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::classify::StudyGroup;
use crate::corpus::{GroupSummary, MetricMeans};
use crate::error::{AuditError, Result};

use super::tables::format_real;

struct ChartSpec {
    stem: &'static str,
    metric: &'static str,
    title: &'static str,
    pick: fn(&MetricMeans) -> Option<f64>,
}

const CHARTS: [ChartSpec; 4] = [
    ChartSpec {
        stem: "lcom5",
        metric: "LCOM5",
        title: "Average LCOM5 per class group",
        pick: |m| m.lcom5,
    },
    ChartSpec {
        stem: "nhd",
        metric: "NHD",
        title: "Average NHD per class group",
        pick: |m| m.nhd,
    },
    ChartSpec {
        stem: "coco",
        metric: "CoCo",
        title: "Average cognitive complexity per class group",
        pick: |m| m.coco_total,
    },
    ChartSpec {
        stem: "cc",
        metric: "CC",
        title: "Average cyclomatic complexity per class group",
        pick: |m| m.cc,
    },
];

#[derive(Debug, Default)]
pub struct ChartReport {
    pub files: Vec<PathBuf>,
    pub warnings: Vec<String>,
}

/// One bar per study group; `None` for a group with no value.
pub type Bar = (StudyGroup, Option<f64>);

/// Rounds the value the same way the tables print it.
fn displayed(value: Option<f64>) -> Option<f64> {
    value.and_then(|v| format_real(v).parse().ok())
}

fn bars(summaries: &[GroupSummary], pick: fn(&MetricMeans) -> Option<f64>) -> Vec<Bar> {
    StudyGroup::ALL
        .iter()
        .map(|&group| {
            let value = summaries
                .iter()
                .find(|s| s.group == group && s.class_count > 0)
                .and_then(|s| displayed(pick(&s.means)));
            (group, value)
        })
        .collect()
}

/// Smallest 1, 2, 2.5 or 5 times a power of ten that is at least `max`.
fn nice_ceiling(max: f64) -> f64 {
    if max <= 0.0 || !max.is_finite() {
        return 1.0;
    }
    let magnitude = 10f64.powf(max.log10().floor());
    for step in [1.0, 2.0, 2.5, 5.0, 10.0] {
        let candidate = step * magnitude;
        if candidate >= max * (1.0 - 1e-12) {
            return candidate;
        }
    }
    10.0 * magnitude
}

fn coord(v: f64) -> String {
    let text = format!("{v:.3}");
    let text = text.trim_end_matches('0').trim_end_matches('.');
    if text == "-0" {
        "0".to_owned()
    } else {
        text.to_owned()
    }
}

fn tick_label(v: f64) -> String {
    let text = format!("{v:.4}");
    text.trim_end_matches('0').trim_end_matches('.').to_owned()
}

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 320.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 456.0;
const TOP: f64 = 44.0;
const BASELINE: f64 = 270.0;
const BAR_WIDTH: f64 = 72.0;
const TICKS: usize = 5;
const FILL: [&str; 3] = ["#c44e52", "#4c72b0", "#8c8c8c"];

/// Draws a linear bar chart whose y axis starts at zero. Bar heights are
/// proportional to the values.
pub fn render_bar_chart(title: &str, metric: &str, bars: &[Bar]) -> String {
    let top_value = nice_ceiling(bars.iter().filter_map(|b| b.1).fold(0.0, f64::max));
    let plot_height = BASELINE - TOP;
    let y_of = |v: f64| BASELINE - plot_height * v / top_value;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
        w = WIDTH,
        h = HEIGHT
    );
    let _ = writeln!(svg, "  <title>{title}</title>");
    let _ = writeln!(
        svg,
        r#"  <rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"  <text x="{}" y="24" text-anchor="middle" font-size="14">{title}</text>"#,
        coord(WIDTH / 2.0)
    );

    for i in 0..=TICKS {
        let value = top_value * i as f64 / TICKS as f64;
        let y = coord(y_of(value));
        if i > 0 {
            let _ = writeln!(
                svg,
                r##"  <line x1="{LEFT}" y1="{y}" x2="{RIGHT}" y2="{y}" stroke="#e0e0e0"/>"##
            );
        }
        let _ = writeln!(
            svg,
            r#"  <line x1="{}" y1="{y}" x2="{LEFT}" y2="{y}" stroke="black"/>"#,
            LEFT - 5.0
        );
        let _ = writeln!(
            svg,
            r#"  <text class="tick" x="{}" y="{}" text-anchor="end">{}</text>"#,
            LEFT - 8.0,
            coord(y_of(value) + 4.0),
            tick_label(value)
        );
    }
    let _ = writeln!(
        svg,
        r#"  <line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{BASELINE}" stroke="black"/>"#
    );
    let _ = writeln!(
        svg,
        r#"  <line x1="{LEFT}" y1="{BASELINE}" x2="{RIGHT}" y2="{BASELINE}" stroke="black"/>"#
    );
    let mid = coord((TOP + BASELINE) / 2.0);
    let _ = writeln!(
        svg,
        r#"  <text x="18" y="{mid}" transform="rotate(-90 18 {mid})" text-anchor="middle">{metric}</text>"#
    );

    let slot = (RIGHT - LEFT) / bars.len().max(1) as f64;
    for (i, (group, value)) in bars.iter().enumerate() {
        let center = LEFT + slot * (i as f64 + 0.5);
        if let Some(v) = value {
            let y = y_of(*v);
            let _ = writeln!(
                svg,
                r#"  <rect class="bar" data-group="{group}" data-value="{}" x="{}" y="{}" width="{BAR_WIDTH}" height="{}" fill="{}"/>"#,
                format_real(*v),
                coord(center - BAR_WIDTH / 2.0),
                coord(y),
                coord(BASELINE - y),
                FILL[i % FILL.len()]
            );
            let _ = writeln!(
                svg,
                r#"  <text x="{}" y="{}" text-anchor="middle">{}</text>"#,
                coord(center),
                coord(y - 6.0),
                format_real(*v)
            );
        }
        let _ = writeln!(
            svg,
            r#"  <text x="{}" y="{}" text-anchor="middle">{group}</text>"#,
            coord(center),
            coord(BASELINE + 18.0)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn chart_csv(metric: &str, bars: &[Bar]) -> String {
    let mut out = format!("group,{metric}\n");
    for (group, value) in bars {
        let cell = value.map(format_real).unwrap_or_default();
        let _ = writeln!(out, "{group},{cell}");
    }
    out
}

/// Writes `lcom5`, `nhd`, `coco` and `cc` charts (`.svg` and `.csv`) into
/// `dir`, creating it if needed. Writes nothing, with a warning, when no
/// group has any class.
pub fn emit_chart_data(summaries: &[GroupSummary], dir: &Path) -> Result<ChartReport> {
    let mut report = ChartReport::default();
    if summaries.iter().all(|s| s.class_count == 0) {
        report
            .warnings
            .push("no classes survived filtering; charts not written".to_owned());
        return Ok(report);
    }
    std::fs::create_dir_all(dir).map_err(|e| AuditError::io(dir, e))?;
    for spec in &CHARTS {
        let bars = bars(summaries, spec.pick);
        for (group, value) in &bars {
            if value.is_none() {
                report
                    .warnings
                    .push(format!("{}: no {group} value; bar omitted", spec.stem));
            }
        }
        let outputs = [
            ("svg", render_bar_chart(spec.title, spec.metric, &bars)),
            ("csv", chart_csv(spec.metric, &bars)),
        ];
        for (ext, content) in outputs {
            let path = dir.join(format!("{}.{ext}", spec.stem));
            std::fs::write(&path, content).map_err(|e| AuditError::io(&path, e))?;
            report.files.push(path);
        }
    }
    Ok(report)
}
