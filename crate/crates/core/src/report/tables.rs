//! Size, cohesion and complexity tables.
//!
//! All three output formats are rendered from the same formatted cells, so
//! they carry identical numbers: counts as integers, everything else rounded
//! half-to-even to three decimals.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::classify::StudyGroup;
use crate::corpus::GroupSummary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Size,
    Cohesion,
    Complexity,
}

impl TableKind {
    pub const ALL: [TableKind; 3] = [TableKind::Size, TableKind::Cohesion, TableKind::Complexity];

    pub fn key(self) -> &'static str {
        match self {
            TableKind::Size => "size",
            TableKind::Cohesion => "cohesion",
            TableKind::Complexity => "complexity",
        }
    }

    fn title(self) -> &'static str {
        match self {
            TableKind::Size => "Size",
            TableKind::Cohesion => "Cohesion",
            TableKind::Complexity => "Complexity",
        }
    }

    fn columns(self) -> &'static [Column] {
        use Column::*;
        match self {
            TableKind::Size => &[Classes, Loc, LocPerClass],
            TableKind::Cohesion => &[Lcom5, Nhd],
            TableKind::Complexity => &[Cc, CoCo, ACoCo, MxCoCo, MnCoCo],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    Classes,
    Loc,
    LocPerClass,
    Lcom5,
    Nhd,
    Cc,
    CoCo,
    ACoCo,
    MxCoCo,
    MnCoCo,
}

/// Which end of a column is marked as the worst group.
enum Worst {
    None,
    Highest,
    Lowest,
}

impl Column {
    fn header(self) -> &'static str {
        match self {
            Column::Classes => "Classes",
            Column::Loc => "LoC",
            Column::LocPerClass => "L/C",
            Column::Lcom5 => "LCOM5",
            Column::Nhd => "NHD",
            Column::Cc => "CC",
            Column::CoCo => "CoCo",
            Column::ACoCo => "ACoCo",
            Column::MxCoCo => "MxCoCo",
            Column::MnCoCo => "MnCoCo",
        }
    }

    fn worst(self) -> Worst {
        match self {
            Column::Classes | Column::Loc | Column::LocPerClass => Worst::None,
            // low cohesion: high LCOM5, low NHD
            Column::Lcom5 => Worst::Highest,
            Column::Nhd => Worst::Lowest,
            _ => Worst::Highest,
        }
    }

    fn cell(self, s: &GroupSummary) -> Cell {
        let m = &s.means;
        match self {
            Column::Classes => Cell::count(s.class_count as u64),
            Column::Loc => Cell::count(s.loc_total),
            Column::LocPerClass => Cell::real(s.loc_per_class),
            Column::Lcom5 => Cell::real(m.lcom5),
            Column::Nhd => Cell::real(m.nhd),
            Column::Cc => Cell::real(m.cc),
            Column::CoCo => Cell::real(m.coco_total),
            Column::ACoCo => Cell::real(m.coco_avg),
            Column::MxCoCo => Cell::real(m.coco_max),
            Column::MnCoCo => Cell::real(m.coco_min),
        }
    }
}

/// Three-decimal rendering, ties to even on the exact binary value.
pub fn format_real(value: f64) -> String {
    let text = format!("{value:.3}");
    if text == "-0.000" {
        "0.000".to_owned()
    } else {
        text
    }
}

#[derive(Debug, Clone)]
struct Cell {
    text: String,
    json: Value,
    marked: bool,
}

impl Cell {
    fn count(n: u64) -> Self {
        Cell {
            text: n.to_string(),
            json: json!(n),
            marked: false,
        }
    }

    fn real(value: Option<f64>) -> Self {
        match value {
            Some(v) => {
                let text = format_real(v);
                let rounded: f64 = text.parse().unwrap_or(v);
                Cell {
                    text,
                    json: json!(rounded),
                    marked: false,
                }
            }
            None => Cell {
                text: "-".to_owned(),
                json: Value::Null,
                marked: false,
            },
        }
    }

    fn rounded(&self) -> Option<f64> {
        self.json.as_f64()
    }
}

struct Table {
    kind: TableKind,
    rows: Vec<(StudyGroup, Vec<Cell>)>,
}

fn build_table(kind: TableKind, summaries: &[GroupSummary]) -> Table {
    let mut rows: Vec<(StudyGroup, Vec<Cell>)> = summaries
        .iter()
        .filter(|s| s.class_count > 0)
        .map(|s| (s.group, kind.columns().iter().map(|c| c.cell(s)).collect()))
        .collect();

    for (ci, column) in kind.columns().iter().enumerate() {
        let values = rows.iter().filter_map(|(_, cells)| cells[ci].rounded());
        let extreme = match column.worst() {
            Worst::None => None,
            Worst::Highest => values.reduce(f64::max),
            Worst::Lowest => values.reduce(f64::min),
        };
        if let Some(extreme) = extreme {
            for (_, cells) in rows.iter_mut() {
                if cells[ci].rounded() == Some(extreme) {
                    cells[ci].marked = true;
                }
            }
        }
    }
    Table { kind, rows }
}

const UNDERLINE: &str = "\x1b[4m";
const RESET: &str = "\x1b[0m";

fn render_text(table: &Table, styled: bool, out: &mut String) {
    let columns = table.kind.columns();
    let group_width = table
        .rows
        .iter()
        .map(|(g, _)| g.as_str().len())
        .chain(["group".len()])
        .max()
        .unwrap_or(5);
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(ci, c)| {
            table
                .rows
                .iter()
                .map(|(_, cells)| cells[ci].text.len())
                .chain([c.header().len()])
                .max()
                .unwrap_or(0)
        })
        .collect();

    let _ = writeln!(out, "{}", table.kind.title());
    let mut line = format!("{:<group_width$}", "group");
    for (column, width) in columns.iter().zip(&widths) {
        let _ = write!(line, "  {:>width$} ", column.header());
    }
    let _ = writeln!(out, "{}", line.trim_end());

    for (group, cells) in &table.rows {
        let mut line = format!("{:<group_width$}", group.as_str());
        for (cell, width) in cells.iter().zip(&widths) {
            let pad = width - cell.text.len();
            let mark = if cell.marked { "*" } else { " " };
            let value = if styled && cell.marked {
                format!("{UNDERLINE}{}{RESET}", cell.text)
            } else {
                cell.text.clone()
            };
            let _ = write!(line, "  {:pad$}{value}{mark}", "");
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
}

fn render_csv(table: &Table, out: &mut String) {
    let mut header = vec![table.kind.key()];
    header.extend(table.kind.columns().iter().map(|c| c.header()));
    let _ = writeln!(out, "{}", header.join(","));
    for (group, cells) in &table.rows {
        let mut row = vec![group.as_str().to_owned()];
        row.extend(cells.iter().map(|c| {
            if c.json.is_null() {
                String::new()
            } else {
                c.text.clone()
            }
        }));
        let _ = writeln!(out, "{}", row.join(","));
    }
}

fn table_json(table: &Table) -> Value {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|(group, cells)| {
            let mut row = Map::new();
            row.insert("group".into(), json!(group.as_str()));
            let mut marked = Vec::new();
            for (column, cell) in table.kind.columns().iter().zip(cells) {
                row.insert(column.header().into(), cell.json.clone());
                if cell.marked {
                    marked.push(json!(column.header()));
                }
            }
            if table.kind != TableKind::Size {
                row.insert("worst".into(), Value::Array(marked));
            }
            Value::Object(row)
        })
        .collect();
    Value::Array(rows)
}

/// Renders the three tables. Groups without classes get no row; in text
/// output the worst value of each cohesion and complexity column carries a
/// trailing `*` (all of them on a tie).
pub fn render_tables(summaries: &[GroupSummary], format: OutputFormat) -> String {
    render_tables_styled(summaries, format, false)
}

/// [`render_tables`], underlining marked cells in text output when `styled`.
pub fn render_tables_styled(
    summaries: &[GroupSummary],
    format: OutputFormat,
    styled: bool,
) -> String {
    let tables: Vec<Table> = TableKind::ALL
        .iter()
        .map(|&kind| build_table(kind, summaries))
        .collect();
    let mut out = String::new();
    match format {
        OutputFormat::Text | OutputFormat::Csv => {
            for (i, table) in tables.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                if format == OutputFormat::Text {
                    render_text(table, styled, &mut out);
                } else {
                    render_csv(table, &mut out);
                }
            }
        }
        OutputFormat::Json => {
            let value = tables_json(&tables);
            out = serde_json::to_string_pretty(&value).unwrap_or_default();
            out.push('\n');
        }
    }
    out
}

fn tables_json(tables: &[Table]) -> Value {
    let mut obj = Map::new();
    for table in tables {
        obj.insert(table.kind.key().into(), table_json(table));
    }
    Value::Object(obj)
}

/// Tables as a JSON object keyed by table name, for embedding in a larger
/// document.
pub(crate) fn tables_value(summaries: &[GroupSummary]) -> Value {
    let tables: Vec<Table> = TableKind::ALL
        .iter()
        .map(|&kind| build_table(kind, summaries))
        .collect();
    tables_json(&tables)
}
