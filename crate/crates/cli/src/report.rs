//! Tabular reports and their table, CSV and markdown renderings.
//!
//! Values stay unrounded until rendering. Floating-point cells print with
//! three significant figures, except that integer digits are never dropped
//! (4822 stays 4822).

use std::fmt::Write as _;
use std::str::FromStr;

use anyhow::{bail, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "markdown" => Ok(Format::Markdown),
            _ => bail!("format: unknown format `{s}` (expected table, csv or markdown)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    /// Three significant figures, integer digits kept.
    Num(f64),
    /// Fixed number of decimals, half away from zero.
    Fixed(f64, usize),
    Int(i64),
    /// Shortest exact form, for echoed inputs and published figures.
    Plain(f64),
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    pub fn opt(v: Option<f64>) -> Cell {
        v.map_or(Cell::Empty, Cell::Num)
    }

    pub fn plain_opt(v: Option<f64>) -> Cell {
        v.map_or(Cell::Empty, Cell::Plain)
    }

    fn is_numeric(&self) -> bool {
        matches!(self, Cell::Num(_) | Cell::Fixed(..) | Cell::Int(_) | Cell::Plain(_))
    }

    pub fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(v) => sig3(*v),
            Cell::Fixed(v, places) => fixed(*v, *places),
            Cell::Int(v) => v.to_string(),
            Cell::Plain(v) => plain(*v),
            Cell::Empty => String::new(),
        }
    }
}

fn round_half_away(v: f64, places: usize) -> f64 {
    let scale = 10f64.powi(places as i32);
    (v * scale).round() / scale
}

fn fixed(v: f64, places: usize) -> String {
    let r = round_half_away(v, places);
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r:.places$}")
}

/// Shortest decimal form after dropping floating-point residue.
pub fn plain(v: f64) -> String {
    let r = (v * 1e9).round() / 1e9;
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r}")
}

/// Three significant figures; values of 100 or more print as integers.
pub fn sig3(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".into();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let mut places = (2 - magnitude).max(0) as usize;
    let mut r = round_half_away(v, places);
    // 0.09996 rounds up to 0.1000; drop the extra digit
    if places > 0 && r.abs().log10().floor() as i32 > magnitude {
        places -= 1;
        r = round_half_away(v, places);
    }
    if r == 0.0 {
        r = 0.0;
    }
    format!("{r:.places$}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Report {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width in `{}`", self.title);
        self.rows.push(row);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn numeric_columns(&self) -> Vec<bool> {
        (0..self.columns.len())
            .map(|c| {
                self.rows.iter().any(|r| r[c].is_numeric())
                    && self.rows.iter().all(|r| r[c].is_numeric() || r[c] == Cell::Empty)
            })
            .collect()
    }

    fn rendered_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(Cell::render).collect())
            .collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_table(),
            Format::Csv => self.render_csv(),
            Format::Markdown => self.render_markdown(),
        }
    }

    fn render_table(&self) -> String {
        let rows = self.rendered_rows();
        let numeric = self.numeric_columns();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|c| {
                rows.iter()
                    .map(|r| r[c].chars().count())
                    .chain([self.columns[c].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String], right: &dyn Fn(usize) -> bool| {
            let parts: Vec<String> = cells
                .iter()
                .enumerate()
                .map(|(c, s)| {
                    let pad = widths[c] - s.chars().count();
                    if right(c) {
                        format!("{}{s}", " ".repeat(pad))
                    } else {
                        format!("{s}{}", " ".repeat(pad))
                    }
                })
                .collect();
            parts.join("  ").trim_end().to_string()
        };
        let mut out = String::new();
        writeln!(out, "{}", self.title).unwrap();
        writeln!(out, "{}", line(&self.columns, &|c| numeric[c])).unwrap();
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        writeln!(out, "{}", line(&rule, &|_| false)).unwrap();
        for r in &rows {
            writeln!(out, "{}", line(r, &|c| numeric[c])).unwrap();
        }
        for n in &self.notes {
            writeln!(out, "note: {n}").unwrap();
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in self.rendered_rows() {
            w.write_record(&r).expect("in-memory write");
        }
        let mut out = String::from_utf8(w.into_inner().expect("in-memory flush"))
            .expect("cells are UTF-8");
        if !self.notes.is_empty() {
            out.push('\n');
            for n in &self.notes {
                writeln!(out, "# {n}").unwrap();
            }
        }
        out
    }

    fn render_markdown(&self) -> String {
        let escape = |s: &str| s.replace('|', "\\|");
        let numeric = self.numeric_columns();
        let mut out = String::new();
        writeln!(out, "### {}", self.title).unwrap();
        writeln!(out).unwrap();
        let header: Vec<String> = self.columns.iter().map(|c| escape(c)).collect();
        writeln!(out, "| {} |", header.join(" | ")).unwrap();
        let align: Vec<&str> = numeric
            .iter()
            .map(|&n| if n { "---:" } else { "---" })
            .collect();
        writeln!(out, "| {} |", align.join(" | ")).unwrap();
        for r in self.rendered_rows() {
            let cells: Vec<String> = r.iter().map(|c| escape(c)).collect();
            writeln!(out, "| {} |", cells.join(" | ")).unwrap();
        }
        if !self.notes.is_empty() {
            writeln!(out).unwrap();
            for n in &self.notes {
                writeln!(out, "> {n}").unwrap();
            }
        }
        out
    }
}

/// Renders several reports separated by blank lines. CSV sections carry
/// their title as a `#` comment line.
pub fn render_all(reports: &[Report], format: Format) -> String {
    let parts: Vec<String> = reports
        .iter()
        .map(|r| match format {
            Format::Csv if reports.len() > 1 => format!("# {}\n{}", r.title, r.render(format)),
            _ => r.render(format),
        })
        .collect();
    parts.join("\n")
}
