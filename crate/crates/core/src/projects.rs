//! Published HVDC submarine project records and the implied cable cost per
//! km once converter stations are netted out.

use std::collections::HashSet;
use std::io::{Read, Write};

use crate::error::{Error, Result};

/// Bundled records for NorNed, SAPEI, BritNed, NorGer and NordBalt.
pub const BUNDLED_PROJECTS_CSV: &str = include_str!("../data/projects.csv");

pub const COLUMNS: [&str; 9] = [
    "name",
    "voltage_kv",
    "capacity_mw",
    "length_km",
    "max_depth_m",
    "total_cost_meur",
    "cost_range_frac",
    "known_cable_cost_meur",
    "converter_count",
];

/// A point cost or a symmetric range `center * (1 ± frac)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CostEstimate {
    Point(f64),
    Range { center: f64, frac: f64 },
}

impl CostEstimate {
    pub fn center(&self) -> f64 {
        match *self {
            CostEstimate::Point(v) => v,
            CostEstimate::Range { center, .. } => center,
        }
    }

    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            CostEstimate::Point(v) => (v, v),
            CostEstimate::Range { center, frac } => (center * (1.0 - frac), center * (1.0 + frac)),
        }
    }
}

/// Cost per km, kept as a range when the input cost was a range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CostPerKm {
    Point(f64),
    Range(f64, f64),
}

impl CostPerKm {
    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            CostPerKm::Point(v) => (v, v),
            CostPerKm::Range(lo, hi) => (lo, hi),
        }
    }

    fn map(self, f: impl Fn(f64) -> f64) -> Self {
        match self {
            CostPerKm::Point(v) => CostPerKm::Point(f(v)),
            CostPerKm::Range(lo, hi) => CostPerKm::Range(f(lo), f(hi)),
        }
    }

    /// Half-away-from-zero rounding to `places` decimals.
    pub fn rounded(self, places: i32) -> Self {
        self.map(|v| round_to(v, places))
    }
}

pub fn round_to(v: f64, places: i32) -> f64 {
    let scale = 10f64.powi(places);
    (v * scale).round() / scale
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectRecord {
    pub name: String,
    /// DC-side voltage as published, e.g. `±450` or `450-500`.
    pub voltage_kv: String,
    pub capacity_mw: f64,
    pub length_km: f64,
    /// `None` when the depth is not published.
    pub max_depth_m: Option<f64>,
    pub total_cost: CostEstimate,
    pub known_cable_cost: Option<f64>,
    pub converter_count: u32,
}

impl ProjectRecord {
    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(Error::invalid("name", "must not be empty"));
        }
        if !(self.capacity_mw.is_finite() && self.capacity_mw > 0.0) {
            return Err(Error::invalid("capacity_mw", "must be > 0"));
        }
        if !(self.length_km.is_finite() && self.length_km > 0.0) {
            return Err(Error::invalid("length_km", "must be > 0"));
        }
        let center = self.total_cost.center();
        if !(center.is_finite() && center > 0.0) {
            return Err(Error::invalid("total_cost_meur", "must be > 0"));
        }
        if let CostEstimate::Range { frac, .. } = self.total_cost {
            if !(0.0..1.0).contains(&frac) {
                return Err(Error::invalid("cost_range_frac", "must be in [0, 1)"));
            }
        }
        if let Some(c) = self.known_cable_cost {
            if !(c.is_finite() && c > 0.0) {
                return Err(Error::invalid("known_cable_cost_meur", "must be > 0"));
            }
        }
        if let Some(d) = self.max_depth_m {
            if !(d.is_finite() && d >= 0.0) {
                return Err(Error::invalid("max_depth_m", "must be >= 0"));
            }
        }
        Ok(())
    }

    /// Cable-only cost per km in M€/km, netting `converter_cost` M€ per
    /// converter out of the total unless the cable cost is published.
    pub fn implied_cable_cost_per_km(&self, converter_cost: f64) -> Result<CostPerKm> {
        implied_cable_cost_per_km(self, converter_cost)
    }
}

pub fn implied_cable_cost_per_km(record: &ProjectRecord, converter_cost: f64) -> Result<CostPerKm> {
    if let Some(cable) = record.known_cable_cost {
        return Ok(CostPerKm::Point(cable / record.length_km));
    }
    let converters = f64::from(record.converter_count) * converter_cost;
    let net = |total: f64| -> Result<f64> {
        let cable = total - converters;
        if cable <= 0.0 {
            return Err(Error::invalid(
                "converter_cost",
                format!(
                    "{}: converters ({converters} M€) absorb the whole project cost ({total} M€)",
                    record.name
                ),
            ));
        }
        Ok(cable / record.length_km)
    };
    match record.total_cost {
        CostEstimate::Point(total) => Ok(CostPerKm::Point(net(total)?)),
        range @ CostEstimate::Range { .. } => {
            let (lo, hi) = range.bounds();
            Ok(CostPerKm::Range(net(lo)?, net(hi)?))
        }
    }
}

pub fn bundled_projects() -> Vec<ProjectRecord> {
    load_project_records(BUNDLED_PROJECTS_CSV.as_bytes()).expect("bundled dataset is valid")
}

/// Parses project records from CSV. Errors carry the 1-based line number.
pub fn load_project_records<R: Read>(reader: R) -> Result<Vec<ProjectRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Csv {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    let mut index = [0usize; COLUMNS.len()];
    for (slot, col) in index.iter_mut().zip(COLUMNS) {
        *slot = headers
            .iter()
            .position(|h| h == col)
            .ok_or_else(|| Error::MissingColumn(col.to_string()))?;
    }
    if let Some(extra) = headers.iter().find(|h| !COLUMNS.contains(h)) {
        return Err(Error::Csv {
            line: 1,
            message: format!("unknown column `{extra}`"),
        });
    }

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| Error::Csv {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let field = |i: usize| row.get(index[i]).unwrap_or("");
        let fail = |col: &str, msg: String| Error::Csv {
            line,
            message: format!("{col}: {msg}"),
        };
        let number = |i: usize| -> Result<Option<f64>> {
            let raw = field(i);
            if raw.is_empty() {
                return Ok(None);
            }
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(Some)
                .ok_or_else(|| fail(COLUMNS[i], format!("invalid number `{raw}`")))
        };
        let required = |i: usize| -> Result<f64> {
            number(i)?.ok_or_else(|| fail(COLUMNS[i], "required value is empty".into()))
        };

        let name = field(0).to_string();
        let total = required(5)?;
        let total_cost = match number(6)? {
            Some(frac) => CostEstimate::Range {
                center: total,
                frac,
            },
            None => CostEstimate::Point(total),
        };
        let converter_count = {
            let raw = field(8);
            raw.parse::<u32>()
                .map_err(|_| fail(COLUMNS[8], format!("invalid count `{raw}`")))?
        };
        let record = ProjectRecord {
            name: name.clone(),
            voltage_kv: field(1).to_string(),
            capacity_mw: required(2)?,
            length_km: required(3)?,
            max_depth_m: number(4)?,
            total_cost,
            known_cable_cost: number(7)?,
            converter_count,
        };
        record.validate().map_err(|e| Error::Csv {
            line,
            message: e.to_string(),
        })?;
        if !seen.insert(name.clone()) {
            return Err(Error::DuplicateName(name));
        }
        out.push(record);
    }
    Ok(out)
}

/// Writes records in the same layout [`load_project_records`] reads.
pub fn write_project_records<W: Write>(records: &[ProjectRecord], writer: W) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    let io = |e: csv::Error| Error::Io(e.to_string());
    wtr.write_record(COLUMNS).map_err(io)?;
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in records {
        let (total, frac) = match r.total_cost {
            CostEstimate::Point(v) => (v, None),
            CostEstimate::Range { center, frac } => (center, Some(frac)),
        };
        wtr.write_record([
            r.name.clone(),
            r.voltage_kv.clone(),
            r.capacity_mw.to_string(),
            r.length_km.to_string(),
            opt(r.max_depth_m),
            total.to_string(),
            opt(frac),
            opt(r.known_cable_cost),
            r.converter_count.to_string(),
        ])
        .map_err(io)?;
    }
    wtr.flush().map_err(|e| Error::Io(e.to_string()))
}
