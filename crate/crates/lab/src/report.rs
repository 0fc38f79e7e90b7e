//! JSON reports and CSV plot data written by each demo.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// A closed-form expression evaluated directly.
    ClosedForm,
    /// An independent numerical route (quadrature, dense eigensolver, ...).
    Oracle,
    /// An algebraic identity that must hold exactly up to roundoff.
    Identity,
    /// A qualitative reference outcome (a verdict, a count, an error).
    Reference,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub observed: Value,
    pub tol: f64,
    pub provenance: Provenance,
    pub pass: bool,
}

impl Check {
    /// `|observed - expected| <= tol`.
    pub fn within(name: impl Into<String>, expected: f64, observed: f64, tol: f64, provenance: Provenance) -> Self {
        Self {
            name: name.into(),
            expected: expected.into(),
            observed: observed.into(),
            tol,
            pass: (observed - expected).abs() <= tol,
            provenance,
        }
    }

    /// `observed <= bound`, recorded as expected `"<= bound"`.
    pub fn at_most(name: impl Into<String>, observed: f64, bound: f64, provenance: Provenance) -> Self {
        Self {
            name: name.into(),
            expected: format!("<= {bound:e}").into(),
            observed: observed.into(),
            tol: bound,
            pass: observed <= bound,
            provenance,
        }
    }

    /// `observed > bound`, recorded as expected `"> bound"`.
    pub fn above(name: impl Into<String>, observed: f64, bound: f64, provenance: Provenance) -> Self {
        Self {
            name: name.into(),
            expected: format!("> {bound:e}").into(),
            observed: observed.into(),
            tol: bound,
            pass: observed > bound,
            provenance,
        }
    }

    /// `lo <= observed <= hi`; `tol` records the half-width of the band.
    pub fn in_range(name: impl Into<String>, observed: f64, lo: f64, hi: f64, provenance: Provenance) -> Self {
        Self {
            name: name.into(),
            expected: format!("[{lo:e}, {hi:e}]").into(),
            observed: observed.into(),
            tol: (hi - lo) / 2.0,
            pass: (lo..=hi).contains(&observed),
            provenance,
        }
    }

    /// Exact equality of two serializable values.
    pub fn equals<T: Serialize + PartialEq>(
        name: impl Into<String>,
        expected: T,
        observed: T,
        provenance: Provenance,
    ) -> Self {
        Self {
            name: name.into(),
            pass: expected == observed,
            expected: to_value(&expected),
            observed: to_value(&observed),
            tol: 0.0,
            provenance,
        }
    }

    /// A boolean property that must hold.
    pub fn holds(name: impl Into<String>, observed: bool, provenance: Provenance) -> Self {
        Self::equals(name, true, observed, provenance)
    }
}

pub(crate) fn to_value<T: Serialize + ?Sized>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemoReport {
    pub demo: String,
    pub params: BTreeMap<String, Value>,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub duration_ms: u64,
}

impl DemoReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the duration zeroed, for determinism comparisons.
    pub fn canonical_json(&self) -> String {
        DemoReport { duration_ms: 0, ..self.clone() }.to_json()
    }
}

/// One plot series, written as a CSV file.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvSeries {
    pub file_name: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvSeries {
    pub fn new(file_name: impl Into<String>, header: &[&'static str]) -> Self {
        Self { file_name: file_name.into(), header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_to(&self, dir: &Path) -> Result<PathBuf, csv::Error> {
        let path = dir.join(&self.file_name);
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| v.to_string()))?;
        }
        w.flush()?;
        Ok(path)
    }
}

/// Write `<demo>.json` into `dir`, creating it if needed.
pub fn write_report(report: &DemoReport, dir: &Path) -> std::io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}.json", report.demo));
    fs::write(&path, report.to_json() + "\n")?;
    Ok(path)
}
