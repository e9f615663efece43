use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

/// Provenance written at the top of every CSV artifact.
#[derive(Clone, Debug)]
pub struct Provenance {
    pub scenario: String,
    pub seed: u64,
}

/// Twelve significant digits.
pub fn float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.11e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

pub enum Cell {
    F(f64),
    I(u64),
    S(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::F(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::I(v as u64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::I(v as u64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::S(v.to_string())
    }
}

pub struct Csv {
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Csv {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, prov: &Provenance) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "#scenario={}", prov.scenario);
        let _ = writeln!(s, "#seed={}", prov.seed);
        let _ = writeln!(s, "#version={} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"));
        s.push_str(&self.header.join(","));
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::F(v) => float(*v),
                    Cell::I(v) => v.to_string(),
                    Cell::S(v) => v.clone(),
                })
                .collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

/// Destination of the artifacts of one task: `<dir>/<prefix>_<index>_<task>.{csv,json}`.
pub struct Sink {
    pub dir: PathBuf,
    pub prefix: String,
}

impl Sink {
    fn path(&self, index: usize, task: &str, ext: &str) -> PathBuf {
        self.dir.join(format!("{}_{index:02}_{task}.{ext}", self.prefix))
    }

    fn write(path: &Path, body: &str) -> Result<()> {
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
        }
        fs::write(path, body).with_context(|| format!("writing {}", path.display()))
    }

    pub fn csv(&self, index: usize, task: &str, csv: &Csv, prov: &Provenance) -> Result<PathBuf> {
        let path = self.path(index, task, "csv");
        Self::write(&path, &csv.render(prov))?;
        Ok(path)
    }

    pub fn json<S: Serialize>(&self, index: usize, task: &str, value: &S) -> Result<PathBuf> {
        let path = self.path(index, task, "json");
        let mut body = serde_json::to_string_pretty(value)?;
        body.push('\n');
        Self::write(&path, &body)?;
        Ok(path)
    }
}
