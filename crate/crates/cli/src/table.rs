//! Row-oriented datasets and their CSV / JSON encodings.

use std::io::Write;

use serde_json::{Map, Value};

use qimem::constants::{BOLTZMANN, HBAR, PLANCK, SPEED_OF_LIGHT};

use crate::config::{Format, SweepConfig};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Flag(bool),
    /// Not computed at this row; the status column says why.
    Missing,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        if x.is_finite() {
            Cell::Num(x)
        } else {
            Cell::Missing
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Missing, Cell::from)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Flag(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

/// Scientific notation with 10 significant digits and a signed two-digit
/// exponent, e.g. `1.669648552e+00`.
pub fn sci(x: f64) -> String {
    let s = format!("{x:.9e}");
    let (mant, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mant}e{sign}{:02}", exp.abs())
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => sci(*x),
            Cell::Int(x) => x.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
            Cell::Missing => String::new(),
        }
    }

    /// Numbers are rounded to the same 10 digits as the CSV so both encodings
    /// carry identical values.
    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => {
                let rounded: f64 = sci(*x).parse().expect("round-trips");
                serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
            }
            Cell::Int(x) => Value::from(*x),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Flag(b) => Value::from(*b),
            Cell::Missing => Value::Null,
        }
    }
}

/// Ordered columns and rows, plus a free-form summary.
#[derive(Debug, Clone, Default)]
pub struct Dataset {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Map<String, Value>,
}

impl Dataset {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, ..Default::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, cfg: &SweepConfig, mut out: W) -> Result<(), CliError> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect();
                Value::Object(obj)
            })
            .collect();
        let doc = serde_json::json!({
            "metadata": metadata(cfg),
            "summary": Value::Object(self.summary.clone()),
            "rows": rows,
        });
        serde_json::to_writer_pretty(&mut out, &doc).map_err(|e| CliError::Output(e.to_string()))?;
        out.write_all(b"\n")?;
        Ok(())
    }

    pub fn write<W: Write>(&self, cfg: &SweepConfig, format: Format, out: W) -> Result<(), CliError> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(cfg, out),
        }
    }
}

/// Tool version, seed, constants and the resolved configuration.
pub fn metadata(cfg: &SweepConfig) -> Value {
    serde_json::json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "mode": cfg.mode.name(),
        "seed": cfg.fixed.seed,
        "constants": {
            "planck_j_s": PLANCK,
            "hbar_j_s": HBAR,
            "boltzmann_j_per_k": BOLTZMANN,
            "speed_of_light_m_per_s": SPEED_OF_LIGHT,
        },
        "config": cfg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sci_format() {
        assert_eq!(sci(1.669648552334287), "1.669648552e+00");
        assert_eq!(sci(8.550583445021955e-7), "8.550583445e-07");
        assert_eq!(sci(-21502.14254742723), "-2.150214255e+04");
        assert_eq!(sci(0.0), "0.000000000e+00");
        assert_eq!(sci(1e100), "1.000000000e+100");
    }

    #[test]
    fn non_finite_becomes_missing() {
        assert_eq!(Cell::from(f64::NAN), Cell::Missing);
        assert_eq!(Cell::from(f64::INFINITY), Cell::Missing);
        assert_eq!(Cell::from(None::<f64>), Cell::Missing);
    }

    #[test]
    fn csv_layout() {
        let mut d = Dataset::new(vec!["x", "flag", "status"]);
        d.push(vec![0.5.into(), true.into(), "ok".into()]);
        d.push(vec![Cell::Missing, false.into(), "unstable".into()]);
        let mut buf = Vec::new();
        d.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "x,flag,status\n5.000000000e-01,true,ok\n,false,unstable\n"
        );
    }
}
