//! Report assembly and serialisation.
//!
//! Reports are deterministic: identical configuration and datasets produce
//! byte-identical files for any worker count. Volatile fields (wall-clock
//! timings, generation timestamp) are emitted only with `--timing`, and the
//! content hash always covers the data section alone, never `#` header lines.

use std::io::Write;

use sha2::{Digest, Sha256};

use friable_core::{Error, Result};

use crate::config::ReportFormat;

pub const SCHEMA: &str = "friable.report.v1";

/// A finished experiment report: fixed column schema plus formatted rows.
#[derive(Debug, Clone)]
pub struct EstimateReport {
    pub experiment: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub seed: u64,
    /// Wall-clock per row, only populated under `--timing`.
    pub elapsed_ms: Vec<Option<f64>>,
}

impl EstimateReport {
    pub fn new(experiment: &'static str, columns: Vec<&'static str>, seed: u64) -> Self {
        EstimateReport {
            experiment,
            columns,
            rows: Vec::new(),
            seed,
            elapsed_ms: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<String>, elapsed: Option<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
        self.elapsed_ms.push(elapsed);
    }

    /// The CSV data section (header line plus rows, no comments).
    fn csv_body(&self) -> String {
        let mut body = String::new();
        body.push_str(&self.columns.join(","));
        body.push_str(",elapsed_ms\n");
        for (row, ms) in self.rows.iter().zip(&self.elapsed_ms) {
            body.push_str(&row.join(","));
            body.push(',');
            if let Some(ms) = ms {
                body.push_str(&format!("{ms:.3}"));
            }
            body.push('\n');
        }
        body
    }

    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.csv_body().as_bytes());
        format!("sha256:{:x}", hasher.finalize())
    }

    pub fn write(&self, out: &mut dyn Write, format: ReportFormat, timestamp: Option<&str>) -> Result<()> {
        let io = |e: std::io::Error| Error::Domain(format!("write failed: {e}"));
        match format {
            ReportFormat::Csv => {
                writeln!(out, "# schema={SCHEMA}").map_err(io)?;
                writeln!(out, "# experiment={}", self.experiment).map_err(io)?;
                writeln!(out, "# seed={}", self.seed).map_err(io)?;
                writeln!(out, "# content_hash={}", self.content_hash()).map_err(io)?;
                if let Some(ts) = timestamp {
                    writeln!(out, "# generated_at={ts}").map_err(io)?;
                }
                out.write_all(self.csv_body().as_bytes()).map_err(io)?;
            }
            ReportFormat::Jsonl => {
                let meta = serde_json::json!({
                    "schema": SCHEMA,
                    "experiment": self.experiment,
                    "seed": self.seed,
                    "content_hash": self.content_hash(),
                    "generated_at": timestamp,
                });
                writeln!(out, "{meta}").map_err(io)?;
                for (row, ms) in self.rows.iter().zip(&self.elapsed_ms) {
                    let mut obj = serde_json::Map::new();
                    for (col, cell) in self.columns.iter().zip(row) {
                        obj.insert((*col).to_string(), cell_to_json(cell));
                    }
                    obj.insert(
                        "elapsed_ms".into(),
                        ms.map(serde_json::Value::from).unwrap_or(serde_json::Value::Null),
                    );
                    writeln!(out, "{}", serde_json::Value::Object(obj)).map_err(io)?;
                }
            }
        }
        Ok(())
    }
}

/// Cells are kept as canonical strings; JSONL re-types the numeric ones.
fn cell_to_json(cell: &str) -> serde_json::Value {
    if cell.is_empty() {
        return serde_json::Value::Null;
    }
    if let Ok(u) = cell.parse::<u64>() {
        return serde_json::Value::from(u);
    }
    if let Ok(f) = cell.parse::<f64>() {
        if let Some(n) = serde_json::Number::from_f64(f) {
            return serde_json::Value::Number(n);
        }
    }
    serde_json::Value::from(cell)
}

/// Shortest-roundtrip float cell.
pub fn cell_f(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        String::new()
    }
}

pub fn cell_u(v: u64) -> String {
    v.to_string()
}

/// Relative error `(est − exact)/exact`, empty when no exact value exists.
pub fn cell_rel(est: f64, exact: Option<f64>) -> String {
    match exact {
        Some(e) if e != 0.0 => cell_f((est - e) / e),
        _ => String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> EstimateReport {
        let mut r = EstimateReport::new("count", vec!["x", "y", "exact"], 7);
        r.push_row(vec!["100".into(), "3".into(), "20".into()], None);
        r
    }

    #[test]
    fn csv_layout_and_hash_stability() {
        let r = sample();
        let mut buf = Vec::new();
        r.write(&mut buf, ReportFormat::Csv, None).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("# schema=friable.report.v1"));
        assert!(text.contains("x,y,exact,elapsed_ms"));
        assert!(text.contains("100,3,20,"));
        // hash is invariant under the timestamp header
        let mut buf2 = Vec::new();
        r.write(&mut buf2, ReportFormat::Csv, Some("2000-01-01T00:00:00Z"))
            .unwrap();
        let t2 = String::from_utf8(buf2).unwrap();
        let hash = |s: &str| {
            s.lines()
                .find(|l| l.starts_with("# content_hash="))
                .unwrap()
                .to_string()
        };
        assert_eq!(hash(&text), hash(&t2));
        assert!(t2.contains("# generated_at=2000-01-01"));
    }

    #[test]
    fn jsonl_types_cells() {
        let r = sample();
        let mut buf = Vec::new();
        r.write(&mut buf, ReportFormat::Jsonl, None).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        let row: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
        assert_eq!(row["x"], 100);
        assert_eq!(row["exact"], 20);
    }

    #[test]
    fn rel_error_cells() {
        assert_eq!(cell_rel(110.0, Some(100.0)), "0.1");
        assert_eq!(cell_rel(1.0, None), "");
    }
}
