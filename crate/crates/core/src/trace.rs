//! Per-iteration convergence records shared by every solver.
//!
//! The CSV schema is fixed:
//! `iter,time_s,f,grad_norm,eta,step_norm,mu_t,train_err,test_err`.
//! All columns except `time_s` are deterministic functions of the
//! configuration and seed; the error columns are empty unless a run computes
//! classification metrics.

use std::fmt::Write as _;
use std::io::BufRead;
use std::path::Path;

use crate::{Error, Result};

pub const CSV_HEADER: &str = "iter,time_s,f,grad_norm,eta,step_norm,mu_t,train_err,test_err";

/// One recorded iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub iter: usize,
    pub time_s: f64,
    pub f: f64,
    pub grad_norm: f64,
    pub eta: f64,
    pub step_norm: f64,
    pub mu: f64,
    pub train_err: Option<f64>,
    pub test_err: Option<f64>,
    /// Stage index for multi-stage runs; not part of the CSV schema.
    pub stage: Option<usize>,
}

impl TraceRow {
    pub fn new(iter: usize, f: f64, grad_norm: f64) -> Self {
        Self {
            iter,
            time_s: 0.0,
            f,
            grad_norm,
            eta: 0.0,
            step_norm: 0.0,
            mu: 0.0,
            train_err: None,
            test_err: None,
            stage: None,
        }
    }
}

/// An ordered sequence of [`TraceRow`]s for one solver run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IterateTrace {
    pub rows: Vec<TraceRow>,
    /// Label used in comparison reports (solver id, usually).
    pub label: String,
}

impl IterateTrace {
    pub fn new(label: &str) -> Self {
        Self {
            rows: Vec::new(),
            label: label.to_string(),
        }
    }

    pub fn push(&mut self, row: TraceRow) {
        debug_assert!(
            self.rows.last().map_or(true, |last| last.iter < row.iter),
            "trace rows must be ordered by iteration"
        );
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn last(&self) -> Option<&TraceRow> {
        self.rows.last()
    }

    /// Best (lowest) objective value seen in the trace.
    pub fn best_f(&self) -> f64 {
        self.rows.iter().map(|r| r.f).fold(f64::INFINITY, f64::min)
    }

    /// First row index whose objective is at most `threshold`, along with
    /// its iteration number and elapsed time.
    pub fn first_below(&self, threshold: f64) -> Option<&TraceRow> {
        self.rows.iter().find(|r| r.f <= threshold)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = write!(
                out,
                "{},{},{},{},{},{},{}",
                r.iter, r.time_s, r.f, r.grad_norm, r.eta, r.step_norm, r.mu
            );
            match r.train_err {
                Some(v) => {
                    let _ = write!(out, ",{v}");
                }
                None => out.push(','),
            }
            match r.test_err {
                Some(v) => {
                    let _ = write!(out, ",{v}");
                }
                None => out.push(','),
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    /// Parses a CSV trace written by [`IterateTrace::to_csv`]. The header
    /// must match [`CSV_HEADER`] exactly.
    pub fn read_csv<R: BufRead>(reader: R, label: &str) -> Result<Self> {
        let mut lines = reader.lines();
        let header = lines
            .next()
            .transpose()?
            .ok_or_else(|| Error::TraceFormat("empty trace file".into()))?;
        if header.trim_end() != CSV_HEADER {
            return Err(Error::TraceFormat(format!(
                "unexpected header `{header}`; expected `{CSV_HEADER}`"
            )));
        }
        let mut trace = IterateTrace::new(label);
        for (lineno, line) in lines.enumerate() {
            let lineno = lineno + 2;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 9 {
                return Err(Error::parse(lineno, "expected 9 comma-separated fields"));
            }
            let num = |s: &str, what: &str| -> Result<f64> {
                s.parse()
                    .map_err(|_| Error::parse(lineno, format!("bad {what} `{s}`")))
            };
            let opt = |s: &str, what: &str| -> Result<Option<f64>> {
                if s.is_empty() {
                    Ok(None)
                } else {
                    num(s, what).map(Some)
                }
            };
            trace.rows.push(TraceRow {
                iter: fields[0]
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad iter `{}`", fields[0])))?,
                time_s: num(fields[1], "time_s")?,
                f: num(fields[2], "f")?,
                grad_norm: num(fields[3], "grad_norm")?,
                eta: num(fields[4], "eta")?,
                step_norm: num(fields[5], "step_norm")?,
                mu: num(fields[6], "mu_t")?,
                train_err: opt(fields[7], "train_err")?,
                test_err: opt(fields[8], "test_err")?,
                stage: None,
            });
        }
        Ok(trace)
    }

    pub fn read_csv_file(path: &Path) -> Result<Self> {
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let file = std::fs::File::open(path)?;
        Self::read_csv(std::io::BufReader::new(file), &label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_trace() -> IterateTrace {
        let mut t = IterateTrace::new("demo");
        for i in 0..3 {
            let mut row = TraceRow::new(i, 10.0 / (i + 1) as f64, 1e-3);
            row.eta = 0.5;
            row.mu = 0.25;
            row.time_s = 0.001 * i as f64;
            if i == 2 {
                row.train_err = Some(0.125);
            }
            t.push(row);
        }
        t
    }

    #[test]
    fn csv_round_trip_preserves_rows() {
        let t = sample_trace();
        let text = t.to_csv();
        assert!(text.starts_with(CSV_HEADER));
        let parsed = IterateTrace::read_csv(std::io::Cursor::new(text), "demo").unwrap();
        assert_eq!(parsed.rows, t.rows);
    }

    #[test]
    fn header_mismatch_is_a_format_error() {
        let bad = "iter,f\n0,1\n";
        let err = IterateTrace::read_csv(std::io::Cursor::new(bad), "x").unwrap_err();
        assert!(matches!(err, Error::TraceFormat(_)));
    }

    #[test]
    fn first_below_finds_threshold_crossing() {
        let t = sample_trace();
        assert_eq!(t.first_below(5.0).unwrap().iter, 1);
        assert!(t.first_below(0.1).is_none());
        assert_eq!(t.best_f(), 10.0 / 3.0);
    }
}
