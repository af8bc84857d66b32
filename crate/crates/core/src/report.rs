//! CSV and JSON renderings of entropy reports, written atomically.

use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::entropy::EntropyReport;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 6] = ["n", "t", "a_n", "slot_count", "slope_diff", "tower_bound"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Input(format!("unknown report format `{s}`; use csv or json"))),
        }
    }
}

/// One `(n, t)` cell, with floats already rounded to six decimals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub n: usize,
    pub t: f64,
    pub a_n: Option<f64>,
    pub slot_count: usize,
    pub slope_diff: Option<f64>,
    pub tower_bound: Option<f64>,
}

fn fixed(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn rounded(x: f64) -> f64 {
    fixed(x).parse().expect("formatted float parses")
}

pub fn rows(report: &EntropyReport) -> Vec<ReportRow> {
    let mut out = Vec::new();
    for it in &report.iterates {
        for (k, &t) in report.grid.iter().enumerate() {
            out.push(ReportRow {
                n: it.n,
                t: rounded(t),
                a_n: report.a(it.n, k).map(rounded),
                slot_count: it.slot_count(),
                slope_diff: report.slope_diff(it.n, k).map(rounded),
                tower_bound: report.tower_bound(it.n, k).map(|b| rounded(b.sum)),
            });
        }
    }
    out
}

pub fn to_csv(rows: &[ReportRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let cell = |x: Option<f64>| x.map(fixed).unwrap_or_default();
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.n.to_string(),
            fixed(r.t),
            cell(r.a_n),
            r.slot_count.to_string(),
            cell(r.slope_diff),
            cell(r.tower_bound),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn to_json(rows: &[ReportRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

pub fn from_csv(text: &str) -> Result<Vec<ReportRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r
        .headers()
        .map_err(|e| Error::Input(e.to_string()))?
        .iter()
        .map(String::from)
        .collect();
    if header != CSV_HEADER {
        return Err(Error::Input(format!("unexpected report header {header:?}")));
    }
    let bad = |e: &dyn std::fmt::Display| Error::Input(format!("malformed report: {e}"));
    let opt = |s: &str| -> Result<Option<f64>> {
        if s.is_empty() {
            Ok(None)
        } else {
            s.parse().map(Some).map_err(|e| bad(&e))
        }
    };
    r.records()
        .map(|rec| {
            let rec = rec.map_err(|e| bad(&e))?;
            Ok(ReportRow {
                n: rec[0].parse().map_err(|e| bad(&e))?,
                t: rec[1].parse().map_err(|e| bad(&e))?,
                a_n: opt(&rec[2])?,
                slot_count: rec[3].parse().map_err(|e| bad(&e))?,
                slope_diff: opt(&rec[4])?,
                tower_bound: opt(&rec[5])?,
            })
        })
        .collect()
}

pub fn render(rows: &[ReportRow], format: Format) -> String {
    match format {
        Format::Csv => to_csv(rows),
        Format::Json => to_json(rows),
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub fn emit_report(report: &EntropyReport, path: &Path, format: Format) -> Result<()> {
    write_atomic(path, &render(&rows(report), format))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(n: usize, t: f64) -> ReportRow {
        ReportRow {
            n,
            t,
            a_n: Some(0.125),
            slot_count: 2,
            slope_diff: (n > 0).then_some(-0.5),
            tower_bound: None,
        }
    }

    #[test]
    fn header_only_and_single_row() {
        assert_eq!(to_csv(&[]), "n,t,a_n,slot_count,slope_diff,tower_bound\n");
        assert_eq!(
            to_csv(&[row(0, -0.25)]),
            "n,t,a_n,slot_count,slope_diff,tower_bound\n0,-0.250000,0.125000,2,,\n"
        );
    }

    #[test]
    fn csv_and_json_agree() {
        let rs = vec![row(0, -1.0), row(1, 0.0), row(2, 0.5)];
        let back = from_csv(&to_csv(&rs)).unwrap();
        let json: Vec<ReportRow> = serde_json::from_str(&to_json(&rs)).unwrap();
        assert_eq!(back, rs);
        assert_eq!(json, rs);
    }

    #[test]
    fn negative_zero_is_printed_plainly() {
        assert_eq!(fixed(-1e-12), "0.000000");
        assert_eq!(rounded(-1e-12), 0.0);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.csv");
        write_atomic(&p, "a").unwrap();
        write_atomic(&p, "b").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "b");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
        assert!(write_atomic(&dir.path().join("missing/r.csv"), "x").is_err());
    }
}
