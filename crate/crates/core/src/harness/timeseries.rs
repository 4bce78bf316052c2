//! CSV time series, one row per diagnostics sample, 17 significant digits.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::diagnostics::DiagnosticsRecord;
use crate::{Error, Result};

pub fn header() -> String {
    DiagnosticsRecord::COLUMNS.join(",")
}

pub fn format_row(rec: &DiagnosticsRecord) -> String {
    let vals = rec.values();
    let mut s = String::with_capacity(vals.len() * 24);
    for (i, v) in vals.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&format!("{v:.16e}"));
    }
    s
}

fn parse_row(line: &str) -> Option<DiagnosticsRecord> {
    let v: Vec<f64> = line.split(',').map(|f| f.trim().parse().ok()).collect::<Option<_>>()?;
    if v.len() != DiagnosticsRecord::COLUMNS.len() {
        return None;
    }
    let mut r = DiagnosticsRecord {
        t: v[0],
        l2_norm: v[1],
        h1_norm: v[2],
        h2_norm: v[3],
        h3_norm: v[4],
        h_minus_alpha_norm: v[5],
        h_minus2_norm: v[6],
        energy: v[7],
        div_plus_sup: v[8],
        div_sup: v[9],
        proj_div_plus_sup: v[10],
        curl_sup: v[11],
        n_alpha: v[12],
        n_u: v[13],
        budget_cutoff: v[14],
        running_int_div_plus: v[15],
        running_int_proj_div_plus: v[16],
        running_int_n_alpha_4: v[17],
        mean_u: [v[18], v[19]],
        fluct_h1_norm: v[20],
        time_avg_energy: v[28],
        trilinear_ratio: v[29],
        ..Default::default()
    };
    let b = &mut r.energy_budget;
    b.dissipation = v[21];
    b.destabilizing = v[22];
    b.transport = v[23];
    b.i_a = v[24];
    b.i_b = v[25];
    b.i_c = v[26];
    b.ii = v[27];
    Some(r)
}

/// Appends rows to a time-series file.
pub struct TimeSeriesWriter {
    out: BufWriter<File>,
}

impl TimeSeriesWriter {
    /// Creates (truncating) `path` and writes the header.
    pub fn create(path: &Path) -> Result<Self> {
        let mut out = BufWriter::new(File::create(path)?);
        writeln!(out, "{}", header())?;
        Ok(TimeSeriesWriter { out })
    }

    /// Reopens `path` keeping the header and the rows with `t ≤ t_keep + tol`.
    /// Returns the writer and the last kept record.
    pub fn resume(path: &Path, t_keep: f64, tol: f64) -> Result<(Self, DiagnosticsRecord)> {
        let bad = |message: String| Error::TimeSeries {
            path: path.to_path_buf(),
            message,
        };
        let text = fs::read_to_string(path)?;
        let mut lines = text.lines();
        if lines.next() != Some(header().as_str()) {
            return Err(bad("header does not match this version's columns".into()));
        }
        let mut kept = vec![header()];
        let mut last = None;
        for (i, line) in lines.enumerate() {
            let rec = parse_row(line).ok_or_else(|| bad(format!("malformed row {}", i + 2)))?;
            if rec.t > t_keep + tol {
                break;
            }
            kept.push(line.to_string());
            last = Some(rec);
        }
        let last = match last {
            Some(r) if (r.t - t_keep).abs() <= tol => r,
            _ => return Err(bad(format!("no sample at t = {t_keep} to resume from"))),
        };
        let mut out = BufWriter::new(File::create(path)?);
        for line in kept {
            writeln!(out, "{line}")?;
        }
        Ok((TimeSeriesWriter { out }, last))
    }

    pub fn append(&mut self, rec: &DiagnosticsRecord) -> Result<()> {
        writeln!(self.out, "{}", format_row(rec))?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}

/// Reads every row of a time-series file.
pub fn read_timeseries(path: &Path) -> Result<Vec<DiagnosticsRecord>> {
    let bad = |message: String| Error::TimeSeries {
        path: PathBuf::from(path),
        message,
    };
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    if lines.next() != Some(header().as_str()) {
        return Err(bad("header does not match this version's columns".into()));
    }
    lines
        .enumerate()
        .map(|(i, l)| parse_row(l).ok_or_else(|| bad(format!("malformed row {}", i + 2))))
        .collect()
}
