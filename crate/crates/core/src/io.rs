//! File formats: sample CSV, OBJ polylines, gnuplot data, JSON reports,
//! plus the small parsers used by the command line.

use std::io::{Read, Write};
use std::path::Path;

use crate::curve::{CurveSample, Generator, SampleParameter, SampledCurve};
use crate::frame::{FrenetFrame, Vec3};
use crate::verify::VerificationReport;
use crate::{Error, Result};

pub const CSV_COLUMNS: [&str; 17] =
    ["s", "t", "theta", "x", "y", "z", "Tx", "Ty", "Tz", "Nx", "Ny", "Nz", "Bx", "By", "Bz", "kappa", "tau"];

/// 17 significant digits: enough for an exact f64 round trip.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

pub fn write_csv<W: Write>(curve: &SampledCurve, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CSV_COLUMNS)?;
    for s in &curve.samples {
        let mut row = vec![num(s.s), opt(s.t), opt(s.theta)];
        row.extend(s.position.iter().map(|v| num(*v)));
        match s.frame {
            Some(f) => row.extend([f.t, f.n, f.b].iter().flat_map(|v| v.iter().map(|c| num(*c)))),
            None => row.extend(std::iter::repeat_n(String::new(), 9)),
        }
        row.push(num(s.kappa));
        row.push(num(s.tau));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn field(record: &csv::StringRecord, i: usize, line: usize) -> Result<Option<f64>> {
    let raw = record.get(i).unwrap_or("").trim();
    if raw.is_empty() {
        return Ok(None);
    }
    raw.parse::<f64>()
        .map(Some)
        .map_err(|_| Error::Parse(format!("line {line}: column {} is not a number: {raw:?}", CSV_COLUMNS[i])))
}

/// Reads a curve written by [`write_csv`]. The sampling parameter is the
/// first of s, t, θ in which the samples are uniform.
pub fn read_csv<R: Read>(reader: R) -> Result<SampledCurve> {
    let mut r = csv::Reader::from_reader(reader);
    let headers = r.headers()?.clone();
    if headers.iter().map(str::trim).ne(CSV_COLUMNS.iter().copied()) {
        return Err(Error::Parse(format!("expected columns {}", CSV_COLUMNS.join(","))));
    }
    let mut samples = Vec::new();
    for (k, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = k + 2;
        let v: Vec<Option<f64>> = (0..CSV_COLUMNS.len()).map(|i| field(&rec, i, line)).collect::<Result<_>>()?;
        let req = |i: usize| v[i].ok_or_else(|| Error::Parse(format!("line {line}: column {} is empty", CSV_COLUMNS[i])));
        let vec = |i: usize| -> Option<Vec3> { Some(Vec3::new(v[i]?, v[i + 1]?, v[i + 2]?)) };
        let frame = match (vec(6), vec(9), vec(12)) {
            (Some(t), Some(n), Some(b)) => Some(FrenetFrame::new(t, n, b)),
            _ => None,
        };
        samples.push(CurveSample {
            s: req(0)?,
            t: v[1],
            theta: v[2],
            position: Vec3::new(req(3)?, req(4)?, req(5)?),
            frame,
            kappa: v[15].unwrap_or(f64::NAN),
            tau: v[16].unwrap_or(f64::NAN),
        });
    }
    let direction = match (samples.first().and_then(|s| s.theta), samples.last().and_then(|s| s.theta)) {
        (Some(a), Some(b)) if b < a => -1.0,
        _ => 1.0,
    };
    let mut curve =
        SampledCurve::new(None, None, samples, Generator::Imported, SampleParameter::ArcLength, direction)?;
    for p in [SampleParameter::ArcLength, SampleParameter::Slant, SampleParameter::Theta] {
        curve.parameter = p;
        if curve.uniform_spacing().is_ok() {
            return Ok(curve);
        }
    }
    curve.parameter = SampleParameter::ArcLength;
    Ok(curve)
}

pub fn read_csv_path(path: impl AsRef<Path>) -> Result<SampledCurve> {
    read_csv(std::fs::File::open(path)?)
}

pub fn write_obj<W: Write>(curve: &SampledCurve, name: &str, mut w: W) -> Result<()> {
    writeln!(w, "o {name}")?;
    for p in curve.positions() {
        writeln!(w, "v {} {} {}", num(p.x), num(p.y), num(p.z))?;
    }
    if curve.len() > 1 {
        let idx: Vec<String> = (1..=curve.len()).map(|i| i.to_string()).collect();
        writeln!(w, "l {}", idx.join(" "))?;
    }
    Ok(())
}

/// x y z columns, one blank line between curves.
pub fn write_dat<W: Write>(curves: &[&SampledCurve], mut w: W) -> Result<()> {
    for (k, c) in curves.iter().enumerate() {
        if k > 0 {
            writeln!(w)?;
        }
        for p in c.positions() {
            writeln!(w, "{} {} {}", num(p.x), num(p.y), num(p.z))?;
        }
    }
    Ok(())
}

pub fn write_reports<W: Write>(reports: &[VerificationReport], w: W) -> Result<()> {
    serde_json::to_writer_pretty(w, reports)?;
    Ok(())
}

/// `p/q` parsed exactly as two integers then divided once, or a decimal.
pub fn parse_number(text: &str) -> Result<f64> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a number or rational: {text:?}"));
    let v = match text.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            p as f64 / q as f64
        }
        None => text.parse::<f64>().map_err(|_| bad())?,
    };
    if !v.is_finite() {
        return Err(bad());
    }
    Ok(v)
}

/// `a:b:count` with count >= 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        crate::synthesis::linspace(self.start, self.end, self.count)
    }
}

impl std::str::FromStr for GridSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let [a, b, c] = parts[..] else {
            return Err(Error::Parse(format!("grid must be start:end:count, got {text:?}")));
        };
        let start = parse_number(a)?;
        let end = parse_number(b)?;
        let count: usize = c.trim().parse().map_err(|_| Error::Parse(format!("bad sample count {c:?}")))?;
        if count < 2 {
            return Err(Error::invalid(format!("grid needs at least 2 samples, got {count}")));
        }
        if !(end > start) {
            return Err(Error::invalid(format!("grid end {end} must exceed start {start}")));
        }
        Ok(GridSpec { start, end, count })
    }
}

/// `key = value` lines as command-line flags; `key = true` becomes a bare
/// flag and `key = false` is dropped. `#` starts a comment.
pub fn config_args(text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", i + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(Error::Parse(format!("config line {}: empty key", i + 1)));
        }
        match v {
            "true" => out.push(format!("--{k}")),
            "false" => {}
            _ => {
                out.push(format!("--{k}"));
                out.push(v.to_string());
            }
        }
    }
    Ok(out)
}
