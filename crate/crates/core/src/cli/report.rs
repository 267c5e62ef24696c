//! Report records and their JSON, CSV and text renderings. Numbers are
//! always written with 17 significant digits so reruns are byte-identical.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::value::RawValue;

use crate::error::{Error, Result};

pub const PASS: &str = "pass";
pub const FAIL: &str = "fail";

/// One evaluated point and one check on it.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    pub d: f64,
    pub alpha: f64,
    pub beta: Option<f64>,
    pub m2: f64,
    pub big_m2: Option<f64>,
    pub k: Option<f64>,
    pub delta: Option<f64>,
    pub xi: Option<f64>,
    pub scheme: String,
    pub check: String,
    pub value: Option<f64>,
    pub err: Option<f64>,
    pub dimreg: Option<f64>,
    pub oracle: Option<f64>,
    pub gap: Option<f64>,
    pub residual_rel: Option<f64>,
    pub verdict: String,
    pub message: Option<String>,
}

impl Record {
    pub fn is_pass(&self) -> bool {
        self.verdict == PASS
    }

    pub fn is_fail(&self) -> bool {
        self.verdict == FAIL
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub max_residual: f64,
}

impl Summary {
    pub fn of(records: &[Record]) -> Self {
        let pass = records.iter().filter(|r| r.is_pass()).count();
        let fail = records.iter().filter(|r| r.is_fail()).count();
        let max_residual = records
            .iter()
            .filter_map(|r| r.residual_rel)
            .filter(|r| r.is_finite())
            .fold(0.0, f64::max);
        Summary {
            pass,
            fail,
            skipped: records.len() - pass - fail,
            max_residual,
        }
    }
}

/// Ordered `key = value` pairs echoing the run configuration.
pub type ConfigEcho = Vec<(String, String)>;

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub config: ConfigEcho,
    pub records: Vec<Record>,
}

impl Report {
    pub fn summary(&self) -> Summary {
        Summary::of(&self.records)
    }
}

pub(crate) fn io_err(msg: impl ToString) -> Error {
    Error::Io(std::io::Error::other(msg.to_string()))
}

pub fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".into()
    }
}

fn raw(x: f64) -> Box<RawValue> {
    RawValue::from_string(fmt_num(x)).expect("formatted float is valid JSON")
}

fn raw_opt(x: Option<f64>) -> Option<Box<RawValue>> {
    x.map(raw)
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    d: Box<RawValue>,
    alpha: Box<RawValue>,
    beta: Option<Box<RawValue>>,
    m2: Box<RawValue>,
    #[serde(rename = "M2")]
    big_m2: Option<Box<RawValue>>,
    #[serde(rename = "K")]
    k: Option<Box<RawValue>>,
    delta: Option<Box<RawValue>>,
    xi: Option<Box<RawValue>>,
    scheme: &'a str,
    check: &'a str,
    value: Option<Box<RawValue>>,
    err: Option<Box<RawValue>>,
    dimreg: Option<Box<RawValue>>,
    oracle: Option<Box<RawValue>>,
    gap: Option<Box<RawValue>>,
    residual_rel: Option<Box<RawValue>>,
    verdict: &'a str,
    message: Option<&'a str>,
}

#[derive(Serialize)]
struct JsonSummary {
    pass: usize,
    fail: usize,
    skipped: usize,
    max_residual: Box<RawValue>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    config: serde_json::Map<String, serde_json::Value>,
    records: Vec<JsonRecord<'a>>,
    summary: JsonSummary,
}

pub fn to_json(report: &Report) -> Result<String> {
    let config = report
        .config
        .iter()
        .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
        .collect();
    let records = report
        .records
        .iter()
        .map(|r| JsonRecord {
            d: raw(r.d),
            alpha: raw(r.alpha),
            beta: raw_opt(r.beta),
            m2: raw(r.m2),
            big_m2: raw_opt(r.big_m2),
            k: raw_opt(r.k),
            delta: raw_opt(r.delta),
            xi: raw_opt(r.xi),
            scheme: &r.scheme,
            check: &r.check,
            value: raw_opt(r.value),
            err: raw_opt(r.err),
            dimreg: raw_opt(r.dimreg),
            oracle: raw_opt(r.oracle),
            gap: raw_opt(r.gap),
            residual_rel: raw_opt(r.residual_rel),
            verdict: &r.verdict,
            message: r.message.as_deref(),
        })
        .collect();
    let s = report.summary();
    let out = JsonReport {
        config,
        records,
        summary: JsonSummary {
            pass: s.pass,
            fail: s.fail,
            skipped: s.skipped,
            max_residual: raw(s.max_residual),
        },
    };
    let mut text = serde_json::to_string_pretty(&out).map_err(|e| io_err(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

pub const CSV_COLUMNS: [&str; 17] = [
    "d", "alpha", "beta", "m2", "M2", "K", "delta", "xi", "scheme", "check", "value", "err", "dimreg",
    "oracle", "gap", "residual_rel", "verdict",
];

pub fn to_csv(report: &Report) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| io_err(e.to_string());
    w.write_record(CSV_COLUMNS).map_err(io)?;
    let opt = |x: Option<f64>| x.map(fmt_num).unwrap_or_default();
    for r in &report.records {
        w.write_record([
            fmt_num(r.d),
            fmt_num(r.alpha),
            opt(r.beta),
            fmt_num(r.m2),
            opt(r.big_m2),
            opt(r.k),
            opt(r.delta),
            opt(r.xi),
            r.scheme.clone(),
            r.check.clone(),
            opt(r.value),
            opt(r.err),
            opt(r.dimreg),
            opt(r.oracle),
            opt(r.gap),
            opt(r.residual_rel),
            r.verdict.clone(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| io_err(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| io_err(e.to_string()))
}

pub fn to_text(report: &Report) -> String {
    let mut out = String::new();
    for (k, v) in &report.config {
        let _ = writeln!(out, "# {k} = {v}");
    }
    let opt = |x: Option<f64>| x.map(fmt_num).unwrap_or_else(|| "-".into());
    for r in &report.records {
        let _ = write!(
            out,
            "{:<8} {} {:<20} d={} alpha={} m2={}",
            r.verdict,
            r.scheme,
            r.check,
            fmt_num(r.d),
            fmt_num(r.alpha),
            fmt_num(r.m2)
        );
        for (name, x) in [("beta", r.beta), ("M2", r.big_m2), ("K", r.k), ("delta", r.delta), ("xi", r.xi)] {
            if let Some(x) = x {
                let _ = write!(out, " {name}={}", fmt_num(x));
            }
        }
        let _ = write!(
            out,
            " value={} dimreg={} oracle={} residual={}",
            opt(r.value),
            opt(r.dimreg),
            opt(r.oracle),
            opt(r.residual_rel)
        );
        if let Some(m) = &r.message {
            let _ = write!(out, " ({m})");
        }
        out.push('\n');
    }
    let s = report.summary();
    let _ = writeln!(
        out,
        "# summary: {} pass, {} fail, {} skipped, max residual {}",
        s.pass,
        s.fail,
        s.skipped,
        fmt_num(s.max_residual)
    );
    out
}
