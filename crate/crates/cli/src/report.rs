//! Output formats for derivative reports.

use clap::ValueEnum;
use hdiff::{DerivativeReport, Field};
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Largest deviations of the hyper-dual results from the finite-difference oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifySummary {
    pub max_rel_dev_jacobian: f64,
    pub max_rel_dev_hessian: Option<f64>,
}

/// A derivative report with every entry widened to a complex number, so
/// real and complex runs share one output schema.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub value: Complex64,
    pub jacobian: Vec<Complex64>,
    pub hessian: Option<Vec<Vec<Complex64>>>,
    pub invocations: usize,
    pub verify: Option<VerifySummary>,
}

fn widen<F: Field>(v: F) -> Complex64 {
    Complex64::new(v.re(), v.im())
}

impl Report {
    pub fn from_derivatives<F: Field>(r: &DerivativeReport<F>) -> Report {
        Report {
            value: widen(r.value),
            jacobian: r.jacobian.iter().copied().map(widen).collect(),
            hessian: r
                .hessian
                .as_ref()
                .map(|h| h.iter().map(|row| row.iter().copied().map(widen).collect()).collect()),
            invocations: r.invocations,
            verify: None,
        }
    }
}

#[derive(Serialize)]
struct JsonComplex {
    re: f64,
    im: f64,
}

impl From<&Complex64> for JsonComplex {
    fn from(z: &Complex64) -> Self {
        JsonComplex { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
struct JsonReport {
    value: JsonComplex,
    jacobian: Option<Vec<JsonComplex>>,
    hessian: Option<Vec<Vec<JsonComplex>>>,
    invocations: usize,
    verify: Option<VerifySummary>,
}

fn to_json(r: &Report) -> String {
    let doc = JsonReport {
        value: (&r.value).into(),
        jacobian: Some(r.jacobian.iter().map(Into::into).collect()),
        hessian: r
            .hessian
            .as_ref()
            .map(|h| h.iter().map(|row| row.iter().map(Into::into).collect()).collect()),
        invocations: r.invocations,
        verify: r.verify,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
    out.push('\n');
    out
}

fn num(v: f64) -> String {
    format!("{v:?}")
}

fn to_csv(r: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut row = |section: &str, j: String, k: String, re: String, im: String| {
        w.write_record([section, &j, &k, &re, &im])
            .expect("writing to memory cannot fail");
    };
    row("section", "j".into(), "k".into(), "re".into(), "im".into());
    row("value", String::new(), String::new(), num(r.value.re), num(r.value.im));
    for (j, z) in r.jacobian.iter().enumerate() {
        row("jacobian", (j + 1).to_string(), String::new(), num(z.re), num(z.im));
    }
    if let Some(h) = &r.hessian {
        for (j, line) in h.iter().enumerate() {
            for (k, z) in line.iter().enumerate() {
                row("hessian", (j + 1).to_string(), (k + 1).to_string(), num(z.re), num(z.im));
            }
        }
    }
    row("invocations", String::new(), String::new(), r.invocations.to_string(), "0".into());
    if let Some(v) = &r.verify {
        row("max_rel_dev_jacobian", String::new(), String::new(), num(v.max_rel_dev_jacobian), "0".into());
        if let Some(h) = v.max_rel_dev_hessian {
            row("max_rel_dev_hessian", String::new(), String::new(), num(h), "0".into());
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

pub fn serialize(report: &Report, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
    }
}
