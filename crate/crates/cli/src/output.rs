//! Sampled polylines and verification reports in JSON or CSV.

use std::collections::BTreeMap;
use std::io::Write;

use helixkit_core::{Error, Helix, Tolerances, VerificationReport};
use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, RunConfig};

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub family: String,
    pub params: BTreeMap<String, Value>,
    pub metric: String,
}

impl Meta {
    pub fn new(cfg: &RunConfig) -> Self {
        let params = cfg
            .params
            .iter()
            .map(|(k, v)| {
                let value = match v.parse::<f64>() {
                    Ok(x) => Value::from(x),
                    Err(_) => Value::from(v.as_str()),
                };
                (k.to_string(), value)
            })
            .collect();
        Self {
            family: cfg.family.name().to_string(),
            params,
            metric: cfg.spec.metric().name().to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Sample {
    pub s: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub kappa: Option<f64>,
    pub tau: Option<f64>,
    pub axis_len: Option<f64>,
    pub angle: Option<f64>,
}

/// Undefined quantities (no Frenet frame, vanishing axis) become `None`.
fn defined(r: helixkit_core::Result<f64>) -> helixkit_core::Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::GeodesicPoint { .. } | Error::ZeroVector) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn sample(helix: &Helix, n: usize) -> helixkit_core::Result<Vec<Sample>> {
    let curve = &helix.curve;
    curve
        .sample_params(n)?
        .into_iter()
        .map(|s| {
            let p = curve.point(s)?;
            let frame = match curve.frenet(s) {
                Ok(f) => Some((f.kappa, f.tau)),
                Err(Error::GeodesicPoint { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(Sample {
                s,
                x: p.x,
                y: p.y,
                z: p.z,
                kappa: frame.map(|f| f.0),
                tau: frame.map(|f| f.1),
                axis_len: defined(helix.axis.length_along(curve, s))?,
                angle: defined(helix.axis.angle_with_curve(curve, s))?,
            })
        })
        .collect()
}

#[derive(Serialize)]
struct Polyline<'a> {
    meta: &'a Meta,
    samples: &'a [Sample],
}

#[derive(Serialize)]
struct Report<'a> {
    meta: &'a Meta,
    passed: bool,
    tolerances: &'a Tolerances,
    checks: &'a [helixkit_core::Check],
}

#[derive(Serialize)]
struct CheckRow<'a> {
    name: &'a str,
    target: Option<&'a str>,
    residual: f64,
    tolerance: Option<f64>,
    verdict: String,
}

pub fn write_polyline<W: Write>(
    w: W,
    format: Format,
    meta: &Meta,
    samples: &[Sample],
) -> std::io::Result<()> {
    match format {
        Format::Json => write_json(w, &Polyline { meta, samples }),
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            for s in samples {
                out.serialize(s)?;
            }
            out.flush()
        }
    }
}

pub fn write_report<W: Write>(
    w: W,
    format: Format,
    meta: &Meta,
    tolerances: &Tolerances,
    report: &VerificationReport,
) -> std::io::Result<()> {
    match format {
        Format::Json => write_json(
            w,
            &Report {
                meta,
                passed: report.passed(),
                tolerances,
                checks: &report.checks,
            },
        ),
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            for c in &report.checks {
                out.serialize(CheckRow {
                    name: c.name,
                    target: c.target.as_deref(),
                    residual: c.residual,
                    tolerance: c.tolerance,
                    verdict: c.verdict.to_string(),
                })?;
            }
            out.flush()
        }
    }
}

fn write_json<W: Write, T: Serialize>(mut w: W, value: &T) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)
}
