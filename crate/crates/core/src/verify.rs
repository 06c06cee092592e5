//! Verification predicates and the per-family report battery.

use std::fmt;

use serde::Serialize;

use crate::curve::{Curve, Interval};
use crate::error::{Error, Result};
use crate::helices::{ClosedFormKT, Family, Helix};
use crate::killing::KillingField;
use crate::surfaces::{catalog_surface, containment_residual, geodesic_residual};

/// Closed forms smaller than this are compared absolutely.
const ZERO_REFERENCE: f64 = 1e-12;

/// Pass/fail thresholds of the named checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub containment: f64,
    pub unit_speed: f64,
    pub length_const: f64,
    pub angle_const: f64,
    pub kt_match_rel: f64,
    pub kt_match_abs: f64,
    pub geodesic: f64,
    pub lancret_ratio: f64,
    pub axis_identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            containment: 1e-9,
            unit_speed: 1e-8,
            length_const: 1e-8,
            angle_const: 1e-8,
            kt_match_rel: 1e-5,
            kt_match_abs: 1e-8,
            geodesic: 1e-5,
            lancret_ratio: 1e-5,
            axis_identity: 1e-5,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 9] = [
        "containment",
        "unit_speed",
        "length_const",
        "angle_const",
        "kt_match_rel",
        "kt_match_abs",
        "geodesic",
        "lancret_ratio",
        "axis_identity",
    ];

    /// Overrides one tolerance by name. Returns `false` for unknown names.
    pub fn set(&mut self, name: &str, value: f64) -> bool {
        let slot = match name {
            "containment" => &mut self.containment,
            "unit_speed" => &mut self.unit_speed,
            "length_const" => &mut self.length_const,
            "angle_const" => &mut self.angle_const,
            "kt_match_rel" => &mut self.kt_match_rel,
            "kt_match_abs" => &mut self.kt_match_abs,
            "geodesic" => &mut self.geodesic,
            "lancret_ratio" => &mut self.lancret_ratio,
            "axis_identity" => &mut self.axis_identity,
            _ => return false,
        };
        *slot = value;
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The curve is a geodesic of the ambient space; frame-based checks do
    /// not apply.
    GeodesicOfAmbient,
    /// Reported without a pass/fail claim.
    Info,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::GeodesicOfAmbient => "geodesic-of-ambient",
            Verdict::Info => "info",
        })
    }
}

/// One named residual with its verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// Field or surface the residual refers to, if any.
    pub target: Option<String>,
    pub residual: f64,
    pub tolerance: Option<f64>,
    pub verdict: Verdict,
}

impl Check {
    fn judged(name: &'static str, target: Option<String>, residual: f64, tolerance: f64) -> Self {
        let verdict = if residual <= tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self {
            name,
            target,
            residual,
            tolerance: Some(tolerance),
            verdict,
        }
    }

    fn info(name: &'static str, target: Option<String>, residual: f64) -> Self {
        Self {
            name,
            target,
            residual,
            tolerance: None,
            verdict: Verdict::Info,
        }
    }
}

/// Named residuals of a verification run.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// First check with the given name.
    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn residual(&self, name: &str) -> Option<f64> {
        self.get(name).map(|c| c.residual)
    }

    /// No check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }
}

fn spread(values: &[f64]) -> f64 {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    hi - lo
}

/// Constancy of `|field|` and of the angle between the curve and `field`.
pub fn general_helix_report(
    curve: &Curve,
    field: &KillingField,
    expected_theta: Option<f64>,
    samples: usize,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    let params = curve.sample_params(samples)?;
    let lengths = params
        .iter()
        .map(|&s| field.length_along(curve, s))
        .collect::<Result<Vec<_>>>()?;
    let angles = params
        .iter()
        .map(|&s| field.angle_with_curve(curve, s))
        .collect::<Result<Vec<_>>>()?;
    let angle_residual = match expected_theta {
        Some(theta) => angles
            .iter()
            .fold(0.0_f64, |acc, a| acc.max((a - theta).abs())),
        None => spread(&angles),
    };
    let target = Some(field.name.to_string());
    let mut report = VerificationReport::default();
    report.push(Check::judged(
        "unit_speed_max",
        None,
        curve.unit_speed_residual(samples)?,
        tol.unit_speed,
    ));
    report.push(Check::judged(
        "length_const_max",
        target.clone(),
        spread(&lengths),
        tol.length_const,
    ));
    report.push(Check::judged(
        "angle_const_max",
        target,
        angle_residual,
        tol.angle_const,
    ));
    Ok(report)
}

/// Sampled curvature and torsion from the Frenet apparatus.
pub fn sampled_kt(curve: &Curve, samples: usize) -> Result<Vec<(f64, f64, f64)>> {
    curve
        .sample_params(samples)?
        .into_iter()
        .map(|s| curve.frenet(s).map(|f| (s, f.kappa, f.tau)))
        .collect()
}

/// Spread of `τ/κ` over `s_range`: `(max − min)/|mean|`, or the absolute
/// spread when the mean ratio vanishes. Also reports the spreads of `κ` and
/// `τ` and the ratio `max κ / min κ`.
pub fn lancret_report(
    curve: &Curve,
    samples: usize,
    s_range: Interval,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    let sub = curve.restricted(s_range)?;
    let kt = sampled_kt(&sub, samples)?;
    let kappas: Vec<f64> = kt.iter().map(|v| v.1).collect();
    let taus: Vec<f64> = kt.iter().map(|v| v.2).collect();
    let ratios: Vec<f64> = kt.iter().map(|v| v.2 / v.1).collect();
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let ratio_spread = if mean.abs() > ZERO_REFERENCE {
        spread(&ratios) / mean.abs()
    } else {
        spread(&ratios)
    };
    let k_min = kappas.iter().cloned().fold(f64::INFINITY, f64::min);
    let k_max = kappas.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut report = VerificationReport::default();
    report.push(Check::judged(
        "lancret_ratio_spread",
        None,
        ratio_spread,
        tol.lancret_ratio,
    ));
    report.push(Check::info("kappa_spread", None, spread(&kappas)));
    report.push(Check::info("tau_spread", None, spread(&taus)));
    report.push(Check::info("kappa_max_over_min", None, k_max / k_min));
    Ok(report)
}

/// Largest deviation of the Frenet curvature and torsion from closed forms:
/// `(relative, absolute)`, the absolute part over vanishing references.
pub fn kt_match(
    curve: &Curve,
    closed: &ClosedFormKT,
    samples: usize,
) -> Result<(f64, Option<f64>)> {
    let mut rel = 0.0_f64;
    let mut abs: Option<f64> = None;
    for (s, kappa, tau) in sampled_kt(curve, samples)? {
        for (got, want) in [(kappa, closed.kappa(s)?), (tau, closed.tau(s)?)] {
            if want.abs() > ZERO_REFERENCE {
                rel = rel.max((got - want).abs() / want.abs());
            } else {
                abs = Some(abs.unwrap_or(0.0).max((got - want).abs()));
            }
        }
    }
    Ok((rel, abs))
}

/// Compares `cos θ T + σ sin θ B` with the unit axis `field/|field|` for
/// both signs `σ` of the binormal, returning the better `(residual, σ)`.
/// The residual is the largest metric norm of the difference.
pub fn axis_identity(
    curve: &Curve,
    field: &KillingField,
    theta: f64,
    samples: usize,
) -> Result<(f64, f64)> {
    let metric = curve.metric();
    let (st, ct) = theta.sin_cos();
    let mut worst = [0.0_f64; 2];
    for s in curve.sample_params(samples)? {
        let f = curve.frenet(s)?;
        let p = curve.point(s)?;
        let unit = field.unit_at(p)?;
        for (k, sign) in [1.0, -1.0].into_iter().enumerate() {
            let d = f.t * ct + f.b * (sign * st) - unit;
            worst[k] = worst[k].max(metric.norm(p, d)?);
        }
    }
    Ok(if worst[0] <= worst[1] {
        (worst[0], 1.0)
    } else {
        (worst[1], -1.0)
    })
}

/// Options of [`run_battery`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatteryOptions {
    pub samples: usize,
    /// Judge the Lancret ratio for constant-angle curves (informational
    /// otherwise).
    pub demand_lancret: bool,
}

impl Default for BatteryOptions {
    fn default() -> Self {
        Self {
            samples: 50,
            demand_lancret: false,
        }
    }
}

/// Runs every check that applies to the generated curve.
pub fn run_battery(
    helix: &Helix,
    opts: BatteryOptions,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    let curve = &helix.curve;
    let n = opts.samples;
    let mn = helix.spec.family() == Family::ConstantAngleMn;
    let mut report = VerificationReport::default();

    report.push(Check::judged(
        "unit_speed_max",
        None,
        curve.unit_speed_residual(n)?,
        tol.unit_speed,
    ));

    for claim in &helix.surfaces {
        let surface = catalog_surface(claim.surface);
        let target = Some(surface.name());
        let containment = containment_residual(curve, &surface, n)?;
        report.push(Check::judged(
            "containment_max",
            target.clone(),
            containment,
            tol.containment,
        ));
        if claim.geodesic && containment <= tol.containment {
            let g = geodesic_residual(curve, &surface, n, tol.containment)?;
            if g.ambient_geodesic {
                report.push(Check {
                    name: "geodesic_residual_max",
                    target,
                    residual: g.residual,
                    tolerance: Some(tol.geodesic),
                    verdict: Verdict::GeodesicOfAmbient,
                });
            } else {
                report.push(Check::judged(
                    "geodesic_residual_max",
                    target,
                    g.residual,
                    tol.geodesic,
                ));
            }
        }
    }

    let mut axes = vec![(helix.axis, helix.theta, !mn)];
    if let Some((field, angle)) = helix.secondary_axis {
        axes.push((field, angle, true));
    }
    for (field, angle, length_claimed) in &axes {
        let target = Some(field.name.to_string());
        let params = curve.sample_params(n)?;
        let lengths = params
            .iter()
            .map(|&s| field.length_along(curve, s))
            .collect::<Result<Vec<_>>>()?;
        let len_spread = spread(&lengths);
        report.push(if *length_claimed {
            Check::judged(
                "length_const_max",
                target.clone(),
                len_spread,
                tol.length_const,
            )
        } else {
            Check::info("length_const_max", target.clone(), len_spread)
        });
        match params
            .iter()
            .map(|&s| field.angle_with_curve(curve, s))
            .collect::<Result<Vec<_>>>()
        {
            Ok(angles) => {
                let dev = angles
                    .iter()
                    .fold(0.0_f64, |acc, a| acc.max((a - angle).abs()));
                report.push(Check::judged(
                    "angle_const_max",
                    target.clone(),
                    dev,
                    tol.angle_const,
                ));
            }
            Err(Error::ZeroVector) => report.push(Check::info(
                "angle_const_max",
                Some(format!("{} (vanishes on curve)", field.name)),
                0.0,
            )),
            Err(e) => return Err(e),
        }
        if !helix.degenerate && *length_claimed {
            let (res, sign) = axis_identity(curve, field, *angle, n)?;
            report.push(Check::judged(
                "axis_identity_max",
                target.clone(),
                res,
                tol.axis_identity,
            ));
            report.push(Check::info("axis_binormal_sign", target, sign));
        }
    }

    if helix.degenerate {
        let max_kappa = curve
            .sample_params(n)?
            .into_iter()
            .try_fold(0.0_f64, |acc, s| {
                let p = curve.point(s)?;
                Ok::<_, Error>(acc.max(curve.metric().norm(p, curve.curvature_vector(s)?)?))
            })?;
        report.push(Check {
            name: "frenet",
            target: None,
            residual: max_kappa,
            tolerance: None,
            verdict: Verdict::GeodesicOfAmbient,
        });
        return Ok(report);
    }

    if let Some(closed) = &helix.closed_form {
        let (rel, abs) = kt_match(curve, closed, n)?;
        report.push(Check::judged(
            "kt_match_rel_max",
            None,
            rel,
            tol.kt_match_rel,
        ));
        if let Some(abs) = abs {
            report.push(Check::judged(
                "kt_match_abs_max",
                None,
                abs,
                tol.kt_match_abs,
            ));
        }
    }

    let mut lancret = lancret_report(curve, n, curve.domain(), tol)?;
    if mn && !opts.demand_lancret {
        for c in &mut lancret.checks {
            c.verdict = Verdict::Info;
            c.tolerance = None;
        }
    }
    report.extend(lancret);
    Ok(report)
}
