//! Closed-form generators for the helix and constant-angle families, each
//! bundled with its axis field, angle, and closed-form curvature and torsion.
//!
//! All generated curves are parametrized by arc length in their ambient
//! metric. The constant-angle curves about the z-axis rotation field are
//! built by cumulative Simpson quadrature of their defining integrals.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::curve::{Curve, Interval, EVAL_MARGIN, GEODESIC_THRESHOLD};
use crate::error::{Error, Result};
use crate::geometry::{Metric, Point3, Vec3};
use crate::killing::{
    KillingField, EUCLIDEAN_ROTATE_XY, EUCLIDEAN_TRANSLATE_Z, HYPERBOLIC_DILATION,
    HYPERBOLIC_ELLIPTIC, HYPERBOLIC_PARABOLIC_X,
};
use crate::quadrature::{CumulativeIntegral, PANELS_PER_UNIT};
use crate::surfaces::SurfaceKind;

/// The generated curve families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Circular helices about the z-axis, axis `−y∂x + x∂y`.
    EuclideanRotational,
    /// Hyperbolic helices with axis `x∂x + y∂y + z∂z`.
    HypDilation,
    /// Hyperbolic helices with axis `−y∂x + x∂y`.
    HypElliptic,
    /// Hyperbolic helices with axis `∂x`, lying in horospheres.
    HypParabolic,
    /// Curves `e^t (r cos t, r sin t, h)` at constant angle with the position
    /// vector, reparametrized by hyperbolic arc length.
    PositionAngle,
    /// Euclidean curves at constant angle with `−y∂x + x∂y`.
    ConstantAngleMn,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::EuclideanRotational,
        Family::HypDilation,
        Family::HypElliptic,
        Family::HypParabolic,
        Family::PositionAngle,
        Family::ConstantAngleMn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::EuclideanRotational => "euclidean-rotational",
            Family::HypDilation => "hyp-dilation",
            Family::HypElliptic => "hyp-elliptic",
            Family::HypParabolic => "hyp-parabolic",
            Family::PositionAngle => "position-angle",
            Family::ConstantAngleMn => "mn",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn metric(self) -> Metric {
        match self {
            Family::EuclideanRotational | Family::ConstantAngleMn => Metric::Euclidean,
            _ => Metric::HyperbolicUhs,
        }
    }

    /// Parameter names with their default values, in a fixed order.
    pub fn parameters(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Family::EuclideanRotational => &[("r", "1"), ("theta", "0.7853981633974483")],
            Family::HypDilation | Family::HypElliptic => {
                &[("m", "1"), ("c", "1"), ("theta", "0.7853981633974483")]
            }
            Family::HypParabolic => &[
                ("x0", "0"),
                ("y0", "0"),
                ("c", "1"),
                ("theta", "0.7853981633974483"),
            ],
            Family::PositionAngle => &[("r", "1"), ("h", "1")],
            Family::ConstantAngleMn => &[
                ("omega", "s"),
                ("theta", "0.7853981633974483"),
                ("r0", "canonical"),
                ("z0", "canonical"),
                ("lancret", "0"),
            ],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The angle function `ω(s)` of a constant-angle curve.
#[derive(Clone)]
pub enum Omega {
    Constant(f64),
    /// `ω(s) = slope·s + offset`
    Affine {
        slope: f64,
        offset: f64,
    },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for Omega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Omega::Constant(w) => write!(f, "Constant({w})"),
            Omega::Affine { slope, offset } => write!(f, "Affine({slope}, {offset})"),
            Omega::Custom(_) => f.write_str("Custom"),
        }
    }
}

impl fmt::Display for Omega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Omega::Constant(w) => write!(f, "const:{w}"),
            Omega::Affine { slope, offset } if *slope == 1.0 && *offset == 0.0 => f.write_str("s"),
            Omega::Affine { slope, offset } => write!(f, "linear:{slope},{offset}"),
            Omega::Custom(_) => f.write_str("custom"),
        }
    }
}

impl Omega {
    pub fn value(&self, s: f64) -> f64 {
        match self {
            Omega::Constant(w) => *w,
            Omega::Affine { slope, offset } => slope * s + offset,
            Omega::Custom(f) => f(s),
        }
    }

    pub fn derivative(&self, s: f64) -> f64 {
        match self {
            Omega::Constant(_) => 0.0,
            Omega::Affine { slope, .. } => *slope,
            Omega::Custom(f) => {
                let h = 1e-5;
                (f(s + h) - f(s - h)) / (2.0 * h)
            }
        }
    }

    fn is_sphere_example(&self) -> bool {
        matches!(self, Omega::Affine { slope, offset } if *slope == 1.0 && *offset == 0.0)
    }
}

/// Integration constants of a constant-angle curve: `r(s_min)`, `z(s_min)`
/// (with `φ(s_min) = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MnConstants {
    /// The constants of the two worked examples, placing the cone apex or the
    /// sphere centre at the origin.
    Canonical,
    Explicit {
        r0: f64,
        z0: f64,
    },
}

/// A family together with its parameters.
#[derive(Debug, Clone)]
pub enum HelixSpec {
    EuclideanRotational {
        r: f64,
        theta: f64,
    },
    HypDilation {
        m: f64,
        c: f64,
        theta: f64,
    },
    HypElliptic {
        m: f64,
        c: f64,
        theta: f64,
    },
    HypParabolic {
        x0: f64,
        y0: f64,
        c: f64,
        theta: f64,
    },
    PositionAngle {
        r: f64,
        h: f64,
    },
    ConstantAngleMn {
        omega: Omega,
        theta: f64,
        constants: MnConstants,
    },
}

impl HelixSpec {
    pub fn family(&self) -> Family {
        match self {
            HelixSpec::EuclideanRotational { .. } => Family::EuclideanRotational,
            HelixSpec::HypDilation { .. } => Family::HypDilation,
            HelixSpec::HypElliptic { .. } => Family::HypElliptic,
            HelixSpec::HypParabolic { .. } => Family::HypParabolic,
            HelixSpec::PositionAngle { .. } => Family::PositionAngle,
            HelixSpec::ConstantAngleMn { .. } => Family::ConstantAngleMn,
        }
    }

    pub fn metric(&self) -> Metric {
        self.family().metric()
    }

    /// Reporting domain used when none is requested.
    pub fn default_domain(&self) -> Interval {
        match self {
            HelixSpec::ConstantAngleMn { omega, .. } if omega.is_sphere_example() => Interval {
                min: 0.1,
                max: PI - 0.1,
            },
            HelixSpec::ConstantAngleMn {
                omega: Omega::Constant(w),
                ..
            } if *w != FRAC_PI_2 => Interval {
                min: 1.0,
                max: 10.0,
            },
            HelixSpec::ConstantAngleMn { .. } => Interval { min: 0.0, max: 1.0 },
            _ => Interval {
                min: 0.0,
                max: 10.0,
            },
        }
    }

    /// Numeric parameters by name, in a fixed order.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match self {
            HelixSpec::EuclideanRotational { r, theta } => vec![("r", *r), ("theta", *theta)],
            HelixSpec::HypDilation { m, c, theta } | HelixSpec::HypElliptic { m, c, theta } => {
                vec![("m", *m), ("c", *c), ("theta", *theta)]
            }
            HelixSpec::HypParabolic { x0, y0, c, theta } => {
                vec![("x0", *x0), ("y0", *y0), ("c", *c), ("theta", *theta)]
            }
            HelixSpec::PositionAngle { r, h } => vec![("r", *r), ("h", *h)],
            HelixSpec::ConstantAngleMn {
                theta, constants, ..
            } => {
                let mut v = vec![("theta", *theta)];
                if let MnConstants::Explicit { r0, z0 } = constants {
                    v.push(("r0", *r0));
                    v.push(("z0", *z0));
                }
                v
            }
        }
    }
}

/// Closed-form curvature and torsion as functions of arc length, valid on
/// the open interval `valid`.
#[derive(Clone)]
pub struct ClosedFormKT {
    kappa: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    tau: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    valid: (f64, f64),
}

impl fmt::Debug for ClosedFormKT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosedFormKT")
            .field("valid", &self.valid)
            .finish()
    }
}

impl ClosedFormKT {
    pub fn constant(kappa: f64, tau: f64) -> Self {
        Self {
            kappa: Arc::new(move |_| kappa),
            tau: Arc::new(move |_| tau),
            valid: (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    fn check(&self, s: f64) -> Result<()> {
        if s > self.valid.0 && s < self.valid.1 {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                s,
                min: self.valid.0,
                max: self.valid.1,
            })
        }
    }

    pub fn kappa(&self, s: f64) -> Result<f64> {
        self.check(s)?;
        Ok((self.kappa)(s))
    }

    pub fn tau(&self, s: f64) -> Result<f64> {
        self.check(s)?;
        Ok((self.tau)(s))
    }
}

/// The two worked constant-angle examples with printed curvature and torsion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MnExample {
    /// `ω ≡ w`, `w ≠ π/2`: the curve lies on the cone `x² + y² = cot²(w) z²`.
    ConeConstantOmega { theta: f64, w: f64 },
    /// `ω(s) = s`: the curve lies on the sphere of radius `|sin θ|`.
    SphereOmegaEqualsS { theta: f64 },
}

impl MnExample {
    pub fn spec(self) -> HelixSpec {
        match self {
            MnExample::ConeConstantOmega { theta, w } => HelixSpec::ConstantAngleMn {
                omega: Omega::Constant(w),
                theta,
                constants: MnConstants::Canonical,
            },
            MnExample::SphereOmegaEqualsS { theta } => HelixSpec::ConstantAngleMn {
                omega: Omega::Affine {
                    slope: 1.0,
                    offset: 0.0,
                },
                theta,
                constants: MnConstants::Canonical,
            },
        }
    }
}

/// Printed curvature and torsion of the worked constant-angle examples.
///
/// The cone example is valid for `s > 0` (arc length from the apex), the
/// sphere example for `s ∈ (0, π)`.
pub fn mn_example_closed_forms(example: MnExample) -> ClosedFormKT {
    match example {
        MnExample::ConeConstantOmega { theta, w } => {
            let num = (4.0 / theta.sin().powi(2) - 2.0 * (2.0 * theta).cos() * w.sin().powi(2)
                + (2.0 * w).cos()
                - 5.0)
                .sqrt();
            let den = 2.0 * w.cos();
            let t_num = theta.cos() * w.tan();
            ClosedFormKT {
                kappa: Arc::new(move |s| num / (den * s)),
                tau: Arc::new(move |s| t_num / s),
                valid: (0.0, f64::INFINITY),
            }
        }
        MnExample::SphereOmegaEqualsS { theta } => {
            let (st, ct) = theta.sin_cos();
            ClosedFormKT {
                kappa: Arc::new(move |s| (1.0 - st * st * s.cos().powi(2)).sqrt() / (st * s.sin())),
                tau: Arc::new(move |s| ct / (1.0 - st * st * s.cos().powi(2))),
                valid: (0.0, PI),
            }
        }
    }
}

/// Angle between the cone-example curve and `∂z`.
pub fn cone_axis_angle(theta: f64, w: f64) -> f64 {
    (theta.sin() * w.sin()).clamp(-1.0, 1.0).acos()
}

/// Height gained per turn by the circular helix of radius `r` at angle
/// `theta` with the rotation field.
pub fn pitch(r: f64, theta: f64) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "r",
            value: r,
            reason: "radius must be positive",
        });
    }
    if !(0.0..FRAC_PI_2).contains(&theta) {
        return Err(Error::InvalidParameter {
            name: "theta",
            value: theta,
            reason: "pitch needs theta in [0, pi/2); theta = pi/2 is a vertical line",
        });
    }
    Ok(2.0 * PI * r * theta.tan())
}

/// A surface the curve lies on, and whether it is a geodesic there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceClaim {
    pub surface: SurfaceKind,
    pub geodesic: bool,
}

/// A generated curve with its axis and reference data.
#[derive(Debug, Clone)]
pub struct Helix {
    pub spec: HelixSpec,
    pub curve: Curve,
    pub axis: KillingField,
    /// Angle between the curve and `axis`.
    pub theta: f64,
    pub closed_form: Option<ClosedFormKT>,
    /// The curve is an ambient geodesic (no Frenet frame exists).
    pub degenerate: bool,
    /// A second Killing field making a constant angle with the curve.
    pub secondary_axis: Option<(KillingField, f64)>,
    pub surfaces: Vec<SurfaceClaim>,
}

impl Helix {
    pub fn generate(spec: HelixSpec) -> Result<Helix> {
        let domain = spec.default_domain();
        generate(spec, domain)
    }
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v,
            reason: "must be positive",
        })
    }
}

fn check_non_negative(name: &'static str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v,
            reason: "must be non-negative",
        })
    }
}

fn check_finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v,
            reason: "must be finite",
        })
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if (0.0..PI).contains(&theta) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "theta",
            value: theta,
            reason: "angle must lie in [0, pi)",
        })
    }
}

fn check_forced_theta(theta: f64, forced: f64, reason: &'static str) -> Result<()> {
    if (theta - forced).abs() < 1e-12 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "theta",
            value: theta,
            reason,
        })
    }
}

/// `s ↦ m e^{as} (c cos bs, c sin bs, 1)` with derivatives.
fn conical_spiral(metric: Metric, domain: Interval, m: f64, c: f64, a: f64, b: f64) -> Curve {
    Curve::analytic(
        metric,
        domain,
        move |s| {
            let e = m * (a * s).exp();
            let (sn, cs) = (b * s).sin_cos();
            Point3::new(e * c * cs, e * c * sn, e)
        },
        move |s| {
            let e = m * (a * s).exp();
            let (sn, cs) = (b * s).sin_cos();
            Vec3::new(e * c * (a * cs - b * sn), e * c * (a * sn + b * cs), e * a)
        },
        move |s| {
            let e = m * (a * s).exp();
            let (sn, cs) = (b * s).sin_cos();
            let (p, q) = (a * a - b * b, 2.0 * a * b);
            Vec3::new(
                e * c * (p * cs - q * sn),
                e * c * (p * sn + q * cs),
                e * a * a,
            )
        },
    )
}

/// The z-axis `s ↦ (0, 0, f(s))` traversed at unit speed.
fn z_axis(metric: Metric, domain: Interval, m: f64) -> Curve {
    match metric {
        Metric::Euclidean => Curve::analytic(
            metric,
            domain,
            |s| Point3::new(0.0, 0.0, s),
            |_| Vec3::E3,
            |_| Vec3::ZERO,
        ),
        Metric::HyperbolicUhs => Curve::analytic(
            metric,
            domain,
            move |s| Point3::new(0.0, 0.0, m * s.exp()),
            move |s| Vec3::new(0.0, 0.0, m * s.exp()),
            move |s| Vec3::new(0.0, 0.0, m * s.exp()),
        ),
    }
}

/// For the dilation helix with angle `theta`, the angle parameter of the
/// elliptic family describing the same curve, and whether the parameter runs
/// backwards (`s ↦ −s`) relative to the dilation helix.
pub fn complementary_elliptic(theta: f64) -> (f64, bool) {
    if theta >= FRAC_PI_2 {
        (theta - FRAC_PI_2, false)
    } else {
        (theta + FRAC_PI_2, true)
    }
}

/// Builds the curve and reference data for `spec`, reported on `domain`.
pub fn generate(spec: HelixSpec, domain: Interval) -> Result<Helix> {
    let metric = spec.metric();
    let helix = match &spec {
        &HelixSpec::EuclideanRotational { r, theta } => {
            check_non_negative("r", r)?;
            check_theta(theta)?;
            if r == 0.0 {
                check_forced_theta(
                    theta,
                    FRAC_PI_2,
                    "r = 0 is the z-axis, which forces theta = pi/2",
                )?;
                return Ok(degenerate(
                    spec.clone(),
                    z_axis(metric, domain, 1.0),
                    EUCLIDEAN_ROTATE_XY,
                    FRAC_PI_2,
                ));
            }
            let (st, ct) = theta.sin_cos();
            let b = ct / r;
            let curve = Curve::analytic(
                metric,
                domain,
                move |s| {
                    let (sn, cs) = (b * s).sin_cos();
                    Point3::new(r * cs, r * sn, s * st)
                },
                move |s| {
                    let (sn, cs) = (b * s).sin_cos();
                    Vec3::new(-r * b * sn, r * b * cs, st)
                },
                move |s| {
                    let (sn, cs) = (b * s).sin_cos();
                    Vec3::new(-r * b * b * cs, -r * b * b * sn, 0.0)
                },
            );
            let kappa = ct * ct / r;
            Helix {
                spec: spec.clone(),
                curve,
                axis: EUCLIDEAN_ROTATE_XY,
                theta,
                closed_form: Some(ClosedFormKT::constant(kappa, st * ct / r)),
                degenerate: kappa < GEODESIC_THRESHOLD,
                secondary_axis: Some((EUCLIDEAN_TRANSLATE_Z, (FRAC_PI_2 - theta).abs())),
                surfaces: vec![SurfaceClaim {
                    surface: SurfaceKind::EuclideanCylinder { r },
                    geodesic: true,
                }],
            }
        }
        &HelixSpec::HypDilation { m, c, theta } | &HelixSpec::HypElliptic { m, c, theta } => {
            check_positive("m", m)?;
            check_non_negative("c", c)?;
            check_theta(theta)?;
            let dilation = matches!(spec, HelixSpec::HypDilation { .. });
            let axis = if dilation {
                HYPERBOLIC_DILATION
            } else {
                HYPERBOLIC_ELLIPTIC
            };
            if c == 0.0 {
                let forced = if dilation { 0.0 } else { FRAC_PI_2 };
                check_forced_theta(theta, forced, "c = 0 is the z-axis, which fixes theta")?;
                return Ok(degenerate(
                    spec.clone(),
                    z_axis(metric, domain, m),
                    axis,
                    forced,
                ));
            }
            let (st, ct) = theta.sin_cos();
            let root = (1.0 + c * c).sqrt();
            // The elliptic family is the dilation family at theta + pi/2.
            let (a, b, kappa, tau) = if dilation {
                (
                    ct / root,
                    st / c,
                    (c * c + st * st) / (c * root),
                    st * ct / (c * root),
                )
            } else {
                (
                    -st / root,
                    ct / c,
                    (c * c + ct * ct) / (c * root),
                    -st * ct / (c * root),
                )
            };
            Helix {
                spec: spec.clone(),
                curve: conical_spiral(metric, domain, m, c, a, b),
                axis,
                theta,
                closed_form: Some(ClosedFormKT::constant(kappa, tau)),
                degenerate: false,
                secondary_axis: None,
                surfaces: vec![SurfaceClaim {
                    surface: SurfaceKind::KillingCylinderCone { c },
                    geodesic: true,
                }],
            }
        }
        &HelixSpec::HypParabolic { x0, y0, c, theta } => {
            check_finite("x0", x0)?;
            check_finite("y0", y0)?;
            check_positive("c", c)?;
            check_theta(theta)?;
            let (st, ct) = theta.sin_cos();
            let curve = Curve::analytic(
                metric,
                domain,
                move |s| Point3::new(s * c * ct + x0, s * c * st + y0, c),
                move |_| Vec3::new(c * ct, c * st, 0.0),
                |_| Vec3::ZERO,
            );
            Helix {
                spec: spec.clone(),
                curve,
                axis: HYPERBOLIC_PARABOLIC_X,
                theta,
                closed_form: Some(ClosedFormKT::constant(1.0, 0.0)),
                degenerate: false,
                secondary_axis: None,
                surfaces: vec![
                    SurfaceClaim {
                        surface: SurfaceKind::Horosphere { c },
                        geodesic: true,
                    },
                    SurfaceClaim {
                        surface: SurfaceKind::VerticalPlane { theta, x0, y0 },
                        geodesic: false,
                    },
                ],
            }
        }
        &HelixSpec::PositionAngle { r, h } => {
            check_positive("r", r)?;
            check_positive("h", h)?;
            let q = 2.0 * r * r + h * h;
            let k = h / q.sqrt();
            let theta = r.atan2((r * r + h * h).sqrt());
            Helix {
                spec: spec.clone(),
                curve: conical_spiral(metric, domain, h, r / h, k, k),
                axis: HYPERBOLIC_DILATION,
                theta,
                closed_form: Some(ClosedFormKT::constant(
                    2.0 * r * (r * r + h * h).sqrt() / q,
                    h * h / q,
                )),
                degenerate: false,
                secondary_axis: None,
                surfaces: vec![SurfaceClaim {
                    surface: SurfaceKind::KillingCylinderCone { c: r / h },
                    geodesic: true,
                }],
            }
        }
        HelixSpec::ConstantAngleMn {
            omega,
            theta,
            constants,
        } => {
            let theta = *theta;
            check_theta(theta)?;
            let (r0, z0, closed_form, secondary_axis, surfaces) =
                mn_setup(omega, theta, *constants, domain)?;
            let curve = generate_mn_with(omega.clone(), theta, r0, z0, domain)?;
            Helix {
                spec: spec.clone(),
                curve,
                axis: EUCLIDEAN_ROTATE_XY,
                theta,
                closed_form,
                degenerate: false,
                secondary_axis,
                surfaces,
            }
        }
    };
    Ok(helix)
}

fn degenerate(spec: HelixSpec, curve: Curve, axis: KillingField, theta: f64) -> Helix {
    Helix {
        spec,
        curve,
        axis,
        theta,
        closed_form: Some(ClosedFormKT::constant(0.0, 0.0)),
        degenerate: true,
        secondary_axis: None,
        surfaces: Vec::new(),
    }
}

type MnSetup = (
    f64,
    f64,
    Option<ClosedFormKT>,
    Option<(KillingField, f64)>,
    Vec<SurfaceClaim>,
);

fn mn_setup(
    omega: &Omega,
    theta: f64,
    constants: MnConstants,
    domain: Interval,
) -> Result<MnSetup> {
    let (st, ct) = theta.sin_cos();
    let s0 = domain.min;
    match (omega, constants) {
        (Omega::Constant(w), MnConstants::Canonical) if *w != FRAC_PI_2 => {
            let w = *w;
            if w.cos() <= 0.0 || s0 <= 0.0 || st <= 0.0 {
                return Err(Error::InvalidParameter {
                    name: "omega",
                    value: w,
                    reason: "the cone example needs cos(w) > 0, sin(theta) > 0 and a domain with s > 0",
                });
            }
            let surfaces = vec![SurfaceClaim {
                surface: SurfaceKind::KillingCylinderCone { c: 1.0 / w.tan() },
                geodesic: false,
            }];
            Ok((
                st * w.cos() * s0,
                st * w.sin() * s0,
                Some(mn_example_closed_forms(MnExample::ConeConstantOmega { theta, w })),
                Some((EUCLIDEAN_TRANSLATE_Z, cone_axis_angle(theta, w))),
                surfaces,
            ))
        }
        (o, MnConstants::Canonical) if o.is_sphere_example() => Ok((
            st * s0.sin(),
            -st * s0.cos(),
            Some(mn_example_closed_forms(MnExample::SphereOmegaEqualsS { theta })),
            None,
            vec![SurfaceClaim {
                surface: SurfaceKind::OriginSphere { radius: st.abs() },
                geodesic: false,
            }],
        )),
        (_, MnConstants::Canonical) => Err(Error::InvalidParameter {
            name: "r0",
            value: f64::NAN,
            reason: "canonical constants exist only for omega = const:w (w != pi/2) and omega = s; give r0",
        }),
        (Omega::Constant(w), MnConstants::Explicit { r0, z0 }) if *w == FRAC_PI_2 => {
            check_positive("r0", r0)?;
            check_finite("z0", z0)?;
            Ok((
                r0,
                z0,
                Some(ClosedFormKT::constant(ct * ct / r0, st * ct / r0)),
                Some((EUCLIDEAN_TRANSLATE_Z, (FRAC_PI_2 - theta).abs())),
                vec![SurfaceClaim {
                    surface: SurfaceKind::EuclideanCylinder { r: r0 },
                    geodesic: true,
                }],
            ))
        }
        (_, MnConstants::Explicit { r0, z0 }) => {
            check_positive("r0", r0)?;
            check_finite("z0", z0)?;
            Ok((r0, z0, None, None, Vec::new()))
        }
    }
}

/// Constant-angle curve about `−y∂x + x∂y` with `r(s_min) = r0`,
/// `z(s_min) = 0` and `φ(s_min) = 0`.
pub fn generate_mn(omega: Omega, theta: f64, r0: f64, domain: Interval) -> Result<Curve> {
    generate_mn_with(omega, theta, r0, 0.0, domain)
}

/// As [`generate_mn`] with `z(s_min) = z0`.
///
/// `r`, `z` and `φ` are cumulative Simpson integrals of `sin θ cos ω`,
/// `sin θ sin ω` and `cos θ / r`; velocity and acceleration are assembled from
/// their integrands, so the curve is unit speed up to rounding.
pub fn generate_mn_with(
    omega: Omega,
    theta: f64,
    r0: f64,
    z0: f64,
    domain: Interval,
) -> Result<Curve> {
    check_theta(theta)?;
    check_finite("r0", r0)?;
    check_finite("z0", z0)?;
    let (st, ct) = theta.sin_cos();
    let table_range = domain.extended(EVAL_MARGIN);

    let om = omega.clone();
    let cos_int = CumulativeIntegral::new(move |t| om.value(t).cos(), table_range, PANELS_PER_UNIT);
    let cos_at_min = cos_int.eval(domain.min);
    let radius: Arc<dyn Fn(f64) -> f64 + Send + Sync> =
        Arc::new(move |t| r0 + st * (cos_int.eval(t) - cos_at_min));

    let step = 1.0 / PANELS_PER_UNIT;
    let mut t = table_range.min;
    while t <= table_range.max + 0.25 * step {
        let tt = t.min(table_range.max);
        for probe in [tt, (tt + 0.5 * step).min(table_range.max)] {
            let r = radius(probe);
            if r.is_nan() || r <= 0.0 {
                return Err(Error::NonPositiveRadius { s: probe, r });
            }
        }
        t += step;
    }

    let om = omega.clone();
    let sin_int = CumulativeIntegral::new(move |t| om.value(t).sin(), table_range, PANELS_PER_UNIT);
    let sin_at_min = sin_int.eval(domain.min);
    let rad = radius.clone();
    let inv_int = CumulativeIntegral::new(move |t| 1.0 / rad(t), table_range, PANELS_PER_UNIT);
    let inv_at_min = inv_int.eval(domain.min);

    let state = Arc::new(move |s: f64| {
        let r = radius(s);
        let z = z0 + st * (sin_int.eval(s) - sin_at_min);
        let phi = ct * (inv_int.eval(s) - inv_at_min);
        (r, z, phi)
    });

    let (pos, vel, acc) = (state.clone(), state.clone(), state);
    let (om_v, om_a) = (omega.clone(), omega);
    Ok(Curve::analytic(
        Metric::Euclidean,
        domain,
        move |s| {
            let (r, z, phi) = pos(s);
            let (sn, cs) = phi.sin_cos();
            Point3::new(r * cs, r * sn, z)
        },
        move |s| {
            let (r, _, phi) = vel(s);
            let (sw, cw) = om_v.value(s).sin_cos();
            let (dr, dz, dphi) = (st * cw, st * sw, ct / r);
            let (sn, cs) = phi.sin_cos();
            Vec3::new(dr * cs - r * dphi * sn, dr * sn + r * dphi * cs, dz)
        },
        move |s| {
            let (r, _, phi) = acc(s);
            let (sw, cw) = om_a.value(s).sin_cos();
            let dw = om_a.derivative(s);
            let (dr, dphi) = (st * cw, ct / r);
            let (ddr, ddz, ddphi) = (-st * sw * dw, st * cw * dw, -ct * dr / (r * r));
            let (sn, cs) = phi.sin_cos();
            let rad_acc = ddr - r * dphi * dphi;
            let ang_acc = 2.0 * dr * dphi + r * ddphi;
            Vec3::new(
                rad_acc * cs - ang_acc * sn,
                rad_acc * sn + ang_acc * cs,
                ddz,
            )
        },
    )
    .with_eval_domain(table_range))
}
