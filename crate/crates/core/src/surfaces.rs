//! Implicit surfaces carrying the generated curves, and the geodesic test.

use std::fmt;

use serde::Serialize;

use crate::curve::{Curve, GEODESIC_THRESHOLD};
use crate::error::{Error, Result};
use crate::geometry::{Point3, Vec3};

/// The cataloged surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SurfaceKind {
    /// `x² + y² = c² z²`; a Killing cylinder about the z-axis geodesic in the
    /// upper half-space, a circular cone in Euclidean space.
    KillingCylinderCone { c: f64 },
    /// `x² + y² = r²`
    EuclideanCylinder { r: f64 },
    /// `z = c`
    Horosphere { c: f64 },
    /// `x² + y² + z² = R²`
    OriginSphere { radius: f64 },
    /// `sin θ x − cos θ y = x0 sin θ − y0 cos θ`
    VerticalPlane { theta: f64, x0: f64, y0: f64 },
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::KillingCylinderCone { c } => write!(f, "cone(c={c})"),
            SurfaceKind::EuclideanCylinder { r } => write!(f, "cylinder(r={r})"),
            SurfaceKind::Horosphere { c } => write!(f, "horosphere(c={c})"),
            SurfaceKind::OriginSphere { radius } => write!(f, "sphere(R={radius})"),
            SurfaceKind::VerticalPlane { theta, x0, y0 } => {
                write!(f, "vertical-plane(theta={theta}, x0={x0}, y0={y0})")
            }
        }
    }
}

/// A level set `f = 0` with its analytic Euclidean gradient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImplicitSurface {
    pub kind: SurfaceKind,
}

pub fn catalog_surface(kind: SurfaceKind) -> ImplicitSurface {
    ImplicitSurface { kind }
}

impl ImplicitSurface {
    pub fn name(&self) -> String {
        self.kind.to_string()
    }

    pub fn value(&self, p: Point3) -> f64 {
        let Point3 { x, y, z } = p;
        match self.kind {
            SurfaceKind::KillingCylinderCone { c } => x * x + y * y - c * c * z * z,
            SurfaceKind::EuclideanCylinder { r } => x * x + y * y - r * r,
            SurfaceKind::Horosphere { c } => z - c,
            SurfaceKind::OriginSphere { radius } => x * x + y * y + z * z - radius * radius,
            SurfaceKind::VerticalPlane { theta, x0, y0 } => {
                let (st, ct) = theta.sin_cos();
                st * x - ct * y - (x0 * st - y0 * ct)
            }
        }
    }

    pub fn gradient_e(&self, p: Point3) -> Vec3 {
        let Point3 { x, y, z } = p;
        match self.kind {
            SurfaceKind::KillingCylinderCone { c } => Vec3::new(2.0 * x, 2.0 * y, -2.0 * c * c * z),
            SurfaceKind::EuclideanCylinder { .. } => Vec3::new(2.0 * x, 2.0 * y, 0.0),
            SurfaceKind::Horosphere { .. } => Vec3::E3,
            SurfaceKind::OriginSphere { .. } => Vec3::new(2.0 * x, 2.0 * y, 2.0 * z),
            SurfaceKind::VerticalPlane { theta, .. } => {
                let (st, ct) = theta.sin_cos();
                Vec3::new(st, -ct, 0.0)
            }
        }
    }
}

/// Largest first-order offset of the sampled curve from the surface,
/// `|f| / |∇f|_e`, measured in the curve's metric.
pub fn containment_residual(
    curve: &Curve,
    surface: &ImplicitSurface,
    samples: usize,
) -> Result<f64> {
    curve
        .sample_params(samples)?
        .into_iter()
        .try_fold(0.0_f64, |acc, s| {
            let p = curve.point(s)?;
            let f = surface.value(p).abs();
            let g = surface.gradient_e(p).norm_e();
            let offset = if g > 0.0 { f / g } else { f };
            // the offset is a Euclidean displacement along the normal
            let r = curve.metric().norm(p, Vec3::new(offset, 0.0, 0.0))?;
            Ok(acc.max(r))
        })
}

/// Result of the geodesic-in-surface test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeodesicOutcome {
    /// Largest metric norm of the part of `∇_T T` normal to the curve inside
    /// the surface.
    pub residual: f64,
    pub containment: f64,
    /// `∇_T T` vanishes at every sample.
    pub ambient_geodesic: bool,
}

/// Tests whether the curve is a geodesic of `surface`.
///
/// At each sample, `∇_T T` is stripped of its metric projections onto the
/// surface normal `∇f` and onto `T`; what remains is the geodesic curvature
/// vector, zero exactly when the curve is a geodesic in the surface.
pub fn geodesic_residual(
    curve: &Curve,
    surface: &ImplicitSurface,
    samples: usize,
    containment_tolerance: f64,
) -> Result<GeodesicOutcome> {
    let containment = containment_residual(curve, surface, samples)?;
    if containment > containment_tolerance {
        return Err(Error::OffSurface {
            surface: surface.name(),
            residual: containment,
            tolerance: containment_tolerance,
        });
    }
    let metric = curve.metric();
    let mut residual = 0.0_f64;
    let mut max_acc = 0.0_f64;
    for s in curve.sample_params(samples)? {
        let p = curve.point(s)?;
        let t = curve.velocity(s)?;
        let a = curve.curvature_vector(s)?;
        max_acc = max_acc.max(metric.norm(p, a)?);
        let n = surface.gradient_e(p);
        let mut rest = a;
        for dir in [n, t] {
            let nn = metric.inner(p, dir, dir)?;
            if nn > 0.0 {
                rest -= dir * (metric.inner(p, a, dir)? / nn);
            }
        }
        residual = residual.max(metric.norm(p, rest)?);
    }
    Ok(GeodesicOutcome {
        residual,
        containment,
        ambient_geodesic: max_acc < GEODESIC_THRESHOLD,
    })
}
