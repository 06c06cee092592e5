//! Killing vector fields of Euclidean space and of the upper half-space,
//! with length, angle and Killing-equation diagnostics.

use std::fmt;

use serde::Serialize;

use crate::curve::Curve;
use crate::error::Result;
use crate::geometry::{Metric, Point3, Vec3};

/// Step of the central differences used for field derivatives.
const FIELD_STEP: f64 = 1e-5;

/// The cataloged analytic fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    /// `∂x`
    TranslateX,
    /// `∂y`
    TranslateY,
    /// `∂z`
    TranslateZ,
    /// `−y∂x + x∂y`, rotations about the z-axis.
    RotateXy,
    /// `−z∂y + y∂z`, rotations about the x-axis.
    RotateYz,
    /// `z∂x − x∂z`, rotations about the y-axis.
    RotateZx,
    /// `x∂x + y∂y + z∂z`; hyperbolic rotations about the z-axis geodesic.
    Dilation,
    /// `((x² − y² − z²)/2)∂x + xy∂y + xz∂z`
    InversionX,
    /// `xy∂x + ((y² − x² − z²)/2)∂y + yz∂z`
    InversionY,
}

impl FieldKind {
    pub fn eval(self, p: Point3) -> Vec3 {
        let Point3 { x, y, z } = p;
        match self {
            FieldKind::TranslateX => Vec3::E1,
            FieldKind::TranslateY => Vec3::E2,
            FieldKind::TranslateZ => Vec3::E3,
            FieldKind::RotateXy => Vec3::new(-y, x, 0.0),
            FieldKind::RotateYz => Vec3::new(0.0, -z, y),
            FieldKind::RotateZx => Vec3::new(z, 0.0, -x),
            FieldKind::Dilation => Vec3::new(x, y, z),
            FieldKind::InversionX => Vec3::new(0.5 * (x * x - y * y - z * z), x * y, x * z),
            FieldKind::InversionY => Vec3::new(x * y, 0.5 * (y * y - x * x - z * z), y * z),
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            FieldKind::TranslateX => "d/dx",
            FieldKind::TranslateY => "d/dy",
            FieldKind::TranslateZ => "d/dz",
            FieldKind::RotateXy => "-y d/dx + x d/dy",
            FieldKind::RotateYz => "-z d/dy + y d/dz",
            FieldKind::RotateZx => "z d/dx - x d/dz",
            FieldKind::Dilation => "x d/dx + y d/dy + z d/dz",
            FieldKind::InversionX => "((x^2-y^2-z^2)/2) d/dx + xy d/dy + xz d/dz",
            FieldKind::InversionY => "xy d/dx + ((y^2-x^2-z^2)/2) d/dy + yz d/dz",
        }
    }
}

/// A named Killing field of one of the ambient metrics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KillingField {
    pub name: &'static str,
    pub metric: Metric,
    pub kind: FieldKind,
}

impl fmt::Display for KillingField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name, self.kind.formula())
    }
}

impl KillingField {
    pub const fn new(name: &'static str, metric: Metric, kind: FieldKind) -> Self {
        Self { name, metric, kind }
    }

    pub fn eval(&self, p: Point3) -> Vec3 {
        self.kind.eval(p)
    }

    /// Metric length of the field at `p`.
    pub fn length_at(&self, p: Point3) -> Result<f64> {
        self.metric.norm(p, self.eval(p))
    }

    /// Metric-unit field direction at `p`.
    pub fn unit_at(&self, p: Point3) -> Result<Vec3> {
        let v = self.eval(p);
        Ok(v / self.metric.norm(p, v)?)
    }

    /// Length of the field at `γ(s)`.
    pub fn length_along(&self, curve: &Curve, s: f64) -> Result<f64> {
        let _ = curve.velocity(s)?;
        self.length_at(curve.point(s)?)
    }

    /// Angle between `γ'(s)` and the field at `γ(s)`.
    pub fn angle_with_curve(&self, curve: &Curve, s: f64) -> Result<f64> {
        let p = curve.point(s)?;
        curve.metric().angle(p, curve.velocity(s)?, self.eval(p))
    }

    /// Killing-equation residual at `p`; see [`killing_residual`].
    pub fn residual(&self, p: Point3, probes: &[(Vec3, Vec3)]) -> Result<f64> {
        killing_residual(self.metric, |q| self.eval(q), p, probes)
    }
}

pub const EUCLIDEAN_TRANSLATE_X: KillingField =
    KillingField::new("translate-x", Metric::Euclidean, FieldKind::TranslateX);
pub const EUCLIDEAN_TRANSLATE_Y: KillingField =
    KillingField::new("translate-y", Metric::Euclidean, FieldKind::TranslateY);
pub const EUCLIDEAN_TRANSLATE_Z: KillingField =
    KillingField::new("translate-z", Metric::Euclidean, FieldKind::TranslateZ);
pub const EUCLIDEAN_ROTATE_XY: KillingField =
    KillingField::new("rotate-xy", Metric::Euclidean, FieldKind::RotateXy);
pub const EUCLIDEAN_ROTATE_YZ: KillingField =
    KillingField::new("rotate-yz", Metric::Euclidean, FieldKind::RotateYz);
pub const EUCLIDEAN_ROTATE_ZX: KillingField =
    KillingField::new("rotate-zx", Metric::Euclidean, FieldKind::RotateZx);

pub const HYPERBOLIC_DILATION: KillingField = KillingField::new(
    "hyperbolic-rotation",
    Metric::HyperbolicUhs,
    FieldKind::Dilation,
);
pub const HYPERBOLIC_ELLIPTIC: KillingField = KillingField::new(
    "elliptic-rotation",
    Metric::HyperbolicUhs,
    FieldKind::RotateXy,
);
pub const HYPERBOLIC_PARABOLIC_X: KillingField =
    KillingField::new("parabolic-x", Metric::HyperbolicUhs, FieldKind::TranslateX);
pub const HYPERBOLIC_PARABOLIC_Y: KillingField =
    KillingField::new("parabolic-y", Metric::HyperbolicUhs, FieldKind::TranslateY);
pub const HYPERBOLIC_INVERSION_X: KillingField =
    KillingField::new("inversion-x", Metric::HyperbolicUhs, FieldKind::InversionX);
pub const HYPERBOLIC_INVERSION_Y: KillingField =
    KillingField::new("inversion-y", Metric::HyperbolicUhs, FieldKind::InversionY);

/// Basis of the six-dimensional Killing algebra of the given metric.
pub fn basis(metric: Metric) -> Vec<KillingField> {
    match metric {
        Metric::Euclidean => vec![
            EUCLIDEAN_TRANSLATE_X,
            EUCLIDEAN_TRANSLATE_Y,
            EUCLIDEAN_TRANSLATE_Z,
            EUCLIDEAN_ROTATE_XY,
            EUCLIDEAN_ROTATE_YZ,
            EUCLIDEAN_ROTATE_ZX,
        ],
        Metric::HyperbolicUhs => vec![
            HYPERBOLIC_DILATION,
            HYPERBOLIC_ELLIPTIC,
            HYPERBOLIC_PARABOLIC_X,
            HYPERBOLIC_PARABOLIC_Y,
            HYPERBOLIC_INVERSION_X,
            HYPERBOLIC_INVERSION_Y,
        ],
    }
}

/// Probe pairs `(eᵢ, eⱼ)`, `i ≤ j`, of coordinate directions.
pub fn coordinate_probes() -> Vec<(Vec3, Vec3)> {
    let e = [Vec3::E1, Vec3::E2, Vec3::E3];
    let mut out = Vec::with_capacity(6);
    for i in 0..3 {
        for j in i..3 {
            out.push((e[i], e[j]));
        }
    }
    out
}

/// `max |⟨∇_X F, Y⟩ + ⟨∇_Y F, X⟩|` over the probe pairs, with directional
/// derivatives of `field` taken by central differences. Zero for Killing
/// fields.
pub fn killing_residual<F>(
    metric: Metric,
    field: F,
    p: Point3,
    probes: &[(Vec3, Vec3)],
) -> Result<f64>
where
    F: Fn(Point3) -> Vec3,
{
    metric.check_point(p)?;
    let value = field(p);
    let nabla = |dir: Vec3| -> Result<Vec3> {
        let h = FIELD_STEP;
        let d = (field(p + dir * h) - field(p - dir * h)) / (2.0 * h);
        metric.covariant_derivative(p, dir, value, d)
    };
    probes.iter().try_fold(0.0_f64, |acc, &(x, y)| {
        let r = metric.inner(p, nabla(x)?, y)? + metric.inner(p, nabla(y)?, x)?;
        Ok(acc.max(r.abs()))
    })
}
