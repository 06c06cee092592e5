//! Ambient metrics of Euclidean space and of the upper half-space model of
//! hyperbolic space, together with the Levi-Civita connection of each.
//!
//! Both metrics are conformal to the Euclidean one, `g = λ(p)² ⟨·,·⟩_e` with
//! `λ = 1` or `λ = 1/z`, so tangent vectors are stored by their coordinate
//! components and the metric only rescales inner products.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest height accepted by the hyperbolic metric.
pub const MIN_HEIGHT: f64 = 1e-12;

/// A point given by its chart coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// A tangent vector given by its components along `∂x`, `∂y`, `∂z`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Position vector of the point.
    pub const fn to_vec(self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }

    pub fn distance(self, other: Point3) -> f64 {
        (self - other).norm_e()
    }
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const E1: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const E2: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const E3: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c1, c2, c3 }
    }

    /// Euclidean dot product of the components.
    pub fn dot(self, other: Vec3) -> f64 {
        self.c1 * other.c1 + self.c2 * other.c2 + self.c3 * other.c3
    }

    /// Euclidean cross product of the components.
    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.c2 * other.c3 - self.c3 * other.c2,
            self.c3 * other.c1 - self.c1 * other.c3,
            self.c1 * other.c2 - self.c2 * other.c1,
        )
    }

    /// Euclidean length of the components.
    pub fn norm_e(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(self) -> f64 {
        self.c1.abs().max(self.c2.abs()).max(self.c3.abs())
    }

    pub fn is_finite(self) -> bool {
        self.c1.is_finite() && self.c2.is_finite() && self.c3.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.c1, self.c2, self.c3)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.c1 - o.c1, self.c2 - o.c2, self.c3 - o.c3)
    }
}

impl SubAssign for Vec3 {
    fn sub_assign(&mut self, o: Vec3) {
        *self = *self - o;
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.c1, -self.c2, -self.c3)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, k: f64) -> Vec3 {
        Vec3::new(self.c1 * k, self.c2 * k, self.c3 * k)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, k: f64) -> Vec3 {
        Vec3::new(self.c1 / k, self.c2 / k, self.c3 / k)
    }
}

impl Add<Vec3> for Point3 {
    type Output = Point3;
    fn add(self, v: Vec3) -> Point3 {
        Point3::new(self.x + v.c1, self.y + v.c2, self.z + v.c3)
    }
}

impl Sub<Vec3> for Point3 {
    type Output = Point3;
    fn sub(self, v: Vec3) -> Point3 {
        Point3::new(self.x - v.c1, self.y - v.c2, self.z - v.c3)
    }
}

impl Sub for Point3 {
    type Output = Vec3;
    fn sub(self, o: Point3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

/// The two ambient geometries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    Euclidean,
    /// `(dx² + dy² + dz²) / z²` on `z > 0`.
    HyperbolicUhs,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::HyperbolicUhs => "hyperbolic-uhs",
        }
    }

    pub fn check_point(self, p: Point3) -> Result<()> {
        match self {
            Metric::Euclidean => Ok(()),
            Metric::HyperbolicUhs if p.z > MIN_HEIGHT => Ok(()),
            Metric::HyperbolicUhs => Err(Error::Inadmissible { z: p.z }),
        }
    }

    pub fn is_admissible(self, p: Point3) -> bool {
        self.check_point(p).is_ok()
    }

    /// Squared conformal factor `λ²` at `p`.
    fn conformal_sq(self, p: Point3) -> Result<f64> {
        self.check_point(p)?;
        Ok(match self {
            Metric::Euclidean => 1.0,
            Metric::HyperbolicUhs => 1.0 / (p.z * p.z),
        })
    }

    pub fn inner(self, p: Point3, u: Vec3, v: Vec3) -> Result<f64> {
        Ok(self.conformal_sq(p)? * u.dot(v))
    }

    pub fn norm(self, p: Point3, u: Vec3) -> Result<f64> {
        Ok(self.inner(p, u, u)?.sqrt())
    }

    /// Angle between two nonzero tangent vectors at `p`, in `[0, π]`.
    ///
    /// Both metrics are conformal to the Euclidean one, so the angle is the
    /// Euclidean angle; it is evaluated as `atan2(|u×v|, u·v)`, which agrees
    /// with the clamped arccos of the normalized inner product and stays
    /// accurate near 0 and π.
    pub fn angle(self, p: Point3, u: Vec3, v: Vec3) -> Result<f64> {
        self.check_point(p)?;
        if u.norm_e() == 0.0 || v.norm_e() == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(u.cross(v).norm_e().atan2(u.dot(v)))
    }

    /// `∇_X Y` at `p`, where `dy` is the coordinate directional derivative of
    /// the field `Y` along `X` at `p`.
    ///
    /// For the hyperbolic metric this applies the conformal correction
    /// `∇_X Y = dY − (X₃/z) Y − (Y₃/z) X + (⟨X,Y⟩_e / z) e₃`.
    pub fn covariant_derivative(self, p: Point3, x: Vec3, y: Vec3, dy: Vec3) -> Result<Vec3> {
        self.check_point(p)?;
        Ok(match self {
            Metric::Euclidean => dy,
            Metric::HyperbolicUhs => {
                let z = p.z;
                dy - y * (x.c3 / z) - x * (y.c3 / z) + Vec3::E3 * (x.dot(y) / z)
            }
        })
    }

    /// Unit vector completing the metric-orthonormal pair `(t, n)` to a
    /// positively oriented frame of the chart.
    pub fn complete_frame(self, p: Point3, t: Vec3, n: Vec3) -> Result<Vec3> {
        let b = t.cross(n);
        let len = self.norm(p, b)?;
        if len == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(b / len)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    const H: Metric = Metric::HyperbolicUhs;
    const E: Metric = Metric::Euclidean;

    #[test]
    fn inner_products() {
        assert_eq!(
            E.inner(Point3::new(4.0, -1.0, 9.0), Vec3::E3, Vec3::E3)
                .unwrap(),
            1.0
        );
        assert_eq!(
            H.inner(Point3::new(0.0, 0.0, 2.0), Vec3::E3, Vec3::E3)
                .unwrap(),
            0.25
        );
        // |V|² = 1 + c² at a point of the cone with c = 1
        let p = Point3::new(1.0, 0.0, 1.0);
        assert_eq!(H.inner(p, p.to_vec(), p.to_vec()).unwrap(), 2.0);
        assert!((H.norm(p, p.to_vec()).unwrap() - SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn inadmissible_heights_are_rejected() {
        for z in [0.0, -1.0, 1e-13] {
            let p = Point3::new(0.0, 0.0, z);
            assert_eq!(
                H.inner(p, Vec3::E1, Vec3::E1),
                Err(Error::Inadmissible { z })
            );
            assert!(H
                .covariant_derivative(p, Vec3::E1, Vec3::E1, Vec3::ZERO)
                .is_err());
        }
        assert!(E
            .inner(Point3::new(0.0, 0.0, -3.0), Vec3::E1, Vec3::E1)
            .is_ok());
    }

    #[test]
    fn angles() {
        let p = Point3::new(0.0, 0.0, 1.0);
        assert!((E.angle(p, Vec3::E1, Vec3::E2).unwrap() - FRAC_PI_2).abs() < 1e-15);
        let u = Vec3::new(0.3, -2.0, 0.7);
        assert_eq!(E.angle(p, u, u).unwrap(), 0.0);
        assert_eq!(H.angle(p, u, u).unwrap(), 0.0);
        assert!((H.angle(p, u, -u).unwrap() - std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(H.angle(p, u, Vec3::ZERO), Err(Error::ZeroVector));
    }

    #[test]
    fn angle_matches_clamped_arccos() {
        let p = Point3::new(0.2, 0.1, 0.6);
        let u = Vec3::new(0.3, -2.0, 0.7);
        let v = Vec3::new(1.1, 0.4, -0.2);
        let c = H.inner(p, u, v).unwrap() / (H.norm(p, u).unwrap() * H.norm(p, v).unwrap());
        let expected = c.clamp(-1.0, 1.0).acos();
        assert!((H.angle(p, u, v).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn connection_hand_values() {
        let dy = Vec3::new(0.5, -1.0, 2.0);
        let any = Vec3::new(3.0, 1.0, -1.0);
        assert_eq!(
            E.covariant_derivative(Point3::new(1.0, 1.0, 1.0), any, any, dy)
                .unwrap(),
            dy
        );

        let r = H
            .covariant_derivative(Point3::new(0.0, 0.0, 1.0), Vec3::E3, Vec3::E3, Vec3::ZERO)
            .unwrap();
        assert_eq!(r, Vec3::new(0.0, 0.0, -1.0));

        // unit tangent (c, 0, 0) on the horosphere z = c
        for c in [0.5, 1.0, 3.0] {
            let t = Vec3::new(c, 0.0, 0.0);
            let r = H
                .covariant_derivative(Point3::new(0.0, 0.0, c), t, t, Vec3::ZERO)
                .unwrap();
            assert_eq!(r, Vec3::new(0.0, 0.0, c));
        }
    }

    #[test]
    fn coordinate_fields_are_torsion_free() {
        let p = Point3::new(0.4, -0.3, 1.7);
        let basis = [Vec3::E1, Vec3::E2, Vec3::E3];
        for x in basis {
            for y in basis {
                let xy = H.covariant_derivative(p, x, y, Vec3::ZERO).unwrap();
                let yx = H.covariant_derivative(p, y, x, Vec3::ZERO).unwrap();
                assert_eq!(xy, yx);
            }
        }
    }

    #[test]
    fn completed_frame_is_positive_and_unit() {
        let p = Point3::new(0.0, 0.0, 2.0);
        let t = Vec3::new(2.0, 0.0, 0.0);
        let n = Vec3::new(0.0, 2.0, 0.0);
        let b = H.complete_frame(p, t, n).unwrap();
        assert_eq!(b, Vec3::new(0.0, 0.0, 2.0));
        assert!((H.norm(p, b).unwrap() - 1.0).abs() < 1e-15);
    }
}
