//! Helices and constant-angle curves in Euclidean space and in the upper
//! half-space model of hyperbolic space.
//!
//! The crate generates every helix family for the rotation, dilation and
//! parabolic Killing fields, computes Frenet frames numerically through the
//! conformal Levi-Civita connection, and checks the generated curves against
//! their closed-form curvature, torsion, axis and surface properties.

pub mod curve;
pub mod error;
pub mod geometry;
pub mod helices;
pub mod killing;
pub mod quadrature;
pub mod surfaces;
pub mod verify;

pub use curve::{discrete_curvature, Curve, DerivativeMode, FrenetData, Interval};
pub use error::{Error, Result};
pub use geometry::{Metric, Point3, Vec3};
pub use helices::{
    cone_axis_angle, generate, generate_mn, generate_mn_with, mn_example_closed_forms, pitch,
    ClosedFormKT, Family, Helix, HelixSpec, MnConstants, MnExample, Omega,
};
pub use killing::{basis, killing_residual, FieldKind, KillingField};
pub use surfaces::{catalog_surface, geodesic_residual, ImplicitSurface, SurfaceKind};
pub use verify::{
    general_helix_report, lancret_report, run_battery, BatteryOptions, Check, Tolerances, Verdict,
    VerificationReport,
};
