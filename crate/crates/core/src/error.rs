use thiserror::Error;

/// Errors raised by the geometry, curve, and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point is not admissible for the hyperbolic metric (z = {z}, need z > 1e-12)")]
    Inadmissible { z: f64 },
    #[error("angle is undefined for a zero vector")]
    ZeroVector,
    #[error("parameter s = {s} lies outside the domain [{min}, {max}]")]
    OutsideDomain { s: f64, min: f64, max: f64 },
    #[error("curve is not unit speed at s = {s} (speed {speed})")]
    NotUnitSpeed { s: f64, speed: f64 },
    #[error(
        "geodesic point at s = {s}: curvature {kappa} is below the threshold, frame undefined"
    )]
    GeodesicPoint { s: f64, kappa: f64 },
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("radial function r(s) is not positive at s = {s} (r = {r})")]
    NonPositiveRadius { s: f64, r: f64 },
    #[error(
        "curve leaves the surface {surface}: containment residual {residual} exceeds {tolerance}"
    )]
    OffSurface {
        surface: String,
        residual: f64,
        tolerance: f64,
    },
    #[error("at least {min} samples are required, got {got}")]
    TooFewSamples { min: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
