//! Parametrized curves and their Frenet apparatus in either ambient metric.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Metric, Point3, Vec3};

/// Curves whose speed deviates from 1 by more than this are not framed.
pub const UNIT_SPEED_TOLERANCE: f64 = 1e-6;
/// Below this curvature the normal and binormal are undefined.
pub const GEODESIC_THRESHOLD: f64 = 1e-9;
/// Default differencing step on the arc-length parameter.
pub const DEFAULT_STEP: f64 = 1e-4;
/// Minimum padding between the reporting domain and the evaluation domain.
pub const EVAL_MARGIN: f64 = 1e-2;

pub type PointFn = Arc<dyn Fn(f64) -> Point3 + Send + Sync>;
pub type VectorFn = Arc<dyn Fn(f64) -> Vec3 + Send + Sync>;

/// A closed parameter interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub min: f64,
    pub max: f64,
}

impl Interval {
    pub fn new(min: f64, max: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || min >= max {
            return Err(Error::InvalidParameter {
                name: "range",
                value: max - min,
                reason: "interval must be finite with min < max",
            });
        }
        Ok(Self { min, max })
    }

    pub fn contains(&self, s: f64) -> bool {
        s >= self.min && s <= self.max
    }

    pub fn len(&self) -> f64 {
        self.max - self.min
    }

    pub fn extended(&self, margin: f64) -> Interval {
        Interval {
            min: self.min - margin,
            max: self.max + margin,
        }
    }

    /// `n` equispaced parameters covering the interval, endpoints included.
    pub fn linspace(&self, n: usize) -> Result<Vec<f64>> {
        if n < 2 {
            return Err(Error::TooFewSamples { min: 2, got: n });
        }
        let h = self.len() / (n - 1) as f64;
        Ok((0..n)
            .map(|i| {
                if i == n - 1 {
                    self.max
                } else {
                    self.min + h * i as f64
                }
            })
            .collect())
    }

    fn check(&self, s: f64) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                s,
                min: self.min,
                max: self.max,
            })
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.min, self.max)
    }
}

/// How a curve supplies its derivatives.
#[derive(Clone)]
pub enum DerivativeMode {
    /// First and second coordinate derivatives in closed form.
    Analytic {
        velocity: VectorFn,
        acceleration: VectorFn,
    },
    /// Central differences of the point map; second derivatives are nested
    /// central differences of the first.
    FiniteDifference { step: f64 },
}

impl fmt::Debug for DerivativeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivativeMode::Analytic { .. } => f.write_str("Analytic"),
            DerivativeMode::FiniteDifference { step } => f
                .debug_struct("FiniteDifference")
                .field("step", step)
                .finish(),
        }
    }
}

/// A parametrized curve `s ↦ γ(s)` in one of the ambient metrics.
///
/// `domain` is where results are reported; `eval_domain` is strictly larger
/// so that samples at the ends of `domain` can be differenced.
#[derive(Clone)]
pub struct Curve {
    eval: PointFn,
    domain: Interval,
    eval_domain: Interval,
    metric: Metric,
    mode: DerivativeMode,
    frame_step: f64,
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Curve")
            .field("domain", &self.domain)
            .field("eval_domain", &self.eval_domain)
            .field("metric", &self.metric)
            .field("mode", &self.mode)
            .finish()
    }
}

/// Frenet frame and scalars at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetData {
    pub s: f64,
    pub t: Vec3,
    pub n: Vec3,
    pub b: Vec3,
    pub kappa: f64,
    pub tau: f64,
}

impl Curve {
    pub fn analytic<E, V, A>(
        metric: Metric,
        domain: Interval,
        eval: E,
        velocity: V,
        acceleration: A,
    ) -> Self
    where
        E: Fn(f64) -> Point3 + Send + Sync + 'static,
        V: Fn(f64) -> Vec3 + Send + Sync + 'static,
        A: Fn(f64) -> Vec3 + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(eval),
            domain,
            eval_domain: domain.extended(EVAL_MARGIN),
            metric,
            mode: DerivativeMode::Analytic {
                velocity: Arc::new(velocity),
                acceleration: Arc::new(acceleration),
            },
            frame_step: DEFAULT_STEP,
        }
    }

    pub fn finite_difference<E>(
        metric: Metric,
        domain: Interval,
        eval: E,
        step: f64,
    ) -> Result<Self>
    where
        E: Fn(f64) -> Point3 + Send + Sync + 'static,
    {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "step",
                value: step,
                reason: "differencing step must be positive",
            });
        }
        Ok(Self {
            eval: Arc::new(eval),
            domain,
            eval_domain: domain.extended(EVAL_MARGIN.max(4.0 * step)),
            metric,
            mode: DerivativeMode::FiniteDifference { step },
            frame_step: step,
        })
    }

    /// Replaces the evaluation domain; it must contain the reporting domain.
    pub fn with_eval_domain(mut self, eval_domain: Interval) -> Self {
        debug_assert!(eval_domain.min <= self.domain.min && eval_domain.max >= self.domain.max);
        self.eval_domain = eval_domain;
        self
    }

    /// Step used to difference the unit normal when computing torsion.
    pub fn with_frame_step(mut self, step: f64) -> Self {
        self.frame_step = step;
        self
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn eval_domain(&self) -> Interval {
        self.eval_domain
    }

    pub fn mode(&self) -> &DerivativeMode {
        &self.mode
    }

    /// Same curve restricted (or widened) to a new reporting domain.
    pub fn restricted(&self, domain: Interval) -> Result<Curve> {
        self.eval_domain.check(domain.min)?;
        self.eval_domain.check(domain.max)?;
        let mut c = self.clone();
        c.domain = domain;
        Ok(c)
    }

    /// Point on the curve; `s` may lie anywhere in the evaluation domain.
    pub fn point(&self, s: f64) -> Result<Point3> {
        self.eval_domain.check(s)?;
        let p = (self.eval)(s);
        self.metric.check_point(p)?;
        Ok(p)
    }

    fn raw_velocity(&self, s: f64) -> Result<Vec3> {
        match &self.mode {
            DerivativeMode::Analytic { velocity, .. } => {
                self.eval_domain.check(s)?;
                Ok(velocity(s))
            }
            DerivativeMode::FiniteDifference { step } => {
                let h = *step;
                Ok((self.point(s + h)? - self.point(s - h)?) / (2.0 * h))
            }
        }
    }

    fn raw_acceleration(&self, s: f64) -> Result<Vec3> {
        match &self.mode {
            DerivativeMode::Analytic { acceleration, .. } => {
                self.eval_domain.check(s)?;
                Ok(acceleration(s))
            }
            DerivativeMode::FiniteDifference { step } => {
                let h = *step;
                Ok((self.raw_velocity(s + h)? - self.raw_velocity(s - h)?) / (2.0 * h))
            }
        }
    }

    /// Coordinate velocity `γ'(s)`.
    pub fn velocity(&self, s: f64) -> Result<Vec3> {
        self.domain.check(s)?;
        self.raw_velocity(s)
    }

    /// Coordinate acceleration `γ''(s)`.
    pub fn acceleration(&self, s: f64) -> Result<Vec3> {
        self.domain.check(s)?;
        self.raw_acceleration(s)
    }

    pub fn speed(&self, s: f64) -> Result<f64> {
        let v = self.velocity(s)?;
        self.metric.norm(self.point(s)?, v)
    }

    /// `∇_T T` at `s` together with the point and `T = γ'`.
    fn curvature_vector_raw(&self, s: f64) -> Result<(Point3, Vec3, Vec3)> {
        let p = self.point(s)?;
        let t = self.raw_velocity(s)?;
        let dt = self.raw_acceleration(s)?;
        Ok((p, t, self.metric.covariant_derivative(p, t, t, dt)?))
    }

    /// `∇_T T` where `T = γ'`. For unit-speed curves this is `κN`.
    pub fn curvature_vector(&self, s: f64) -> Result<Vec3> {
        self.domain.check(s)?;
        Ok(self.curvature_vector_raw(s)?.2)
    }

    fn unit_normal_raw(&self, s: f64) -> Result<Vec3> {
        let (p, _, a) = self.curvature_vector_raw(s)?;
        let kappa = self.metric.norm(p, a)?;
        if kappa < GEODESIC_THRESHOLD {
            return Err(Error::GeodesicPoint { s, kappa });
        }
        Ok(a / kappa)
    }

    /// Frenet frame `(T, N, B)` with curvature and torsion at `s`.
    ///
    /// `B` completes `(T, N)` to a positively oriented frame of the chart;
    /// `τ = ⟨∇_T N + κT, B⟩`, with the derivative of `N` taken by central
    /// differences along the curve.
    pub fn frenet(&self, s: f64) -> Result<FrenetData> {
        self.domain.check(s)?;
        let (p, t, a) = self.curvature_vector_raw(s)?;
        let speed = self.metric.norm(p, t)?;
        if (speed - 1.0).abs() > UNIT_SPEED_TOLERANCE {
            return Err(Error::NotUnitSpeed { s, speed });
        }
        let kappa = self.metric.norm(p, a)?;
        if kappa < GEODESIC_THRESHOLD {
            return Err(Error::GeodesicPoint { s, kappa });
        }
        let n = a / kappa;
        let h = self.frame_step;
        let dn = (self.unit_normal_raw(s + h)? - self.unit_normal_raw(s - h)?) / (2.0 * h);
        let b = self.metric.complete_frame(p, t, n)?;
        let dn_cov = self.metric.covariant_derivative(p, t, n, dn)?;
        let tau = self.metric.inner(p, dn_cov + t * kappa, b)?;
        Ok(FrenetData {
            s,
            t,
            n,
            b,
            kappa,
            tau,
        })
    }

    /// Equispaced parameters over the reporting domain.
    pub fn sample_params(&self, samples: usize) -> Result<Vec<f64>> {
        self.domain.linspace(samples)
    }

    /// `max |speed(s) − 1|` over `samples` equispaced parameters.
    pub fn unit_speed_residual(&self, samples: usize) -> Result<f64> {
        self.sample_params(samples)?
            .into_iter()
            .try_fold(0.0_f64, |acc, s| Ok(acc.max((self.speed(s)? - 1.0).abs())))
    }
}

/// Curvature of a polyline sampled at uniform arc-length spacing, estimated
/// by central differences at interior vertices. Endpoints yield `None`.
pub fn discrete_curvature(
    metric: Metric,
    points: &[Point3],
    spacing: f64,
) -> Result<Vec<Option<f64>>> {
    if points.len() < 3 {
        return Err(Error::TooFewSamples {
            min: 3,
            got: points.len(),
        });
    }
    let mut out = vec![None; points.len()];
    for i in 1..points.len() - 1 {
        let (prev, p, next) = (points[i - 1], points[i], points[i + 1]);
        let t = (next - prev) / (2.0 * spacing);
        let a = ((next - p) - (p - prev)) / (spacing * spacing);
        let nabla = metric.covariant_derivative(p, t, t, a)?;
        out[i] = Some(metric.norm(p, nabla)?);
    }
    Ok(out)
}
