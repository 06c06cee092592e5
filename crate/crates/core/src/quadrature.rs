//! Cumulative composite Simpson integration on a fixed grid.

use std::sync::Arc;

use crate::curve::Interval;

/// Default number of Simpson panels per unit of parameter length.
pub const PANELS_PER_UNIT: f64 = 1e4;

fn simpson<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
}

/// Running integral `s ↦ ∫_{start}^{s} f` tabulated at grid nodes.
///
/// Values between nodes add one Simpson panel from the preceding node, so the
/// result is accurate to the panel error everywhere in the table range.
#[derive(Clone)]
pub struct CumulativeIntegral {
    range: Interval,
    step: f64,
    prefix: Vec<f64>,
    integrand: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl CumulativeIntegral {
    pub fn new<F>(integrand: F, range: Interval, panels_per_unit: f64) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let panels = ((range.len() * panels_per_unit).ceil() as usize).max(1);
        let step = range.len() / panels as f64;
        let mut prefix = Vec::with_capacity(panels + 1);
        prefix.push(0.0);
        let mut acc = 0.0;
        for i in 0..panels {
            let a = range.min + step * i as f64;
            acc += simpson(&integrand, a, a + step);
            prefix.push(acc);
        }
        Self {
            range,
            step,
            prefix,
            integrand: Arc::new(integrand),
        }
    }

    pub fn range(&self) -> Interval {
        self.range
    }

    /// Grid nodes, endpoints included.
    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.prefix.len()).map(move |i| self.range.min + self.step * i as f64)
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// `∫_{start}^{s} f`. `s` is clamped into the table range.
    pub fn eval(&self, s: f64) -> f64 {
        let s = s.clamp(self.range.min, self.range.max);
        let i = (((s - self.range.min) / self.step).floor() as usize).min(self.prefix.len() - 1);
        let node = self.range.min + self.step * i as f64;
        self.prefix[i] + simpson(self.integrand.as_ref(), node, s)
    }

    pub fn integrand(&self, s: f64) -> f64 {
        (self.integrand)(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_smooth_functions() {
        let r = Interval::new(0.0, 3.0).unwrap();
        let c = CumulativeIntegral::new(f64::cos, r, 1e3);
        for s in [0.0, 0.123_456, 1.0, 2.999, 3.0] {
            assert!((c.eval(s) - s.sin()).abs() < 1e-13, "{s}");
        }
        let e = CumulativeIntegral::new(f64::exp, r, 1e3);
        assert!((e.eval(2.5) - (2.5_f64.exp() - 1.0)).abs() < 1e-11);
    }

    #[test]
    fn polynomial_of_degree_three_is_exact() {
        let r = Interval::new(-1.0, 2.0).unwrap();
        let c = CumulativeIntegral::new(|t| t * t * t - 2.0 * t, r, 2.0);
        let exact = |s: f64| (s.powi(4) - 1.0) / 4.0 - (s * s - 1.0);
        for s in [-1.0, -0.3, 0.77, 2.0] {
            assert!((c.eval(s) - exact(s)).abs() < 1e-13);
        }
    }
}
