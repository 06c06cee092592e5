//! Test-only oracles that do not share code paths with the library.

#![allow(dead_code)]

use helixkit_core::{Metric, Point3, Vec3};

/// Metric tensor `g_ij(p)` written out directly.
pub fn metric_tensor(metric: Metric, p: [f64; 3]) -> [[f64; 3]; 3] {
    let f = match metric {
        Metric::Euclidean => 1.0,
        Metric::HyperbolicUhs => 1.0 / (p[2] * p[2]),
    };
    let mut g = [[0.0; 3]; 3];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = f;
    }
    g
}

/// Christoffel symbols `Γ^k_ij` from central differences of the metric
/// tensor (the metric here is diagonal, so its inverse is elementwise).
pub fn christoffel(metric: Metric, p: [f64; 3]) -> [[[f64; 3]; 3]; 3] {
    let h = 1e-6;
    let mut dg = [[[0.0; 3]; 3]; 3]; // dg[l][i][j] = ∂_l g_ij
    for (l, slot) in dg.iter_mut().enumerate() {
        let mut a = p;
        let mut b = p;
        a[l] += h;
        b[l] -= h;
        let ga = metric_tensor(metric, a);
        let gb = metric_tensor(metric, b);
        for i in 0..3 {
            for j in 0..3 {
                slot[i][j] = (ga[i][j] - gb[i][j]) / (2.0 * h);
            }
        }
    }
    let g = metric_tensor(metric, p);
    let mut gamma = [[[0.0; 3]; 3]; 3];
    for k in 0..3 {
        let ginv = 1.0 / g[k][k];
        for i in 0..3 {
            for j in 0..3 {
                gamma[k][i][j] = 0.5 * ginv * (dg[i][k][j] + dg[j][k][i] - dg[k][i][j]);
            }
        }
    }
    gamma
}

/// `∇_X Y = dY + Γ(X, Y)` through Christoffel symbols.
pub fn covariant_oracle(metric: Metric, p: Point3, x: Vec3, y: Vec3, dy: Vec3) -> Vec3 {
    let gamma = christoffel(metric, [p.x, p.y, p.z]);
    let (xa, ya, d) = (x.to_array(), y.to_array(), dy.to_array());
    let mut out = d;
    for (k, o) in out.iter_mut().enumerate() {
        for i in 0..3 {
            for j in 0..3 {
                *o += gamma[k][i][j] * xa[i] * ya[j];
            }
        }
    }
    Vec3::new(out[0], out[1], out[2])
}

pub fn inner_oracle(metric: Metric, p: Point3, u: Vec3, v: Vec3) -> f64 {
    let g = metric_tensor(metric, [p.x, p.y, p.z]);
    let (a, b) = (u.to_array(), v.to_array());
    (0..3).map(|i| g[i][i] * a[i] * b[i]).sum()
}

/// Curvature and torsion of a unit-speed curve from its point map alone,
/// via Christoffel symbols and Gram–Schmidt on finite differences.
pub fn frenet_oracle<F: Fn(f64) -> Point3>(metric: Metric, gamma: F, s: f64) -> (f64, f64) {
    let h = 1e-3;
    let d1 = |s: f64| (gamma(s + h) - gamma(s - h)) / (2.0 * h);
    let d2 = |s: f64| {
        let (a, b, c) = (gamma(s + h), gamma(s), gamma(s - h));
        ((a - b) - (b - c)) / (h * h)
    };
    let acc = |s: f64| {
        let p = gamma(s);
        let t = d1(s);
        covariant_oracle(metric, p, t, t, d2(s))
    };
    let norm = |p: Point3, v: Vec3| inner_oracle(metric, p, v, v).sqrt();
    let p = gamma(s);
    let t = d1(s);
    let a = acc(s);
    let kappa = norm(p, a);
    let n = |s: f64| {
        let a = acc(s);
        a / norm(gamma(s), a)
    };
    let dn = (n(s + h) - n(s - h)) / (2.0 * h);
    let nn = n(s);
    let nabla_n = covariant_oracle(metric, p, t, nn, dn);
    let w = nabla_n + t * kappa;
    // orient B by the Euclidean triple product sign
    let b_dir = t.cross(nn);
    let sign = if w.dot(b_dir) >= 0.0 { 1.0 } else { -1.0 };
    (kappa, sign * norm(p, w))
}
