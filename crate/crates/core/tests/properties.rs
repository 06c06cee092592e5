use std::f64::consts::{FRAC_PI_2, PI};

use helixkit_core::helices::{self, complementary_elliptic};
use helixkit_core::surfaces::containment_residual;
use helixkit_core::{
    catalog_surface, lancret_report, Curve, Helix, HelixSpec, Interval, Metric, Point3, Tolerances,
    Vec3,
};
use proptest::prelude::*;

fn theta_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![0.1..FRAC_PI_2 - 0.1, FRAC_PI_2 + 0.1..PI - 0.1]
}

fn closed_family() -> impl Strategy<Value = HelixSpec> {
    prop_oneof![
        (0.3..3.0f64, theta_strategy())
            .prop_map(|(r, theta)| HelixSpec::EuclideanRotational { r, theta }),
        (0.5..2.0f64, 0.3..3.0f64, theta_strategy())
            .prop_map(|(m, c, theta)| HelixSpec::HypDilation { m, c, theta }),
        (0.5..2.0f64, 0.3..3.0f64, theta_strategy())
            .prop_map(|(m, c, theta)| HelixSpec::HypElliptic { m, c, theta }),
        (-2.0..2.0f64, -2.0..2.0f64, 0.3..3.0f64, 0.0..PI - 0.01)
            .prop_map(|(x0, y0, c, theta)| HelixSpec::HypParabolic { x0, y0, c, theta }),
        (0.3..3.0f64, 0.3..3.0f64).prop_map(|(r, h)| HelixSpec::PositionAngle { r, h }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frames_are_orthonormal(spec in closed_family(), s in 0.0..5.0f64) {
        let h = Helix::generate(spec).unwrap();
        let f = h.curve.frenet(s).unwrap();
        let p = h.curve.point(s).unwrap();
        let m = h.curve.metric();
        let frame = [f.t, f.n, f.b];
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((m.inner(p, frame[i], frame[j]).unwrap() - want).abs() < 1e-5);
            }
        }
        // positively oriented
        prop_assert!(f.t.cross(f.n).dot(f.b) > 0.0);
    }

    #[test]
    fn binormal_derivative_is_minus_tau_normal(spec in closed_family(), s in 0.5..4.5f64) {
        let h = Helix::generate(spec).unwrap();
        let c = &h.curve;
        let d = 1e-4;
        let f = c.frenet(s).unwrap();
        let db = (c.frenet(s + d).unwrap().b - c.frenet(s - d).unwrap().b) / (2.0 * d);
        let p = c.point(s).unwrap();
        let nabla_b = c.metric().covariant_derivative(p, f.t, f.b, db).unwrap();
        let diff = nabla_b + f.n * f.tau;
        prop_assert!(c.metric().norm(p, diff).unwrap() < 1e-4);
    }

    #[test]
    fn inner_is_symmetric_and_positive(
        x in -3.0..3.0f64, y in -3.0..3.0f64, z in 0.01..3.0f64,
        u in prop::array::uniform3(-5.0..5.0f64), v in prop::array::uniform3(-5.0..5.0f64),
    ) {
        let p = Point3::new(x, y, z);
        let (u, v) = (Vec3::new(u[0], u[1], u[2]), Vec3::new(v[0], v[1], v[2]));
        for m in [Metric::Euclidean, Metric::HyperbolicUhs] {
            prop_assert_eq!(m.inner(p, u, v).unwrap(), m.inner(p, v, u).unwrap());
            if u.norm_e() > 1e-9 {
                prop_assert!(m.inner(p, u, u).unwrap() > 0.0);
            }
        }
    }

    #[test]
    fn metric_compatibility_along_curves(
        a in prop::array::uniform3(-1.0..1.0f64),
        b in prop::array::uniform3(-1.0..1.0f64),
        s in -1.0..1.0f64,
    ) {
        // γ(s) = (a0 sin s, a1 cos s, 2 + a2 sin 2s); X(s), Y(s) trigonometric
        let gamma = |s: f64| Point3::new(a[0] * s.sin(), a[1] * s.cos(), 2.0 + a[2] * (2.0 * s).sin());
        let dgamma = |s: f64| Vec3::new(a[0] * s.cos(), -a[1] * s.sin(), 2.0 * a[2] * (2.0 * s).cos());
        let x = |s: f64| Vec3::new(b[0] + s.cos(), b[1] * s, (b[2] * s).sin());
        let dx = |s: f64| Vec3::new(-s.sin(), b[1], b[2] * (b[2] * s).cos());
        let y = |s: f64| Vec3::new((s * b[0]).exp(), s * s, b[2]);
        let dy = |s: f64| Vec3::new(b[0] * (s * b[0]).exp(), 2.0 * s, 0.0);
        for m in [Metric::Euclidean, Metric::HyperbolicUhs] {
            let f = |s: f64| m.inner(gamma(s), x(s), y(s)).unwrap();
            let h = 1e-5;
            let lhs = (f(s + h) - f(s - h)) / (2.0 * h);
            let p = gamma(s);
            let t = dgamma(s);
            let rhs = m.inner(p, m.covariant_derivative(p, t, x(s), dx(s)).unwrap(), y(s)).unwrap()
                + m.inner(p, x(s), m.covariant_derivative(p, t, y(s), dy(s)).unwrap()).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-5 * (1.0 + rhs.abs()), "{m}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn scale_parameter_does_not_change_curvature(m1 in 0.2..5.0f64, m2 in 0.2..5.0f64, c in 0.3..3.0f64, theta in theta_strategy()) {
        let a = Helix::generate(HelixSpec::HypDilation { m: m1, c, theta }).unwrap().curve.frenet(1.0).unwrap();
        let b = Helix::generate(HelixSpec::HypDilation { m: m2, c, theta }).unwrap().curve.frenet(1.0).unwrap();
        prop_assert!((a.kappa - b.kappa).abs() < 1e-7);
        prop_assert!((a.tau - b.tau).abs() < 1e-7);
    }

    #[test]
    fn dilation_and_elliptic_families_coincide(m in 0.5..2.0f64, c in 0.3..3.0f64, theta in 0.0..PI - 1e-9, s in 0.0..5.0f64) {
        let d = Helix::generate(HelixSpec::HypDilation { m, c, theta }).unwrap();
        let (theta_e, reversed) = complementary_elliptic(theta);
        let e = helices::generate(HelixSpec::HypElliptic { m, c, theta: theta_e }, Interval::new(-5.0, 5.0).unwrap()).unwrap().curve;
        let se = if reversed { -s } else { s };
        let (p, q) = (d.curve.point(s).unwrap(), e.point(se).unwrap());
        prop_assert!(p.distance(q) < 1e-12 * (1.0 + p.to_vec().norm_e()), "{p} vs {q}");
    }

    #[test]
    fn cone_containment(spec in closed_family()) {
        let h = Helix::generate(spec.clone()).unwrap();
        for claim in &h.surfaces {
            let r = containment_residual(&h.curve, &catalog_surface(claim.surface), 50).unwrap();
            prop_assert!(r < 1e-9, "{spec:?} {}: {r}", claim.surface);
        }
    }

    #[test]
    fn horosphere_helices_lie_in_a_vertical_plane(x0 in -3.0..3.0f64, y0 in -3.0..3.0f64, c in 0.2..4.0f64, theta in 0.0..PI - 1e-6) {
        let h = Helix::generate(HelixSpec::HypParabolic { x0, y0, c, theta }).unwrap();
        let (st, ct) = theta.sin_cos();
        for s in h.curve.sample_params(20).unwrap() {
            let p = h.curve.point(s).unwrap();
            prop_assert_eq!(p.z, c);
            prop_assert!((st * p.x - ct * p.y - (x0 * st - y0 * ct)).abs() < 1e-12 * (1.0 + s.abs() * c));
        }
    }
}

#[test]
fn constant_kt_gives_constant_ratio() {
    let tol = Tolerances::default();
    for spec in [
        HelixSpec::HypDilation {
            m: 1.0,
            c: 0.8,
            theta: 0.9,
        },
        HelixSpec::EuclideanRotational { r: 2.0, theta: 0.3 },
    ] {
        let h = Helix::generate(spec).unwrap();
        let r = lancret_report(&h.curve, 30, h.curve.domain(), &tol).unwrap();
        assert!(r.residual("kappa_spread").unwrap() < 1e-8);
        assert!(r.residual("tau_spread").unwrap() < 1e-8);
        assert!(r.residual("lancret_ratio_spread").unwrap() < 1e-7);
    }
}

#[test]
fn central_differences_converge_at_second_order() {
    // circular helix r = 1, θ = 0.5 without analytic derivatives
    let theta = 0.5_f64;
    let b = theta.cos();
    let exact_k = theta.cos().powi(2);
    let err = |step: f64| {
        let c = Curve::finite_difference(
            Metric::Euclidean,
            Interval::new(0.0, 2.0).unwrap(),
            move |s| Point3::new((b * s).cos(), (b * s).sin(), s * theta.sin()),
            step,
        )
        .unwrap();
        let speed_err = (c.speed(1.0).unwrap() - 1.0).abs();
        let kappa_err = (c.acceleration(1.0).unwrap().norm_e() - exact_k).abs();
        (speed_err, kappa_err)
    };
    let (v1, k1) = err(2e-2);
    let (v2, k2) = err(1e-2);
    assert!((3.5..4.5).contains(&(v1 / v2)), "speed ratio {}", v1 / v2);
    assert!((3.5..4.5).contains(&(k1 / k2)), "kappa ratio {}", k1 / k2);
}
