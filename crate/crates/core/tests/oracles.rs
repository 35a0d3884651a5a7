mod common;

use std::f64::consts::PI;

use g3pencil::curve::Curve;
use g3pencil::expr::{fresnel_c, fresnel_s};
use g3pencil::g3::G3Vector;

use common::{cumulative, simpson};

fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

#[test]
fn fresnel_against_quadrature() {
    let xs = grid(-10.0, 10.0, 1000);
    let s_ref = cumulative(&common::sin_integrand, &xs, 1e-14);
    let c_ref = cumulative(&common::cos_integrand, &xs, 1e-14);
    let mut worst: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        worst = worst.max((fresnel_s(x) - s_ref[i]).abs());
        worst = worst.max((fresnel_c(x) - c_ref[i]).abs());
    }
    assert!(worst <= 1e-10, "worst {worst:e}");
}

#[test]
fn fresnel_reference_values() {
    // mpmath fresnels(1), fresnelc(1)
    assert!((fresnel_s(1.0) - 0.438259147390354766).abs() < 1e-15);
    assert!((fresnel_c(1.0) - 0.779893400376822829).abs() < 1e-15);
}

/// `r(s) - r(0)` from quadrature of a tangent given in closed form.
fn integrate_tangent(t: impl Fn(f64) -> (f64, f64), s: f64) -> (f64, f64) {
    let y = simpson(&|u| t(u).0, 0.0, s, 1e-13);
    let z = simpson(&|u| t(u).1, 0.0, s, 1e-13);
    (y, z)
}

fn helix_tangent(u: f64) -> (f64, f64) {
    (4.0 * (u * u / 8.0).sin(), -4.0 * (u * u / 8.0).cos())
}

fn anti_salkowski_tangent(u: f64) -> (f64, f64) {
    let (sn, cs) = u.sin_cos();
    let (sh, ch) = ((u / 4.0).sinh(), (u / 4.0).cosh());
    let k = 16.0 / 289.0;
    (
        k * (17.0 * sn * ch + 17.0 / 4.0 * cs * sh),
        -k * (17.0 * cs * ch - 17.0 / 4.0 * sn * sh),
    )
}

fn check_points(curve: &Curve, t: fn(f64) -> (f64, f64), ss: &[f64], tol: f64) -> f64 {
    let r0 = curve.point(0.0).unwrap();
    let mut worst: f64 = 0.0;
    for &s in ss {
        let (y, z) = integrate_tangent(t, s);
        let d = curve.point(s).unwrap() - r0 - G3Vector::new(s, y, z);
        worst = worst.max(d.galilean_norm());
    }
    assert!(worst <= tol, "worst {worst:e}");
    worst
}

#[test]
fn helix_points_integrate_the_tangent() {
    check_points(&Curve::fresnel_helix(), helix_tangent, &grid(-2.0 * PI, 2.0 * PI, 41), 1e-10);
}

#[test]
fn printed_fresnel_argument_is_a_different_curve() {
    let printed = Curve::new(g3pencil::curve::CurveSpec::FresnelHelix { as_printed: true });
    let (y, _) = integrate_tangent(helix_tangent, 3.0);
    let off = (printed.point(3.0).unwrap().y - printed.point(0.0).unwrap().y - y).abs();
    assert!(off > 0.1, "{off}");
}

#[test]
fn anti_salkowski_points_integrate_the_tangent() {
    let curve = Curve::anti_salkowski();
    assert!((curve.point(0.0).unwrap().y + 240.0 / 289.0).abs() < 1e-15);
    check_points(&curve, anti_salkowski_tangent, &grid(-2.0 * PI, 2.0 * PI, 41), 1e-10);
}

#[test]
fn frames_match_closed_forms() {
    let helix = Curve::fresnel_helix();
    for s in grid(0.2, 2.0 * PI, 50) {
        let fr = helix.frenet(s).unwrap();
        let (sn, cs) = (s * s / 8.0).sin_cos();
        let want = [
            G3Vector::new(1.0, 4.0 * sn, -4.0 * cs),
            G3Vector::isotropic(cs, sn),
            G3Vector::isotropic(-sn, cs),
        ];
        for (got, want) in [fr.t, fr.n, fr.b].into_iter().zip(want) {
            assert!((got - want).galilean_norm() < 1e-12, "s={s}: {got} vs {want}");
        }
    }
    let anti = Curve::anti_salkowski();
    for s in grid(-3.0, 3.0, 50) {
        let fr = anti.frenet(s).unwrap();
        let (sn, cs) = s.sin_cos();
        assert!((fr.n - G3Vector::isotropic(cs, sn)).galilean_norm() < 1e-12);
        assert!((fr.b - G3Vector::isotropic(-sn, cs)).galilean_norm() < 1e-12);
        let (ty, tz) = anti_salkowski_tangent(s);
        assert!((fr.t - G3Vector::new(1.0, ty, tz)).galilean_norm() < 1e-12);
    }
}
