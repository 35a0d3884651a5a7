//! Test-side oracles shared by the integration suites. Nothing here calls
//! into the library's numerics.

#![allow(dead_code)]

pub mod corpus;

use proptest::prelude::*;

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `eps`.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    fn rule(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = rule(fa, flm, fm, a, m);
        let right = rule(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * eps {
            return left + right + delta / 15.0;
        }
        go(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)
            + go(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
    }
    if a == b {
        return 0.0;
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    go(f, a, b, fa, fm, fb, rule(fa, fm, fb, a, b), eps, 50)
}

/// `∫₀ˣ g` at every `x` in `xs`, accumulated over the sorted points so each
/// panel is integrated once.
pub fn cumulative(g: &dyn Fn(f64) -> f64, xs: &[f64], eps: f64) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&i, &j| xs[i].total_cmp(&xs[j]));
    let mut out = vec![0.0; xs.len()];
    let neg: Vec<usize> = order.iter().copied().filter(|&i| xs[i] < 0.0).rev().collect();
    let pos: Vec<usize> = order.iter().copied().filter(|&i| xs[i] >= 0.0).collect();
    for side in [neg, pos] {
        let (mut at, mut acc) = (0.0, 0.0);
        for i in side {
            acc += simpson(g, at, xs[i], eps);
            at = xs[i];
            out[i] = acc;
        }
    }
    out
}

/// Fresnel integrands.
pub fn sin_integrand(t: f64) -> f64 {
    (std::f64::consts::FRAC_PI_2 * t * t).sin()
}

pub fn cos_integrand(t: f64) -> f64 {
    (std::f64::consts::FRAC_PI_2 * t * t).cos()
}

/// Random expression text built from functions that stay smooth and of
/// moderate size for `s, v ∈ [-2, 2]`.
pub fn smooth_expr() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("s".to_string()),
        Just("v".to_string()),
        Just("pi".to_string()),
        (-2.0..2.0f64).prop_map(|c| format!("({c:.3})")),
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})+({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})-({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})/(2+cos({b}))")),
            inner.clone().prop_map(|a| format!("sin({a})")),
            inner.clone().prop_map(|a| format!("cos({a})")),
            inner.clone().prop_map(|a| format!("exp(sin({a}))")),
            inner.clone().prop_map(|a| format!("ln(2+cos({a}))")),
            inner.clone().prop_map(|a| format!("sqrt(1+({a})^2)")),
            inner.clone().prop_map(|a| format!("sinh(sin({a}))")),
            inner.clone().prop_map(|a| format!("cosh(cos({a}))")),
            inner.clone().prop_map(|a| format!("tan(sin({a}))")),
            inner.clone().prop_map(|a| format!("fresnelS({a})")),
            inner.clone().prop_map(|a| format!("fresnelC({a})")),
            inner.clone().prop_map(|a| format!("(cos({a})+2)^1.5")),
            inner.clone().prop_map(|a| format!("-({a})^3")),
        ]
    })
}

/// Whether central differences at the steps used by [`jet_matches_fd`] are
/// themselves accurate for `text` at `s`: the truncation error estimated from
/// doubling the step must stay a decade below the tolerance. Fast
/// oscillation (e.g. `fresnelC(s^3)` near `s = 2`) breaks the oracle, not
/// the jets. Uses plain evaluation only.
pub fn fd_oracle_valid(text: &str, s: f64, v: f64) -> bool {
    use g3pencil::expr::{eval, parse};
    let Ok(e) = parse(text) else { return true };
    let f = |x: f64| eval(&e, x, v);
    let d1 = |h: f64| Ok::<_, g3pencil::expr::ExprError>((f(s + h)? - f(s - h)?) / (2.0 * h));
    let d2 = |h: f64| Ok::<_, g3pencil::expr::ExprError>((f(s + h)? - 2.0 * f(s)? + f(s - h)?) / (h * h));
    let (Ok(a), Ok(b), Ok(c), Ok(d)) = (d1(1e-5), d1(2e-5), d2(1e-4), d2(2e-4)) else {
        return true;
    };
    (b - a).abs() / 3.0 <= 1e-7 * (1.0 + a.abs()) && (d - c).abs() / 3.0 <= 1e-5 * (1.0 + c.abs())
}

/// Checks first and second derivatives from the jet of `text` in `s`
/// against central differences of plain evaluation.
pub fn jet_matches_fd(text: &str, s: f64, v: f64) -> Result<(), String> {
    use g3pencil::expr::{eval, eval_jet3, parse, Var};
    let e = parse(text).map_err(|err| format!("{text}: {err}"))?;
    let j = eval_jet3(&e, Var::S, s, v).map_err(|err| format!("{text}: {err}"))?;
    let f = |x: f64| eval(&e, x, v).unwrap();
    let h1 = 1e-5;
    let d1 = (f(s + h1) - f(s - h1)) / (2.0 * h1);
    if (j.c1 - d1).abs() > 1e-6 * (1.0 + j.c1.abs()) {
        return Err(format!("{text} at s={s}: c1 {} vs fd {d1}", j.c1));
    }
    let h2 = 1e-4;
    let d2 = (f(s + h2) - 2.0 * f(s) + f(s - h2)) / (h2 * h2);
    if (j.c2 - d2).abs() > 1e-4 * (1.0 + j.c2.abs()) {
        return Err(format!("{text} at s={s}: c2 {} vs fd {d2}", j.c2));
    }
    Ok(())
}
