//! Admissible curves `r(s) = (s, f(s), g(s))` and their Frenet apparatus.
//!
//! For an admissible curve `s` is the Galilean arc length and
//!
//! ```text
//! t = (1, f', g')            κ = sqrt(f''² + g''²)
//! n = (0, f'', g'') / κ      τ = (f'' g''' - g'' f''') / κ²
//! b = (0, -g'', f'') / κ
//! ```
//!
//! The derivatives of `f` and `g` come from Taylor jets, so they are exact
//! up to rounding. The Darboux vector is `w = τt + κb`, its unit form is
//! `E₀ = w / |τ|`, and the D-axis `E₀ ∧ t` reduces to `(κ/|τ|) n`.

use serde::Serialize;
use thiserror::Error;

use crate::expr::{self, Expr, ExprError, Taylor, Var};
use crate::g3::G3Vector;

pub const DEFAULT_KAPPA_MIN: f64 = 1e-8;

/// Half-width of the excluded band around the inflection of the Fresnel
/// helix at `s = 0`.
pub const FRESNEL_GUARD: f64 = 0.1;

/// Relative tolerance used when testing κ, τ or |τ|/κ for constancy.
pub const CONSTANCY_RTOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("curvature vanishes at s = {s} (kappa = {kappa:e})")]
    CurvatureVanishes { s: f64, kappa: f64 },
    #[error("torsion vanishes at s = {s} (tau = {tau:e})")]
    TorsionVanishes { s: f64, tau: f64 },
    #[error("classification needs at least 16 samples, got {0}")]
    TooFewSamples(usize),
    #[error("empty parameter range [{0}, {1}]")]
    EmptyRange(f64, f64),
}

/// Which curve a [`Curve`] was built from.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveSpec {
    /// General helix with `κ = s`, `τ = s/4`. `as_printed` evaluates the
    /// Fresnel integrals at `s/√(2π)` instead of the argument `s/(2√π)` that
    /// reproduces the tangent `(1, 4 sin(s²/8), -4 cos(s²/8))`.
    FresnelHelix { as_printed: bool },
    /// Anti-Salkowski curve with `κ = cosh(s/4)`, `τ = 1`.
    AntiSalkowski,
    Explicit { f: Expr, g: Expr },
}

const FRESNEL_F: &str = "8*sqrt(pi)*fresnelS(s/(2*sqrt(pi)))";
const FRESNEL_G: &str = "-8*sqrt(pi)*fresnelC(s/(2*sqrt(pi)))";
const FRESNEL_F_PRINTED: &str = "8*sqrt(pi)*fresnelS(s/sqrt(2*pi))";
const FRESNEL_G_PRINTED: &str = "-8*sqrt(pi)*fresnelC(s/sqrt(2*pi))";
const ANTI_SALKOWSKI_F: &str = "16/289*(8*sin(s)*sinh(s/4)-15*cos(s)*cosh(s/4))";
const ANTI_SALKOWSKI_G: &str = "-16/289*(8*cos(s)*sinh(s/4)+15*sin(s)*cosh(s/4))";

impl CurveSpec {
    /// The component functions `(f, g)`.
    pub fn components(&self) -> (Expr, Expr) {
        let pair = |f: &str, g: &str| {
            (
                expr::parse(f).expect("built-in curve expression"),
                expr::parse(g).expect("built-in curve expression"),
            )
        };
        match self {
            CurveSpec::FresnelHelix { as_printed: false } => pair(FRESNEL_F, FRESNEL_G),
            CurveSpec::FresnelHelix { as_printed: true } => pair(FRESNEL_F_PRINTED, FRESNEL_G_PRINTED),
            CurveSpec::AntiSalkowski => pair(ANTI_SALKOWSKI_F, ANTI_SALKOWSKI_G),
            CurveSpec::Explicit { f, g } => (f.clone(), g.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetFrame {
    pub s: f64,
    pub t: G3Vector,
    pub n: G3Vector,
    pub b: G3Vector,
    pub kappa: f64,
    pub tau: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DarbouxData {
    /// `τt + κb`
    pub w: G3Vector,
    /// `w / |τ|`
    pub e0: G3Vector,
    /// `E₀ ∧ t`
    pub d_axis: G3Vector,
}

impl FrenetFrame {
    pub fn darboux(&self) -> DarbouxData {
        let w = self.tau * self.t + self.kappa * self.b;
        let e0 = (1.0 / self.tau.abs()) * w;
        DarbouxData {
            w,
            e0,
            d_axis: e0.cross(&self.t),
        }
    }
}

/// Frame plus first-order jets of κ and τ in `s`.
#[derive(Debug, Clone, Copy)]
pub struct FrameJet {
    pub point: G3Vector,
    pub frame: FrenetFrame,
    pub kappa: Taylor<2>,
    pub tau: Taylor<2>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum CurveClass {
    /// `|τ|/κ = mu` constant.
    GeneralHelix { mu: f64 },
    /// `κ = nu` constant, τ not.
    Salkowski { nu: f64 },
    /// `τ = xi` constant, κ not.
    AntiSalkowski { xi: f64 },
    Generic,
}

#[derive(Debug, Clone)]
pub struct Curve {
    spec: CurveSpec,
    f: Expr,
    g: Expr,
    kappa_min: f64,
}

impl Curve {
    pub fn new(spec: CurveSpec) -> Curve {
        let (f, g) = spec.components();
        Curve {
            spec,
            f,
            g,
            kappa_min: DEFAULT_KAPPA_MIN,
        }
    }

    pub fn fresnel_helix() -> Curve {
        Curve::new(CurveSpec::FresnelHelix { as_printed: false })
    }

    pub fn anti_salkowski() -> Curve {
        Curve::new(CurveSpec::AntiSalkowski)
    }

    pub fn explicit(f: Expr, g: Expr) -> Curve {
        Curve::new(CurveSpec::Explicit { f, g })
    }

    pub fn with_kappa_min(mut self, kappa_min: f64) -> Curve {
        self.kappa_min = kappa_min;
        self
    }

    pub fn spec(&self) -> &CurveSpec {
        &self.spec
    }

    pub fn kappa_min(&self) -> f64 {
        self.kappa_min
    }

    /// Open interval of `s` excluded from sampling because the frame is
    /// singular there.
    pub fn guard_band(&self) -> Option<(f64, f64)> {
        match self.spec {
            CurveSpec::FresnelHelix { .. } => Some((-FRESNEL_GUARD, FRESNEL_GUARD)),
            _ => None,
        }
    }

    pub fn point(&self, s: f64) -> Result<G3Vector, CurveError> {
        Ok(G3Vector::new(
            s,
            expr::eval(&self.f, s, 0.0)?,
            expr::eval(&self.g, s, 0.0)?,
        ))
    }

    pub fn frenet(&self, s: f64) -> Result<FrenetFrame, CurveError> {
        Ok(self.frame_jet(s)?.frame)
    }

    pub fn frame_jet(&self, s: f64) -> Result<FrameJet, CurveError> {
        let mut warnings = Vec::new();
        let f = expr::eval_taylor::<5>(&self.f, Var::S, s, 0.0, &mut warnings)?;
        let g = expr::eval_taylor::<5>(&self.g, Var::S, s, 0.0, &mut warnings)?;
        for w in &warnings {
            log::warn!("curve at s = {s}: {w}");
        }
        let [f1, f2, f3, f4] = [1, 2, 3, 4].map(|k| f.derivative(k));
        let [g1, g2, g3, g4] = [1, 2, 3, 4].map(|k| g.derivative(k));

        let kappa = f2.hypot(g2);
        if kappa < self.kappa_min {
            return Err(CurveError::CurvatureVanishes { s, kappa });
        }
        let tau = (f2 * g3 - g2 * f3) / (kappa * kappa);
        if tau.abs() < self.kappa_min {
            return Err(CurveError::TorsionVanishes { s, tau });
        }

        let fpp = Taylor([f2, f3]);
        let gpp = Taylor([g2, g3]);
        let fppp = Taylor([f3, f4]);
        let gppp = Taylor([g3, g4]);
        let kappa_jet = (fpp * fpp + gpp * gpp).sqrt();
        let tau_jet = (fpp * gppp - gpp * fppp) / (kappa_jet * kappa_jet);

        let frame = FrenetFrame {
            s,
            t: G3Vector::new(1.0, f1, g1),
            n: G3Vector::isotropic(f2 / kappa, g2 / kappa),
            b: G3Vector::isotropic(-g2 / kappa, f2 / kappa),
            kappa,
            tau,
        };
        Ok(FrameJet {
            point: G3Vector::new(s, f.value(), g.value()),
            frame,
            kappa: Taylor([kappa, kappa_jet.0[1]]),
            tau: Taylor([tau, tau_jet.0[1]]),
        })
    }

    /// `n` parameters spread uniformly over `[s_min, s_max]` minus the guard
    /// band. The flag reports whether the guard band removed anything.
    pub fn sample_parameters(
        &self,
        s_min: f64,
        s_max: f64,
        n: usize,
    ) -> Result<(Vec<f64>, bool), CurveError> {
        let mut pieces = vec![(s_min, s_max)];
        let mut excised = false;
        if let Some((lo, hi)) = self.guard_band() {
            if s_min < hi && s_max > lo {
                excised = true;
                pieces.clear();
                if s_min <= lo {
                    pieces.push((s_min, lo));
                }
                if s_max >= hi {
                    pieces.push((hi, s_max));
                }
            }
        }
        pieces.retain(|(a, b)| b > a);
        if pieces.is_empty() || n == 0 {
            return Err(CurveError::EmptyRange(s_min, s_max));
        }
        if n == 1 {
            return Ok((vec![pieces[0].0], excised));
        }
        let total: f64 = pieces.iter().map(|(a, b)| b - a).sum();
        let denom = (n - 1) as f64;
        let out = (0..n)
            .map(|i| {
                if pieces.len() == 1 {
                    let (a, b) = pieces[0];
                    return if i == n - 1 { b } else { a + (b - a) * (i as f64) / denom };
                }
                if i == n - 1 {
                    return pieces[pieces.len() - 1].1;
                }
                let mut pos = total * (i as f64) / denom;
                for &(a, b) in &pieces {
                    if pos <= b - a {
                        return (a + pos).min(b);
                    }
                    pos -= b - a;
                }
                pieces[pieces.len() - 1].1
            })
            .collect();
        Ok((out, excised))
    }

    /// Tests `|τ|/κ`, `κ` and `τ` for constancy over `samples` points of
    /// `range`. A curve with both κ and τ constant reports as a general helix.
    pub fn classify(&self, range: (f64, f64), samples: usize) -> Result<CurveClass, CurveError> {
        if samples < 16 {
            return Err(CurveError::TooFewSamples(samples));
        }
        let (params, _) = self.sample_parameters(range.0, range.1, samples)?;
        let frames = params
            .iter()
            .map(|&s| self.frenet(s))
            .collect::<Result<Vec<_>, _>>()?;
        let ratio: Vec<f64> = frames.iter().map(|f| f.tau.abs() / f.kappa).collect();
        let kappa: Vec<f64> = frames.iter().map(|f| f.kappa).collect();
        let tau: Vec<f64> = frames.iter().map(|f| f.tau).collect();
        Ok(if let Some(mu) = constant_value(&ratio) {
            CurveClass::GeneralHelix { mu }
        } else if let Some(nu) = constant_value(&kappa) {
            CurveClass::Salkowski { nu }
        } else if let Some(xi) = constant_value(&tau) {
            CurveClass::AntiSalkowski { xi }
        } else {
            CurveClass::Generic
        })
    }
}

fn constant_value(xs: &[f64]) -> Option<f64> {
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let dev = xs.iter().map(|x| (x - mean).abs()).fold(0.0, f64::max);
    (dev <= CONSTANCY_RTOL * mean.abs()).then_some(mean)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn near(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn points() {
        assert_eq!(Curve::fresnel_helix().point(0.0).unwrap(), G3Vector::ZERO);
        let p = Curve::anti_salkowski().point(0.0).unwrap();
        near(p.y, -240.0 / 289.0, 1e-15);
        assert_eq!((p.x, p.z), (0.0, 0.0));
        let c = Curve::explicit(parse("s^2").unwrap(), parse("s^3").unwrap());
        assert_eq!(c.point(1.0).unwrap(), G3Vector::new(1.0, 1.0, 1.0));
    }

    #[test]
    fn fresnel_helix_frame() {
        let fr = Curve::fresnel_helix().frenet(2.0).unwrap();
        near(fr.kappa, 2.0, 1e-13);
        near(fr.tau, 0.5, 1e-13);
        let w = 0.5f64; // s²/8
        near(fr.t.y, 4.0 * w.sin(), 1e-13);
        near(fr.t.z, -4.0 * w.cos(), 1e-13);
        near(fr.n.y, w.cos(), 1e-13);
        near(fr.n.z, w.sin(), 1e-13);
        near(fr.b.y, -w.sin(), 1e-13);
        near(fr.b.z, w.cos(), 1e-13);
    }

    #[test]
    fn anti_salkowski_frame_at_origin() {
        let fr = Curve::anti_salkowski().frenet(0.0).unwrap();
        near(fr.kappa, 1.0, 1e-14);
        near(fr.tau, 1.0, 1e-14);
        near(fr.n.y, 1.0, 1e-14);
        near(fr.n.z, 0.0, 1e-14);
        near(fr.b.y, 0.0, 1e-14);
        near(fr.b.z, 1.0, 1e-14);
    }

    #[test]
    fn curvature_vanishes_at_fresnel_inflection() {
        assert!(matches!(
            Curve::fresnel_helix().frenet(0.0),
            Err(CurveError::CurvatureVanishes { .. })
        ));
    }

    #[test]
    fn frame_identities() {
        for curve in [Curve::fresnel_helix(), Curve::anti_salkowski()] {
            for k in 0..40 {
                let s = 0.15 + 0.15 * k as f64;
                let fr = curve.frenet(s).unwrap();
                assert_eq!(fr.t.x, 1.0);
                assert_eq!(fr.t.dot(&fr.t), 1.0);
                near(fr.n.isotropic_norm().unwrap(), 1.0, 1e-14);
                near(fr.b.isotropic_norm().unwrap(), 1.0, 1e-14);
                near(fr.n.dot(&fr.b), 0.0, 1e-15);
                let tn = fr.t.cross(&fr.n);
                let bt = fr.b.cross(&fr.t);
                assert_eq!(tn, fr.b);
                assert_eq!(bt, fr.n);
            }
        }
    }

    #[test]
    fn darboux_examples() {
        let fr = Curve::fresnel_helix().frenet(1.3).unwrap();
        let d = fr.darboux();
        let want_e0 = fr.t + 4.0 * fr.b;
        let want_axis = 4.0 * fr.n;
        for (a, b) in [(d.e0, want_e0), (d.d_axis, want_axis)] {
            near(a.x, b.x, 1e-12);
            near(a.y, b.y, 1e-12);
            near(a.z, b.z, 1e-12);
        }
        let fr = Curve::anti_salkowski().frenet(0.0).unwrap();
        let d = fr.darboux();
        near(d.d_axis.y, 1.0, 1e-14);
        near(d.d_axis.z, 0.0, 1e-14);
        near(d.e0.x, 1.0, 1e-14);
        near(d.d_axis.dot(&d.d_axis), 1.0, 1e-14);
    }

    #[test]
    fn kappa_tau_jets_match_closed_forms() {
        let fj = Curve::anti_salkowski().frame_jet(1.2).unwrap();
        near(fj.kappa.0[1], (0.3f64).sinh() / 4.0, 1e-13);
        near(fj.tau.0[1], 0.0, 1e-13);
        let fj = Curve::fresnel_helix().frame_jet(1.2).unwrap();
        near(fj.kappa.0[1], 1.0, 1e-12);
        near(fj.tau.0[1], 0.25, 1e-12);
    }

    #[test]
    fn classification() {
        assert_eq!(
            match Curve::fresnel_helix().classify((0.5, 6.0), 64).unwrap() {
                CurveClass::GeneralHelix { mu } => (mu * 1e9).round() / 1e9,
                other => panic!("{other:?}"),
            },
            0.25
        );
        match Curve::anti_salkowski().classify((-3.0, 3.0), 64).unwrap() {
            CurveClass::AntiSalkowski { xi } => near(xi, 1.0, 1e-12),
            other => panic!("{other:?}"),
        }
        let planar = Curve::explicit(parse("s^2").unwrap(), parse("0").unwrap());
        assert!(matches!(
            planar.classify((0.0, 1.0), 16),
            Err(CurveError::TorsionVanishes { .. })
        ));
        assert!(matches!(
            Curve::fresnel_helix().classify((0.5, 6.0), 8),
            Err(CurveError::TooFewSamples(8))
        ));
        // circular helix in G3: κ and τ both constant, reported as a helix
        let circ = Curve::explicit(parse("cos(s)").unwrap(), parse("sin(s)").unwrap());
        assert!(matches!(
            circ.classify((0.0, 3.0), 32).unwrap(),
            CurveClass::GeneralHelix { .. }
        ));
        // f + ig = s^(2+i)/(1+3i): f'' + ig'' = s^i, so κ = 1 and τ = 1/s
        let salk = Curve::explicit(
            parse("s^2/10*(cos(ln(s))+3*sin(ln(s)))").unwrap(),
            parse("s^2/10*(sin(ln(s))-3*cos(ln(s)))").unwrap(),
        );
        match salk.classify((0.5, 2.0), 32).unwrap() {
            CurveClass::Salkowski { nu } => near(nu, 1.0, 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn guard_band_sampling() {
        let c = Curve::fresnel_helix();
        let (s, excised) = c.sample_parameters(-1.0, 1.0, 19).unwrap();
        assert!(excised);
        assert_eq!(s.len(), 19);
        assert!(s.iter().all(|x| x.abs() >= FRESNEL_GUARD - 1e-15));
        assert_eq!((s[0], s[18]), (-1.0, 1.0));
        let (s, excised) = c.sample_parameters(0.5, 1.5, 11).unwrap();
        assert!(!excised);
        assert_eq!(s[5], 1.0);
        assert!(c.sample_parameters(-0.05, 0.05, 4).is_err());
    }
}
