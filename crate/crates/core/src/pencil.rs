//! Surface pencils `φ(s,v) = r(s) + α t + β n + γ b` through a curve.
//!
//! Along the isoparameter `v = v₀` the marching-scale functions vanish and
//! the isotropic surface normal reduces to
//!
//! ```text
//! η(s, v₀) = φ₂ n + φ₃ b,   φ₂ = -(1+α_s) γ_v + γ_s α_v,   φ₃ = (1+α_s) β_v - β_s α_v
//! ```
//!
//! With `η = σ (cos θ n + sin θ b)` the D-type quantity along the curve is
//! `⟨η₁, E₀∧t⟩ = (κ/|τ|) cos θ`. Two ways of choosing `(φ₂, φ₃)` from a
//! target `λ` are supported, see [`Formulation`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{Curve, CurveClass, CurveError, FrameJet, FrenetFrame};
use crate::expr::{self, EvalWarning, Expr, ExprError, Taylor, Var};
use crate::g3::G3Vector;

/// Points of the feasibility / non-vanishing scan done before synthesis.
pub const SYNTHESIS_GRID: usize = 512;
/// Slack on the radicand `1 - ρ²` before a λ is declared infeasible.
pub const FEASIBILITY_TOL: f64 = 1e-12;
/// `||ρ| - 1|` below this counts as geodesic.
pub const GEODESIC_TOL: f64 = 1e-9;
/// Scale factors with magnitude below this count as zero.
pub const FACTOR_MIN: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PencilError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("lambda infeasible at s = {s}: |ratio| = {ratio} > 1")]
    InfeasibleLambda { s: f64, ratio: f64 },
    #[error("sigma vanishes at s = {s}")]
    SigmaVanishes { s: f64 },
    #[error("marching factor `{factor}` vanishes at s = {s}")]
    ZeroMarchingFactor { factor: String, s: f64 },
    #[error("corollary {kind:?} needs a different curve class, found {found:?}")]
    ClassMismatch { kind: CorollaryKind, found: CurveClass },
    #[error("marching scale is not in product form")]
    NotProductForm,
    #[error("invalid parameter domain: {0}")]
    InvalidDomain(String),
}

/// Sign choice for `φ₃ = ±σ √(...)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Branch {
    #[default]
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// How the normal components are derived from `(λ, σ)`.
///
/// * `AsPrinted`: `φ₂ = λ|τ|/κ`, `φ₃ = ±σ√(1 - (λτ/(σκ))²)`. Then
///   `|η| = |σ|` and the D-type quantity along the curve is `λ/|σ|`, which
///   is constant only for constant σ.
/// * `Corrected`: `φ₂ = |σ| λ|τ|/κ`, `φ₃ = ±σ√(1 - (λτ/κ)²)`. The D-type
///   quantity equals `λ` for every non-vanishing σ.
///
/// Both agree when `σ ≡ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formulation {
    #[default]
    Corrected,
    AsPrinted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DTypeSpec {
    pub lambda: f64,
    pub sigma: Expr,
    pub sign: Branch,
    pub formulation: Formulation,
}

impl DTypeSpec {
    pub fn new(lambda: f64, sigma: Expr) -> DTypeSpec {
        DTypeSpec {
            lambda,
            sigma,
            sign: Branch::Plus,
            formulation: Formulation::Corrected,
        }
    }

    pub fn with_sign(mut self, sign: Branch) -> Self {
        self.sign = sign;
        self
    }

    pub fn with_formulation(mut self, formulation: Formulation) -> Self {
        self.formulation = formulation;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamDomain {
    pub s_min: f64,
    pub s_max: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub v0: f64,
}

impl ParamDomain {
    pub fn new(s_min: f64, s_max: f64, v_min: f64, v_max: f64, v0: f64) -> Result<Self, PencilError> {
        let d = ParamDomain { s_min, s_max, v_min, v_max, v0 };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<(), PencilError> {
        let all = [self.s_min, self.s_max, self.v_min, self.v_max, self.v0];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(PencilError::InvalidDomain("non-finite bound".into()));
        }
        if self.s_min >= self.s_max {
            return Err(PencilError::InvalidDomain(format!(
                "s_min {} must be below s_max {}",
                self.s_min, self.s_max
            )));
        }
        if !(self.v_min <= self.v0 && self.v0 <= self.v_max) {
            return Err(PencilError::InvalidDomain(format!(
                "v0 {} outside [{}, {}]",
                self.v0, self.v_min, self.v_max
            )));
        }
        Ok(())
    }

    pub fn s_extent(&self) -> f64 {
        self.s_max - self.s_min
    }

    pub fn v_extent(&self) -> f64 {
        self.v_max - self.v_min
    }
}

/// Coefficients of `η(s, v₀)` on the frame: `phi1` along t (always 0), `phi2`
/// along n, `phi3` along b, and `theta = atan2(phi3, phi2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalComponents {
    pub phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
    pub theta: f64,
}

impl NormalComponents {
    fn new(phi2: f64, phi3: f64) -> Self {
        NormalComponents {
            phi1: 0.0,
            phi2,
            phi3,
            theta: phi3.atan2(phi2),
        }
    }
}

/// Multipliers on the `X`, `Y`, `Z` factors of a product-form pencil.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControlCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Default for ControlCoefficients {
    fn default() -> Self {
        ControlCoefficients { a: 1.0, b: 1.0, c: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorollaryKind {
    Geodesic,
    Asymptotic,
    Helix,
    Salkowski,
    AntiSalkowski,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DTypeClass {
    /// `λ = 0`: η₁ ⊥ n.
    Asymptotic,
    /// `sin θ = 0` everywhere: η₁ ∥ n.
    Geodesic,
    GeneralDType,
    /// The sampled invariant is not constant.
    NotDType,
}

/// Which normal component a synthesized factor is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalPart {
    Phi2,
    Phi3,
}

/// `scale * part(s) / divisor(s) * (v - v0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesizedFactor {
    pub part: NormalPart,
    pub scale: f64,
    pub divisor: Expr,
    pub dtype: DTypeSpec,
    pub v0: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum VFactor {
    Expr(Expr),
    Synthesized(SynthesizedFactor),
}

/// `control * s_factor * v_factor`, e.g. `a · l(s) · X(v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductTerm {
    pub s_factor: Expr,
    pub v_factor: VFactor,
    pub control: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScaleTerm {
    Direct(Expr),
    Product(ProductTerm),
}

/// Value and first partials of one marching-scale function.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Partials {
    pub value: f64,
    pub ds: f64,
    pub dv: f64,
}

/// The marching-scale functions α, β, γ.
#[derive(Debug, Clone, PartialEq)]
pub struct MarchingScale {
    pub alpha: ScaleTerm,
    pub beta: ScaleTerm,
    pub gamma: ScaleTerm,
}

fn jet2(e: &Expr, var: Var, s: f64, v: f64, w: &mut Vec<EvalWarning>) -> Result<Taylor<2>, ExprError> {
    expr::eval_taylor::<2>(e, var, s, v, w)
}

/// `(φ₂, φ₃)` as first-order jets in `s`, from the `|τ|/κ`-like quantity
/// `q` (a jet in `s`) and σ.
fn components_jet(
    q: Taylor<2>,
    lambda: f64,
    sigma: Taylor<2>,
    sign: Branch,
    formulation: Formulation,
    s: f64,
) -> Result<(Taylor<2>, Taylor<2>), PencilError> {
    if sigma.value().abs() < FACTOR_MIN {
        return Err(PencilError::SigmaVanishes { s });
    }
    let (rho, phi2) = match formulation {
        Formulation::AsPrinted => (q.scale(lambda) / sigma, q.scale(lambda)),
        Formulation::Corrected => (q.scale(lambda), q.scale(lambda) * sigma.abs()),
    };
    let rad = Taylor::constant(1.0) - rho * rho;
    if rad.value() < -FEASIBILITY_TOL {
        return Err(PencilError::InfeasibleLambda {
            s,
            ratio: rho.value().abs(),
        });
    }
    let root = if rad.value() <= FEASIBILITY_TOL {
        Taylor::constant(0.0)
    } else {
        rad.sqrt()
    };
    Ok((phi2, (sigma * root).scale(sign.sign())))
}

fn sigma_jet(dtype: &DTypeSpec, s: f64) -> Result<Taylor<2>, PencilError> {
    let mut w = Vec::new();
    Ok(jet2(&dtype.sigma, Var::S, s, 0.0, &mut w)?)
}

/// `|ρ|` where `ρ` is the ratio whose square enters the radicand.
fn feasibility_ratio(fj: &FrameJet, dtype: &DTypeSpec, s: f64) -> Result<f64, PencilError> {
    let sigma = expr::eval(&dtype.sigma, s, 0.0)?;
    if sigma.abs() < FACTOR_MIN {
        return Err(PencilError::SigmaVanishes { s });
    }
    let q = dtype.lambda * fj.frame.tau.abs() / fj.frame.kappa;
    Ok(match dtype.formulation {
        Formulation::AsPrinted => (q / sigma).abs(),
        Formulation::Corrected => q.abs(),
    })
}

fn normal_parts_jet(fj: &FrameJet, dtype: &DTypeSpec, s: f64) -> Result<(Taylor<2>, Taylor<2>), PencilError> {
    let q = fj.tau.abs() / fj.kappa;
    components_jet(q, dtype.lambda, sigma_jet(dtype, s)?, dtype.sign, dtype.formulation, s)
}

/// Normal components required along the curve for `dtype` to hold.
pub fn required_normal_components(
    curve: &Curve,
    dtype: &DTypeSpec,
    s: f64,
) -> Result<NormalComponents, PencilError> {
    let fj = curve.frame_jet(s)?;
    let (phi2, phi3) = normal_parts_jet(&fj, dtype, s)?;
    Ok(NormalComponents::new(phi2.value(), phi3.value()))
}

/// The specialized conditions for geodesic, asymptotic, helix, Salkowski
/// and anti-Salkowski curves. Geodesic fixes `λ = 1` and asymptotic fixes
/// `λ = 0`, ignoring `dtype.lambda`. The curve-class constants are taken
/// from a classification over `class_range`.
pub fn corollary_components(
    curve: &Curve,
    kind: CorollaryKind,
    dtype: &DTypeSpec,
    s: f64,
    class_range: (f64, f64),
) -> Result<NormalComponents, PencilError> {
    let fj = curve.frame_jet(s)?;
    let sigma = sigma_jet(dtype, s)?;
    let abs_tau = fj.tau.abs();
    let (lambda, q) = match kind {
        CorollaryKind::Geodesic => (1.0, abs_tau / fj.kappa),
        CorollaryKind::Asymptotic => (0.0, abs_tau / fj.kappa),
        _ => {
            let class = curve.classify(class_range, 64)?;
            let q = match (kind, class) {
                (CorollaryKind::Helix, CurveClass::GeneralHelix { mu }) => Taylor::constant(mu),
                (CorollaryKind::Salkowski, CurveClass::Salkowski { nu }) => {
                    abs_tau / Taylor::constant(nu)
                }
                (CorollaryKind::AntiSalkowski, CurveClass::AntiSalkowski { xi }) => {
                    Taylor::constant(xi.abs()) / fj.kappa
                }
                (kind, found) => return Err(PencilError::ClassMismatch { kind, found }),
            };
            (dtype.lambda, q)
        }
    };
    let (phi2, phi3) = components_jet(q, lambda, sigma, dtype.sign, dtype.formulation, s)?;
    Ok(NormalComponents::new(phi2.value(), phi3.value()))
}

/// Geometric class of `dtype` on `curve` over `range`: asymptotic iff
/// `λ = 0`, geodesic iff `|ρ| = 1` at every sample, otherwise general.
pub fn classify_dtype(
    dtype: &DTypeSpec,
    curve: &Curve,
    range: (f64, f64),
) -> Result<DTypeClass, PencilError> {
    let (params, _) = curve.sample_parameters(range.0, range.1, SYNTHESIS_GRID)?;
    let mut geodesic = true;
    for &s in &params {
        let fj = curve.frame_jet(s)?;
        let ratio = feasibility_ratio(&fj, dtype, s)?;
        if ratio * ratio > 1.0 + FEASIBILITY_TOL {
            return Err(PencilError::InfeasibleLambda { s, ratio });
        }
        if (ratio - 1.0).abs() > GEODESIC_TOL {
            geodesic = false;
        }
    }
    Ok(if dtype.lambda == 0.0 {
        DTypeClass::Asymptotic
    } else if geodesic {
        DTypeClass::Geodesic
    } else {
        DTypeClass::GeneralDType
    })
}

/// Builds `α = l X`, `β = m Y`, `γ = n Z` with `X = v - v₀`,
/// `Y = φ₃/m (v - v₀)`, `Z = -φ₂/n (v - v₀)`, after checking feasibility
/// and that σ, m, n do not vanish on a grid over the s-range.
pub fn synthesize_product_form(
    curve: &Curve,
    dtype: &DTypeSpec,
    l: Expr,
    m: Expr,
    n: Expr,
    domain: &ParamDomain,
) -> Result<MarchingScale, PencilError> {
    domain.validate()?;
    let (params, _) = curve.sample_parameters(domain.s_min, domain.s_max, SYNTHESIS_GRID)?;
    for &s in &params {
        for factor in [&m, &n] {
            if expr::eval(factor, s, domain.v0)?.abs() < FACTOR_MIN {
                return Err(PencilError::ZeroMarchingFactor {
                    factor: factor.to_string(),
                    s,
                });
            }
        }
        let fj = curve.frame_jet(s)?;
        let ratio = feasibility_ratio(&fj, dtype, s)?;
        if ratio * ratio > 1.0 + FEASIBILITY_TOL {
            return Err(PencilError::InfeasibleLambda { s, ratio });
        }
    }
    let v0 = domain.v0;
    let shift = expr::parse(&format!("v-{}", Expr::Num(v0)))
        .map(|e| if v0 == 0.0 { Expr::Var(Var::V) } else { e })
        .map_err(ExprError::from)?;
    let synth = |part, scale, divisor: &Expr| {
        VFactor::Synthesized(SynthesizedFactor {
            part,
            scale,
            divisor: divisor.clone(),
            dtype: dtype.clone(),
            v0,
        })
    };
    Ok(MarchingScale {
        alpha: ScaleTerm::Product(ProductTerm {
            s_factor: l,
            v_factor: VFactor::Expr(shift),
            control: 1.0,
        }),
        beta: ScaleTerm::Product(ProductTerm {
            v_factor: synth(NormalPart::Phi3, 1.0, &m),
            s_factor: m,
            control: 1.0,
        }),
        gamma: ScaleTerm::Product(ProductTerm {
            v_factor: synth(NormalPart::Phi2, -1.0, &n),
            s_factor: n,
            control: 1.0,
        }),
    })
}

impl SynthesizedFactor {
    fn coefficient_value(&self, frame: &FrenetFrame) -> Result<f64, PencilError> {
        let s = frame.s;
        let q = Taylor::constant(frame.tau.abs() / frame.kappa);
        let sigma = Taylor::constant(expr::eval(&self.dtype.sigma, s, 0.0)?);
        let d = &self.dtype;
        let (phi2, phi3) = components_jet(q, d.lambda, sigma, d.sign, d.formulation, s)?;
        let part = match self.part {
            NormalPart::Phi2 => phi2.value(),
            NormalPart::Phi3 => phi3.value(),
        };
        let div = expr::eval(&self.divisor, s, self.v0)?;
        if div.abs() < FACTOR_MIN {
            return Err(PencilError::ZeroMarchingFactor {
                factor: self.divisor.to_string(),
                s,
            });
        }
        Ok(self.scale * (part / div))
    }
}

impl ScaleTerm {
    pub fn zero() -> ScaleTerm {
        ScaleTerm::Direct(Expr::Num(0.0))
    }

    /// Plain value at `(frame.s, v)`; no derivatives are formed.
    pub fn value(&self, frame: &FrenetFrame, v: f64) -> Result<f64, PencilError> {
        let s = frame.s;
        match self {
            ScaleTerm::Direct(e) => Ok(expr::eval(e, s, v)?),
            ScaleTerm::Product(p) => {
                let a = expr::eval(&p.s_factor, s, v)?;
                let b = match &p.v_factor {
                    VFactor::Expr(e) => expr::eval(e, s, v)?,
                    VFactor::Synthesized(f) => f.coefficient_value(frame)? * (v - f.v0),
                };
                Ok(a * b * p.control)
            }
        }
    }

    pub fn partials(
        &self,
        fj: &FrameJet,
        v: f64,
        warnings: &mut Vec<EvalWarning>,
    ) -> Result<Partials, PencilError> {
        let s = fj.frame.s;
        match self {
            ScaleTerm::Direct(e) => {
                let ts = jet2(e, Var::S, s, v, warnings)?;
                let tv = jet2(e, Var::V, s, v, warnings)?;
                Ok(Partials { value: ts.value(), ds: ts.0[1], dv: tv.0[1] })
            }
            ScaleTerm::Product(p) => {
                let (as_, av) = (
                    jet2(&p.s_factor, Var::S, s, v, warnings)?,
                    jet2(&p.s_factor, Var::V, s, v, warnings)?,
                );
                let (bs, bv) = match &p.v_factor {
                    VFactor::Expr(e) => (
                        jet2(e, Var::S, s, v, warnings)?,
                        jet2(e, Var::V, s, v, warnings)?,
                    ),
                    VFactor::Synthesized(f) => {
                        let (phi2, phi3) = normal_parts_jet(fj, &f.dtype, s)?;
                        let part = match f.part {
                            NormalPart::Phi2 => phi2,
                            NormalPart::Phi3 => phi3,
                        };
                        let div = jet2(&f.divisor, Var::S, s, v, warnings)?;
                        if div.value().abs() < FACTOR_MIN {
                            return Err(PencilError::ZeroMarchingFactor {
                                factor: f.divisor.to_string(),
                                s,
                            });
                        }
                        let coef = (part / div).scale(f.scale);
                        let dv = v - f.v0;
                        (coef.scale(dv), Taylor([coef.value() * dv, coef.value()]))
                    }
                };
                let ps = (as_ * bs).scale(p.control);
                let pv = (av * bv).scale(p.control);
                Ok(Partials { value: ps.value(), ds: ps.0[1], dv: pv.0[1] })
            }
        }
    }
}

impl MarchingScale {
    /// α = β = γ ≡ 0.
    pub fn zero() -> MarchingScale {
        MarchingScale {
            alpha: ScaleTerm::zero(),
            beta: ScaleTerm::zero(),
            gamma: ScaleTerm::zero(),
        }
    }

    pub fn direct(alpha: Expr, beta: Expr, gamma: Expr) -> MarchingScale {
        MarchingScale {
            alpha: ScaleTerm::Direct(alpha),
            beta: ScaleTerm::Direct(beta),
            gamma: ScaleTerm::Direct(gamma),
        }
    }

    /// `α = l X`, `β = m Y`, `γ = n Z`.
    pub fn product(l: Expr, m: Expr, n: Expr, x: Expr, y: Expr, z: Expr) -> MarchingScale {
        let term = |s_factor, v| {
            ScaleTerm::Product(ProductTerm {
                s_factor,
                v_factor: VFactor::Expr(v),
                control: 1.0,
            })
        };
        MarchingScale {
            alpha: term(l, x),
            beta: term(m, y),
            gamma: term(n, z),
        }
    }

    pub fn is_product_form(&self) -> bool {
        [&self.alpha, &self.beta, &self.gamma]
            .iter()
            .all(|t| matches!(t, ScaleTerm::Product(_)))
    }

    /// Multiplies `X` by `a`, `Y` by `b` and `Z` by `c`.
    pub fn with_control(&self, cc: ControlCoefficients) -> Result<MarchingScale, PencilError> {
        let scale = |t: &ScaleTerm, k: f64, name: &str| match t {
            ScaleTerm::Product(p) => {
                if k == 0.0 {
                    log::warn!("control coefficient {name} = 0 collapses its marching factor");
                }
                Ok(ScaleTerm::Product(ProductTerm {
                    control: p.control * k,
                    ..p.clone()
                }))
            }
            ScaleTerm::Direct(_) => Err(PencilError::NotProductForm),
        };
        Ok(MarchingScale {
            alpha: scale(&self.alpha, cc.a, "a")?,
            beta: scale(&self.beta, cc.b, "b")?,
            gamma: scale(&self.gamma, cc.c, "c")?,
        })
    }
}

/// Same as [`MarchingScale::with_control`].
pub fn apply_control_coefficients(
    ms: &MarchingScale,
    cc: ControlCoefficients,
) -> Result<MarchingScale, PencilError> {
    ms.with_control(cc)
}

/// Everything about one surface sample.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceSample {
    pub point: G3Vector,
    pub phi_s: G3Vector,
    pub phi_v: G3Vector,
    /// `φ_s ∧ φ_v`
    pub normal: G3Vector,
}

/// Evaluates the pencil at `(fj.frame.s, v)` given a precomputed frame jet.
pub fn evaluate(
    fj: &FrameJet,
    ms: &MarchingScale,
    v: f64,
    warnings: &mut Vec<EvalWarning>,
) -> Result<SurfaceSample, PencilError> {
    let fr = &fj.frame;
    let a = ms.alpha.partials(fj, v, warnings)?;
    let b = ms.beta.partials(fj, v, warnings)?;
    let c = ms.gamma.partials(fj, v, warnings)?;
    let offset = a.value * fr.t + b.value * fr.n + c.value * fr.b;
    let phi_s = (1.0 + a.ds) * fr.t
        + (fr.kappa * a.value + b.ds - fr.tau * c.value) * fr.n
        + (fr.tau * b.value + c.ds) * fr.b;
    let phi_v = a.dv * fr.t + b.dv * fr.n + c.dv * fr.b;
    Ok(SurfaceSample {
        point: fj.point + offset,
        phi_s,
        phi_v,
        normal: phi_s.cross(&phi_v),
    })
}

/// `r + α t + β n + γ b` from values only.
pub fn point_from_frame(
    r: G3Vector,
    frame: &FrenetFrame,
    ms: &MarchingScale,
    v: f64,
) -> Result<G3Vector, PencilError> {
    let a = ms.alpha.value(frame, v)?;
    let b = ms.beta.value(frame, v)?;
    let c = ms.gamma.value(frame, v)?;
    Ok(r + (a * frame.t + b * frame.n + c * frame.b))
}

pub fn surface_point(curve: &Curve, ms: &MarchingScale, s: f64, v: f64) -> Result<G3Vector, PencilError> {
    point_from_frame(curve.point(s)?, &curve.frenet(s)?, ms, v)
}

/// Isotropic normal `η = φ_s ∧ φ_v` (not normalized; zero when degenerate).
pub fn surface_normal(curve: &Curve, ms: &MarchingScale, s: f64, v: f64) -> Result<G3Vector, PencilError> {
    let fj = curve.frame_jet(s)?;
    Ok(evaluate(&fj, ms, v, &mut Vec::new())?.normal)
}

/// A curve with a marching scale over a parameter domain.
#[derive(Debug, Clone)]
pub struct Pencil {
    pub curve: Curve,
    pub scale: MarchingScale,
    pub domain: ParamDomain,
}

impl Pencil {
    pub fn point(&self, s: f64, v: f64) -> Result<G3Vector, PencilError> {
        surface_point(&self.curve, &self.scale, s, v)
    }

    pub fn normal(&self, s: f64, v: f64) -> Result<G3Vector, PencilError> {
        surface_normal(&self.curve, &self.scale, s, v)
    }
}
