//! Numerical checks of pencils: the D-type invariant `⟨η₁, E₀∧t⟩` along
//! `v = v₀`, the isoparametric condition, Frenet-equation residuals and
//! analytic-vs-finite-difference normals.
//!
//! Finite-difference mode builds normals from [`pencil::surface_point`]
//! alone, so it never sees the jets used by the analytic path.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{Curve, CurveError};
use crate::expr::EvalWarning;
use crate::g3::G3Vector;
use crate::pencil::{self, DTypeClass, MarchingScale, ParamDomain, PencilError};

pub const ANALYTIC_TOL: f64 = 1e-9;
pub const FD_TOL: f64 = 1e-5;
/// FD step relative to the domain extent.
pub const FD_REL_STEP: f64 = 1e-4;
/// Normals shorter than this are degenerate.
pub const DEGENERATE_NORM: f64 = 1e-12;
pub const MIN_SAMPLES: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Pencil(#[from] PencilError),
    #[error("need at least {MIN_SAMPLES} samples, got {0}")]
    TooFewSamples(usize),
    #[error("every sample was flagged; nothing to measure")]
    NoValidSamples,
    #[error("step must be positive and finite, got {0}")]
    InvalidStep(f64),
}

impl From<CurveError> for VerifyError {
    fn from(e: CurveError) -> Self {
        VerifyError::Pencil(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Analytic,
    /// Central differences with step `1e-4 × extent`.
    #[serde(rename = "fd")]
    FiniteDifference,
    /// Central differences at `h` and `h/2`, Richardson-extrapolated.
    #[serde(rename = "fd-richardson")]
    Richardson,
}

impl Mode {
    pub fn default_tol(self) -> f64 {
        match self {
            Mode::Analytic => ANALYTIC_TOL,
            Mode::FiniteDifference | Mode::Richardson => FD_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    DegenerateNormal,
    AbsKink,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaSample {
    pub s: f64,
    /// `⟨η₁, E₀∧t⟩`; absent when the sample is degenerate.
    pub lambda_hat: Option<f64>,
    /// `⟨η₁, b⟩ = sin θ`.
    pub binormal_part: Option<f64>,
    pub flagged: bool,
    pub flags: Vec<Flag>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DTypeReport {
    pub mode: Mode,
    pub tol: f64,
    pub v0: f64,
    /// Whether a guard band removed part of the s-range.
    pub excised: bool,
    pub samples: Vec<LambdaSample>,
    pub mean_lambda: f64,
    /// `max |λ̂(s) - mean|` over unflagged samples.
    pub max_abs_deviation: f64,
    /// `max |sin θ|` over unflagged samples.
    pub max_binormal_part: f64,
    pub classification: DTypeClass,
}

impl DTypeReport {
    pub fn is_dtype(&self) -> bool {
        self.max_abs_deviation <= self.tol
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn unit_yz(v: G3Vector) -> Option<G3Vector> {
    let n = v.y.hypot(v.z);
    (n >= DEGENERATE_NORM).then(|| G3Vector::isotropic(v.y / n, v.z / n))
}

fn steps(domain: &ParamDomain) -> (f64, f64) {
    (FD_REL_STEP * domain.s_extent(), FD_REL_STEP * domain.v_extent())
}

fn central(
    f: impl Fn(f64) -> Result<G3Vector, PencilError>,
    x: f64,
    h: f64,
) -> Result<G3Vector, PencilError> {
    Ok((1.0 / (2.0 * h)) * (f(x + h)? - f(x - h)?))
}

fn fd_partial(
    f: impl Fn(f64) -> Result<G3Vector, PencilError>,
    x: f64,
    h: f64,
    richardson: bool,
) -> Result<G3Vector, PencilError> {
    let d1 = central(&f, x, h)?;
    if !richardson {
        return Ok(d1);
    }
    let d2 = central(&f, x, 0.5 * h)?;
    Ok((1.0 / 3.0) * (4.0 * d2 - d1))
}

/// `φ_s ∧ φ_v` from surface-point differences only.
pub fn fd_normal(
    curve: &Curve,
    ms: &MarchingScale,
    domain: &ParamDomain,
    s: f64,
    v: f64,
    richardson: bool,
) -> Result<G3Vector, PencilError> {
    let (hs, hv) = steps(domain);
    let phi_s = fd_partial(|x| pencil::surface_point(curve, ms, x, v), s, hs, richardson)?;
    let phi_v = fd_partial(|y| pencil::surface_point(curve, ms, s, y), v, hv, richardson)?;
    Ok(phi_s.cross(&phi_v))
}

fn analytic_normal(
    curve: &Curve,
    ms: &MarchingScale,
    s: f64,
    v: f64,
) -> Result<(G3Vector, Vec<EvalWarning>), PencilError> {
    let fj = curve.frame_jet(s)?;
    let mut warnings = Vec::new();
    let sample = pencil::evaluate(&fj, ms, v, &mut warnings)?;
    Ok((sample.normal, warnings))
}

fn lambda_sample(
    curve: &Curve,
    ms: &MarchingScale,
    domain: &ParamDomain,
    s: f64,
    mode: Mode,
) -> Result<LambdaSample, PencilError> {
    let v0 = domain.v0;
    let (eta, warnings) = match mode {
        Mode::Analytic => analytic_normal(curve, ms, s, v0)?,
        Mode::FiniteDifference => (fd_normal(curve, ms, domain, s, v0, false)?, Vec::new()),
        Mode::Richardson => (fd_normal(curve, ms, domain, s, v0, true)?, Vec::new()),
    };
    let mut flags = Vec::new();
    if !warnings.is_empty() {
        flags.push(Flag::AbsKink);
    }
    let frame = curve.frenet(s)?;
    let d_axis = frame.darboux().d_axis;
    let (lambda_hat, binormal_part) = match unit_yz(eta) {
        Some(eta1) => (Some(eta1.dot(&d_axis)), Some(eta1.dot(&frame.b))),
        None => {
            flags.push(Flag::DegenerateNormal);
            (None, None)
        }
    };
    Ok(LambdaSample {
        s,
        lambda_hat,
        binormal_part,
        flagged: !flags.is_empty(),
        flags,
    })
}

/// Samples `λ̂(s) = ⟨η₁(s, v₀), E₀∧t⟩` at `n_samples` points of the s-range
/// and tests it for constancy. `tol = None` uses the mode default.
pub fn dtype_report(
    curve: &Curve,
    ms: &MarchingScale,
    domain: &ParamDomain,
    n_samples: usize,
    mode: Mode,
    tol: Option<f64>,
) -> Result<DTypeReport, VerifyError> {
    if n_samples < MIN_SAMPLES {
        return Err(VerifyError::TooFewSamples(n_samples));
    }
    domain.validate()?;
    let tol = tol.unwrap_or_else(|| mode.default_tol());
    let (params, excised) = curve.sample_parameters(domain.s_min, domain.s_max, n_samples)?;
    let samples = params
        .par_iter()
        .map(|&s| lambda_sample(curve, ms, domain, s, mode))
        .collect::<Result<Vec<_>, _>>()?;

    let good: Vec<(f64, f64)> = samples
        .iter()
        .filter(|x| !x.flagged)
        .filter_map(|x| Some((x.lambda_hat?, x.binormal_part?)))
        .collect();
    if good.is_empty() {
        return Err(VerifyError::NoValidSamples);
    }
    let mean = good.iter().map(|g| g.0).sum::<f64>() / good.len() as f64;
    let dev = good.iter().map(|g| (g.0 - mean).abs()).fold(0.0, f64::max);
    let sin_max = good.iter().map(|g| g.1.abs()).fold(0.0, f64::max);
    let classification = if !(dev <= tol) {
        DTypeClass::NotDType
    } else if mean.abs() <= tol {
        DTypeClass::Asymptotic
    } else if sin_max <= tol {
        DTypeClass::Geodesic
    } else {
        DTypeClass::GeneralDType
    };
    Ok(DTypeReport {
        mode,
        tol,
        v0: domain.v0,
        excised,
        samples,
        mean_lambda: mean,
        max_abs_deviation: dev,
        max_binormal_part: sin_max,
        classification,
    })
}

/// `max(|Δx|, |(Δy, Δz)|)` between `φ(s, v₀)` and `r(s)` over the s-range.
pub fn check_isoparametric(
    curve: &Curve,
    ms: &MarchingScale,
    domain: &ParamDomain,
    n_samples: usize,
) -> Result<f64, VerifyError> {
    let (params, _) = curve.sample_parameters(domain.s_min, domain.s_max, n_samples)?;
    let errs = params
        .par_iter()
        .map(|&s| {
            let d = pencil::surface_point(curve, ms, s, domain.v0)? - curve.point(s)?;
            Ok(d.x.abs().max(d.y.hypot(d.z)))
        })
        .collect::<Result<Vec<f64>, PencilError>>()?;
    Ok(errs.into_iter().fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetResiduals {
    /// `max |t' - κ n|`
    pub r_t: f64,
    /// `max |n' - τ b|`
    pub r_n: f64,
    /// `max |b' + τ n|`
    pub r_b: f64,
}

impl FrenetResiduals {
    pub fn max(&self) -> f64 {
        self.r_t.max(self.r_n).max(self.r_b)
    }
}

/// Frenet equations checked with central differences of the frame.
pub fn frenet_residuals(
    curve: &Curve,
    range: (f64, f64),
    n_samples: usize,
    h: f64,
) -> Result<FrenetResiduals, VerifyError> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(VerifyError::InvalidStep(h));
    }
    let (params, _) = curve.sample_parameters(range.0, range.1, n_samples)?;
    let per = params
        .par_iter()
        .map(|&s| {
            let (lo, mid, hi) = (curve.frenet(s - h)?, curve.frenet(s)?, curve.frenet(s + h)?);
            let d = |a: G3Vector, b: G3Vector| (1.0 / (2.0 * h)) * (b - a);
            let rt = d(lo.t, hi.t) - mid.kappa * mid.n;
            let rn = d(lo.n, hi.n) - mid.tau * mid.b;
            let rb = d(lo.b, hi.b) + mid.tau * mid.n;
            Ok([rt, rn, rb].map(|r| r.galilean_norm()))
        })
        .collect::<Result<Vec<[f64; 3]>, CurveError>>()?;
    let m = |k: usize| per.iter().map(|r| r[k]).fold(0.0, f64::max);
    Ok(FrenetResiduals { r_t: m(0), r_n: m(1), r_b: m(2) })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlaggedPoint {
    pub s: f64,
    pub v: f64,
    pub flag: Flag,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalConsistency {
    /// Largest angle between analytic and FD unit normals, in radians.
    pub max_angle_error: f64,
    pub checked: usize,
    pub flagged: Vec<FlaggedPoint>,
}

/// Angle between analytic and finite-difference normals on an
/// `n_samples × n_samples` grid over the domain.
pub fn normal_consistency(
    curve: &Curve,
    ms: &MarchingScale,
    domain: &ParamDomain,
    n_samples: usize,
) -> Result<NormalConsistency, VerifyError> {
    if n_samples < 2 {
        return Err(VerifyError::TooFewSamples(n_samples));
    }
    let (params, _) = curve.sample_parameters(domain.s_min, domain.s_max, n_samples)?;
    let vs: Vec<f64> = (0..n_samples)
        .map(|j| domain.v_min + domain.v_extent() * j as f64 / (n_samples - 1) as f64)
        .collect();
    let grid: Vec<(f64, f64)> = params
        .iter()
        .flat_map(|&s| vs.iter().map(move |&v| (s, v)))
        .collect();
    let per = grid
        .par_iter()
        .map(|&(s, v)| {
            let (exact, warnings) = analytic_normal(curve, ms, s, v)?;
            if !warnings.is_empty() {
                for w in &warnings {
                    log::warn!("normal at ({s}, {v}): {w}");
                }
                return Ok(Err(Flag::AbsKink));
            }
            let approx = fd_normal(curve, ms, domain, s, v, false)?;
            match (unit_yz(exact), unit_yz(approx)) {
                (Some(a), Some(b)) => {
                    let cross = a.y * b.z - a.z * b.y;
                    Ok(Ok(cross.atan2(a.dot(&b)).abs()))
                }
                _ => Ok(Err(Flag::DegenerateNormal)),
            }
        })
        .collect::<Result<Vec<_>, PencilError>>()?;
    let mut out = NormalConsistency {
        max_angle_error: 0.0,
        checked: 0,
        flagged: Vec::new(),
    };
    for (&(s, v), r) in grid.iter().zip(per) {
        match r {
            Ok(angle) => {
                out.checked += 1;
                out.max_angle_error = out.max_angle_error.max(angle);
            }
            Err(flag) => out.flagged.push(FlaggedPoint { s, v, flag }),
        }
    }
    Ok(out)
}
