use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{Curve, CurveSpec, DEFAULT_KAPPA_MIN};
use crate::expr::{self, Expr, ParseError, Var};
use crate::pencil::{
    synthesize_product_form, Branch, ControlCoefficients, DTypeSpec, Formulation, MarchingScale,
    ParamDomain, Pencil, PencilError,
};
use crate::verify::Mode;

/// `|X(s, v₀)|` etc. above this rejects a product-form config.
pub const ISOPARAMETRIC_TOL: f64 = 1e-12;
/// s-points at which product factors are checked against `v₀`.
const ISOPARAMETRIC_CHECKS: usize = 16;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("at `{path}`: {source}")]
    Parse { path: String, source: ParseError },
    #[error("`{factor}` does not vanish at v0: {value} at s = {s}")]
    NotIsoparametric { factor: String, s: f64, value: f64 },
    #[error(transparent)]
    Pencil(#[from] PencilError),
}

impl ConfigError {
    /// Short machine-readable category.
    pub fn category(&self) -> &'static str {
        match self {
            ConfigError::Io { .. } => "io",
            ConfigError::Schema { .. } => "schema",
            ConfigError::Parse { .. } => "parse",
            ConfigError::NotIsoparametric { .. } => "not-isoparametric",
            ConfigError::Pencil(e) => pencil_category(e),
        }
    }

    fn schema(path: &str, message: impl Into<String>) -> Self {
        ConfigError::Schema {
            path: path.to_string(),
            message: message.into(),
        }
    }
}

pub fn pencil_category(e: &PencilError) -> &'static str {
    use crate::curve::CurveError;
    match e {
        PencilError::Curve(CurveError::Expr(_)) | PencilError::Expr(_) => "domain",
        PencilError::Curve(_) => "curve",
        PencilError::InfeasibleLambda { .. } => "infeasible-lambda",
        PencilError::SigmaVanishes { .. } => "sigma-vanishes",
        PencilError::ZeroMarchingFactor { .. } => "zero-marching-factor",
        PencilError::ClassMismatch { .. } => "class-mismatch",
        PencilError::NotProductForm => "not-product-form",
        PencilError::InvalidDomain(_) => "invalid-domain",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BuiltinCurve {
    FresnelHelix,
    /// Fresnel argument `s/√(2π)` instead of `s/(2√π)`.
    FresnelHelixAsPrinted,
    AntiSalkowski,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<BuiltinCurve>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_min: Option<f64>,
}

impl CurveConfig {
    pub fn builtin(b: BuiltinCurve) -> Self {
        CurveConfig {
            builtin: Some(b),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectBlock {
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductBlock {
    pub l: String,
    pub m: String,
    pub n: String,
    #[serde(rename = "X")]
    pub x: String,
    #[serde(rename = "Y")]
    pub y: String,
    #[serde(rename = "Z")]
    pub z: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthesisBlock {
    pub lambda: f64,
    pub sigma: String,
    #[serde(default)]
    pub sign: Branch,
    #[serde(default)]
    pub formulation: Formulation,
    pub l: String,
    pub m: String,
    pub n: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarchingScaleConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direct: Option<DirectBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<ProductBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub synthesis: Option<SynthesisBlock>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub ns: usize,
    pub nv: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { ns: 200, nv: 50 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    #[serde(default)]
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_samples() -> usize {
    200
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            mode: Mode::Analytic,
            tol: None,
            samples: default_samples(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilConfig {
    pub curve: CurveConfig,
    pub marching_scale: MarchingScaleConfig,
    #[serde(default)]
    pub control: ControlCoefficients,
    pub domain: ParamDomain,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub verify: VerifyConfig,
}

fn parse_at(path: &str, text: &str) -> Result<Expr, ConfigError> {
    expr::parse(text).map_err(|source| ConfigError::Parse {
        path: path.to_string(),
        source,
    })
}

impl PencilConfig {
    pub fn from_json(text: &str) -> Result<PencilConfig, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: PencilConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            ConfigError::Schema {
                path,
                message: e.into_inner().to_string(),
            }
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("config serializes");
        out.push('\n');
        out
    }

    pub fn curve(&self) -> Result<Curve, ConfigError> {
        let c = &self.curve;
        let spec = match (c.builtin, &c.f, &c.g) {
            (Some(b), None, None) => match b {
                BuiltinCurve::FresnelHelix => CurveSpec::FresnelHelix { as_printed: false },
                BuiltinCurve::FresnelHelixAsPrinted => CurveSpec::FresnelHelix { as_printed: true },
                BuiltinCurve::AntiSalkowski => CurveSpec::AntiSalkowski,
            },
            (None, Some(f), Some(g)) => {
                let f = parse_at("curve.f", f)?;
                let g = parse_at("curve.g", g)?;
                for (name, e) in [("curve.f", &f), ("curve.g", &g)] {
                    if e.mentions(Var::V) {
                        return Err(ConfigError::schema(name, "curve components depend on s only"));
                    }
                }
                CurveSpec::Explicit { f, g }
            }
            _ => {
                return Err(ConfigError::schema(
                    "curve",
                    "give either `builtin` or both `f` and `g`",
                ))
            }
        };
        let kappa_min = c.kappa_min.unwrap_or(DEFAULT_KAPPA_MIN);
        if !(kappa_min > 0.0 && kappa_min.is_finite()) {
            return Err(ConfigError::schema("curve.kappa_min", "must be positive"));
        }
        Ok(Curve::new(spec).with_kappa_min(kappa_min))
    }

    /// The marching scale with control coefficients applied.
    pub fn marching_scale(&self, curve: &Curve) -> Result<MarchingScale, ConfigError> {
        let ms = &self.marching_scale;
        let blocks = [ms.direct.is_some(), ms.product.is_some(), ms.synthesis.is_some()];
        if blocks.iter().filter(|b| **b).count() != 1 {
            return Err(ConfigError::schema(
                "marching_scale",
                "exactly one of `direct`, `product`, `synthesis` is required",
            ));
        }
        let at = |block: &str, field: &str, text: &str| {
            parse_at(&format!("marching_scale.{block}.{field}"), text)
        };
        if let Some(d) = &ms.direct {
            if self.control != ControlCoefficients::default() {
                return Err(ConfigError::schema(
                    "control",
                    "control coefficients need a product or synthesis block",
                ));
            }
            return Ok(MarchingScale::direct(
                at("direct", "alpha", &d.alpha)?,
                at("direct", "beta", &d.beta)?,
                at("direct", "gamma", &d.gamma)?,
            ));
        }
        let base = if let Some(p) = &ms.product {
            let factors = [("X", &p.x), ("Y", &p.y), ("Z", &p.z)]
                .map(|(name, text)| at("product", name, text).map(|e| (name, e)));
            let [x, y, z] = factors;
            let (x, y, z) = (x?, y?, z?);
            self.check_vanishing(curve, &[&x, &y, &z])?;
            MarchingScale::product(
                at("product", "l", &p.l)?,
                at("product", "m", &p.m)?,
                at("product", "n", &p.n)?,
                x.1,
                y.1,
                z.1,
            )
        } else {
            let b = ms.synthesis.as_ref().expect("one block present");
            let sigma = at("synthesis", "sigma", &b.sigma)?;
            if sigma.mentions(Var::V) {
                return Err(ConfigError::schema(
                    "marching_scale.synthesis.sigma",
                    "sigma depends on s only",
                ));
            }
            if !b.lambda.is_finite() {
                return Err(ConfigError::schema("marching_scale.synthesis.lambda", "must be finite"));
            }
            let dtype = DTypeSpec {
                lambda: b.lambda,
                sigma,
                sign: b.sign,
                formulation: b.formulation,
            };
            synthesize_product_form(
                curve,
                &dtype,
                at("synthesis", "l", &b.l)?,
                at("synthesis", "m", &b.m)?,
                at("synthesis", "n", &b.n)?,
                &self.domain,
            )?
        };
        Ok(base.with_control(self.control)?)
    }

    fn check_vanishing(&self, curve: &Curve, factors: &[&(&str, Expr)]) -> Result<(), ConfigError> {
        let d = &self.domain;
        let (params, _) = curve
            .sample_parameters(d.s_min, d.s_max, ISOPARAMETRIC_CHECKS)
            .map_err(PencilError::from)?;
        for (name, e) in factors {
            for &s in &params {
                let value = expr::eval(e, s, d.v0).map_err(PencilError::from)?;
                if value.abs() > ISOPARAMETRIC_TOL {
                    return Err(ConfigError::NotIsoparametric {
                        factor: format!("{name} = {e}"),
                        s,
                        value,
                    });
                }
            }
        }
        Ok(())
    }

    /// Structural and expression checks; builds nothing expensive beyond
    /// the synthesis feasibility scan.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.domain
            .validate()
            .map_err(|e| ConfigError::schema("domain", e.to_string()))?;
        if self.grid.ns < 2 || self.grid.nv < 2 {
            return Err(ConfigError::schema("grid", "ns and nv must be at least 2"));
        }
        if let Some(tol) = self.verify.tol {
            if !(tol > 0.0) {
                return Err(ConfigError::schema("verify.tol", "must be positive"));
            }
        }
        let cc = self.control;
        if ![cc.a, cc.b, cc.c].iter().all(|x| x.is_finite()) {
            return Err(ConfigError::schema("control", "coefficients must be finite"));
        }
        let curve = self.curve()?;
        self.marching_scale(&curve)?;
        Ok(())
    }

    pub fn pencil(&self) -> Result<Pencil, ConfigError> {
        let curve = self.curve()?;
        let scale = self.marching_scale(&curve)?;
        Ok(Pencil {
            curve,
            scale,
            domain: self.domain,
        })
    }
}

pub fn load_config(path: impl AsRef<Path>) -> Result<PencilConfig, ConfigError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    PencilConfig::from_json(&text)
}

pub fn write_config(config: &PencilConfig, path: impl AsRef<Path>) -> Result<(), ConfigError> {
    let path = path.as_ref();
    fs::write(path, config.to_json()).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
