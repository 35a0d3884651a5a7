//! Parameter sets for the helix and anti-Salkowski demo surfaces, one per
//! figure panel.
//!
//! The default versions build the marching scale by synthesis. The
//! `as_printed` versions use the legacy curve argument and hand-written
//! `X, Y, Z` formulas verbatim; for the anti-Salkowski surface these are
//! known not to satisfy the D-type condition, which `verify` reports.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::config::{
    BuiltinCurve, CurveConfig, GridConfig, MarchingScaleConfig, PencilConfig, ProductBlock,
    SynthesisBlock, VerifyConfig,
};
use crate::pencil::{Branch, ControlCoefficients, Formulation, ParamDomain};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig1a,
    Fig1b,
    Fig1c,
    Fig1d,
    Fig1e,
    Fig1f,
    Fig1g,
    Fig1h,
}

impl Figure {
    pub const ALL: [Figure; 8] = [
        Figure::Fig1a,
        Figure::Fig1b,
        Figure::Fig1c,
        Figure::Fig1d,
        Figure::Fig1e,
        Figure::Fig1f,
        Figure::Fig1g,
        Figure::Fig1h,
    ];

    pub fn name(self) -> &'static str {
        ["fig1a", "fig1b", "fig1c", "fig1d", "fig1e", "fig1f", "fig1g", "fig1h"][self as usize]
    }

    /// Panels showing only the curve.
    pub fn is_curve(self) -> bool {
        matches!(self, Figure::Fig1a | Figure::Fig1e)
    }

    /// The surface config behind the panel (for curve panels, the
    /// base surface, whose curve and domain are what gets plotted).
    pub fn config(self, as_printed: bool) -> PencilConfig {
        let third = 1.0 / 3.0;
        let cc = |a, b, c| ControlCoefficients { a, b, c };
        match self {
            Figure::Fig1a | Figure::Fig1b => helix_surface(as_printed, false, cc(1.0, 1.0, 1.0)),
            Figure::Fig1c => helix_surface(as_printed, false, cc(third, 0.2, 1.0)),
            Figure::Fig1d => helix_surface(as_printed, true, cc(third, 0.2, 1.0)),
            Figure::Fig1e | Figure::Fig1f => anti_salkowski_surface(as_printed, cc(1.0, 1.0, 1.0)),
            Figure::Fig1g => anti_salkowski_surface(as_printed, cc(1.0, 3.0, 5.0)),
            Figure::Fig1h => anti_salkowski_surface(as_printed, cc(1.0, 0.2, 0.1)),
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Figure {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown figure `{s}`, expected fig1a..fig1h"))
    }
}

fn full_domain() -> ParamDomain {
    ParamDomain {
        s_min: -2.0 * PI,
        s_max: 2.0 * PI,
        v_min: 0.0,
        v_max: 5.0,
        v0: 0.0,
    }
}

fn config(curve: BuiltinCurve, ms: MarchingScaleConfig, control: ControlCoefficients, domain: ParamDomain) -> PencilConfig {
    PencilConfig {
        curve: CurveConfig::builtin(curve),
        marching_scale: ms,
        control,
        domain,
        grid: GridConfig::default(),
        verify: VerifyConfig::default(),
    }
}

fn synthesis(lambda: f64, sigma: &str) -> MarchingScaleConfig {
    MarchingScaleConfig {
        synthesis: Some(SynthesisBlock {
            lambda,
            sigma: sigma.into(),
            sign: Branch::Plus,
            formulation: Formulation::Corrected,
            l: "1".into(),
            m: "1".into(),
            n: "-1".into(),
        }),
        ..Default::default()
    }
}

fn product(y: &str, z: &str) -> MarchingScaleConfig {
    MarchingScaleConfig {
        product: Some(ProductBlock {
            l: "1".into(),
            m: "1".into(),
            n: "-1".into(),
            x: "v".into(),
            y: y.into(),
            z: z.into(),
        }),
        ..Default::default()
    }
}

/// General helix, `λ = 1/2`, `l = m = 1`, `n = -1`, `σ = 1` (or `σ = s`).
pub fn helix_surface(as_printed: bool, sigma_s: bool, control: ControlCoefficients) -> PencilConfig {
    if !as_printed {
        let ms = synthesis(0.5, if sigma_s { "s" } else { "1" });
        return config(BuiltinCurve::FresnelHelix, ms, control, full_domain());
    }
    let (ms, domain) = if sigma_s {
        // the printed Y is real only for |s| >= 1/8
        let d = ParamDomain { s_min: 0.125, ..full_domain() };
        (product("sqrt(s^2-1/64)*v", "1/8*v"), d)
    } else {
        (product("3*sqrt(7)/8*v", "1/8*v"), full_domain())
    };
    config(BuiltinCurve::FresnelHelixAsPrinted, ms, control, domain)
}

/// Anti-Salkowski curve, `λ = √3/2`, `σ = 1/cosh(s/4)`, `l = m = 1`, `n = -1`.
pub fn anti_salkowski_surface(as_printed: bool, control: ControlCoefficients) -> PencilConfig {
    let ms = if as_printed {
        product(
            "sqrt(1/cosh(s/4)-3/(4*cosh(s/4)^2))*v",
            "sqrt(3)/2*cosh(s/4)*v",
        )
    } else {
        synthesis(3f64.sqrt() / 2.0, "1/cosh(s/4)")
    };
    config(BuiltinCurve::AntiSalkowski, ms, control, full_domain())
}
