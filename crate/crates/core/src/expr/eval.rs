use std::f64::consts::PI;
use std::fmt;

use super::jet::{Jet3, Taylor};
use super::{BinOp, Expr, ExprError, Func, Var};

/// Non-fatal condition met while differentiating.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalWarning {
    /// `abs(u)` evaluated with `u == 0`; the derivative used `sign(0) = +1`.
    AbsKink { subexpr: String },
}

impl fmt::Display for EvalWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalWarning::AbsKink { subexpr } => {
                write!(f, "`{subexpr}` has a kink at its zero; derivative taken one-sided")
            }
        }
    }
}

fn domain(e: &Expr, reason: impl Into<String>) -> ExprError {
    ExprError::Domain {
        subexpr: e.to_string(),
        reason: reason.into(),
    }
}

/// Plain value at `(s, v)`.
pub fn eval(expr: &Expr, s: f64, v: f64) -> Result<f64, ExprError> {
    let mut sink = Vec::new();
    Ok(eval_taylor::<1>(expr, Var::S, s, v, &mut sink)?.value())
}

/// Value and first three partial derivatives with respect to `var`.
pub fn eval_jet3(expr: &Expr, var: Var, s: f64, v: f64) -> Result<Jet3, ExprError> {
    let mut warnings = Vec::new();
    let jet = eval_taylor::<4>(expr, var, s, v, &mut warnings)?;
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(jet.into())
}

/// Truncated Taylor expansion of `expr` in `var` around the point `(s, v)`,
/// holding the other variable fixed.
pub fn eval_taylor<const N: usize>(
    expr: &Expr,
    var: Var,
    s: f64,
    v: f64,
    warnings: &mut Vec<EvalWarning>,
) -> Result<Taylor<N>, ExprError> {
    let ctx = Ctx { var, s, v };
    ctx.go(expr, warnings)
}

struct Ctx {
    var: Var,
    s: f64,
    v: f64,
}

impl Ctx {
    fn go<const N: usize>(
        &self,
        e: &Expr,
        warnings: &mut Vec<EvalWarning>,
    ) -> Result<Taylor<N>, ExprError> {
        let out = match e {
            Expr::Num(x) => Taylor::constant(*x),
            Expr::Pi => Taylor::constant(PI),
            Expr::Var(x) => {
                let at = match x {
                    Var::S => self.s,
                    Var::V => self.v,
                };
                if *x == self.var {
                    Taylor::variable(at)
                } else {
                    Taylor::constant(at)
                }
            }
            Expr::Neg(a) => -self.go::<N>(a, warnings)?,
            Expr::Binary(op, a, b) => {
                let lhs = self.go::<N>(a, warnings)?;
                match op {
                    BinOp::Add => lhs + self.go::<N>(b, warnings)?,
                    BinOp::Sub => lhs - self.go::<N>(b, warnings)?,
                    BinOp::Mul => lhs * self.go::<N>(b, warnings)?,
                    BinOp::Div => {
                        let rhs = self.go::<N>(b, warnings)?;
                        if rhs.value() == 0.0 {
                            return Err(domain(e, "division by zero"));
                        }
                        lhs / rhs
                    }
                    BinOp::Pow => {
                        let p = self.go::<1>(b, warnings)?.value();
                        self.power(e, lhs, p)?
                    }
                }
            }
            Expr::Call(func, a) => {
                let u = self.go::<N>(a, warnings)?;
                let x = u.value();
                match func {
                    Func::Sin => u.sin_cos().0,
                    Func::Cos => u.sin_cos().1,
                    Func::Tan => {
                        if x.cos() == 0.0 {
                            return Err(domain(e, "tangent pole"));
                        }
                        u.tan()
                    }
                    Func::Sinh => u.sinh_cosh().0,
                    Func::Cosh => u.sinh_cosh().1,
                    Func::Exp => u.exp(),
                    Func::Ln => {
                        if x <= 0.0 {
                            return Err(domain(e, format!("logarithm of non-positive value {x}")));
                        }
                        u.ln()
                    }
                    Func::Sqrt => {
                        if x < 0.0 {
                            return Err(domain(e, format!("square root of negative value {x}")));
                        }
                        if x == 0.0 && N > 1 {
                            return Err(domain(e, "square root is not differentiable at 0"));
                        }
                        u.sqrt()
                    }
                    Func::Abs => {
                        if x == 0.0 && N > 1 {
                            warnings.push(EvalWarning::AbsKink { subexpr: e.to_string() });
                        }
                        u.abs()
                    }
                    Func::FresnelS => u.fresnel_s(),
                    Func::FresnelC => u.fresnel_c(),
                }
            }
        };
        if !out.is_finite() {
            return Err(domain(e, "non-finite result"));
        }
        Ok(out)
    }

    fn power<const N: usize>(&self, e: &Expr, base: Taylor<N>, p: f64) -> Result<Taylor<N>, ExprError> {
        if !p.is_finite() {
            return Err(domain(e, "non-finite exponent"));
        }
        let x = base.value();
        if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 {
            if p < 0.0 && x == 0.0 {
                return Err(domain(e, "zero raised to a negative power"));
            }
            return Ok(base.powi(p as i32));
        }
        if x < 0.0 || (x == 0.0 && (N > 1 || p < 0.0)) {
            return Err(domain(e, format!("fractional power of non-positive base {x}")));
        }
        if x == 0.0 {
            return Ok(Taylor::constant(0.0));
        }
        Ok(base.powf(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn p(t: &str) -> Expr {
        parse(t).unwrap()
    }

    #[test]
    fn plain_values() {
        assert_eq!(eval(&p("s+v"), 1.0, 2.0).unwrap(), 3.0);
        assert_eq!(eval(&p("cosh(s/4)"), 0.0, 0.0).unwrap(), 1.0);
        assert_eq!(eval(&p("2^-1"), 0.0, 0.0).unwrap(), 0.5);
        assert_eq!(eval(&p("sqrt(0)"), 0.0, 0.0).unwrap(), 0.0);
        assert!((eval(&p("pi"), 0.0, 0.0).unwrap() - PI).abs() == 0.0);
    }

    #[test]
    fn domain_errors_name_the_subexpression() {
        match eval(&p("1 + 1/s"), 0.0, 0.0) {
            Err(ExprError::Domain { subexpr, .. }) => assert_eq!(subexpr, "1/s"),
            other => panic!("{other:?}"),
        }
        assert!(eval(&p("ln(s)"), 0.0, 0.0).is_err());
        assert!(eval(&p("sqrt(s)"), -1.0, 0.0).is_err());
        assert!(eval(&p("s^0.5"), -1.0, 0.0).is_err());
        assert!(eval(&p("s^-1"), 0.0, 0.0).is_err());
        assert!(eval(&p("exp(exp(s))"), 10.0, 0.0).is_err());
        assert!(eval_jet3(&p("sqrt(s)"), Var::S, 0.0, 0.0).is_err());
    }

    #[test]
    fn jets_of_known_functions() {
        let j = eval_jet3(&p("sin(s)"), Var::S, 0.0, 0.0).unwrap();
        assert_eq!(j, Jet3 { c0: 0.0, c1: 1.0, c2: 0.0, c3: -1.0 });
        let j = eval_jet3(&p("s^2/8"), Var::S, 2.0, 0.0).unwrap();
        assert_eq!(j, Jet3 { c0: 0.5, c1: 0.5, c2: 0.25, c3: 0.0 });
        let j = eval_jet3(&p("fresnelS(s)"), Var::S, 1.0, 0.0).unwrap();
        assert!((j.c1 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn partial_holds_other_variable_fixed() {
        let e = p("s^2*v^3");
        let js = eval_jet3(&e, Var::S, 2.0, 3.0).unwrap();
        assert_eq!(js, Jet3 { c0: 108.0, c1: 108.0, c2: 54.0, c3: 0.0 });
        let jv = eval_jet3(&e, Var::V, 2.0, 3.0).unwrap();
        assert_eq!(jv, Jet3 { c0: 108.0, c1: 108.0, c2: 72.0, c3: 24.0 });
    }

    #[test]
    fn abs_kink_is_reported() {
        let mut w = Vec::new();
        let t = eval_taylor::<2>(&p("abs(s-1)*v"), Var::S, 1.0, 2.0, &mut w).unwrap();
        assert_eq!(t.0, [0.0, 2.0]);
        assert_eq!(w.len(), 1);
        let mut w = Vec::new();
        eval_taylor::<1>(&p("abs(s-1)"), Var::S, 1.0, 2.0, &mut w).unwrap();
        assert!(w.is_empty());
    }
}
