//! Scalar expressions in the variables `s` and `v`.
//!
//! Expressions are parsed once into an immutable [`Expr`] tree and then
//! evaluated either as plain `f64` values or as truncated Taylor series
//! ([`Taylor`]) in one variable, which yields exact derivatives up to the
//! truncation order.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! expr   = term , { ( "+" | "-" ) , term } ;
//! term   = unary , { ( "*" | "/" ) , unary } ;
//! unary  = "-" , unary | power ;
//! power  = atom , [ "^" , unary ] ;            (* right-associative *)
//! atom   = number | "s" | "v" | "pi"
//!        | func , "(" , expr , ")"
//!        | "(" , expr , ")" ;
//! func   = "sin" | "cos" | "tan" | "sinh" | "cosh" | "exp" | "ln"
//!        | "sqrt" | "abs" | "fresnelS" | "fresnelC" ;
//! number = digits , [ "." , [ digits ] ] , [ exponent ]
//!        | "." , digits , [ exponent ] ;
//! exponent = ( "e" | "E" ) , [ "+" | "-" ] , digits ;
//! ```
//!
//! The exponent of `^` must not mention `s` or `v`. A fractional exponent
//! requires a positive base at evaluation time. `-s^2` parses as `-(s^2)`.

mod eval;
pub mod fresnel;
mod jet;
mod parse;

use std::fmt;

pub use eval::{eval, eval_jet3, eval_taylor, EvalWarning};
pub use fresnel::{fresnel_c, fresnel_s};
pub use jet::{Jet3, Taylor};
pub use parse::{parse, ParseError};

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    S,
    V,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::S => "s",
            Var::V => "v",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Exp,
    Ln,
    Sqrt,
    Abs,
    FresnelS,
    FresnelC,
}

impl Func {
    pub const ALL: [Func; 11] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Exp,
        Func::Ln,
        Func::Sqrt,
        Func::Abs,
        Func::FresnelS,
        Func::FresnelC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::FresnelS => "fresnelS",
            Func::FresnelC => "fresnelC",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Pi,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("domain error in `{subexpr}`: {reason}")]
    Domain { subexpr: String, reason: String },
}

impl Expr {
    pub fn num(x: f64) -> Expr {
        Expr::Num(x)
    }

    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn call(func: Func, arg: Expr) -> Expr {
        Expr::Call(func, Box::new(arg))
    }

    pub fn mentions(&self, var: Var) -> bool {
        match self {
            Expr::Num(_) | Expr::Pi => false,
            Expr::Var(v) => *v == var,
            Expr::Neg(e) | Expr::Call(_, e) => e.mentions(var),
            Expr::Binary(_, a, b) => a.mentions(var) || b.mentions(var),
        }
    }

    pub fn is_constant(&self) -> bool {
        !self.mentions(Var::S) && !self.mentions(Var::V)
    }

    /// Binding strength used by the printer; higher binds tighter.
    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            Expr::Num(x) if x.is_sign_negative() => 3,
            Expr::Binary(BinOp::Pow, ..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let wrap = self.precedence() < min_prec;
        if wrap {
            f.write_str("(")?;
        }
        match self {
            Expr::Num(x) => write!(f, "{x}")?,
            Expr::Var(v) => write!(f, "{v}")?,
            Expr::Pi => f.write_str("pi")?,
            Expr::Neg(e) => {
                f.write_str("-")?;
                e.write_at(f, 3)?;
            }
            Expr::Call(func, arg) => {
                write!(f, "{}(", func.name())?;
                arg.write_at(f, 0)?;
                f.write_str(")")?;
            }
            Expr::Binary(op, a, b) => {
                let (lp, rp) = match op {
                    BinOp::Add | BinOp::Sub => (1, 2),
                    BinOp::Mul | BinOp::Div => (2, 3),
                    BinOp::Pow => (5, 3),
                };
                a.write_at(f, lp)?;
                f.write_str(op.symbol())?;
                b.write_at(f, rp)?;
            }
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl std::str::FromStr for Expr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt(text: &str) -> String {
        parse(text).unwrap().to_string()
    }

    #[test]
    fn printer_minimal_parentheses() {
        assert_eq!(rt("4*sin(s^2/8)"), "4*sin(s^2/8)");
        assert_eq!(rt("-s^2"), "-s^2");
        assert_eq!(rt("(-s)^2"), "(-s)^2");
        assert_eq!(rt("s-(v-1)"), "s-(v-1)");
        assert_eq!(rt("(s-v)-1"), "s-v-1");
        assert_eq!(rt("2^3^2"), "2^3^2");
        assert_eq!(rt("(2^3)^2"), "(2^3)^2");
        assert_eq!(rt("-(s*v)"), "-(s*v)");
        assert_eq!(rt("s*-v"), "s*-v");
        assert_eq!(rt("s/(v*2)"), "s/(v*2)");
        assert_eq!(rt("2^-1"), "2^-1");
    }

    #[test]
    fn negative_literal_prints_as_negation() {
        let e = Expr::binary(BinOp::Mul, Expr::num(-0.5), Expr::var(Var::S));
        assert_eq!(e.to_string(), "-0.5*s");
        let again = parse(&e.to_string()).unwrap();
        assert_eq!(eval(&again, 2.0, 0.0).unwrap(), -1.0);
    }
}
