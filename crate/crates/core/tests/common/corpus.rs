//! Grammar corpus: valid inputs with their canonical printing and value at
//! `(s, v) = (0.5, 2)`, and invalid inputs with the byte offset of the error.

use std::f64::consts::PI;

pub const S: f64 = 0.5;
pub const V: f64 = 2.0;

pub const VALID: [(&str, &str, f64); 30] = [
    ("1", "1", 1.0),
    ("s", "s", 0.5),
    ("v", "v", 2.0),
    ("pi", "pi", PI),
    ("1+2*3", "1+2*3", 7.0),
    ("(1+2)*3", "(1+2)*3", 9.0),
    ("2^3^2", "2^3^2", 512.0),
    ("(2^3)^2", "(2^3)^2", 64.0),
    ("-s^2", "-s^2", -0.25),
    ("(-s)^2", "(-s)^2", 0.25),
    ("s-v-1", "s-v-1", -2.5),
    ("s-(v-1)", "s-(v-1)", -0.5),
    ("8/2/2", "8/2/2", 2.0),
    ("8/(2/2)", "8/(2/2)", 8.0),
    ("2*-v", "2*-v", -4.0),
    ("--s", "--s", 0.5),
    ("1.5e2", "150", 150.0),
    (".5", "0.5", 0.5),
    ("5.", "5", 5.0),
    ("2.5E-1", "0.25", 0.25),
    ("  s  *  v  ", "s*v", 1.0),
    ("sin(pi/2)", "sin(pi/2)", 1.0),
    ("cos(0)", "cos(0)", 1.0),
    ("exp(0)+ln(1)", "exp(0)+ln(1)", 1.0),
    ("sqrt(v*8)", "sqrt(v*8)", 4.0),
    ("abs(s-v)", "abs(s-v)", 1.5),
    ("sinh(0)+cosh(0)", "sinh(0)+cosh(0)", 1.0),
    ("tan(0)", "tan(0)", 0.0),
    ("fresnelS(0)+fresnelC(0)", "fresnelS(0)+fresnelC(0)", 0.0),
    ("2^-1", "2^-1", 0.5),
];

pub const INVALID: [(&str, usize); 20] = [
    ("", 0),
    ("sin(", 4),
    ("1+", 2),
    ("(1+2", 4),
    ("1+2)", 3),
    ("2s", 1),
    ("s^v", 2),
    ("2^(s+1)", 2),
    ("foo(s)", 0),
    ("sin s", 4),
    ("1 $ 2", 2),
    (".", 0),
    ("1e", 0),
    ("s**2", 2),
    ("()", 1),
    ("x", 0),
    ("sin()", 4),
    ("1..2", 2),
    ("s^", 2),
    ("2^-v", 2),
];

/// Runs the whole corpus; returns the failures.
pub fn run() -> Vec<String> {
    use g3pencil::expr::{eval, parse};
    let mut failures = Vec::new();
    for (text, printed, value) in VALID {
        match parse(text) {
            Ok(e) => {
                if e.to_string() != printed {
                    failures.push(format!("{text:?} printed as {:?}", e.to_string()));
                }
                match eval(&e, S, V) {
                    Ok(x) if (x - value).abs() <= 1e-15 * value.abs().max(1.0) => {}
                    other => failures.push(format!("{text:?} evaluated to {other:?}")),
                }
            }
            Err(err) => failures.push(format!("{text:?} rejected: {err}")),
        }
    }
    for (text, offset) in INVALID {
        match parse(text) {
            Err(err) if err.offset == offset => {}
            other => failures.push(format!("{text:?} gave {other:?}, wanted error at {offset}")),
        }
    }
    failures
}
