//! Exact polynomial arithmetic over Q with the radicals w1 = sqrt(2ab) and w2 = sqrt(2ab - c^2) adjoined.

mod frac;
mod parse;
mod poly;

use std::collections::BTreeMap;

use thiserror::Error;

pub use frac::RadFrac;
pub use parse::{parse, ParseError};
pub use poly::{Mono, RadPoly, Var, ALL_VARS, NVARS, W1, W2};

use crate::field::{rat_to_f64, Rational};

#[derive(Debug, Error, PartialEq)]
pub enum SymbolicError {
    #[error("radical values inconsistent with the assignment: {0}")]
    InconsistentRadicals(String),
}

pub type Assignment = BTreeMap<Var, Rational>;

/// Dense value table; missing variables evaluate to zero.
pub fn dense_values(assignment: &Assignment) -> [f64; NVARS] {
    let mut vals = [0.0; NVARS];
    for (v, q) in assignment {
        vals[v.index()] = rat_to_f64(q);
    }
    vals
}

fn check_radicals(assignment: &Assignment, w1: f64, w2: f64) -> Result<(), SymbolicError> {
    let vals = dense_values(assignment);
    let (a, b, c) = (vals[Var::A.index()], vals[Var::B.index()], vals[Var::C.index()]);
    let e1 = w1 * w1 - 2.0 * a * b;
    let e2 = w2 * w2 - (2.0 * a * b - c * c);
    let scale = 1.0_f64.max((2.0 * a * b).abs()).max(c * c);
    if e1.abs() > 1e-12 * scale {
        return Err(SymbolicError::InconsistentRadicals(format!("w1^2 - 2ab = {e1:e}")));
    }
    if e2.abs() > 1e-12 * scale {
        return Err(SymbolicError::InconsistentRadicals(format!("w2^2 - (2ab - c^2) = {e2:e}")));
    }
    Ok(())
}

/// Numeric evaluation at a rational point; the radical values must match the assignment.
pub fn substitute(p: &RadPoly, assignment: &Assignment, radicals: (f64, f64)) -> Result<f64, SymbolicError> {
    check_radicals(assignment, radicals.0, radicals.1)?;
    Ok(p.eval_f64(&dense_values(assignment), radicals.0, radicals.1))
}

pub fn substitute_frac(p: &RadFrac, assignment: &Assignment, radicals: (f64, f64)) -> Result<f64, SymbolicError> {
    check_radicals(assignment, radicals.0, radicals.1)?;
    Ok(p.eval_f64(&dense_values(assignment), radicals.0, radicals.1))
}

/// Principal radical values for an assignment with 2ab >= 0 and 2ab - c^2 >= 0.
pub fn principal_radicals(assignment: &Assignment) -> (f64, f64) {
    let vals = dense_values(assignment);
    let (a, b, c) = (vals[Var::A.index()], vals[Var::B.index()], vals[Var::C.index()]);
    ((2.0 * a * b).sqrt(), (2.0 * a * b - c * c).sqrt())
}
