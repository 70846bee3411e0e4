//! Exact coefficients: Gaussian rationals, bubble polynomials and symmetric functions.

mod bubble;
mod grat;
mod poly;
mod sym;

pub use bubble::{bubble_mul, delta_prime, indices as bubble_indices, BubblePoly};
pub use grat::GRat;
pub use poly::{mono_mul, MPoly, Mono};
pub use sym::{complete_homogeneous, power_sum_variables, SymPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// Binary and unary field operations on `GRat`, by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GratOp {
    Add,
    Mul,
    Neg,
    Inv,
}

pub fn grat_arith(a: &GRat, b: &GRat, op: GratOp) -> Result<GRat, ScalarError> {
    match op {
        GratOp::Add => Ok(a + b),
        GratOp::Mul => Ok(a * b),
        GratOp::Neg => Ok(-a),
        GratOp::Inv => a.inv(),
    }
}
