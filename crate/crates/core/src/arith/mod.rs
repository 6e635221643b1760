//! Exact arithmetic: Laurent polynomials, rational functions, scalars, matrices.

pub mod gcd;
pub mod laurent;
pub mod linalg;
pub mod ratfunc;
pub mod render;
pub mod scalar;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("inexact division")]
    InexactDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero substituted for x{} under a negative exponent", var + 1)]
    ZeroInNegativePower { var: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
