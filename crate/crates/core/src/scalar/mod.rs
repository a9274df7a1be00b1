//! Exact scalars: rationals, the number field K and linear algebra over K.

mod field;
mod matrix;

pub use field::{FieldElem, BASIS_NAMES};
pub use matrix::{solve_linear, solve_sparse, Matrix, Solution, SparseMatrix, SparseRow};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular matrix")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Shorthand for the rational n/d.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Shorthand for the field element n/d.
pub fn fe(n: i64, d: i64) -> FieldElem {
    FieldElem::frac(n, d)
}
