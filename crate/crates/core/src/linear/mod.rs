//! Exact rational linear algebra.

mod matrix;
mod orthogonal;

pub use matrix::{format_rational, inner, parse_rational, QMatrix, QVector, Rational};
pub use orthogonal::{
    is_orthogonal, is_reflection, is_rfix_quark_invertible, orthogonality_defect,
    random_rational_orthogonal, reflection_across,
};
