//! Factorization in premonoids.
//!
//! A premonoid is a monoid together with an arbitrary preorder on its
//! carrier. This crate computes units, quarks, irreducibles, atoms and
//! heights of finite premonoids, factors elements with the generic engines,
//! and provides constructive factorizers for three concrete settings:
//! singular maps into quasi-identities, permutations into transpositions,
//! and rational orthogonal matrices into reflections. Brute-force oracles in
//! [`oracle`] check all of it exhaustively on small carriers.

pub mod caps;
pub mod constructive;
pub mod error;
pub mod factorization;
pub mod linear;
pub mod monoid;
pub mod oracle;
pub mod preorder;
pub mod premonoid;
pub mod rfix;
pub mod transformation;

pub use caps::SizeCaps;
pub use error::{Error, Result};
pub use constructive::{
    cartan_dieudonne_factor, howie_factor, normalize, transposition_factor,
    NormalizationCertificate,
};
pub use factorization::{CaseTag, Factorization, HeightCheck, Rule, TraceStep};
pub use linear::{QMatrix, QVector, Rational};
pub use monoid::FiniteMonoid;
pub use preorder::{validate_preorder, FinitePreorder, PreorderReport};
pub use premonoid::{ElementClass, HeightTable, Premonoid};
pub use transformation::{Permutation, PointSet, Transformation};
