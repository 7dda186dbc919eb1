//! Constructive factorizers for quasi-identities, transpositions and reflections.

mod howie;
mod reflections;
mod transpositions;

pub use howie::{case_of, howie_factor, howie_split, normalize, NormalizationCertificate};
pub use reflections::cartan_dieudonne_factor;
pub use transpositions::transposition_factor;
