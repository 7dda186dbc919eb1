//! Certificates returned by every factorizer in the crate.

use serde::Serialize;

/// Case of the quasi-identity splitting step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    /// Already a quasi-identity; no split.
    Base,
    /// `α²(X) ⊊ α(X)` or `r < n-1`: split into a quasi-identity and one map.
    Case1,
    /// Case 2 with `a_n` fixed: split into two quasi-identities and one map.
    Case2a,
    /// Case 2 with `a_n` moved: split into a quasi-identity and one map.
    Case2b,
}

/// The rule used at one expansion step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Rule {
    /// Generic split into `arity` parts strictly below the element.
    Split { arity: usize },
    /// Quasi-identity split of a singular map.
    Howie { case: CaseTag },
    /// `α = β (β α)` with `β` a transposition.
    Transposition,
    /// `f = g (g f)` with `g` a reflection.
    Reflection,
}

/// Height bookkeeping for one split: `sum(parts) <= limit`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightCheck {
    pub element: usize,
    pub parts: Vec<usize>,
    pub limit: usize,
}

impl HeightCheck {
    pub fn holds(&self) -> bool {
        self.parts.iter().sum::<usize>() <= self.limit
    }
}

/// One expansion step: `element` was rewritten as the product of `parts`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceStep<E> {
    #[serde(flatten)]
    pub rule: Rule,
    pub element: E,
    pub parts: Vec<E>,
    pub heights: Option<HeightCheck>,
}

/// A factorization of `target` as the ordered product of `factors`.
///
/// Products are read left to right under the owning monoid's convention; for
/// maps that is composition with the rightmost factor applied first. The
/// identity is the empty product.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Factorization<E> {
    pub target: E,
    pub factors: Vec<E>,
    pub trace: Vec<TraceStep<E>>,
    /// Length bound guaranteed by the theorem the factorizer implements.
    pub bound: Option<usize>,
}

impl<E> Factorization<E> {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn within_bound(&self) -> bool {
        self.bound.map_or(true, |b| self.len() <= b)
    }
}
