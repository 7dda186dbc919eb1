//! The r.fix preorder.
//!
//! For a monoid `H`, `rfix(a) = {x : ax = x}` and `b ≼ c` iff
//! `rfix(c) ⊆ rfix(b)`. On transformations this is the same as
//! `fix(g) ⊆ fix(f)` for `f ≼ g`, which is what [`fix_preorder`] computes;
//! [`rfix_preorder`] is the definitional version and is quadratic in the
//! carrier with a linear subset test, so it is meant for checking only.

use fixedbitset::FixedBitSet;

use crate::caps::{self, SizeCaps};
use crate::error::{Error, Result};
use crate::monoid::{FiniteMonoid, TransformationKind, TransformationMonoid};
use crate::preorder::FinitePreorder;
use crate::premonoid::Premonoid;
use crate::transformation::{Permutation, PointSet, Transformation};

/// `{x : a·x = x}` as a membership set.
pub fn rfix_set<M: FiniteMonoid + ?Sized>(m: &M, a: usize) -> FixedBitSet {
    let n = m.size();
    let mut set = FixedBitSet::with_capacity(n);
    for x in 0..n {
        if m.op(a, x) == x {
            set.insert(x);
        }
    }
    set
}

/// The r.fix preorder from its definition.
pub fn rfix_preorder<M: FiniteMonoid + ?Sized>(m: &M, caps: &SizeCaps) -> Result<FinitePreorder> {
    let n = m.size();
    caps::check("r.fix preorder carrier", n, caps.table_carrier)?;
    let sets: Vec<FixedBitSet> = (0..n).map(|a| rfix_set(m, a)).collect();
    Ok(FinitePreorder::from_fn(n, |b, c| sets[c].is_subset(&sets[b])))
}

/// The fix-set comparator on T_n: `f ≼ g` iff `fix(g) ⊆ fix(f)`.
pub fn fix_preorder(n: usize, caps: &SizeCaps) -> Result<FinitePreorder> {
    let m = crate::monoid::full_transformation_monoid(n, caps)?;
    fix_preorder_on(&m, caps)
}

/// The fix-set comparator restricted to the carrier of `m`.
pub fn fix_preorder_on(m: &TransformationMonoid, caps: &SizeCaps) -> Result<FinitePreorder> {
    let size = m.size();
    caps::check("preorder carrier", size, caps.preorder_carrier)?;
    let fixes: Vec<PointSet> = (0..size).map(|i| m.element(i).fix_set()).collect();
    Ok(FinitePreorder::from_fn(size, |f, g| {
        fixes[g].is_subset(fixes[f])
    }))
}

/// Which submonoid of T_n carries the r.fix premonoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RfixRestriction {
    All,
    /// Singular maps and the identity.
    Singular,
    /// The symmetric group.
    Invertible,
}

/// An r.fix premonoid over T_n or one of its submonoids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RfixPremonoidSpec {
    pub degree: usize,
    pub restriction: RfixRestriction,
}

impl RfixPremonoidSpec {
    pub fn new(degree: usize, restriction: RfixRestriction) -> Self {
        RfixPremonoidSpec {
            degree,
            restriction,
        }
    }

    /// Builds the premonoid; the order is the fix-set comparator.
    pub fn build(&self, caps: &SizeCaps) -> Result<Premonoid<TransformationMonoid>> {
        let kind = match self.restriction {
            RfixRestriction::All => TransformationKind::Full,
            RfixRestriction::Singular => TransformationKind::Singular,
            RfixRestriction::Invertible => TransformationKind::Symmetric,
        };
        let m = TransformationMonoid::new(self.degree, kind, caps)?;
        let order = fix_preorder_on(&m, caps)?;
        Premonoid::new(m, order)
    }
}

/// Height in the singular subpremonoid: `n - |fix(t)|`, and 0 for the identity.
pub fn singular_height_formula(t: &Transformation) -> Result<usize> {
    if t.is_identity() {
        Ok(0)
    } else if !t.is_singular() {
        Err(Error::NotSingular)
    } else {
        Ok(t.degree() - t.fix_set().len())
    }
}

/// Height in the permutation subpremonoid: `n - 1 - |fix(p)|`, and 0 for the identity.
pub fn permutation_height_formula(p: &Permutation) -> usize {
    if p.is_identity() {
        0
    } else {
        p.degree() - 1 - p.fix_set().len()
    }
}

/// Quarks of the singular subpremonoid are exactly the quasi-identities.
pub fn is_rfix_quark_singular(t: &Transformation) -> bool {
    t.is_quasi_identity()
}

/// Quarks of the permutation subpremonoid are exactly the transpositions.
pub fn is_rfix_quark_permutation(p: &Permutation) -> bool {
    p.is_transposition()
}
