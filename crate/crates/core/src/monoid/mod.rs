//! Finite monoids on an indexed carrier.
//!
//! Elements are handled by carrier index everywhere; a monoid only has to say
//! how big it is, where its identity sits and how to multiply two indices.

mod power;
pub mod predicates;
mod table;
mod transformations;

pub use power::{reduced_power_monoid, PowerMonoid, PowerSetElement};
pub use predicates::{
    acyclic_witness, cancellative_witness, dedekind_finite_witness, is_acyclic, is_cancellative,
    is_dedekind_finite, is_unit_cancellative, unit_cancellative_witness, units,
};
pub use table::TableMonoid;
pub use transformations::{
    full_transformation_monoid, singular_submonoid, symmetric_group, TransformationKind,
    TransformationMonoid,
};

use crate::caps::{self, SizeCaps};
use crate::error::Result;
use crate::preorder::FinitePreorder;
use fixedbitset::FixedBitSet;

/// A monoid with carrier `{0, …, size()-1}`.
pub trait FiniteMonoid: Sync {
    fn size(&self) -> usize;

    fn identity(&self) -> usize;

    /// The product `x · y`.
    fn op(&self, x: usize, y: usize) -> usize;

    /// Human-readable name of an element.
    fn label(&self, x: usize) -> String {
        x.to_string()
    }
}

impl<M: FiniteMonoid + ?Sized> FiniteMonoid for &M {
    fn size(&self) -> usize {
        (**self).size()
    }

    fn identity(&self) -> usize {
        (**self).identity()
    }

    fn op(&self, x: usize, y: usize) -> usize {
        (**self).op(x, y)
    }

    fn label(&self, x: usize) -> String {
        (**self).label(x)
    }
}

/// Product of a word, left to right. The empty word is the identity.
pub fn product<M: FiniteMonoid + ?Sized>(m: &M, word: &[usize]) -> usize {
    word.iter().fold(m.identity(), |acc, &x| m.op(acc, x))
}

/// First triple `(x, y, z)` with `(xy)z ≠ x(yz)`.
pub fn associativity_witness<M: FiniteMonoid + ?Sized>(m: &M) -> Option<[usize; 3]> {
    let n = m.size();
    for x in 0..n {
        for y in 0..n {
            let xy = m.op(x, y);
            for z in 0..n {
                if m.op(xy, z) != m.op(x, m.op(y, z)) {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

/// The divisibility preorder: `x ≼ y` iff `y ∈ HxH`.
pub fn divisibility_preorder<M: FiniteMonoid + ?Sized>(
    m: &M,
    caps: &SizeCaps,
) -> Result<FinitePreorder> {
    let n = m.size();
    caps::check("divisibility preorder carrier", n, caps.table_carrier)?;
    let rows = (0..n)
        .map(|x| {
            // xH first, then H(xH).
            let mut right = FixedBitSet::with_capacity(n);
            for v in 0..n {
                right.insert(m.op(x, v));
            }
            let mut two_sided = FixedBitSet::with_capacity(n);
            for w in right.ones() {
                for u in 0..n {
                    two_sided.insert(m.op(u, w));
                }
            }
            two_sided
        })
        .collect();
    Ok(FinitePreorder::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preorder::validate_preorder;

    #[test]
    fn divisibility_on_union_semilattice() {
        // P({1,2}) under union: index bit i stands for element i+1.
        let m = TableMonoid::union_semilattice(2).unwrap();
        let p = divisibility_preorder(&m, &SizeCaps::default()).unwrap();
        assert!(p.le(0b01, 0b11));
        assert!(!p.le(0b11, 0b01));
        assert!(!p.le(0b01, 0b10));
        for y in 0..4 {
            assert!(p.le(m.identity(), y));
        }
        assert!(validate_preorder(&p).is_valid());
    }

    #[test]
    fn divisibility_in_power_monoid_of_z2() {
        let base = TableMonoid::cyclic_group(2).unwrap();
        let h = reduced_power_monoid(&base, &SizeCaps::default()).unwrap();
        let p = divisibility_preorder(&h, &SizeCaps::default()).unwrap();
        let zero = h.index_of(&[0]).unwrap();
        let both = h.index_of(&[0, 1]).unwrap();
        assert!(!p.le(both, zero));
        assert!(p.le(zero, both));
    }

    #[test]
    fn product_of_empty_word_is_identity() {
        let m = TableMonoid::cyclic_group(3).unwrap();
        assert_eq!(product(&m, &[]), 0);
        assert_eq!(product(&m, &[1, 1, 2]), 1);
    }
}
