//! Exhaustive checks of monoid-level properties. Each `*_witness` function
//! returns the first counterexample in carrier order, or `None` when the
//! property holds. Costs are quadratic (Dedekind-finite, unit-cancellative)
//! or cubic (acyclic, cancellative) in the carrier size.

use fixedbitset::FixedBitSet;

use super::FiniteMonoid;

/// The group of units, as a membership set.
pub fn units<M: FiniteMonoid + ?Sized>(m: &M) -> FixedBitSet {
    let n = m.size();
    let e = m.identity();
    let mut set = FixedBitSet::with_capacity(n);
    for x in 0..n {
        if (0..n).any(|y| m.op(x, y) == e && m.op(y, x) == e) {
            set.insert(x);
        }
    }
    set
}

/// A pair `(x, y)` with `xy` a unit but `x` or `y` not.
pub fn dedekind_finite_witness<M: FiniteMonoid + ?Sized>(m: &M) -> Option<[usize; 2]> {
    let u = units(m);
    let n = m.size();
    for x in 0..n {
        for y in 0..n {
            if u.contains(m.op(x, y)) && !(u.contains(x) && u.contains(y)) {
                return Some([x, y]);
            }
        }
    }
    None
}

pub fn is_dedekind_finite<M: FiniteMonoid + ?Sized>(m: &M) -> bool {
    dedekind_finite_witness(m).is_none()
}

/// A triple `(u, x, v)` with `uxv = x` where `u` or `v` is a non-unit.
///
/// For each `x` and `u`, `v` runs over the identity first and then the
/// remaining carrier in order.
pub fn acyclic_witness<M: FiniteMonoid + ?Sized>(m: &M) -> Option<[usize; 3]> {
    let un = units(m);
    let n = m.size();
    let e = m.identity();
    let vs: Vec<usize> = std::iter::once(e).chain((0..n).filter(|&v| v != e)).collect();
    for x in 0..n {
        for u in 0..n {
            let ux = m.op(u, x);
            for &v in &vs {
                if (!un.contains(u) || !un.contains(v)) && m.op(ux, v) == x {
                    return Some([u, x, v]);
                }
            }
        }
    }
    None
}

pub fn is_acyclic<M: FiniteMonoid + ?Sized>(m: &M) -> bool {
    acyclic_witness(m).is_none()
}

/// A pair `(x, y)` with `y` a non-unit and `xy = x` or `yx = x`.
pub fn unit_cancellative_witness<M: FiniteMonoid + ?Sized>(m: &M) -> Option<[usize; 2]> {
    let un = units(m);
    let n = m.size();
    for x in 0..n {
        for y in (0..n).filter(|&y| !un.contains(y)) {
            if m.op(x, y) == x || m.op(y, x) == x {
                return Some([x, y]);
            }
        }
    }
    None
}

pub fn is_unit_cancellative<M: FiniteMonoid + ?Sized>(m: &M) -> bool {
    unit_cancellative_witness(m).is_none()
}

/// A triple `(x, y, z)` with `y ≠ z` and `xy = xz` or `yx = zx`.
pub fn cancellative_witness<M: FiniteMonoid + ?Sized>(m: &M) -> Option<[usize; 3]> {
    let n = m.size();
    for x in 0..n {
        for y in 0..n {
            for z in (y + 1)..n {
                if m.op(x, y) == m.op(x, z) || m.op(y, x) == m.op(z, x) {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

pub fn is_cancellative<M: FiniteMonoid + ?Sized>(m: &M) -> bool {
    cancellative_witness(m).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::SizeCaps;
    use crate::monoid::{full_transformation_monoid, TableMonoid};
    use crate::transformation::Transformation;

    #[test]
    fn t3_predicates() {
        let m = full_transformation_monoid(3, &SizeCaps::default()).unwrap();
        assert!(is_dedekind_finite(&m));
        assert_eq!(units(&m).count_ones(..), 6);

        let [u, x, v] = acyclic_witness(&m).expect("T_3 is not acyclic");
        assert_eq!(m.element(u).to_one_based(), vec![1, 1, 1]);
        assert_eq!(m.element(x).to_one_based(), vec![1, 1, 1]);
        assert_eq!(m.element(v), Transformation::identity(3));

        assert!(!is_cancellative(&m));
        assert!(!is_unit_cancellative(&m));
    }

    #[test]
    fn groups_satisfy_everything() {
        let z3 = TableMonoid::cyclic_group(3).unwrap();
        assert!(is_dedekind_finite(&z3));
        assert!(is_acyclic(&z3));
        assert!(is_unit_cancellative(&z3));
        assert!(is_cancellative(&z3));
    }

    #[test]
    fn union_semilattice_is_not_unit_cancellative() {
        let m = TableMonoid::union_semilattice(2).unwrap();
        assert!(is_dedekind_finite(&m));
        // {1} ∪ {1} = {1}
        assert!(unit_cancellative_witness(&m).is_some());
    }
}
