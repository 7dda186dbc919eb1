use serde::Serialize;

use crate::caps::{self, SizeCaps};
use crate::error::Result;

use super::{FiniteMonoid, TableMonoid};

/// A finite subset of a base monoid that contains the base identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PowerSetElement {
    members: Vec<usize>,
}

impl PowerSetElement {
    /// Sorted base-carrier indices.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn is_subset(&self, other: &PowerSetElement) -> bool {
        self.members.iter().all(|x| other.members.binary_search(x).is_ok())
    }
}

/// The reduced power monoid of a finite base: subsets containing the
/// identity under setwise product.
#[derive(Debug, Clone)]
pub struct PowerMonoid {
    elements: Vec<PowerSetElement>,
    table: TableMonoid,
}

/// Builds the reduced power monoid of `base`.
///
/// Element `i` is the base identity together with the non-identity base
/// elements selected by the bits of `i`, taken in carrier order, so index 0
/// is `{1_M}`.
pub fn reduced_power_monoid<M: FiniteMonoid + ?Sized>(
    base: &M,
    caps: &SizeCaps,
) -> Result<PowerMonoid> {
    let b = base.size();
    caps::check("power monoid base", b, caps.power_base)?;
    let e = base.identity();
    let others: Vec<usize> = (0..b).filter(|&x| x != e).collect();
    let count = 1usize << others.len();

    // Subsets as bit masks over the base carrier.
    let masks: Vec<u64> = (0..count)
        .map(|i| {
            let mut mask = 1u64 << e;
            for (bit, &x) in others.iter().enumerate() {
                if i & (1 << bit) != 0 {
                    mask |= 1 << x;
                }
            }
            mask
        })
        .collect();
    let index_of_mask = |mask: u64| -> usize {
        others
            .iter()
            .enumerate()
            .filter(|(_, &x)| mask & (1 << x) != 0)
            .fold(0, |acc, (bit, _)| acc | (1 << bit))
    };

    let rows: Vec<Vec<usize>> = masks
        .iter()
        .map(|&mx| {
            masks
                .iter()
                .map(|&my| {
                    let mut prod = 0u64;
                    for x in (0..b).filter(|x| mx & (1 << x) != 0) {
                        for y in (0..b).filter(|y| my & (1 << y) != 0) {
                            prod |= 1 << base.op(x, y);
                        }
                    }
                    index_of_mask(prod)
                })
                .collect()
        })
        .collect();
    let elements = masks
        .iter()
        .map(|&mask| PowerSetElement {
            members: (0..b).filter(|x| mask & (1 << x) != 0).collect(),
        })
        .collect();
    let table = TableMonoid::from_rows(&rows, caps)?;
    debug_assert_eq!(table.identity(), 0);
    Ok(PowerMonoid { elements, table })
}

impl PowerMonoid {
    pub fn element(&self, index: usize) -> &PowerSetElement {
        &self.elements[index]
    }

    pub fn elements(&self) -> &[PowerSetElement] {
        &self.elements
    }

    /// Index of the subset with the given base members (any order).
    pub fn index_of(&self, members: &[usize]) -> Option<usize> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.elements.iter().position(|e| e.members == sorted)
    }
}

impl FiniteMonoid for PowerMonoid {
    fn size(&self) -> usize {
        self.table.size()
    }

    fn identity(&self) -> usize {
        self.table.identity()
    }

    fn op(&self, x: usize, y: usize) -> usize {
        self.table.op(x, y)
    }

    fn label(&self, x: usize) -> String {
        let members: Vec<String> = self.elements[x].members.iter().map(|m| m.to_string()).collect();
        format!("{{{}}}", members.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> SizeCaps {
        SizeCaps::default()
    }

    #[test]
    fn carrier_of_small_bases() {
        let z2 = TableMonoid::cyclic_group(2).unwrap();
        let h = reduced_power_monoid(&z2, &caps()).unwrap();
        assert_eq!(h.size(), 2);
        assert_eq!(h.element(0).members(), &[0]);
        assert_eq!(h.element(1).members(), &[0, 1]);

        let z3 = TableMonoid::cyclic_group(3).unwrap();
        let h = reduced_power_monoid(&z3, &caps()).unwrap();
        let listed: Vec<&[usize]> = h.elements().iter().map(|e| e.members()).collect();
        assert_eq!(listed, vec![&[0][..], &[0, 1], &[0, 2], &[0, 1, 2]]);

        let trivial = TableMonoid::cyclic_group(1).unwrap();
        assert_eq!(reduced_power_monoid(&trivial, &caps()).unwrap().size(), 1);
    }

    #[test]
    fn setwise_product() {
        let z3 = TableMonoid::cyclic_group(3).unwrap();
        let h = reduced_power_monoid(&z3, &caps()).unwrap();
        let a = h.index_of(&[0, 1]).unwrap();
        // {0,1} + {0,1} = {0,1,2}
        assert_eq!(h.element(h.op(a, a)).members(), &[0, 1, 2]);
        assert_eq!(h.label(a), "{0,1}");
    }

    #[test]
    fn base_cap() {
        let z7 = TableMonoid::cyclic_group(7).unwrap();
        assert!(reduced_power_monoid(&z7, &caps()).is_err());
    }
}
