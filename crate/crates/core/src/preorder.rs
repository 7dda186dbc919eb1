//! Boolean relations on a finite carrier and their validation as preorders.

use fixedbitset::FixedBitSet;
use serde::Serialize;

/// A relation `le` on `{0, …, size-1}`; `le(x, y)` reads `x ≼ y`.
///
/// Construction does not enforce the preorder axioms so that user-supplied
/// relations can be inspected with [`validate_preorder`].
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePreorder {
    size: usize,
    rows: Vec<FixedBitSet>,
}

impl FinitePreorder {
    pub fn from_fn(size: usize, mut le: impl FnMut(usize, usize) -> bool) -> Self {
        let rows = (0..size)
            .map(|x| {
                let mut row = FixedBitSet::with_capacity(size);
                for y in 0..size {
                    if le(x, y) {
                        row.insert(y);
                    }
                }
                row
            })
            .collect();
        FinitePreorder { size, rows }
    }

    /// Builds the relation from per-element up-sets: `rows[x]` holds every `y` with `x ≼ y`.
    pub fn from_rows(rows: Vec<FixedBitSet>) -> Self {
        let size = rows.len();
        assert!(rows.iter().all(|r| r.len() == size), "ragged relation");
        FinitePreorder { size, rows }
    }

    /// The equality relation.
    pub fn equality(size: usize) -> Self {
        FinitePreorder::from_fn(size, |x, y| x == y)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    /// `x ≺ y`: `x ≼ y` and not `y ≼ x`.
    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.le(x, y) && !self.le(y, x)
    }

    pub fn equivalent(&self, x: usize, y: usize) -> bool {
        self.le(x, y) && self.le(y, x)
    }

    /// Every `y` with `x ≼ y`.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.rows[x]
    }
}

impl std::fmt::Debug for FinitePreorder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FinitePreorder")
            .field("size", &self.size)
            .finish_non_exhaustive()
    }
}

const MAX_REPORTED: usize = 32;

/// Outcome of [`validate_preorder`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreorderReport {
    /// Elements `x` with `¬(x ≼ x)`.
    pub reflexivity_violations: Vec<usize>,
    /// Triples `(a, b, c)` with `a ≼ b ≼ c` but `¬(a ≼ c)`; at most 32 are listed.
    pub transitivity_violations: Vec<[usize; 3]>,
    pub transitivity_violation_count: usize,
    /// A cycle of the strict relation, if one exists.
    pub strict_cycle: Option<Vec<usize>>,
}

impl PreorderReport {
    pub fn is_valid(&self) -> bool {
        self.reflexivity_violations.is_empty()
            && self.transitivity_violation_count == 0
            && self.strict_cycle.is_none()
    }
}

/// Checks reflexivity, transitivity and acyclicity of the strict part.
///
/// On a finite carrier an acyclic strict relation has no infinite descending
/// chain, so a valid report also certifies that the preorder is Artinian and
/// every element has finite height.
pub fn validate_preorder(p: &FinitePreorder) -> PreorderReport {
    let n = p.size();
    let reflexivity_violations = (0..n).filter(|&x| !p.le(x, x)).collect();

    let mut transitivity_violations = Vec::new();
    let mut transitivity_violation_count = 0;
    for a in 0..n {
        for b in p.rows[a].ones() {
            // Every c above b must be above a.
            let missing = p.rows[b].difference(&p.rows[a]);
            for c in missing {
                transitivity_violation_count += 1;
                if transitivity_violations.len() < MAX_REPORTED {
                    transitivity_violations.push([a, b, c]);
                }
            }
        }
    }

    PreorderReport {
        reflexivity_violations,
        transitivity_violations,
        transitivity_violation_count,
        strict_cycle: strict_cycle(p),
    }
}

/// Finds a cycle `x_0 ≺ x_1 ≺ … ≺ x_0`, by iterative depth-first search.
fn strict_cycle(p: &FinitePreorder) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let n = p.size();
    let mut mark = vec![Mark::New; n];
    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        // (vertex, next successor candidate)
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Open;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            let succ = (*next..n).find(|&w| p.lt(v, w));
            match succ {
                Some(w) => {
                    *next = w + 1;
                    match mark[w] {
                        Mark::New => {
                            mark[w] = Mark::Open;
                            stack.push((w, 0));
                        }
                        Mark::Open => {
                            let start = stack.iter().position(|&(u, _)| u == w).unwrap();
                            return Some(stack[start..].iter().map(|&(u, _)| u).collect());
                        }
                        Mark::Done => {}
                    }
                }
                None => {
                    mark[v] = Mark::Done;
                    stack.pop();
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_is_valid() {
        assert!(validate_preorder(&FinitePreorder::equality(3)).is_valid());
    }

    #[test]
    fn missing_transitive_pair_is_reported() {
        // 0 ≼ 1 ≼ 2 but not 0 ≼ 2.
        let p = FinitePreorder::from_fn(3, |x, y| x == y || (x, y) == (0, 1) || (x, y) == (1, 2));
        let report = validate_preorder(&p);
        assert!(!report.is_valid());
        assert_eq!(report.transitivity_violations, vec![[0, 1, 2]]);
        assert_eq!(report.transitivity_violation_count, 1);
    }

    #[test]
    fn irreflexive_element_is_reported() {
        let p = FinitePreorder::from_fn(2, |x, y| x == y && x == 0);
        assert_eq!(validate_preorder(&p).reflexivity_violations, vec![1]);
    }

    #[test]
    fn strict_cycle_in_non_transitive_relation() {
        // 0 → 1 → 2 → 0, each strict, not transitive.
        let p = FinitePreorder::from_fn(3, |x, y| x == y || y == (x + 1) % 3);
        let report = validate_preorder(&p);
        let cycle = report.strict_cycle.expect("cycle");
        assert_eq!(cycle.len(), 3);
    }

    #[test]
    fn total_order_has_no_cycle() {
        let p = FinitePreorder::from_fn(5, |x, y| x <= y);
        assert!(validate_preorder(&p).is_valid());
    }
}
