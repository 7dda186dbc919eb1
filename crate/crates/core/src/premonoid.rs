//! Premonoids: a finite monoid paired with a preorder on its carrier.
//!
//! This module classifies elements (units, quarks, irreducibles, atoms),
//! computes heights, and runs the two generic factorization engines. Every
//! engine works on carrier indices and returns a [`Factorization`] whose
//! product can be recomputed from the monoid alone.
//!
//! Exhaustive tuple searches are limited to degree `s ∈ {2, 3}`; the search
//! over `k`-tuples costs `Θ(|H|^(k-1))` per element.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::{Factorization, HeightCheck, Rule, TraceStep};
use crate::monoid::FiniteMonoid;
use crate::preorder::FinitePreorder;

/// Supported degrees for irreducibility and the bounded engine.
pub const MIN_DEGREE: usize = 2;
pub const MAX_DEGREE: usize = 3;

pub(crate) fn check_degree(s: usize) -> Result<()> {
    if (MIN_DEGREE..=MAX_DEGREE).contains(&s) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange(s))
    }
}

/// Heights of all carrier elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightTable {
    heights: Vec<usize>,
}

impl HeightTable {
    pub fn get(&self, x: usize) -> usize {
        self.heights[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.heights
    }

    pub fn max(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }
}

/// Element classes that can be enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementClass {
    Units,
    Quarks,
    Irreducibles,
    Atoms,
}

#[derive(Debug, Clone)]
pub struct Premonoid<M> {
    monoid: M,
    order: FinitePreorder,
    units: FixedBitSet,
}

impl<M: FiniteMonoid> Premonoid<M> {
    pub fn new(monoid: M, order: FinitePreorder) -> Result<Self> {
        if monoid.size() != order.size() {
            return Err(Error::DimensionMismatch {
                left: monoid.size(),
                right: order.size(),
            });
        }
        let e = monoid.identity();
        let mut units = FixedBitSet::with_capacity(monoid.size());
        for x in 0..monoid.size() {
            if order.equivalent(x, e) {
                units.insert(x);
            }
        }
        Ok(Premonoid {
            monoid,
            order,
            units,
        })
    }

    pub fn monoid(&self) -> &M {
        &self.monoid
    }

    pub fn order(&self) -> &FinitePreorder {
        &self.order
    }

    pub fn size(&self) -> usize {
        self.monoid.size()
    }

    /// `x ≼ 1` and `1 ≼ x`.
    pub fn is_unit(&self, x: usize) -> bool {
        self.units.contains(x)
    }

    pub fn units(&self) -> Vec<usize> {
        self.units.ones().collect()
    }

    pub fn non_units(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| !self.is_unit(x)).collect()
    }

    /// Non-units `b` with `b ≺ x`, ascending.
    pub fn non_units_below(&self, x: usize) -> Vec<usize> {
        (0..self.size())
            .filter(|&b| !self.is_unit(b) && self.order.lt(b, x))
            .collect()
    }

    /// A non-unit with no non-unit strictly below it.
    pub fn is_quark(&self, x: usize) -> bool {
        !self.is_unit(x) && (0..self.size()).all(|b| self.is_unit(b) || !self.order.lt(b, x))
    }

    /// A non-unit that is not a product of `k ∈ 2..=s` non-units each strictly below it.
    pub fn is_irreducible(&self, x: usize, s: usize) -> Result<bool> {
        check_degree(s)?;
        if self.is_unit(x) {
            return Ok(false);
        }
        let below = self.non_units_below(x);
        Ok(self.find_split(x, s, &below, |_| true).is_none())
    }

    /// A non-unit that is not a product of two non-units.
    pub fn is_atom(&self, x: usize) -> bool {
        if self.is_unit(x) {
            return false;
        }
        let nu = self.non_units();
        !nu.iter()
            .any(|&a| nu.iter().any(|&b| self.monoid.op(a, b) == x))
    }

    /// All elements of a class, ascending. Irreducibles use degree `s`.
    pub fn enumerate(&self, class: ElementClass, s: usize) -> Result<Vec<usize>> {
        let all = 0..self.size();
        Ok(match class {
            ElementClass::Units => self.units(),
            ElementClass::Quarks => all.filter(|&x| self.is_quark(x)).collect(),
            ElementClass::Atoms => all.filter(|&x| self.is_atom(x)).collect(),
            ElementClass::Irreducibles => {
                check_degree(s)?;
                let mut out = Vec::new();
                for x in all {
                    if self.is_irreducible(x, s)? {
                        out.push(x);
                    }
                }
                out
            }
        })
    }

    /// Length of the longest strictly descending chain of non-units from
    /// each element; units get 0.
    pub fn height(&self) -> Result<HeightTable> {
        const UNSEEN: usize = usize::MAX;
        const OPEN: usize = usize::MAX - 1;
        let n = self.size();
        let mut h = vec![UNSEEN; n];
        for u in self.units.ones() {
            h[u] = 0;
        }
        for root in 0..n {
            if h[root] != UNSEEN {
                continue;
            }
            // (element, next candidate below it, best height found so far)
            let mut stack = vec![(root, 0usize, 0usize)];
            h[root] = OPEN;
            while let Some(frame) = stack.last_mut() {
                let (x, next, _) = *frame;
                let below = (next..n).find(|&b| !self.is_unit(b) && self.order.lt(b, x));
                match below {
                    Some(b) => {
                        frame.1 = b + 1;
                        match h[b] {
                            OPEN => return Err(Error::CycleDetected { element: b }),
                            UNSEEN => {
                                h[b] = OPEN;
                                stack.push((b, 0, 0));
                            }
                            hb => frame.2 = frame.2.max(hb),
                        }
                    }
                    None => {
                        let (x, _, best) = stack.pop().unwrap();
                        h[x] = best + 1;
                        if let Some(parent) = stack.last_mut() {
                            parent.2 = parent.2.max(h[x]);
                        }
                    }
                }
            }
        }
        Ok(HeightTable { heights: h })
    }

    /// Factors a non-unit into irreducibles of degree `s`.
    ///
    /// An element that is irreducible is returned as is; otherwise it is
    /// expanded into the smallest qualifying tuple, ordered by `(k, x_1, …, x_k)`,
    /// and each part is factored in turn.
    pub fn factor_into_irreducibles(&self, x: usize, s: usize) -> Result<Factorization<usize>> {
        check_degree(s)?;
        if self.is_unit(x) {
            return Err(Error::NotANonUnit(x));
        }
        let mut factors = Vec::new();
        let mut trace = Vec::new();
        self.expand_irreducible(x, s, 0, &mut factors, &mut trace)?;
        Ok(Factorization {
            target: x,
            factors,
            trace,
            bound: None,
        })
    }

    fn expand_irreducible(
        &self,
        x: usize,
        s: usize,
        depth: usize,
        factors: &mut Vec<usize>,
        trace: &mut Vec<TraceStep<usize>>,
    ) -> Result<()> {
        if depth > self.size() {
            return Err(Error::CycleDetected { element: x });
        }
        let below = self.non_units_below(x);
        match self.find_split(x, s, &below, |_| true) {
            None => factors.push(x),
            Some(parts) => {
                trace.push(TraceStep {
                    rule: Rule::Split { arity: parts.len() },
                    element: x,
                    parts: parts.clone(),
                    heights: None,
                });
                for p in parts {
                    self.expand_irreducible(p, s, depth + 1, factors, trace)?;
                }
            }
        }
        Ok(())
    }

    /// Factors a non-unit into at most `(s-1)·hgt(x) - (s-2)` quarks.
    ///
    /// Every non-quark on the way must split into `k ∈ 2..=s` non-units
    /// strictly below it whose heights sum to at most `hgt(x) + k - 2`; the
    /// first element without such a split is reported as a
    /// [`Error::HypothesisViolation`].
    pub fn factor_into_quarks_bounded(&self, x: usize, s: usize) -> Result<Factorization<usize>> {
        let heights = self.height()?;
        self.factor_into_quarks_bounded_with(&heights, x, s)
    }

    /// As [`Self::factor_into_quarks_bounded`], reusing a height table.
    pub fn factor_into_quarks_bounded_with(
        &self,
        heights: &HeightTable,
        x: usize,
        s: usize,
    ) -> Result<Factorization<usize>> {
        check_degree(s)?;
        if self.is_unit(x) {
            return Err(Error::NotANonUnit(x));
        }
        let mut factors = Vec::new();
        let mut trace = Vec::new();
        self.expand_quarks(heights, x, s, &mut factors, &mut trace)?;

        let bound = (s - 1) * heights.get(x) - (s - 2);
        assert!(factors.len() <= bound, "length exceeds (s-1)hgt-(s-2)");
        assert!(factors.iter().all(|&f| heights.get(f) == 1));
        Ok(Factorization {
            target: x,
            factors,
            trace,
            bound: Some(bound),
        })
    }

    fn expand_quarks(
        &self,
        heights: &HeightTable,
        x: usize,
        s: usize,
        factors: &mut Vec<usize>,
        trace: &mut Vec<TraceStep<usize>>,
    ) -> Result<()> {
        let hx = heights.get(x);
        if hx == 1 {
            factors.push(x);
            return Ok(());
        }
        let below = self.non_units_below(x);
        let parts = self
            .find_split(x, s, &below, |parts| {
                parts.iter().map(|&p| heights.get(p)).sum::<usize>() + 2 <= hx + parts.len()
            })
            .ok_or(Error::HypothesisViolation { element: x })?;
        let check = HeightCheck {
            element: hx,
            parts: parts.iter().map(|&p| heights.get(p)).collect(),
            limit: hx + parts.len() - 2,
        };
        debug_assert!(check.holds());
        trace.push(TraceStep {
            rule: Rule::Split { arity: parts.len() },
            element: x,
            parts: parts.clone(),
            heights: Some(check),
        });
        for p in parts {
            self.expand_quarks(heights, p, s, factors, trace)?;
        }
        Ok(())
    }

    /// Smallest `(k, x_1, …, x_k)` with `2 <= k <= s`, every `x_i` in
    /// `candidates`, `x_1 ⋯ x_k = x` and `accept` true.
    fn find_split(
        &self,
        x: usize,
        s: usize,
        candidates: &[usize],
        accept: impl Fn(&[usize]) -> bool,
    ) -> Option<Vec<usize>> {
        let m = &self.monoid;
        for &a in candidates {
            for &b in candidates {
                if m.op(a, b) == x && accept(&[a, b]) {
                    return Some(vec![a, b]);
                }
            }
        }
        if s < 3 {
            return None;
        }
        // Right completions of each prefix product, computed once per product.
        let mut completions: HashMap<usize, Vec<usize>> = HashMap::new();
        for &a in candidates {
            for &b in candidates {
                let p = m.op(a, b);
                let cs = completions.entry(p).or_insert_with(|| {
                    candidates
                        .iter()
                        .copied()
                        .filter(|&c| m.op(p, c) == x)
                        .collect()
                });
                if let Some(&c) = cs.iter().find(|&&c| accept(&[a, b, c])) {
                    return Some(vec![a, b, c]);
                }
            }
        }
        None
    }
}
