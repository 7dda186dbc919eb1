use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::monoid::FiniteMonoid;

const UNSEEN: u32 = u32::MAX;

/// Shortest factorization of `target` over a generating set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub target: usize,
    /// `None` when the target is not in the generated submonoid.
    pub min_length: Option<usize>,
    /// A shortest word in the generators, read left to right.
    pub witness: Option<Vec<usize>>,
}

/// Breadth-first search over the right Cayley graph: a word `w` steps to
/// `w·g` for each generator `g`, starting from the identity.
#[derive(Debug, Clone)]
pub struct CayleyBfs {
    distance: Vec<u32>,
    /// `(predecessor, generator)` on one shortest path.
    parent: Vec<(u32, u32)>,
}

impl CayleyBfs {
    pub fn run<M: FiniteMonoid + ?Sized>(m: &M, generators: &[usize]) -> Self {
        let size = m.size();
        let mut distance = vec![UNSEEN; size];
        let mut parent = vec![(UNSEEN, UNSEEN); size];
        let mut queue = VecDeque::new();
        let e = m.identity();
        distance[e] = 0;
        queue.push_back(e);
        let mut level = 0;
        while let Some(w) = queue.pop_front() {
            let d = distance[w];
            assert!(d >= level, "BFS levels went backwards");
            level = d;
            for &g in generators {
                let next = m.op(w, g);
                if distance[next] == UNSEEN {
                    distance[next] = d + 1;
                    parent[next] = (w as u32, g as u32);
                    queue.push_back(next);
                }
            }
        }
        CayleyBfs { distance, parent }
    }

    pub fn distance(&self, x: usize) -> Option<usize> {
        match self.distance[x] {
            UNSEEN => None,
            d => Some(d as usize),
        }
    }

    pub fn witness(&self, x: usize) -> Option<Vec<usize>> {
        self.distance(x)?;
        let mut word = Vec::new();
        let mut current = x;
        while self.parent[current].0 != UNSEEN {
            let (prev, g) = self.parent[current];
            word.push(g as usize);
            current = prev as usize;
        }
        word.reverse();
        Some(word)
    }

    pub fn reachable(&self) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.distance.len());
        for (x, &d) in self.distance.iter().enumerate() {
            if d != UNSEEN {
                set.insert(x);
            }
        }
        set
    }

    pub fn result(&self, target: usize) -> OracleResult {
        OracleResult {
            target,
            min_length: self.distance(target),
            witness: self.witness(target),
        }
    }
}

/// Minimal number of generators whose product is `target`.
pub fn min_factorization_length<M: FiniteMonoid + ?Sized>(
    m: &M,
    generators: &[usize],
    target: usize,
) -> OracleResult {
    let result = CayleyBfs::run(m, generators).result(target);
    if let Some(word) = &result.witness {
        assert_eq!(crate::monoid::product(m, word), target);
    }
    result
}
