use crate::caps::{self, SizeCaps};
use crate::error::{Error, Result};

use super::{associativity_witness, FiniteMonoid};

/// A monoid given by its full Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMonoid {
    size: usize,
    table: Vec<u32>,
    identity: usize,
    labels: Option<Vec<String>>,
}

impl TableMonoid {
    /// Builds a monoid from multiplication rows; `rows[x][y]` is `x · y`.
    ///
    /// The identity is inferred, and associativity is always checked.
    pub fn from_rows(rows: &[Vec<usize>], caps: &SizeCaps) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty carrier".into()));
        }
        caps::check("table carrier", n, caps.table_carrier)?;
        let mut table = Vec::with_capacity(n * n);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {x} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (y, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::InvalidTable(format!(
                        "entry ({x}, {y}) = {v} is out of range"
                    )));
                }
                table.push(v as u32);
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;
        let m = TableMonoid {
            size: n,
            table,
            identity,
            labels: None,
        };
        if let Some([x, y, z]) = associativity_witness(&m) {
            return Err(Error::InvalidTable(format!(
                "not associative at ({x}, {y}, {z})"
            )));
        }
        Ok(m)
    }

    /// Parses the text format: carrier size `N` on the first line, then `N`
    /// rows of `N` whitespace-separated 0-based indices.
    pub fn parse(text: &str, caps: &SizeCaps) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidTable("missing carrier size".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::InvalidTable(format!("bad carrier size {header:?}")))?;
        caps::check("table carrier", n, caps.table_carrier)?;
        let rows = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|tok| {
                        tok.parse::<usize>()
                            .map_err(|_| Error::InvalidTable(format!("bad entry {tok:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != n {
            return Err(Error::InvalidTable(format!(
                "expected {n} rows, found {}",
                rows.len()
            )));
        }
        TableMonoid::from_rows(&rows, caps)
    }

    /// Copies any finite monoid into a table.
    pub fn materialize<M: FiniteMonoid + ?Sized>(m: &M, caps: &SizeCaps) -> Result<Self> {
        let n = m.size();
        caps::check("table carrier", n, caps.table_carrier)?;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(m.op(x, y) as u32);
            }
        }
        Ok(TableMonoid {
            size: n,
            table,
            identity: m.identity(),
            labels: Some((0..n).map(|x| m.label(x)).collect()),
        })
    }

    /// Z/n under addition.
    pub fn cyclic_group(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTable("empty carrier".into()));
        }
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        Ok(TableMonoid {
            size: n,
            table,
            identity: 0,
            labels: None,
        })
    }

    /// The power set of a `k`-element set under union; bit `i` of an index
    /// marks member `i + 1`, so index 0 is the empty set (the identity).
    pub fn union_semilattice(k: usize) -> Result<Self> {
        if k > 8 {
            return Err(Error::SizeCapExceeded {
                what: "union semilattice base",
                requested: k,
                cap: 8,
            });
        }
        let n = 1usize << k;
        let table = (0..n * n).map(|i| ((i / n) | (i % n)) as u32).collect();
        let labels = (0..n)
            .map(|x| {
                let members: Vec<String> = (0..k)
                    .filter(|b| x & (1 << b) != 0)
                    .map(|b| (b + 1).to_string())
                    .collect();
                format!("{{{}}}", members.join(","))
            })
            .collect();
        Ok(TableMonoid {
            size: n,
            table,
            identity: 0,
            labels: Some(labels),
        })
    }

    /// `a × b` with componentwise product; `(i, j)` has index `i·|b| + j`.
    pub fn direct_product<A, B>(a: &A, b: &B, caps: &SizeCaps) -> Result<Self>
    where
        A: FiniteMonoid + ?Sized,
        B: FiniteMonoid + ?Sized,
    {
        let (na, nb) = (a.size(), b.size());
        let n = na * nb;
        caps::check("table carrier", n, caps.table_carrier)?;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let i = a.op(x / nb, y / nb);
                let j = b.op(x % nb, y % nb);
                table.push((i * nb + j) as u32);
            }
        }
        let labels = (0..n)
            .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
            .collect();
        Ok(TableMonoid {
            size: n,
            table,
            identity: a.identity() * nb + b.identity(),
            labels: Some(labels),
        })
    }
}

impl FiniteMonoid for TableMonoid {
    fn size(&self) -> usize {
        self.size
    }

    fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y] as usize
    }

    fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_infers_identity() {
        // Z/2 with identity placed at index 1.
        let m = TableMonoid::parse("2\n1 0\n0 1\n", &SizeCaps::default()).unwrap();
        assert_eq!(m.identity(), 1);
        assert_eq!(m.op(0, 0), 1);
    }

    #[test]
    fn parse_rejects_malformed_tables() {
        let caps = SizeCaps::default();
        assert!(TableMonoid::parse("", &caps).is_err());
        assert!(TableMonoid::parse("2\n0 1\n", &caps).is_err());
        assert!(TableMonoid::parse("2\n0 1\n1 2\n", &caps).is_err());
        // No identity: constant table.
        assert!(TableMonoid::parse("2\n0 0\n0 0\n", &caps).is_err());
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // Identity 0; 1·1 = 2, 1·2 = 1, 2·1 = 2, 2·2 = 1: (1·1)·1 = 2 ≠ 1·(1·1) = 1.
        let rows = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 2, 1]];
        let err = TableMonoid::from_rows(&rows, &SizeCaps::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidTable(_)));
    }

    #[test]
    fn direct_product_of_cyclic_groups() {
        let z2 = TableMonoid::cyclic_group(2).unwrap();
        let v4 = TableMonoid::direct_product(&z2, &z2, &SizeCaps::default()).unwrap();
        assert_eq!(v4.size(), 4);
        assert_eq!(v4.identity(), 0);
        for x in 0..4 {
            assert_eq!(v4.op(x, x), 0);
        }
        assert_eq!(v4.op(1, 2), 3);
    }
}
