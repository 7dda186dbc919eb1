use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Parses `"p"` or `"p/q"`, accepting only the canonical rendering
/// (reduced, positive denominator, no `"/1"`, no leading `+` or zeros).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (text, None),
    };
    let parse_int = |s: &str| {
        s.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad rational {text:?}")))
    };
    let p = parse_int(num)?;
    let q = match den {
        Some(q) => parse_int(q)?,
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    let value = Rational::new(p, q);
    if format_rational(&value) != text {
        return Err(Error::Parse(format!(
            "{text:?} is not in canonical form (expected {:?})",
            format_rational(&value)
        )));
    }
    Ok(value)
}

pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// A column vector over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QVector {
    entries: Vec<Rational>,
}

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        QVector { entries }
    }

    pub fn from_integers(entries: &[i64]) -> Self {
        QVector {
            entries: entries.iter().map(|&x| Rational::from_integer(x.into())).collect(),
        }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut entries = vec![Rational::zero(); n];
        entries[i] = Rational::one();
        QVector { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn sub(&self, other: &QVector) -> Result<QVector> {
        same_dim(self.dim(), other.dim())?;
        Ok(QVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> QVector {
        QVector {
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.entries.iter().map(|e| e.to_string()))
            .finish()
    }
}

/// `⟨u, v⟩`, the standard inner product.
pub fn inner(u: &QVector, v: &QVector) -> Result<Rational> {
    same_dim(u.dim(), v.dim())?;
    Ok(u.entries
        .iter()
        .zip(&v.entries)
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
}

fn same_dim(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

/// A square matrix over the rationals, stored row-major.
///
/// Serializes as `{"n": 2, "entries": [["3/5", "4/5"], ["4/5", "-3/5"]]}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct QMatrix {
    n: usize,
    entries: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    n: usize,
    entries: Vec<Vec<String>>,
}

impl TryFrom<MatrixJson> for QMatrix {
    type Error = Error;

    fn try_from(json: MatrixJson) -> Result<Self> {
        if json.entries.len() != json.n {
            return Err(Error::Parse(format!(
                "expected {} rows, found {}",
                json.n,
                json.entries.len()
            )));
        }
        let rows = json
            .entries
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        QMatrix::from_rows(rows)
    }
}

impl From<QMatrix> for MatrixJson {
    fn from(m: QMatrix) -> Self {
        MatrixJson {
            n: m.n,
            entries: m
                .entries
                .chunks(m.n)
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
        }
    }
}

impl QMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse("matrix dimension must be at least 1".into()));
        }
        if let Some(row) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: row.len(),
            });
        }
        Ok(QMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<Self> {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1; n])
    }

    pub fn diagonal(diag: &[i64]) -> Self {
        let n = diag.len();
        let mut entries = vec![Rational::zero(); n * n];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * n + i] = Rational::from_integer(d.into());
        }
        QMatrix { n, entries }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serializes")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> QVector {
        QVector::new((0..self.n).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn matmul(&self, other: &QMatrix) -> Result<QMatrix> {
        same_dim(self.n, other.n)?;
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rational::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += a * other.get(k, j);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(QMatrix { n, entries })
    }

    pub fn apply(&self, v: &QVector) -> Result<QVector> {
        same_dim(self.n, v.dim())?;
        Ok(QVector::new(
            (0..self.n)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.entries())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        ))
    }

    pub fn transpose(&self) -> QMatrix {
        let n = self.n;
        QMatrix {
            n,
            entries: (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        same_dim(self.n, other.n)?;
        Ok(QMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == QMatrix::identity(self.n)
    }

    /// Rank by fraction-free (Bareiss) elimination.
    ///
    /// Each row is first scaled by the lcm of its denominators, which does
    /// not change the rank, so elimination runs over the integers.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut rows: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let row = self.row(i);
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect();

        let mut rank = 0;
        let mut prev_pivot = BigInt::one();
        for col in 0..n {
            let Some(p) = (rank..n).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let (top, rest) = rows.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            let pivot = &pivot_row[col];
            for row in rest.iter_mut() {
                let factor = row[col].clone();
                for j in col + 1..n {
                    let v = pivot * &row[j] - &factor * &pivot_row[j];
                    debug_assert!((&v % &prev_pivot).is_zero());
                    row[j] = v / &prev_pivot;
                }
                row[col] = BigInt::zero();
            }
            prev_pivot = pivot.clone();
            rank += 1;
        }
        rank
    }

    /// A basis of `{x : Ax = 0}` from the reduced row echelon form, one
    /// vector per free column.
    pub fn kernel(&self) -> Vec<QVector> {
        let n = self.n;
        let mut rows: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(p) = (r..n).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][col].recip();
            for x in rows[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..n {
                if i != r && !rows[i][col].is_zero() {
                    let factor = rows[i][col].clone();
                    for j in col..n {
                        let v = &factor * &rows[r][j];
                        rows[i][j] -= v;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut x = vec![Rational::zero(); n];
                x[free] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    x[pc] = -rows[row][free].clone();
                }
                QVector::new(x)
            })
            .collect()
    }

    /// A basis of `{x : f(x) = x}`.
    pub fn fix_space(&self) -> Vec<QVector> {
        self.sub(&QMatrix::identity(self.n)).expect("same dimension").kernel()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Dimension of `{x : f(x) = x}`, that is `n - rank(f - I)`.
    pub fn fix_rank(&self) -> usize {
        let diff = self.sub(&QMatrix::identity(self.n)).expect("same dimension");
        self.n - diff.rank()
    }

    /// Largest absolute numerator or denominator, as a growth indicator.
    pub fn max_entry_bits(&self) -> u64 {
        self.entries
            .iter()
            .map(|x| x.numer().abs().bits().max(x.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix(")?;
        f.debug_list()
            .entries(
                self.entries
                    .chunks(self.n)
                    .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>()),
            )
            .finish()?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    #[test]
    fn canonical_rationals() {
        assert_eq!(parse_rational("3/5").unwrap(), q(3, 5));
        assert_eq!(parse_rational("-3/5").unwrap(), q(-3, 5));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational("0").unwrap(), q(0, 1));
        for bad in ["6/10", "3/1", "1/-2", "+1", "01", "-0", "1/0", "x", "", "0/5"] {
            assert!(parse_rational(bad).is_err(), "{bad} accepted");
        }
    }

    #[test]
    fn products_and_inner() {
        let a = QMatrix::from_integers(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(QMatrix::identity(2).matmul(&a).unwrap(), a);
        assert_eq!(
            inner(&QVector::from_integers(&[1, 0]), &QVector::from_integers(&[0, 1])).unwrap(),
            q(0, 1)
        );
        let prod = QMatrix::diagonal(&[-1, 1])
            .matmul(&QMatrix::diagonal(&[1, -1]))
            .unwrap();
        assert_eq!(prod, QMatrix::diagonal(&[-1, -1]));
        assert!(QMatrix::identity(2).matmul(&QMatrix::identity(3)).is_err());
    }

    #[test]
    fn fix_ranks() {
        assert_eq!(QMatrix::identity(3).fix_rank(), 3);
        assert_eq!(QMatrix::diagonal(&[-1, 1]).fix_rank(), 1);
        assert_eq!(QMatrix::diagonal(&[-1, -1]).fix_rank(), 0);
    }

    #[test]
    fn rank_with_skipped_columns() {
        let a = QMatrix::from_integers(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]]).unwrap();
        assert_eq!(a.rank(), 2);
        let b = QMatrix::from_rows(vec![
            vec![q(1, 2), q(1, 3), q(0, 1)],
            vec![q(3, 2), q(1, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(5, 7)],
        ])
        .unwrap();
        assert_eq!(b.rank(), 2);
    }

    #[test]
    fn kernels() {
        let a = QMatrix::from_integers(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]).unwrap();
        let k = a.kernel();
        assert_eq!(k, vec![QVector::from_integers(&[-2, 1, 0])]);
        assert!(a.apply(&k[0]).unwrap().is_zero());
        assert!(QMatrix::identity(3).kernel().is_empty());
        assert_eq!(QMatrix::diagonal(&[-1, 1]).fix_space(), vec![QVector::basis(2, 1)]);
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let m = QMatrix::from_rows(vec![vec![q(3, 5), q(4, 5)], vec![q(4, 5), q(-3, 5)]]).unwrap();
        let text = m.to_json();
        assert_eq!(text, r#"{"n":2,"entries":[["3/5","4/5"],["4/5","-3/5"]]}"#);
        assert_eq!(QMatrix::from_json(&text).unwrap(), m);

        assert!(QMatrix::from_json(r#"{"n":1,"entries":[["2/4"]]}"#).is_err());
        assert!(QMatrix::from_json(r#"{"n":1,"entries":[["1/0"]]}"#).is_err());
        assert!(QMatrix::from_json(r#"{"n":2,"entries":[["1","0"]]}"#).is_err());
        assert!(QMatrix::from_json(r#"{"n":2,"entries":[["1","0"],["0"]]}"#).is_err());
        assert!(QMatrix::from_json(r#"{"n":0,"entries":[]}"#).is_err());
    }
}
