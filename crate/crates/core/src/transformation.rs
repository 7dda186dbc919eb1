//! Self-maps of the point set `{0, …, n-1}`.
//!
//! Points are 0-based everywhere inside the crate. The text format used at the
//! command line is 1-based (`2,3,2`), and conversion happens only in
//! [`Transformation::parse_one_based`] and [`Transformation::to_one_based`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree supported by [`PointSet`].
pub const MAX_POINTS: usize = 64;

/// A subset of `{0, …, n-1}` for `n <= 64`, stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> PointSet {
        if n >= 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> PointSet {
        PointSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn insert(&mut self, point: usize) {
        self.0 |= 1 << point;
    }

    pub fn contains(self, point: usize) -> bool {
        point < 64 && self.0 & (1 << point) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: PointSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let p = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(p)
            }
        })
    }

    /// The points as a sorted 1-based list.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|p| p + 1).collect()
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = PointSet::EMPTY;
        for p in iter {
            set.insert(p);
        }
        set
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A self-map of `{0, …, n-1}` given by its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Transformation {
    images: Vec<usize>,
}

impl Transformation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidTransformation("empty image list".into()));
        }
        if n > MAX_POINTS {
            return Err(Error::InvalidTransformation(format!(
                "degree {n} exceeds {MAX_POINTS}"
            )));
        }
        if let Some(&bad) = images.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidTransformation(format!(
                "image {bad} out of range for degree {n}"
            )));
        }
        Ok(Transformation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(images.iter().all(|&x| x < images.len()));
        Transformation { images }
    }

    pub fn identity(n: usize) -> Self {
        Transformation {
            images: (0..n).collect(),
        }
    }

    /// The quasi-identity sending `point` to `target` and fixing everything else.
    pub fn quasi_identity(n: usize, point: usize, target: usize) -> Result<Self> {
        if point == target {
            return Err(Error::InvalidTransformation(
                "a quasi-identity must move its point".into(),
            ));
        }
        let mut images: Vec<usize> = (0..n).collect();
        if point >= n || target >= n {
            return Err(Error::InvalidTransformation(format!(
                "point out of range for degree {n}"
            )));
        }
        images[point] = target;
        Ok(Transformation { images })
    }

    /// Parses comma-separated 1-based images, e.g. `2,3,2`.
    pub fn parse_one_based(text: &str) -> Result<Self> {
        let images = text
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad image {tok:?}")))?;
                if v == 0 {
                    return Err(Error::Parse("images are 1-based; got 0".into()));
                }
                Ok(v - 1)
            })
            .collect::<Result<Vec<_>>>()?;
        Transformation::new(images)
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Parse("images are 1-based; got 0".into()));
        }
        Transformation::new(images.iter().map(|x| x - 1).collect())
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &Transformation) -> Transformation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Transformation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn fix_set(&self) -> PointSet {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i == x)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn image_set(&self) -> PointSet {
        self.images.iter().copied().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Not a bijection.
    pub fn is_singular(&self) -> bool {
        self.image_set().len() < self.degree()
    }

    /// Exactly `n - 1` fixed points.
    pub fn is_quasi_identity(&self) -> bool {
        let q = self.fix_set().len() + 1 == self.degree();
        debug_assert!(!q || (self.is_singular() && self.is_idempotent()));
        q
    }

    pub fn is_idempotent(&self) -> bool {
        self.compose(self) == *self
    }

    /// `σ ∘ self ∘ σ⁻¹`.
    pub fn conjugate_by(&self, sigma: &Permutation) -> Transformation {
        let inv = sigma.inverse();
        sigma
            .as_transformation()
            .compose(self)
            .compose(inv.as_transformation())
    }

    /// Position of `self` in the lexicographic enumeration of T_n.
    pub fn code(&self) -> usize {
        let n = self.degree();
        self.images.iter().fold(0, |acc, &x| acc * n + x)
    }

    pub fn from_code(n: usize, mut code: usize) -> Transformation {
        let mut images = vec![0; n];
        for slot in images.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        Transformation { images }
    }
}

impl TryFrom<Vec<usize>> for Transformation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Transformation::new(images)
    }
}

impl From<Transformation> for Vec<usize> {
    fn from(t: Transformation) -> Self {
        t.images
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// 1-based bracketed images, e.g. `[2,3,2]`.
impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}

/// A bijective transformation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation(Transformation);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        Permutation::try_from(Transformation::new(images)?)
    }

    pub fn identity(n: usize) -> Self {
        Permutation(Transformation::identity(n))
    }

    /// The transposition swapping `a` and `b` (0-based, `a != b`).
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == b || a >= n || b >= n {
            return Err(Error::InvalidTransformation(format!(
                "invalid transposition ({a} {b}) in degree {n}"
            )));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Ok(Permutation(Transformation { images }))
    }

    pub fn as_transformation(&self) -> &Transformation {
        &self.0
    }

    pub fn into_transformation(self) -> Transformation {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0.apply(point)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.0.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(Transformation { images: inv })
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.compose(&other.0))
    }

    pub fn fix_set(&self) -> PointSet {
        self.0.fix_set()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// Exactly `n - 2` fixed points.
    pub fn is_transposition(&self) -> bool {
        self.fix_set().len() + 2 == self.degree()
    }
}

impl TryFrom<Transformation> for Permutation {
    type Error = Error;

    fn try_from(t: Transformation) -> Result<Self> {
        if t.is_singular() {
            Err(Error::InvalidTransformation(format!("{t} is not a bijection")))
        } else {
            Ok(Permutation(t))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
