use crate::caps::{self, SizeCaps};
use crate::error::Result;
use crate::transformation::{Permutation, Transformation};

use super::FiniteMonoid;

// Codes of T_n must fit comfortably in u32; 10^10 does not, so the real
// ceiling is lower and enforced through SizeCaps (default 8).
const HARD_DEGREE_LIMIT: usize = 9;
const NOT_PRESENT: u32 = u32::MAX;

/// Which transformations are in the carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformationKind {
    /// All of T_n.
    Full,
    /// Non-bijective maps plus the identity.
    Singular,
    /// Bijections only.
    Symmetric,
}

/// T_n or one of its submonoids, multiplied by composing images directly.
///
/// Elements are listed in lexicographic order of their image lists, and
/// `op(f, g)` is `f ∘ g` (apply `g` first).
#[derive(Debug, Clone)]
pub struct TransformationMonoid {
    n: usize,
    kind: TransformationKind,
    /// Codes of the carrier elements; empty for `Full` (index = code).
    codes: Vec<u32>,
    /// Code → carrier index; empty for `Full`.
    lookup: Vec<u32>,
    identity: usize,
}

/// T_n, all `n^n` self-maps of an `n`-element set.
pub fn full_transformation_monoid(n: usize, caps: &SizeCaps) -> Result<TransformationMonoid> {
    TransformationMonoid::new(n, TransformationKind::Full, caps)
}

/// The singular maps of T_n together with the identity.
pub fn singular_submonoid(n: usize, caps: &SizeCaps) -> Result<TransformationMonoid> {
    TransformationMonoid::new(n, TransformationKind::Singular, caps)
}

/// S_n as a submonoid of T_n.
pub fn symmetric_group(n: usize, caps: &SizeCaps) -> Result<TransformationMonoid> {
    TransformationMonoid::new(n, TransformationKind::Symmetric, caps)
}

impl TransformationMonoid {
    pub fn new(n: usize, kind: TransformationKind, caps: &SizeCaps) -> Result<Self> {
        if n == 0 {
            return Err(crate::error::Error::InvalidTransformation(
                "degree must be positive".into(),
            ));
        }
        caps::check(
            "transformation degree",
            n,
            caps.transformation_degree.min(HARD_DEGREE_LIMIT),
        )?;
        let total = n.pow(n as u32);
        let identity_code = Transformation::identity(n).code();
        if kind == TransformationKind::Full {
            return Ok(TransformationMonoid {
                n,
                kind,
                codes: Vec::new(),
                lookup: Vec::new(),
                identity: identity_code,
            });
        }
        let mut codes = Vec::new();
        let mut lookup = vec![NOT_PRESENT; total];
        let mut buf = [0usize; HARD_DEGREE_LIMIT];
        for code in 0..total {
            decode(n, code, &mut buf);
            let bijective = is_bijective(&buf[..n]);
            let keep = match kind {
                TransformationKind::Symmetric => bijective,
                TransformationKind::Singular => !bijective || code == identity_code,
                TransformationKind::Full => unreachable!(),
            };
            if keep {
                lookup[code] = codes.len() as u32;
                codes.push(code as u32);
            }
        }
        let identity = lookup[identity_code] as usize;
        Ok(TransformationMonoid {
            n,
            kind,
            codes,
            lookup,
            identity,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> TransformationKind {
        self.kind
    }

    #[inline]
    fn code_of(&self, index: usize) -> usize {
        match self.kind {
            TransformationKind::Full => index,
            _ => self.codes[index] as usize,
        }
    }

    #[inline]
    fn index_of_code(&self, code: usize) -> Option<usize> {
        match self.kind {
            TransformationKind::Full => Some(code),
            _ => match self.lookup[code] {
                NOT_PRESENT => None,
                i => Some(i as usize),
            },
        }
    }

    pub fn element(&self, index: usize) -> Transformation {
        Transformation::from_code(self.n, self.code_of(index))
    }

    pub fn index_of(&self, t: &Transformation) -> Option<usize> {
        if t.degree() != self.n {
            return None;
        }
        self.index_of_code(t.code())
    }

    pub fn permutation(&self, index: usize) -> Option<Permutation> {
        Permutation::try_from(self.element(index)).ok()
    }

    pub fn elements(&self) -> impl Iterator<Item = Transformation> + '_ {
        (0..self.size()).map(move |i| self.element(i))
    }
}

fn decode(n: usize, mut code: usize, out: &mut [usize]) {
    for slot in out[..n].iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
}

fn is_bijective(images: &[usize]) -> bool {
    let mut seen = 0u64;
    for &x in images {
        seen |= 1 << x;
    }
    seen.count_ones() as usize == images.len()
}

impl FiniteMonoid for TransformationMonoid {
    fn size(&self) -> usize {
        match self.kind {
            TransformationKind::Full => self.n.pow(self.n as u32),
            _ => self.codes.len(),
        }
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn op(&self, x: usize, y: usize) -> usize {
        let n = self.n;
        let mut f = [0usize; HARD_DEGREE_LIMIT];
        let mut g = [0usize; HARD_DEGREE_LIMIT];
        decode(n, self.code_of(x), &mut f);
        decode(n, self.code_of(y), &mut g);
        let code = g[..n].iter().fold(0, |acc, &p| acc * n + f[p]);
        self.index_of_code(code)
            .expect("carrier is closed under composition")
    }

    fn label(&self, x: usize) -> String {
        self.element(x).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> SizeCaps {
        SizeCaps::default()
    }

    #[test]
    fn carrier_sizes() {
        assert_eq!(full_transformation_monoid(1, &caps()).unwrap().size(), 1);
        assert_eq!(full_transformation_monoid(3, &caps()).unwrap().size(), 27);
        assert_eq!(singular_submonoid(3, &caps()).unwrap().size(), 22);
        assert_eq!(symmetric_group(3, &caps()).unwrap().size(), 6);
    }

    #[test]
    fn singular_two_lists_identity_and_constants() {
        let m = singular_submonoid(2, &caps()).unwrap();
        let listed: Vec<Vec<usize>> = m.elements().map(|t| t.to_one_based()).collect();
        assert_eq!(listed, vec![vec![1, 1], vec![1, 2], vec![2, 2]]);
        assert_eq!(m.element(m.identity()), Transformation::identity(2));
    }

    #[test]
    fn op_composes_right_factor_first() {
        let m = full_transformation_monoid(3, &caps()).unwrap();
        let f = m.index_of(&Transformation::parse_one_based("1,2,2").unwrap()).unwrap();
        let g = m.index_of(&Transformation::parse_one_based("1,1,3").unwrap()).unwrap();
        assert_eq!(m.element(m.op(f, g)).to_one_based(), vec![1, 1, 2]);
    }

    #[test]
    fn degree_cap_is_enforced() {
        assert!(full_transformation_monoid(9, &caps()).is_err());
        assert!(full_transformation_monoid(0, &caps()).is_err());
        let tight = SizeCaps {
            transformation_degree: 3,
            ..SizeCaps::default()
        };
        assert!(symmetric_group(4, &tight).is_err());
    }

    #[test]
    fn index_of_outside_carrier() {
        let s = symmetric_group(3, &caps()).unwrap();
        assert_eq!(s.index_of(&Transformation::parse_one_based("1,1,2").unwrap()), None);
        let sg = singular_submonoid(3, &caps()).unwrap();
        assert_eq!(sg.index_of(&Transformation::parse_one_based("2,1,3").unwrap()), None);
    }
}
