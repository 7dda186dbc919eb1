use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{inner, QMatrix, QVector, Rational};
use crate::error::{Error, Result};

/// Checks `fᵀf = I`, reporting the first entry of `fᵀf` that is off.
pub fn orthogonality_defect(f: &QMatrix) -> Result<()> {
    let n = f.dim();
    let cols: Vec<QVector> = (0..n).map(|j| f.column(j)).collect();
    for row in 0..n {
        for col in row..n {
            let value = inner(&cols[row], &cols[col])?;
            let expected = if row == col { Rational::one() } else { Rational::zero() };
            if value != expected {
                return Err(Error::NotOrthogonal {
                    row,
                    col,
                    value: value.to_string(),
                });
            }
        }
    }
    Ok(())
}

pub fn is_orthogonal(f: &QMatrix) -> bool {
    orthogonality_defect(f).is_ok()
}

/// Orthogonal and fixing a hyperplane.
pub fn is_reflection(f: &QMatrix) -> bool {
    is_orthogonal(f) && f.fix_rank() + 1 == f.dim()
}

/// Closed-form quark test for invertible maps: `fix_rank(f) = n - 1`.
pub fn is_rfix_quark_invertible(f: &QMatrix) -> Result<bool> {
    if !f.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    Ok(f.fix_rank() + 1 == f.dim())
}

/// `x ↦ x - 2⟨x,u⟩/⟨u,u⟩ u`.
pub fn reflection_across(u: &QVector) -> Result<QMatrix> {
    if u.is_zero() {
        return Err(Error::ZeroVector);
    }
    let n = u.dim();
    let scale = Rational::from_integer(2.into()) / inner(u, u)?;
    let e = u.entries();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let delta = if i == j { Rational::one() } else { Rational::zero() };
                    delta - &scale * &e[i] * &e[j]
                })
                .collect()
        })
        .collect();
    QMatrix::from_rows(rows)
}

/// A product of `k` reflections across seeded random integer vectors with
/// entries in `[-3, 3]`.
pub fn random_rational_orthogonal(n: usize, k: usize, seed: u64) -> QMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = QMatrix::identity(n);
    for _ in 0..k {
        let u = loop {
            let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            if v.iter().any(|&x| x != 0) {
                break QVector::from_integers(&v);
            }
        };
        let g = reflection_across(&u).expect("non-zero vector");
        acc = acc.matmul(&g).expect("same dimension");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    #[test]
    fn orthogonality_examples() {
        let id = QMatrix::identity(3);
        assert!(is_orthogonal(&id) && !is_reflection(&id));
        assert!(is_reflection(&QMatrix::diagonal(&[-1, 1])));

        let m = QMatrix::from_rows(vec![vec![q(3, 5), q(4, 5)], vec![q(4, 5), q(-3, 5)]]).unwrap();
        assert_eq!(m.transpose().matmul(&m).unwrap(), QMatrix::identity(2));
        assert_eq!(m.sub(&QMatrix::identity(2)).unwrap().rank(), 1);
        assert!(is_reflection(&m));

        let skew = QMatrix::from_integers(&[&[1, 1], &[0, 1]]).unwrap();
        assert_eq!(
            orthogonality_defect(&skew),
            Err(Error::NotOrthogonal {
                row: 0,
                col: 1,
                value: "1".into()
            })
        );
    }

    #[test]
    fn reflection_examples() {
        let r = reflection_across(&QVector::from_integers(&[0, 1])).unwrap();
        assert_eq!(r, QMatrix::diagonal(&[1, -1]));

        let r = reflection_across(&QVector::from_integers(&[1, 1])).unwrap();
        assert_eq!(r, QMatrix::from_integers(&[&[0, -1], &[-1, 0]]).unwrap());
        assert!(r.matmul(&r).unwrap().is_identity());
        assert!(is_reflection(&r));

        let u = QVector::from_integers(&[1, -2, 3]);
        let r = reflection_across(&u).unwrap();
        assert_eq!(r.apply(&u).unwrap(), u.scale(&q(-1, 1)));
        let perp = QVector::from_integers(&[2, 1, 0]);
        assert_eq!(r.apply(&perp).unwrap(), perp);

        assert_eq!(
            reflection_across(&QVector::from_integers(&[0, 0])),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn quark_characterization() {
        let r = reflection_across(&QVector::from_integers(&[1, 2, 2])).unwrap();
        assert!(is_rfix_quark_invertible(&r).unwrap());
        assert!(!is_rfix_quark_invertible(&QMatrix::diagonal(&[-1, -1])).unwrap());
        assert!(!is_rfix_quark_invertible(&QMatrix::identity(2)).unwrap());
        assert_eq!(
            is_rfix_quark_invertible(&QMatrix::diagonal(&[0, 1])),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn generator() {
        assert!(random_rational_orthogonal(3, 0, 7).is_identity());
        for seed in 0..10 {
            assert!(is_reflection(&random_rational_orthogonal(4, 1, seed)));
        }
        let m = random_rational_orthogonal(3, 3, 42);
        assert!(is_orthogonal(&m));
        assert_eq!(m, random_rational_orthogonal(3, 3, 42));
    }
}
