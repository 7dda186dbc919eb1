use crate::error::Result;
use crate::factorization::{Factorization, HeightCheck, Rule, TraceStep};
use crate::linear::{is_reflection, orthogonality_defect, reflection_across, QMatrix, QVector};

/// Writes an orthogonal matrix as a product of at most `n - fix_rank(f)`
/// reflections; the identity gives the empty product.
///
/// While `f ≠ I`: `w` is the first basis vector moved by `f`, `u = f(w) - w`
/// and `g` is the reflection across `u⊥`. Then `g` fixes `fix(f)` and
/// `g f` also fixes `w`, so `f ← g f` strictly grows the fixed space. Since
/// each `g` is an involution, `f = g₁ g₂ ⋯ g_k` in discovery order.
pub fn cartan_dieudonne_factor(f: &QMatrix) -> Result<Factorization<QMatrix>> {
    orthogonality_defect(f)?;
    let n = f.dim();
    let bound = n - f.fix_rank();
    let mut factors = Vec::new();
    let mut trace = Vec::new();
    let mut current = f.clone();
    while !current.is_identity() {
        let (w, fw) = (0..n)
            .map(|j| (QVector::basis(n, j), current.column(j)))
            .find(|(w, fw)| w != fw)
            .expect("a non-identity map moves a basis vector");
        let u = fw.sub(&w)?;
        let g = reflection_across(&u)?;
        let next = g.matmul(&current)?;
        let (before, after) = (current.fix_rank(), next.fix_rank());
        assert!(after > before, "fixed space did not grow");
        let height = n - before;
        trace.push(TraceStep {
            rule: Rule::Reflection,
            element: current,
            parts: vec![g.clone(), next.clone()],
            heights: Some(HeightCheck {
                element: height,
                parts: vec![1, n - after],
                limit: height,
            }),
        });
        factors.push(g);
        current = next;
    }

    let product = factors
        .iter()
        .try_fold(QMatrix::identity(n), |acc, g| acc.matmul(g))?;
    assert_eq!(&product, f);
    assert!(factors.iter().all(is_reflection));
    assert!(factors.len() <= bound);
    Ok(Factorization {
        target: f.clone(),
        factors,
        trace,
        bound: Some(bound),
    })
}
