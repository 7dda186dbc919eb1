use crate::error::{Error, Result};
use crate::factorization::{Factorization, HeightCheck, Rule, TraceStep};
use crate::rfix::permutation_height_formula;
use crate::transformation::Permutation;

/// Writes a non-identity permutation as at most `n - |fix(p)| - 1` transpositions.
///
/// At each step `j` is the smallest moved point and `β = (j p(j))`; then
/// `p = β (β p)` where `β p` fixes `j` as well as everything `p` fixed.
pub fn transposition_factor(p: &Permutation) -> Result<Factorization<Permutation>> {
    if p.is_identity() {
        return Err(Error::IdentityInput);
    }
    let n = p.degree();
    let mut factors = Vec::new();
    let mut trace = Vec::new();
    let mut current = p.clone();
    loop {
        if current.is_transposition() {
            factors.push(current);
            break;
        }
        let j = (0..n)
            .find(|&i| current.apply(i) != i)
            .expect("non-identity permutation moves a point");
        let beta = Permutation::transposition(n, j, current.apply(j))?;
        let rest = beta.compose(&current);
        assert!(current.fix_set().is_proper_subset(rest.fix_set()));
        let height = permutation_height_formula(&current);
        trace.push(TraceStep {
            rule: Rule::Transposition,
            element: current.clone(),
            parts: vec![beta.clone(), rest.clone()],
            heights: Some(HeightCheck {
                element: height,
                parts: vec![1, permutation_height_formula(&rest)],
                limit: height,
            }),
        });
        factors.push(beta);
        current = rest;
    }

    let bound = n - p.fix_set().len() - 1;
    let product = factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.compose(f));
    assert_eq!(&product, p);
    assert!(factors.len() <= bound);
    Ok(Factorization {
        target: p.clone(),
        factors,
        trace,
        bound: Some(bound),
    })
}
