//! Factorization of singular maps into quasi-identities.
//!
//! A singular map `α` with `d = |fix(α)|` and `r = |α(X)|` is first
//! conjugated into normal form: fixed points take labels `0..d`, the other
//! image points `d..r`, the remaining points `r..n`. The normal form is split
//! into two or three singular maps, each fixing strictly more points, the
//! parts are conjugated back and factored recursively. The result has at
//! most `2(n - d) - 1` quasi-identities.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::{CaseTag, Factorization, HeightCheck, Rule, TraceStep};
use crate::rfix::singular_height_formula;
use crate::transformation::{Permutation, Transformation};

/// `α = σ ∘ α′ ∘ σ⁻¹` with `α′` in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizationCertificate {
    /// `σ`, sending normal-form labels to original labels.
    pub conjugator: Permutation,
    /// `α′`: fixes exactly `0..d`, has image exactly `0..r`.
    pub normalized: Transformation,
    pub d: usize,
    pub r: usize,
}

/// Relabels a singular map into normal form.
///
/// Inside each block (fixed points, other image points, non-image points)
/// the original labels keep their ascending order.
pub fn normalize(t: &Transformation) -> Result<NormalizationCertificate> {
    if !t.is_singular() {
        return Err(Error::NotSingular);
    }
    let n = t.degree();
    let fix = t.fix_set();
    let image = t.image_set();
    let order: Vec<usize> = fix
        .iter()
        .chain(image.iter().filter(|&p| !fix.contains(p)))
        .chain((0..n).filter(|&p| !image.contains(p)))
        .collect();
    let sigma = Permutation::new(order)?;
    let normalized = t.conjugate_by(&sigma.inverse());
    debug_assert_eq!(&normalized.conjugate_by(&sigma), t);
    Ok(NormalizationCertificate {
        conjugator: sigma,
        normalized,
        d: fix.len(),
        r: image.len(),
    })
}

/// Which split applies to a normal form.
pub fn case_of(cert: &NormalizationCertificate) -> CaseTag {
    let a = cert.normalized.images();
    let n = a.len();
    if cert.d + 1 >= n {
        return CaseTag::Base;
    }
    let image = cert.normalized.image_set();
    let image_of_image: crate::PointSet = image.iter().map(|p| a[p]).collect();
    if image_of_image != image || cert.r < n - 1 {
        CaseTag::Case1
    } else if a[n - 1] < cert.d {
        CaseTag::Case2a
    } else {
        CaseTag::Case2b
    }
}

/// Splits a normal form `α′` into singular maps whose product is `α′`.
///
/// Case 1 gives `[β, γ]`, Case 2a gives `[δ₁, δ₂, η]` and Case 2b gives
/// `[β, ζ]`; `β`, `δ₁` and `δ₂` are quasi-identities and the last factor
/// fixes exactly `d + 1` points.
pub fn howie_split(cert: &NormalizationCertificate) -> Result<(Vec<Transformation>, CaseTag)> {
    let case = case_of(cert);
    let a = cert.normalized.images();
    let n = a.len();
    let (d, r) = (cert.d, cert.r);
    let last = n - 1;
    let make = |images: Vec<usize>| Transformation::from_images_unchecked(images);

    let parts = match case {
        CaseTag::Base => return Err(Error::AlreadyIrreducible),
        CaseTag::Case1 => {
            let beta = Transformation::quasi_identity(n, last, a[last])?;
            let gamma = make(
                (0..n)
                    .map(|i| if i < d || i == last { i } else { a[i] })
                    .collect(),
            );
            vec![beta, gamma]
        }
        CaseTag::Case2a => {
            // r = n - 1 here, so d..r covers every non-fixed point but the last.
            let k = (d + 1..r)
                .find(|&k| a[k] == d)
                .expect("some point maps onto d");
            let delta1 = Transformation::quasi_identity(n, last, d)?;
            let delta2 = Transformation::quasi_identity(n, d, a[d])?;
            let eta = make(
                (0..n)
                    .map(|i| match i {
                        _ if i <= d => i,
                        _ if i == k => last,
                        _ if i == last => a[last],
                        _ => a[i],
                    })
                    .collect(),
            );
            vec![delta1, delta2, eta]
        }
        CaseTag::Case2b => {
            let target = a[last];
            let k = (d..r)
                .find(|&k| k != target && a[k] == target)
                .expect("the image restricted to itself is a bijection");
            let beta = Transformation::quasi_identity(n, last, target)?;
            let zeta = make(
                (0..n)
                    .map(|i| match i {
                        _ if i < d || i == last => i,
                        _ if i == k => last,
                        _ => a[i],
                    })
                    .collect(),
            );
            vec![beta, zeta]
        }
    };

    let fix = cert.normalized.fix_set();
    let product = parts
        .iter()
        .skip(1)
        .fold(parts[0].clone(), |acc, p| acc.compose(p));
    assert_eq!(product, cert.normalized, "split does not recompose");
    for p in &parts {
        assert!(p.is_singular(), "split produced a bijection");
        assert!(fix.is_proper_subset(p.fix_set()), "split did not grow the fix set");
    }
    let height_sum: usize = parts.iter().map(|p| n - p.fix_set().len()).sum();
    let expected = match case {
        CaseTag::Case2a => n - d + 1,
        _ => n - d,
    };
    assert_eq!(height_sum, expected, "height bookkeeping");
    Ok((parts, case))
}

/// Writes a singular non-identity map as a product of quasi-identities.
pub fn howie_factor(t: &Transformation) -> Result<Factorization<Transformation>> {
    if t.is_identity() {
        return Err(Error::IdentityInput);
    }
    if !t.is_singular() {
        return Err(Error::NotSingular);
    }
    let mut factors = Vec::new();
    let mut trace = Vec::new();
    expand(t, &mut factors, &mut trace)?;

    let n = t.degree();
    let bound = 2 * (n - t.fix_set().len()) - 1;
    let product = factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc: Transformation, f| acc.compose(f));
    assert_eq!(&product, t);
    assert!(factors.len() <= bound, "{t}: {} > {bound}", factors.len());
    Ok(Factorization {
        target: t.clone(),
        factors,
        trace,
        bound: Some(bound),
    })
}

fn expand(
    t: &Transformation,
    factors: &mut Vec<Transformation>,
    trace: &mut Vec<TraceStep<Transformation>>,
) -> Result<()> {
    if t.is_quasi_identity() {
        factors.push(t.clone());
        return Ok(());
    }
    let cert = normalize(t)?;
    let (parts, case) = howie_split(&cert)?;
    let parts: Vec<Transformation> = parts
        .iter()
        .map(|p| p.conjugate_by(&cert.conjugator))
        .collect();
    let fix = t.fix_set();
    debug_assert!(parts.iter().all(|p| fix.is_proper_subset(p.fix_set())));

    let height = singular_height_formula(t)?;
    let part_heights = parts
        .iter()
        .map(singular_height_formula)
        .collect::<Result<Vec<_>>>()?;
    trace.push(TraceStep {
        rule: Rule::Howie { case },
        element: t.clone(),
        parts: parts.clone(),
        heights: Some(HeightCheck {
            element: height,
            parts: part_heights,
            limit: height + parts.len() - 2,
        }),
    });
    for p in &parts {
        expand(p, factors, trace)?;
    }
    Ok(())
}
