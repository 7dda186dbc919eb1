//! Factorization certificates and their independent re-verification.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use premonoid::constructive::{cartan_dieudonne_factor, howie_factor, transposition_factor};
use premonoid::linear::is_reflection;
use premonoid::{Factorization, Permutation, QMatrix, SizeCaps, TraceStep, Transformation};

use crate::carrier::{images_repr, CarrierSpec, ElementRepr, MonoidKind, PreorderKind};
use crate::{CliError, UsageError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    /// Quasi-identities (singular maps).
    Howie,
    Transpositions,
    Reflections,
    /// Generic engine: irreducibles of degree `s`.
    Irreducibles,
    /// Generic engine: at most `(s-1)·hgt - (s-2)` quarks.
    Quarks,
}

impl Engine {
    pub fn default_for(monoid: MonoidKind) -> Engine {
        match monoid {
            MonoidKind::Tn | MonoidKind::SingularTn => Engine::Howie,
            MonoidKind::Sn => Engine::Transpositions,
            MonoidKind::Orthogonal => Engine::Reflections,
            MonoidKind::Power | MonoidKind::TableFile => Engine::Irreducibles,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    #[serde(flatten)]
    pub carrier: CarrierSpec,
    pub engine: Engine,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preorder: Option<PreorderKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    pub target: ElementRepr,
    pub factors: Vec<ElementRepr>,
    pub length: usize,
    pub bound: Option<usize>,
    pub trace: Vec<TraceStep<ElementRepr>>,
}

/// The fields of a certificate that `--check` reads back.
#[derive(Debug, Deserialize)]
struct CertificateIn {
    #[serde(flatten)]
    carrier: CarrierSpec,
    engine: Engine,
    preorder: Option<PreorderKind>,
    s: Option<usize>,
    target: ElementRepr,
    factors: Vec<ElementRepr>,
    length: usize,
    bound: Option<usize>,
}

impl Certificate {
    pub fn new<E>(
        carrier: CarrierSpec,
        engine: Engine,
        f: Factorization<E>,
        repr: impl Fn(&E) -> ElementRepr,
    ) -> Self {
        let trace = f
            .trace
            .iter()
            .map(|step| TraceStep {
                rule: step.rule,
                element: repr(&step.element),
                parts: step.parts.iter().map(&repr).collect(),
                heights: step.heights.clone(),
            })
            .collect();
        Certificate {
            carrier,
            engine,
            preorder: None,
            s: None,
            target: repr(&f.target),
            length: f.factors.len(),
            factors: f.factors.iter().map(&repr).collect(),
            bound: f.bound,
            trace,
        }
    }

    pub fn to_text(&self) -> String {
        let factors: Vec<String> = self.factors.iter().map(|f| f.to_string()).collect();
        let bound = self.bound.map_or("none".to_string(), |b| b.to_string());
        format!(
            "target  {}\nfactors {}\nlength  {} (bound {bound})\n",
            self.target,
            if factors.is_empty() { "(empty product)".into() } else { factors.join(" ") },
            self.length
        )
    }
}

pub fn howie(carrier: CarrierSpec, t: &Transformation) -> Result<Certificate, UsageError> {
    let f = howie_factor(t).map_err(|e| UsageError::new("--images", e))?;
    Ok(Certificate::new(carrier, Engine::Howie, f, images_repr))
}

pub fn transpositions(carrier: CarrierSpec, t: Transformation) -> Result<Certificate, UsageError> {
    let p = Permutation::try_from(t).map_err(|e| UsageError::new("--images", e))?;
    let f = transposition_factor(&p).map_err(|e| UsageError::new("--images", e))?;
    Ok(Certificate::new(carrier, Engine::Transpositions, f, |p: &Permutation| {
        images_repr(p.as_transformation())
    }))
}

pub fn reflections(carrier: CarrierSpec, m: &QMatrix) -> Result<Certificate, UsageError> {
    let f = cartan_dieudonne_factor(m).map_err(|e| UsageError::new("--matrix", e))?;
    Ok(Certificate::new(carrier, Engine::Reflections, f, |m: &QMatrix| {
        ElementRepr::Matrix(m.clone())
    }))
}

/// Re-parses an emitted certificate and verifies it from scratch: the
/// product of the factors, the class of every factor, and the length bound
/// recomputed from the target.
pub fn check(json: &str, caps: &SizeCaps) -> Result<(), CliError> {
    let c: CertificateIn =
        serde_json::from_str(json).map_err(|e| CliError::Failed(format!("certificate does not re-parse: {e}")))?;
    let fail = |msg: String| Err(CliError::Failed(msg));
    if c.length != c.factors.len() {
        return fail(format!("length {} but {} factors", c.length, c.factors.len()));
    }
    let expected_bound = match c.engine {
        Engine::Howie | Engine::Transpositions => {
            let target = images(&c.target)?;
            let factors = c.factors.iter().map(images).collect::<Result<Vec<_>, _>>()?;
            let n = target.len();
            if factors.iter().any(|f| f.len() != n) {
                return fail("factor degrees differ from the target".into());
            }
            let product = factors.iter().fold((1..=n).collect::<Vec<_>>(), |acc, f| compose(&acc, f));
            if product != target {
                return fail(format!("product of factors is {product:?}, not {target:?}"));
            }
            let fixed = (0..n).filter(|&i| target[i] == i + 1).count();
            if fixed == n {
                return fail("target is the identity".into());
            }
            if c.engine == Engine::Howie {
                if let Some(f) = factors.iter().find(|f| !is_quasi_identity(f)) {
                    return fail(format!("factor {f:?} is not a quasi-identity"));
                }
                if distinct(&target) == n {
                    return fail("target is not singular".into());
                }
                Some(2 * (n - fixed) - 1)
            } else {
                if let Some(f) = factors.iter().find(|f| !is_transposition(f)) {
                    return fail(format!("factor {f:?} is not a transposition"));
                }
                if distinct(&target) != n {
                    return fail("target is not a permutation".into());
                }
                Some(n - fixed - 1)
            }
        }
        Engine::Reflections => {
            let ElementRepr::Matrix(target) = &c.target else {
                return fail("target is not a matrix".into());
            };
            let n = target.dim();
            let mut product = QMatrix::identity(n);
            for f in &c.factors {
                let ElementRepr::Matrix(g) = f else {
                    return fail("factor is not a matrix".into());
                };
                if !is_reflection(g) {
                    return fail(format!("factor {} is not a reflection", g.to_json()));
                }
                product = product
                    .matmul(g)
                    .map_err(|e| CliError::Failed(format!("factor dimension: {e}")))?;
            }
            if &product != target {
                return fail(format!("product of factors is {}", product.to_json()));
            }
            Some(n - target.fix_rank())
        }
        Engine::Irreducibles | Engine::Quarks => {
            let carrier = c.carrier.build(caps).map_err(|e| CliError::Failed(e.to_string()))?;
            let kind = c
                .preorder
                .ok_or_else(|| CliError::Failed("certificate has no preorder".into()))?;
            let s = c.s.ok_or_else(|| CliError::Failed("certificate has no degree s".into()))?;
            let pm = carrier.premonoid(kind, caps).map_err(|e| CliError::Failed(e.to_string()))?;
            let index = |r: &ElementRepr| {
                carrier
                    .index_of(r)
                    .ok_or_else(|| CliError::Failed(format!("{r} is not in the carrier")))
            };
            let target = index(&c.target)?;
            let factors = c.factors.iter().map(index).collect::<Result<Vec<_>, _>>()?;
            let m = carrier.monoid();
            let product = factors.iter().fold(m.identity(), |acc, &y| m.op(acc, y));
            if product != target {
                return fail(format!("product of factors is {}", carrier.repr(product)));
            }
            if c.engine == Engine::Irreducibles {
                for &y in &factors {
                    if !pm.is_irreducible(y, s).map_err(|e| CliError::Failed(e.to_string()))? {
                        return fail(format!("factor {} is not irreducible", carrier.repr(y)));
                    }
                }
                None
            } else {
                if let Some(&y) = factors.iter().find(|&&y| !pm.is_quark(y)) {
                    return fail(format!("factor {} is not a quark", carrier.repr(y)));
                }
                let h = pm.height().map_err(|e| CliError::Failed(e.to_string()))?;
                Some((s - 1) * h.get(target) - (s - 2))
            }
        }
    };
    if c.bound != expected_bound {
        return fail(format!("bound {:?}, recomputed {expected_bound:?}", c.bound));
    }
    if let Some(b) = expected_bound {
        if c.length > b {
            return fail(format!("length {} exceeds bound {b}", c.length));
        }
    }
    Ok(())
}

fn images(r: &ElementRepr) -> Result<Vec<usize>, CliError> {
    match r {
        ElementRepr::Images(v) if !v.is_empty() && v.iter().all(|&x| (1..=v.len()).contains(&x)) => Ok(v.clone()),
        other => Err(CliError::Failed(format!("{other} is not a list of 1-based images"))),
    }
}

/// `(f ∘ g)(x) = f(g(x))` on 1-based image lists.
fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x - 1]).collect()
}

fn moved(f: &[usize]) -> Vec<usize> {
    (0..f.len()).filter(|&i| f[i] != i + 1).collect()
}

fn distinct(f: &[usize]) -> usize {
    let mut v = f.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn is_quasi_identity(f: &[usize]) -> bool {
    moved(f).len() == 1
}

fn is_transposition(f: &[usize]) -> bool {
    matches!(moved(f)[..], [a, b] if f[a] == b + 1 && f[b] == a + 1)
}
