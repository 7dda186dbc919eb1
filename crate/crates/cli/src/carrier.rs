//! Monoid selection and the user-facing element notation.

use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use premonoid::monoid::{
    divisibility_preorder, reduced_power_monoid, PowerMonoid, TableMonoid, TransformationKind,
    TransformationMonoid,
};
use premonoid::oracle::base_monoid;
use premonoid::rfix::{fix_preorder_on, rfix_preorder};
use premonoid::{FiniteMonoid, FinitePreorder, Premonoid, QMatrix, SizeCaps, Transformation};

use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonoidKind {
    Tn,
    Sn,
    SingularTn,
    Power,
    TableFile,
    Orthogonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PreorderKind {
    Rfix,
    Div,
}

/// How an element appears in output: 1-based images, a rational matrix, or
/// a carrier index with its label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRepr {
    Images(Vec<usize>),
    Matrix(QMatrix),
    Labeled { index: usize, label: String },
}

impl std::fmt::Display for ElementRepr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ElementRepr::Images(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
            ElementRepr::Matrix(m) => write!(f, "{}", m.to_json()),
            ElementRepr::Labeled { index, label } => write!(f, "#{index} {label}"),
        }
    }
}

pub fn images_repr(t: &Transformation) -> ElementRepr {
    ElementRepr::Images(t.to_one_based())
}

/// A finite carrier chosen on the command line.
pub enum Carrier {
    Transformations(TransformationMonoid),
    Power(PowerMonoid),
    Table(TableMonoid),
}

impl Carrier {
    pub fn monoid(&self) -> &dyn FiniteMonoid {
        match self {
            Carrier::Transformations(m) => m,
            Carrier::Power(m) => m,
            Carrier::Table(m) => m,
        }
    }

    pub fn repr(&self, x: usize) -> ElementRepr {
        match self {
            Carrier::Transformations(m) => images_repr(&m.element(x)),
            _ => ElementRepr::Labeled {
                index: x,
                label: self.monoid().label(x),
            },
        }
    }

    pub fn index_of(&self, repr: &ElementRepr) -> Option<usize> {
        match (self, repr) {
            (Carrier::Transformations(m), ElementRepr::Images(v)) => {
                m.index_of(&Transformation::from_one_based(v).ok()?)
            }
            (Carrier::Power(_) | Carrier::Table(_), ElementRepr::Labeled { index, label }) => {
                (*index < self.monoid().size() && self.monoid().label(*index) == *label)
                    .then_some(*index)
            }
            _ => None,
        }
    }

    pub fn preorder(&self, kind: PreorderKind, caps: &SizeCaps) -> Result<FinitePreorder, UsageError> {
        let field = "--preorder";
        match (self, kind) {
            (Carrier::Transformations(m), PreorderKind::Rfix) => {
                fix_preorder_on(m, caps).map_err(|e| UsageError::new("--n", e))
            }
            (_, PreorderKind::Rfix) => {
                rfix_preorder(self.monoid(), caps).map_err(|e| UsageError::new(field, e))
            }
            (_, PreorderKind::Div) => {
                divisibility_preorder(self.monoid(), caps).map_err(|e| UsageError::new(field, e))
            }
        }
    }

    pub fn premonoid(
        &self,
        kind: PreorderKind,
        caps: &SizeCaps,
    ) -> Result<Premonoid<&dyn FiniteMonoid>, UsageError> {
        let order = self.preorder(kind, caps)?;
        Premonoid::new(self.monoid(), order).map_err(|e| UsageError::new("--preorder", e))
    }
}

/// The parameters that identify a finite carrier; also stored in
/// certificates so `--check` can rebuild it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarrierSpec {
    pub monoid: MonoidKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<PathBuf>,
}

impl CarrierSpec {
    pub fn build(&self, caps: &SizeCaps) -> Result<Carrier, UsageError> {
        let kind = match self.monoid {
            MonoidKind::Tn => Some(TransformationKind::Full),
            MonoidKind::Sn => Some(TransformationKind::Symmetric),
            MonoidKind::SingularTn => Some(TransformationKind::Singular),
            _ => None,
        };
        if let Some(kind) = kind {
            let n = self.n.ok_or_else(|| UsageError::new("--n", "required for this monoid"))?;
            return TransformationMonoid::new(n, kind, caps)
                .map(Carrier::Transformations)
                .map_err(|e| UsageError::new("--n", e));
        }
        match self.monoid {
            MonoidKind::Power => {
                let base = self
                    .base
                    .as_deref()
                    .ok_or_else(|| UsageError::new("--base", "required for --monoid power"))?;
                let b = base_monoid(base, caps).map_err(|e| UsageError::new("--base", e))?;
                reduced_power_monoid(&b, caps)
                    .map(Carrier::Power)
                    .map_err(|e| UsageError::new("--base", e))
            }
            MonoidKind::TableFile => {
                let path = self
                    .table
                    .as_ref()
                    .ok_or_else(|| UsageError::new("--table", "required for --monoid table-file"))?;
                let text = std::fs::read_to_string(path)
                    .map_err(|e| UsageError::new("--table", format!("{}: {e}", path.display())))?;
                TableMonoid::parse(&text, caps)
                    .map(Carrier::Table)
                    .map_err(|e| UsageError::new("--table", e))
            }
            _ => Err(UsageError::new("--monoid", "orthogonal has no finite carrier")),
        }
    }
}

/// Parses `--images`, checking it against `--n` when both are given.
pub fn parse_images(text: &str, n: Option<usize>) -> Result<Transformation, UsageError> {
    let t = Transformation::parse_one_based(text).map_err(|e| UsageError::new("--images", e))?;
    if let Some(n) = n {
        if t.degree() != n {
            return Err(UsageError::new(
                "--images",
                format!("{} images given but --n is {n}", t.degree()),
            ));
        }
    }
    Ok(t)
}

pub fn read_matrix(path: &std::path::Path) -> Result<QMatrix, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError::new("--matrix", format!("{}: {e}", path.display())))?;
    QMatrix::from_json(&text).map_err(|e| UsageError::new("--matrix", e))
}
