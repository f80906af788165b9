//! JSON algebra files.
//!
//! ```json
//! {
//!   "name": "s2xs3",
//!   "formal_dimension": 5,
//!   "basis": [{"label": "1", "degree": 0}, {"label": "x", "degree": 2}, ...],
//!   "unit": "1",
//!   "products": [{"left": "x", "right": "y", "result": [{"label": "xy", "coeff": "1"}]}],
//!   "differential": [],
//!   "orientation": {"xy": "1"},
//!   "flags": {"simply_connected": true}
//! }
//! ```
//!
//! Coefficients are exact rational strings. Omitted products are zero, except
//! products with the unit which default to `1·a = a`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraOptions, DgAlgebra, GradedBasis};
use crate::linalg::{format_scalar, parse_scalar, Scalar, SparseVec};
use crate::poincare::{check_pd, PdAlgebra, PdFailure};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("not a Poincaré duality algebra: {0}")]
    Pd(#[from] PdFailure),
}

impl IoError {
    /// Parse-level problems, as opposed to failed mathematical checks.
    pub fn is_parse_error(&self) -> bool {
        !matches!(self, IoError::Pd(_))
    }
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        // serde appends " at line L column C", which the variant already carries
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let message = full.strip_suffix(&suffix).unwrap_or(&full).to_string();
        IoError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub label: String,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub label: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub result: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiffEntry {
    pub from: String,
    pub to: String,
    pub coeff: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    #[serde(default)]
    pub simply_connected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub formal_dimension: usize,
    pub basis: Vec<BasisEntry>,
    pub unit: String,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
    #[serde(default)]
    pub differential: Vec<DiffEntry>,
    pub orientation: BTreeMap<String, String>,
    #[serde(default)]
    pub flags: Flags,
}

fn coeff(s: &str) -> Result<Scalar, IoError> {
    parse_scalar(s).ok_or_else(|| IoError::Invalid(format!("bad coefficient {s:?} (expected p or p/q)")))
}

fn index(basis: &GradedBasis, label: &str) -> Result<usize, IoError> {
    basis
        .index_of(label)
        .ok_or_else(|| IoError::Invalid(format!("unknown basis label {label:?}")))
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self, IoError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("algebra files serialize");
        s.push('\n');
        s
    }

    /// The algebra alone; the orientation is not checked.
    pub fn algebra(&self) -> Result<DgAlgebra, IoError> {
        if self.basis.is_empty() {
            return Err(IoError::Invalid("basis is empty".into()));
        }
        // stable sort by degree keeps the file order inside a degree
        let mut entries: Vec<(String, usize)> = self.basis.iter().map(|b| (b.label.clone(), b.degree)).collect();
        entries.sort_by_key(|e| e.1);
        let basis = GradedBasis::new(entries)?;
        let unit = index(&basis, &self.unit)?;
        let mut products = Vec::new();
        for p in &self.products {
            let mut v = SparseVec::new();
            for t in &p.result {
                v.add_at(index(&basis, &t.label)?, &coeff(&t.coeff)?);
            }
            products.push((index(&basis, &p.left)?, index(&basis, &p.right)?, v));
        }
        let mut diff = Vec::new();
        for d in &self.differential {
            diff.push((
                index(&basis, &d.from)?,
                SparseVec::unit(index(&basis, &d.to)?).scaled(&coeff(&d.coeff)?),
            ));
        }
        Ok(DgAlgebra::new(
            self.name.clone(),
            basis,
            unit,
            products,
            diff,
            AlgebraOptions {
                top_degree: Some(self.formal_dimension),
                simply_connected: self.flags.simply_connected,
            },
        )?)
    }

    pub fn orientation_vector(&self, a: &DgAlgebra) -> Result<SparseVec, IoError> {
        let mut eps = SparseVec::new();
        for (label, c) in &self.orientation {
            eps.add_at(index(a.basis(), label)?, &coeff(c)?);
        }
        Ok(eps)
    }

    /// Builds the algebra and checks Poincaré duality.
    pub fn pd_algebra(&self) -> Result<PdAlgebra, IoError> {
        let a = self.algebra()?;
        let eps = self.orientation_vector(&a)?;
        Ok(check_pd(&a, self.formal_dimension, &eps)?)
    }

    pub fn from_algebra(a: &DgAlgebra, n: usize, epsilon: &SparseVec) -> Self {
        let label = |i: usize| a.label(i).to_string();
        let terms = |v: &SparseVec| {
            v.iter()
                .map(|(k, c)| Term {
                    label: label(k),
                    coeff: format_scalar(c),
                })
                .collect::<Vec<_>>()
        };
        let mut stored = a.stored_products();
        stored.sort_by_key(|&(i, j, _)| (i, j));
        let products = stored
            .into_iter()
            .filter(|&(i, j, v)| {
                let other = if i == a.unit() { j } else if j == a.unit() { i } else { usize::MAX };
                !(other != usize::MAX && *v == SparseVec::unit(other))
            })
            .map(|(i, j, v)| ProductEntry {
                left: label(i),
                right: label(j),
                result: terms(v),
            })
            .collect();
        let differential = (0..a.dim())
            .flat_map(|i| {
                a.d_basis(i).iter().map(move |(k, c)| DiffEntry {
                    from: label(i),
                    to: label(k),
                    coeff: format_scalar(c),
                })
            })
            .collect();
        AlgebraFile {
            name: a.name().to_string(),
            formal_dimension: n,
            basis: (0..a.dim())
                .map(|i| BasisEntry {
                    label: label(i),
                    degree: a.degree(i),
                })
                .collect(),
            unit: label(a.unit()),
            products,
            differential,
            orientation: epsilon.iter().map(|(k, c)| (label(k), format_scalar(c))).collect(),
            flags: Flags {
                simply_connected: a.is_simply_connected(),
            },
        }
    }

    pub fn from_pd(pd: &PdAlgebra) -> Self {
        Self::from_algebra(&pd.algebra, pd.n, &pd.epsilon)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S2XS3: &str = r#"{
  "name": "s2xs3",
  "formal_dimension": 5,
  "basis": [
    {"label": "1", "degree": 0}, {"label": "x", "degree": 2},
    {"label": "y", "degree": 3}, {"label": "xy", "degree": 5}
  ],
  "unit": "1",
  "products": [{"left": "x", "right": "y", "result": [{"label": "xy", "coeff": "1"}]}],
  "orientation": {"xy": "1"},
  "flags": {"simply_connected": true}
}"#;

    #[test]
    fn parse_and_round_trip() {
        let f = AlgebraFile::parse(S2XS3).unwrap();
        let pd = f.pd_algebra().unwrap();
        assert!(pd.algebra.isomorphic_by_labels(&crate::algebra::tests::s2xs3(), &|l| l.to_string()));
        let back = AlgebraFile::from_pd(&pd);
        assert_eq!(back, f);
        let again = AlgebraFile::parse(&back.to_json()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn syntax_error_has_location() {
        match AlgebraFile::parse("{\n  \"name\": 3\n}") {
            Err(IoError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn float_coefficients_rejected() {
        let text = S2XS3.replace("\"coeff\": \"1\"", "\"coeff\": \"0.5\"");
        let err = AlgebraFile::parse(&text).unwrap().algebra().unwrap_err();
        assert!(err.is_parse_error());
        assert!(err.to_string().contains("0.5"));
    }

    #[test]
    fn unknown_label_rejected() {
        let text = S2XS3.replace("{\"xy\": \"1\"}", "{\"z\": \"1\"}");
        let f = AlgebraFile::parse(&text).unwrap();
        assert!(matches!(f.pd_algebra(), Err(IoError::Invalid(_))));
    }
}
