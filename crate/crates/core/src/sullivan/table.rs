//! Generator tables: finitely many generators over `A⊗A`, their
//! differentials, and an evaluation map into `C(ξ)`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{self, ExprError};
use crate::io::{AlgebraFile, IoError};
use crate::algebra::format_terms;
use crate::linalg::{format_scalar, Scalar, SparseVec};
use crate::poincare::PdAlgebra;
use crate::twisted::{build_cxi, TwistedError, TwistedModel};

use super::free::{differential, FreeAlgebra, FreeElement, Generator, Term};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("{context}: {source}")]
    Expr { context: String, source: ExprError },
    #[error("generator {0} must have positive degree")]
    ZeroDegree(String),
    #[error("generators must be listed by non-decreasing degree ({0})")]
    NotSorted(String),
    #[error("duplicate or clashing generator label {0}")]
    DuplicateLabel(String),
    #[error("{what} of {label} is not homogeneous of degree {expected}")]
    WrongDegree {
        what: &'static str,
        label: String,
        expected: usize,
    },
    #[error("D({0}) involves a generator that is not listed before it")]
    NotTriangular(String),
    #[error(transparent)]
    Twisted(#[from] TwistedError),
    #[error(transparent)]
    Io(#[from] IoError),
}

/// One row of a table in its textual form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub label: String,
    pub degree: usize,
    /// Letter used for the unknown coefficients of `ψ(label)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbol: Option<String>,
    /// `D(label)` over the base labels and earlier generators.
    pub d: String,
    /// `m(label)` in `C(ξ)`.
    pub m: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub name: String,
    pub base: AlgebraFile,
    pub xi: String,
    pub degree_cap: usize,
    pub generators: Vec<GeneratorEntry>,
}

impl TableFile {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("tables serialize");
        s.push('\n');
        s
    }

    pub fn table(&self) -> Result<GeneratorTable, TableError> {
        let pd = self.base.pd_algebra()?;
        GeneratorTable::new(&self.name, pd, &self.xi, self.generators.clone(), self.degree_cap)
    }
}

#[derive(Clone, Debug)]
pub struct GeneratorTable {
    pub name: String,
    pub pd: PdAlgebra,
    pub free: FreeAlgebra,
    pub entries: Vec<GeneratorEntry>,
    pub differentials: Vec<FreeElement<Scalar>>,
    pub xi_text: String,
    pub target: TwistedModel,
    /// `m(g)` in the basis of `target.algebra`.
    pub evaluation: Vec<SparseVec>,
    pub degree_cap: usize,
}

fn parse_in<R: expr::ExprRing>(ring: &R, labels: &[String], text: &str, context: String) -> Result<R::Value, TableError> {
    expr::parse(text, labels)
        .and_then(|e| expr::evaluate(ring, &e))
        .map_err(|source| TableError::Expr { context, source })
}

impl GeneratorTable {
    pub fn new(
        name: &str,
        pd: PdAlgebra,
        xi: &str,
        entries: Vec<GeneratorEntry>,
        degree_cap: usize,
    ) -> Result<Self, TableError> {
        let base = pd.square().algebra.clone();
        let mut prev = 0;
        for e in &entries {
            if e.degree == 0 {
                return Err(TableError::ZeroDegree(e.label.clone()));
            }
            if e.degree < prev {
                return Err(TableError::NotSorted(e.label.clone()));
            }
            prev = e.degree;
            let clashes = entries.iter().filter(|f| f.label == e.label).count() > 1
                || base.index_of(&e.label).is_some();
            if clashes {
                return Err(TableError::DuplicateLabel(e.label.clone()));
            }
        }
        let xi_vec = parse_in(
            &expr::AlgebraRing(&base),
            base.basis().labels(),
            xi,
            "ξ".into(),
        )?;
        let target = build_cxi(&pd, &xi_vec)?;
        let free = FreeAlgebra::new(
            base,
            entries
                .iter()
                .map(|e| Generator {
                    label: e.label.clone(),
                    degree: e.degree,
                })
                .collect(),
        );
        let labels = free.labels();
        let target_labels = target.algebra.basis().labels().to_vec();
        let mut differentials = Vec::new();
        let mut evaluation = Vec::new();
        for (g, e) in entries.iter().enumerate() {
            let d = parse_in(&free, &labels, &e.d, format!("D({})", e.label))?;
            if d.iter().any(|(t, _)| free.degree(t) != e.degree + 1) {
                return Err(TableError::WrongDegree {
                    what: "D",
                    label: e.label.clone(),
                    expected: e.degree + 1,
                });
            }
            if d.iter().any(|(t, _)| t.exps[g..].iter().any(|&x| x > 0)) {
                return Err(TableError::NotTriangular(e.label.clone()));
            }
            differentials.push(d);
            let m = parse_in(
                &expr::AlgebraRing(&target.algebra),
                &target_labels,
                &e.m,
                format!("m({})", e.label),
            )?;
            if !target.algebra.basis().is_homogeneous_of(&m, e.degree) {
                return Err(TableError::WrongDegree {
                    what: "m",
                    label: e.label.clone(),
                    expected: e.degree,
                });
            }
            evaluation.push(m);
        }
        Ok(GeneratorTable {
            name: name.to_string(),
            pd,
            free,
            entries,
            differentials,
            xi_text: xi.to_string(),
            target,
            evaluation,
            degree_cap,
        })
    }

    pub fn to_file(&self) -> TableFile {
        TableFile {
            name: self.name.clone(),
            base: AlgebraFile::from_pd(&self.pd),
            xi: self.xi_text.clone(),
            degree_cap: self.degree_cap,
            generators: self.entries.clone(),
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.free.generators
    }

    pub fn d(&self, x: &FreeElement<Scalar>) -> FreeElement<Scalar> {
        differential(&self.free, &self.differentials, x)
    }

    /// `m` extended multiplicatively, with `m(r) = r` on `A⊗A`.
    pub fn evaluate(&self, x: &FreeElement<Scalar>) -> SparseVec {
        let c = &self.target.algebra;
        let mut out = SparseVec::new();
        for (t, k) in x.iter() {
            let mut v = SparseVec::unit(c.unit()).scaled(k);
            for (g, &e) in t.exps.iter().enumerate() {
                for _ in 0..e {
                    v = c.mul(&v, &self.evaluation[g]);
                }
            }
            v = c.mul(&v, &self.target.inclusion[t.r]);
            out.add_scaled(&v, &Scalar::from_integer(1.into()));
        }
        out
    }

    pub fn format(&self, x: &FreeElement<Scalar>) -> String {
        self.free.format(x)
    }

    pub fn term(&self, t: &Term) -> FreeElement<Scalar> {
        FreeElement::term(t.clone(), Scalar::from_integer(1.into()))
    }
}

/// Per-generator outcome of [`check_table`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCheck {
    pub label: String,
    pub degree: usize,
    pub differential: String,
    /// `D²(g)` when it is nonzero.
    pub d_squared: Option<String>,
    /// `m(Dg)` and `δ(m(g))` when they differ.
    pub chain_map: Option<(String, String)>,
}

impl GeneratorCheck {
    pub fn passed(&self) -> bool {
        self.d_squared.is_none() && self.chain_map.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableReport {
    pub generators: Vec<GeneratorCheck>,
    /// Monomials up to the degree cap with `D² ≠ 0`.
    pub monomial_failures: Vec<String>,
    pub odd_squares_vanish: bool,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.odd_squares_vanish && self.monomial_failures.is_empty() && self.generators.iter().all(GeneratorCheck::passed)
    }
}

/// Checks `D² = 0`, that `m` is a cochain map, and that odd generators
/// square to zero. `D²` is also expanded on every monomial below the cap.
pub fn check_table(t: &GeneratorTable) -> TableReport {
    let c = &t.target.algebra;
    let generators = t
        .generators()
        .iter()
        .enumerate()
        .map(|(g, gen)| {
            let dg = &t.differentials[g];
            let dd = t.d(dg);
            let lhs = t.evaluate(dg);
            let rhs = c.d(&t.evaluation[g]);
            GeneratorCheck {
                label: gen.label.clone(),
                degree: gen.degree,
                differential: t.format(dg),
                d_squared: (!dd.is_zero()).then(|| t.format(&dd)),
                chain_map: (lhs != rhs).then(|| (c.format(&lhs), c.format(&rhs))),
            }
        })
        .collect();
    let odd_squares_vanish = t.generators().iter().enumerate().all(|(g, gen)| {
        let x: FreeElement<Scalar> = t.free.generator(g);
        !gen.is_odd() || t.free.mul(&x, &x).is_zero()
    });
    let mut monomial_failures = Vec::new();
    for k in 0..t.degree_cap {
        for term in t.free.terms_of_degree(k) {
            if term.exps.iter().all(|&e| e == 0) {
                continue;
            }
            let dd = t.d(&t.d(&t.term(&term)));
            if !dd.is_zero() {
                monomial_failures.push(format!("D²({}) = {}", t.free.term_label(&term), t.format(&dd)));
            }
        }
    }
    TableReport {
        generators,
        monomial_failures,
        odd_squares_vanish,
    }
}

/// `head + tail` with the sign of `tail` pulled out; `tail` may be `0`.
fn append(head: &str, tail: &str) -> String {
    match tail {
        "0" => head.to_string(),
        _ => match tail.strip_prefix('-') {
            Some(rest) => format!("{head} - {rest}"),
            None => format!("{head} + {tail}"),
        },
    }
}

/// The table for `S²×S³` over the target `C(q,r)`, `ξ = q(y⊗xy) + r(xy⊗y)`.
///
/// `D(h)` carries `-q(y⊗xy) - r(xy⊗y)`, the sign for which `m(u) = S1` is a
/// cochain map into `C(q,r)` (`m(Dh) = S1² - ξ = 0`).
pub fn s2xs3_table(q: &Scalar, r: &Scalar) -> GeneratorTable {
    let pd = crate::presets::pd("s2xs3").expect("s2xs3 preset");
    let (qs, rs) = (format_scalar(q), format_scalar(r));
    let (q, r) = (q.clone(), r.clone());
    let row = |label: &str, degree: usize, symbol: &str, d: String, m: &str| GeneratorEntry {
        label: label.into(),
        degree,
        symbol: Some(symbol.into()),
        d,
        m: m.into(),
    };
    let entries = vec![
        row("u", 4, "α", "1⊗xy + x⊗y - y⊗x - xy⊗1".into(), "S1"),
        row("z5", 5, "δ", "u*(1⊗x) - u*(x⊗1)".into(), "0"),
        row("z61", 6, "β", "u*(1⊗y) - u*(y⊗1)".into(), "0"),
        row("z62", 6, "ε", "z5*(1⊗x) + z5*(x⊗1)".into(), "0"),
        row("z71", 7, "ζ", "z62*(1⊗x) - z62*(x⊗1)".into(), "0"),
        row(
            "z72",
            7,
            "η",
            "z61*(1⊗x) + z5*(y⊗1) - z5*(1⊗y) - z61*(x⊗1)".into(),
            "0",
        ),
        row(
            "h",
            7,
            "γ",
            append(
                "u^2 - 2*(z61*(1⊗x) + z61*(x⊗1))",
                &format_terms([(-q.clone(), "y⊗xy".to_string()), (-r.clone(), "xy⊗y".to_string())].into_iter().filter(|(c, _)| !c.is_zero())),
            ),
            "0",
        ),
    ];
    let xi = format_terms([(q, "y⊗xy".to_string()), (r, "xy⊗y".to_string())].into_iter().filter(|(c, _)| !c.is_zero()));
    GeneratorTable::new(&format!("s2xs3 table (q={qs}, r={rs})"), pd, &xi, entries, 8)
        .expect("the S²×S³ table is well formed")
}
