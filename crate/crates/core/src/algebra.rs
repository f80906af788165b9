//! Finite-dimensional commutative differential graded algebras over Q.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{format_scalar, sign, solve, Scalar, SparseMatrix, SparseVec};

/// `(-1)^(p*q)` is `-1` iff both degrees are odd.
#[inline]
pub fn koszul(p: usize, q: usize) -> bool {
    p % 2 == 1 && q % 2 == 1
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("basis is empty")]
    EmptyBasis,
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("basis must be listed in non-decreasing degree order (label {0:?})")]
    BasisNotSorted(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("unit {0:?} must have degree 0")]
    UnitDegree(String),
    #[error("basis element {label:?} has degree {degree}, above the top degree {top}")]
    AboveTopDegree {
        label: String,
        degree: usize,
        top: usize,
    },
    #[error("product {left}·{right} is not homogeneous of degree {expected}")]
    ProductDegree {
        left: String,
        right: String,
        expected: usize,
    },
    #[error("products {left}·{right} and {right}·{left} disagree with graded commutativity")]
    InconsistentProduct { left: String, right: String },
    #[error("d({0}) is not homogeneous of degree one higher")]
    DifferentialDegree(String),
    #[error("algebra flagged simply connected but degree {degree} violates A^0 = Q, A^1 = 0")]
    NotSimplyConnected { degree: usize },
    #[error("elements belong to different algebras")]
    MixedParents,
}

/// Labeled homogeneous basis, listed in non-decreasing degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    labels: Vec<String>,
    degrees: Vec<usize>,
    index: HashMap<String, usize>,
}

impl GradedBasis {
    pub fn new<S: Into<String>>(entries: Vec<(S, usize)>) -> Result<Self, AlgebraError> {
        let mut labels = Vec::with_capacity(entries.len());
        let mut degrees = Vec::with_capacity(entries.len());
        let mut index = HashMap::new();
        for (k, (label, degree)) in entries.into_iter().enumerate() {
            let label = label.into();
            if let Some(&prev) = degrees.last() {
                if degree < prev {
                    return Err(AlgebraError::BasisNotSorted(label));
                }
            }
            if index.insert(label.clone(), k).is_some() {
                return Err(AlgebraError::DuplicateLabel(label));
            }
            labels.push(label);
            degrees.push(degree);
        }
        Ok(GradedBasis {
            labels,
            degrees,
            index,
        })
    }

    /// Sorts by `(degree, label)` before building.
    pub fn canonical<S: Into<String>>(entries: Vec<(S, usize)>) -> Result<Self, AlgebraError> {
        let mut entries: Vec<(String, usize)> =
            entries.into_iter().map(|(l, d)| (l.into(), d)).collect();
        entries.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        GradedBasis::new(entries)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.last().copied().unwrap_or(0)
    }

    /// Indices of the basis elements of degree `k`.
    pub fn in_degree(&self, k: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degrees[i] == k).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.max_degree() + 1];
        for &d in &self.degrees {
            dims[d] += 1;
        }
        dims
    }

    /// Degree of a vector if it is nonzero and homogeneous.
    pub fn degree_of(&self, v: &SparseVec) -> Option<usize> {
        let mut it = v.indices().map(|i| self.degrees[i]);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, v: &SparseVec, degree: usize) -> bool {
        v.indices().all(|i| self.degrees[i] == degree)
    }

    /// Splits a vector into its homogeneous components.
    pub fn components(&self, v: &SparseVec) -> Vec<(usize, SparseVec)> {
        let mut parts: Vec<(usize, SparseVec)> = Vec::new();
        for (i, c) in v.iter() {
            let d = self.degrees[i];
            match parts.iter_mut().find(|(k, _)| *k == d) {
                Some((_, p)) => p.add_at(i, c),
                None => parts.push((d, SparseVec::from_pairs([(i, c.clone())]))),
            }
        }
        parts
    }

    /// Renders `v` as `c*label + ...` in basis order.
    pub fn format(&self, v: &SparseVec) -> String {
        format_terms(v.iter().map(|(i, c)| (c.clone(), self.labels[i].clone())))
    }
}

/// Joins `(coefficient, label)` terms as `a - 2*b + 1/3*c`.
pub fn format_terms<I: IntoIterator<Item = (Scalar, String)>>(terms: I) -> String {
    let mut out = String::new();
    for (c, label) in terms {
        let negative = c < Scalar::zero();
        let abs = if negative { -c } else { c };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&format_scalar(&abs));
            out.push('*');
        }
        out.push_str(&label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId(u64);

impl AlgebraId {
    fn fresh() -> Self {
        static NEXT: AtomicU64 = AtomicU64::new(1);
        AlgebraId(NEXT.fetch_add(1, Ordering::Relaxed))
    }
}

/// Construction options for [`DgAlgebra::new`].
#[derive(Clone, Debug, Default)]
pub struct AlgebraOptions {
    /// Reject basis elements above this degree.
    pub top_degree: Option<usize>,
    /// Enforce `A^0 = Q·1` and `A^1 = 0`.
    pub simply_connected: bool,
}

/// A finite-dimensional CDGA given by structure constants.
///
/// Products are stored for index pairs `i <= j` only; `a_j·a_i` is recovered
/// with the Koszul sign `(-1)^{|a_i||a_j|}`.
#[derive(Clone, Debug)]
pub struct DgAlgebra {
    id: AlgebraId,
    name: String,
    basis: GradedBasis,
    unit: usize,
    mult: HashMap<(usize, usize), SparseVec>,
    diff: Vec<SparseVec>,
    simply_connected: bool,
}

impl DgAlgebra {
    /// Builds an algebra from products `a_i·a_j = v` and differentials
    /// `d(a_i) = v`. Unit products not listed default to `1·a = a`; any other
    /// omitted product is zero.
    pub fn new(
        name: impl Into<String>,
        basis: GradedBasis,
        unit: usize,
        products: impl IntoIterator<Item = (usize, usize, SparseVec)>,
        differential: impl IntoIterator<Item = (usize, SparseVec)>,
        options: AlgebraOptions,
    ) -> Result<Self, AlgebraError> {
        if basis.is_empty() {
            return Err(AlgebraError::EmptyBasis);
        }
        let n = basis.len();
        if unit >= n {
            return Err(AlgebraError::IndexOutOfRange(unit));
        }
        if basis.degree(unit) != 0 {
            return Err(AlgebraError::UnitDegree(basis.label(unit).to_string()));
        }
        if let Some(top) = options.top_degree {
            if let Some(i) = (0..n).find(|&i| basis.degree(i) > top) {
                return Err(AlgebraError::AboveTopDegree {
                    label: basis.label(i).to_string(),
                    degree: basis.degree(i),
                    top,
                });
            }
        }
        let check_vec = |v: &SparseVec| match v.max_index() {
            Some(m) if m >= n => Err(AlgebraError::IndexOutOfRange(m)),
            _ => Ok(()),
        };

        let mut mult: HashMap<(usize, usize), SparseVec> = HashMap::new();
        for (i, j, v) in products {
            if i >= n || j >= n {
                return Err(AlgebraError::IndexOutOfRange(i.max(j)));
            }
            check_vec(&v)?;
            let expected = basis.degree(i) + basis.degree(j);
            if !basis.is_homogeneous_of(&v, expected) {
                return Err(AlgebraError::ProductDegree {
                    left: basis.label(i).to_string(),
                    right: basis.label(j).to_string(),
                    expected,
                });
            }
            let (key, v) = if i <= j {
                ((i, j), v)
            } else {
                ((j, i), v.scaled(&sign(koszul(basis.degree(i), basis.degree(j)))))
            };
            if let Some(prev) = mult.get(&key) {
                if *prev != v {
                    return Err(AlgebraError::InconsistentProduct {
                        left: basis.label(key.0).to_string(),
                        right: basis.label(key.1).to_string(),
                    });
                }
            } else {
                mult.insert(key, v);
            }
        }
        for j in 0..n {
            let key = (unit.min(j), unit.max(j));
            mult.entry(key).or_insert_with(|| SparseVec::unit(j));
        }
        mult.retain(|_, v| !v.is_zero());

        let mut diff = vec![SparseVec::new(); n];
        for (i, v) in differential {
            if i >= n {
                return Err(AlgebraError::IndexOutOfRange(i));
            }
            check_vec(&v)?;
            if !basis.is_homogeneous_of(&v, basis.degree(i) + 1) {
                return Err(AlgebraError::DifferentialDegree(basis.label(i).to_string()));
            }
            diff[i].add_scaled(&v, &Scalar::one());
        }

        if options.simply_connected {
            let dims = basis.dims();
            if dims.first() != Some(&1) {
                return Err(AlgebraError::NotSimplyConnected { degree: 0 });
            }
            if dims.get(1).copied().unwrap_or(0) != 0 {
                return Err(AlgebraError::NotSimplyConnected { degree: 1 });
            }
        }

        Ok(DgAlgebra {
            id: AlgebraId::fresh(),
            name: name.into(),
            basis,
            unit,
            mult,
            diff,
            simply_connected: options.simply_connected,
        })
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn is_simply_connected(&self) -> bool {
        self.simply_connected
    }

    pub fn degree(&self, i: usize) -> usize {
        self.basis.degree(i)
    }

    pub fn label(&self, i: usize) -> &str {
        self.basis.label(i)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.index_of(label)
    }

    /// Stored (one-sided) structure constants, `i <= j`, in index order.
    pub fn stored_products(&self) -> Vec<(usize, usize, &SparseVec)> {
        let mut out: Vec<_> = self.mult.iter().map(|(&(i, j), v)| (i, j, v)).collect();
        out.sort_by_key(|e| (e.0, e.1));
        out
    }

    /// Accumulates `c · a_i · a_j` into `out`.
    pub fn add_basis_product(&self, i: usize, j: usize, c: &Scalar, out: &mut SparseVec) {
        let (key, flip) = if i <= j {
            ((i, j), false)
        } else {
            ((j, i), koszul(self.degree(i), self.degree(j)))
        };
        if let Some(v) = self.mult.get(&key) {
            if flip {
                out.add_scaled(v, &-c);
            } else {
                out.add_scaled(v, c);
            }
        }
    }

    pub fn basis_product(&self, i: usize, j: usize) -> SparseVec {
        let mut out = SparseVec::new();
        self.add_basis_product(i, j, &Scalar::one(), &mut out);
        out
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                self.add_basis_product(i, j, &(a * b), &mut out);
            }
        }
        out
    }

    pub fn d_basis(&self, i: usize) -> &SparseVec {
        &self.diff[i]
    }

    pub fn d(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in x.iter() {
            out.add_scaled(&self.diff[i], c);
        }
        out
    }

    pub fn is_formal_differential(&self) -> bool {
        self.diff.iter().all(SparseVec::is_zero)
    }

    /// Top degree with a nonzero basis element.
    pub fn top_degree(&self) -> usize {
        self.basis.max_degree()
    }

    pub fn one(&self) -> Element {
        self.basis_element(self.unit)
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element {
            parent: self.id,
            coeffs: SparseVec::unit(i),
        }
    }

    pub fn element(&self, coeffs: SparseVec) -> Element {
        Element {
            parent: self.id,
            coeffs,
        }
    }

    pub fn zero_element(&self) -> Element {
        self.element(SparseVec::new())
    }

    fn same_parent(&self, xs: &[&Element]) -> Result<(), AlgebraError> {
        if xs.iter().all(|x| x.parent == self.id) {
            Ok(())
        } else {
            Err(AlgebraError::MixedParents)
        }
    }

    pub fn add(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.same_parent(&[x, y])?;
        Ok(self.element(&x.coeffs + &y.coeffs))
    }

    pub fn scale(&self, x: &Element, c: &Scalar) -> Result<Element, AlgebraError> {
        self.same_parent(&[x])?;
        Ok(self.element(x.coeffs.scaled(c)))
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.same_parent(&[x, y])?;
        Ok(self.element(self.mul(&x.coeffs, &y.coeffs)))
    }

    pub fn differential(&self, x: &Element) -> Result<Element, AlgebraError> {
        self.same_parent(&[x])?;
        Ok(self.element(self.d(&x.coeffs)))
    }

    pub fn format(&self, v: &SparseVec) -> String {
        self.basis.format(v)
    }

    /// The cochain complex underlying the algebra.
    pub fn complex(&self) -> crate::cohomology::CochainComplex {
        crate::cohomology::CochainComplex::new(self.basis.degrees().to_vec(), self.diff.clone())
    }

    /// Re-expresses the algebra in a new homogeneous basis `b_i = Σ_j p_ij a_j`.
    /// The rows must be homogeneous, degree-sorted and form an invertible
    /// matrix. Returns the new algebra; coordinates transform by the inverse.
    pub fn change_of_basis(
        &self,
        new_basis: &[(String, SparseVec)],
    ) -> Result<DgAlgebra, AlgebraError> {
        let n = self.dim();
        let mut entries = Vec::with_capacity(n);
        for (label, v) in new_basis {
            let deg = self
                .basis
                .degree_of(v)
                .ok_or_else(|| AlgebraError::DifferentialDegree(label.clone()))?;
            entries.push((label.clone(), deg));
        }
        let basis = GradedBasis::new(entries)?;
        let columns: Vec<SparseVec> = new_basis.iter().map(|(_, v)| v.clone()).collect();
        let p = SparseMatrix::from_columns(n, &columns);
        let to_new = |v: &SparseVec| -> SparseVec {
            solve(&p, v).expect("change of basis matrix must be invertible")
        };
        let unit_new = to_new(&SparseVec::unit(self.unit));
        let unit = match unit_new.iter().collect::<Vec<_>>().as_slice() {
            [(k, c)] if c.is_one() => *k,
            _ => return Err(AlgebraError::UnitDegree("unit must be a new basis vector".into())),
        };
        let mut products = Vec::new();
        for i in 0..n {
            for j in i..n {
                let prod = self.mul(&columns[i], &columns[j]);
                products.push((i, j, to_new(&prod)));
            }
        }
        let diff = (0..n).map(|i| (i, to_new(&self.d(&columns[i])))).collect::<Vec<_>>();
        DgAlgebra::new(
            self.name.clone(),
            basis,
            unit,
            products,
            diff,
            AlgebraOptions {
                top_degree: None,
                simply_connected: self.simply_connected,
            },
        )
    }

    /// Structure constants of `self` and `other` agree under the label map.
    pub fn isomorphic_by_labels(&self, other: &DgAlgebra, map: &dyn Fn(&str) -> String) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let mut index = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            match other.index_of(&map(self.label(i))) {
                Some(k) if other.degree(k) == self.degree(i) => index.push(k),
                _ => return false,
            }
        }
        if index.iter().collect::<HashSet<_>>().len() != index.len() {
            return false;
        }
        for i in 0..self.dim() {
            if self.d_basis(i).reindex(|k| index[k]) != *other.d_basis(index[i]) {
                return false;
            }
            for j in 0..self.dim() {
                let lhs = self.basis_product(i, j).reindex(|k| index[k]);
                if lhs != other.basis_product(index[i], index[j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// An element of a specific algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    parent: AlgebraId,
    coeffs: SparseVec,
}

impl Element {
    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> SparseVec {
        self.coeffs
    }

    pub fn parent(&self) -> AlgebraId {
        self.parent
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Unit,
    Associativity,
    Commutativity,
    DSquared,
    Leibniz,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Unit => "unit",
            Axiom::Associativity => "associativity",
            Axiom::Commutativity => "graded commutativity",
            Axiom::DSquared => "d^2 = 0",
            Axiom::Leibniz => "Leibniz rule",
        })
    }
}

/// A basis tuple where an axiom fails, with the nonzero discrepancy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub basis: Vec<usize>,
    pub labels: Vec<String>,
    pub discrepancy: SparseVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub witness: Option<Witness>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn failure(&self, axiom: Axiom) -> Option<&Witness> {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .and_then(|c| c.witness.as_ref())
    }

    pub fn first_failure(&self) -> Option<(Axiom, &Witness)> {
        self.checks
            .iter()
            .find_map(|c| c.witness.as_ref().map(|w| (c.axiom, w)))
    }
}

/// Exhaustively verifies the CDGA axioms on basis elements.
pub fn check_cdga(a: &DgAlgebra) -> AxiomReport {
    let n = a.dim();
    let witness = |idx: Vec<usize>, discrepancy: SparseVec| Witness {
        labels: idx.iter().map(|&i| a.label(i).to_string()).collect(),
        basis: idx,
        discrepancy,
    };

    let unit = (0..n).find_map(|i| {
        let lhs = a.basis_product(a.unit(), i);
        let diff = &lhs - &SparseVec::unit(i);
        (!diff.is_zero()).then(|| witness(vec![a.unit(), i], diff))
    });

    let commutativity = (0..n).find_map(|i| {
        (i..n).find_map(|j| {
            let ab = a.basis_product(i, j);
            let ba = a.basis_product(j, i);
            let diff = &ab - &ba.scaled(&sign(koszul(a.degree(i), a.degree(j))));
            (!diff.is_zero()).then(|| witness(vec![i, j], diff))
        })
    });

    let products: Vec<Vec<SparseVec>> = (0..n)
        .map(|i| (0..n).map(|j| a.basis_product(i, j)).collect())
        .collect();
    let associativity = (0..n).find_map(|i| {
        (0..n).find_map(|j| {
            (0..n).find_map(|k| {
                let mut left = SparseVec::new();
                for (m, c) in products[i][j].iter() {
                    left.add_scaled(&products[m][k], c);
                }
                let mut right = SparseVec::new();
                for (m, c) in products[j][k].iter() {
                    right.add_scaled(&products[i][m], c);
                }
                let diff = &left - &right;
                (!diff.is_zero()).then(|| witness(vec![i, j, k], diff))
            })
        })
    });

    let d_squared = (0..n).find_map(|i| {
        let dd = a.d(a.d_basis(i));
        (!dd.is_zero()).then(|| witness(vec![i], dd))
    });

    let leibniz = (0..n).find_map(|i| {
        (0..n).find_map(|j| {
            let lhs = a.d(&products[i][j]);
            let mut rhs = a.mul(a.d_basis(i), &SparseVec::unit(j));
            let second = a.mul(&SparseVec::unit(i), a.d_basis(j));
            rhs.add_scaled(&second, &sign(a.degree(i) % 2 == 1));
            let diff = &lhs - &rhs;
            (!diff.is_zero()).then(|| witness(vec![i, j], diff))
        })
    });

    AxiomReport {
        checks: vec![
            AxiomCheck {
                axiom: Axiom::Unit,
                witness: unit,
            },
            AxiomCheck {
                axiom: Axiom::Associativity,
                witness: associativity,
            },
            AxiomCheck {
                axiom: Axiom::Commutativity,
                witness: commutativity,
            },
            AxiomCheck {
                axiom: Axiom::DSquared,
                witness: d_squared,
            },
            AxiomCheck {
                axiom: Axiom::Leibniz,
                witness: leibniz,
            },
        ],
    }
}

/// Checks that `f` (columns indexed by the basis of `source`) is a CDGA map.
/// Returns the first failing basis pair or single basis element.
pub fn check_cdga_map(
    source: &DgAlgebra,
    target: &DgAlgebra,
    images: &[SparseVec],
) -> Result<(), Witness> {
    let apply = |v: &SparseVec| {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            out.add_scaled(&images[i], c);
        }
        out
    };
    let w = |idx: Vec<usize>, diff: SparseVec| Witness {
        labels: idx.iter().map(|&i| source.label(i).to_string()).collect(),
        basis: idx,
        discrepancy: diff,
    };
    let unit_diff = &images[source.unit()] - &SparseVec::unit(target.unit());
    if !unit_diff.is_zero() {
        return Err(w(vec![source.unit()], unit_diff));
    }
    for i in 0..source.dim() {
        let diff = &apply(source.d_basis(i)) - &target.d(&images[i]);
        if !diff.is_zero() {
            return Err(w(vec![i], diff));
        }
        for j in 0..source.dim() {
            let lhs = apply(&source.basis_product(i, j));
            let rhs = target.mul(&images[i], &images[j]);
            let diff = &lhs - &rhs;
            if !diff.is_zero() {
                return Err(w(vec![i, j], diff));
            }
        }
    }
    Ok(())
}
