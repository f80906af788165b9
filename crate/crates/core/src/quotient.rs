//! Ideals and quotient CDGAs.

use num_traits::One;
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraOptions, DgAlgebra, GradedBasis};
use crate::cohomology::{cohomology, ComplexError};
use crate::linalg::{quotient_data, SparseMatrix, SparseVec, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("subspace is not graded")]
    NotGraded,
    #[error("not an ideal: {element} · {basis} leaves the subspace")]
    NotAnIdeal { element: String, basis: String },
    #[error("not closed under d: d({element}) leaves the subspace")]
    NotDifferential { element: String },
    #[error("ideal contains the unit")]
    ContainsUnit,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Span of `{g · a_i}` over all generators `g` and basis elements `a_i`.
pub fn ideal_generated(a: &DgAlgebra, generators: &[SparseVec]) -> Subspace {
    let mut vectors = Vec::new();
    for g in generators {
        for i in 0..a.dim() {
            let p = a.mul(g, &SparseVec::unit(i));
            if !p.is_zero() {
                vectors.push(p);
            }
        }
    }
    Subspace::span(&vectors, a.dim())
}

/// Differential ideal generated by `generators`: the ideal generated by the
/// generators together with their differentials.
pub fn differential_ideal_generated(a: &DgAlgebra, generators: &[SparseVec]) -> Subspace {
    let mut all: Vec<SparseVec> = generators.to_vec();
    all.extend(generators.iter().map(|g| a.d(g)));
    ideal_generated(a, &all)
}

/// Graded-ness: every homogeneous component of every basis vector lies in the
/// subspace.
pub fn is_graded(a: &DgAlgebra, s: &Subspace) -> bool {
    s.basis()
        .iter()
        .all(|v| a.basis().components(v).iter().all(|(_, c)| s.contains(c)))
}

/// Verifies that `s` is a graded two-sided ideal closed under `d`.
pub fn check_differential_ideal(a: &DgAlgebra, s: &Subspace) -> Result<(), QuotientError> {
    if !is_graded(a, s) {
        return Err(QuotientError::NotGraded);
    }
    for v in s.basis() {
        for i in 0..a.dim() {
            if !s.contains(&a.mul(v, &SparseVec::unit(i))) {
                return Err(QuotientError::NotAnIdeal {
                    element: a.format(v),
                    basis: a.label(i).to_string(),
                });
            }
        }
        if !s.contains(&a.d(v)) {
            return Err(QuotientError::NotDifferential {
                element: a.format(v),
            });
        }
    }
    Ok(())
}

/// Cohomology of the subcomplex `s` vanishes.
pub fn is_acyclic(a: &DgAlgebra, s: &Subspace) -> Result<bool, QuotientError> {
    let (sub, _) = a.complex().subcomplex(s.basis())?;
    Ok(cohomology(&sub)?.is_acyclic())
}

/// `A / I` together with the projection `A -> A/I`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub algebra: DgAlgebra,
    /// `dim(A/I) x dim(A)`.
    pub projection: SparseMatrix,
    /// Index in `A` of each quotient basis element.
    pub representatives: Vec<usize>,
    pub ideal: Subspace,
}

impl QuotientAlgebra {
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        self.projection.mul_vec(v)
    }

    /// Column images of the projection, one per basis element of `A`.
    pub fn projection_images(&self) -> Vec<SparseVec> {
        (0..self.projection.cols())
            .map(|j| self.projection.column(j))
            .collect()
    }

    /// Lifts quotient coordinates to the representative basis elements of `A`.
    pub fn lift(&self, v: &SparseVec) -> SparseVec {
        v.reindex(|k| self.representatives[k])
    }
}

/// Quotient by a graded differential ideal. The basis of the quotient is the
/// set of basis elements of `A` that are not pivots of the ideal, with their
/// original labels.
pub fn quotient_algebra(
    a: &DgAlgebra,
    ideal: &Subspace,
    name: impl Into<String>,
) -> Result<QuotientAlgebra, QuotientError> {
    check_differential_ideal(a, ideal)?;
    if ideal.contains(&SparseVec::unit(a.unit())) {
        return Err(QuotientError::ContainsUnit);
    }
    let q = quotient_data(ideal.basis(), a.dim());
    let reps = q.representative_indices.clone();
    let basis = GradedBasis::new(
        reps.iter()
            .map(|&i| (a.label(i).to_string(), a.degree(i)))
            .collect::<Vec<_>>(),
    )?;
    let unit_img = q.projection.mul_vec(&SparseVec::unit(a.unit()));
    let unit = match unit_img.iter().collect::<Vec<_>>().as_slice() {
        [(k, c)] if c.is_one() => *k,
        _ => return Err(QuotientError::ContainsUnit),
    };
    let mut products = Vec::new();
    for (x, &i) in reps.iter().enumerate() {
        for (y, &j) in reps.iter().enumerate().skip(x) {
            let p = q.projection.mul_vec(&a.basis_product(i, j));
            if !p.is_zero() {
                products.push((x, y, p));
            }
        }
    }
    let diff: Vec<(usize, SparseVec)> = reps
        .iter()
        .enumerate()
        .map(|(x, &i)| (x, q.projection.mul_vec(a.d_basis(i))))
        .collect();
    let algebra = DgAlgebra::new(
        name,
        basis,
        unit,
        products,
        diff,
        AlgebraOptions {
            top_degree: None,
            simply_connected: a.is_simply_connected(),
        },
    )?;
    Ok(QuotientAlgebra {
        algebra,
        projection: q.projection,
        representatives: reps,
        ideal: ideal.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_cdga;
    use crate::algebra::tests::s2xs3;

    #[test]
    fn quotient_by_top_class() {
        let a = s2xs3();
        let ideal = ideal_generated(&a, &[SparseVec::unit(3)]);
        assert_eq!(ideal.dim(), 1);
        let q = quotient_algebra(&a, &ideal, "trunc").unwrap();
        assert_eq!(q.algebra.dim(), 3);
        assert!(check_cdga(&q.algebra).passed());
        // x·y now vanishes
        assert!(q.algebra.basis_product(1, 2).is_zero());
    }

    #[test]
    fn rejects_non_ideal() {
        let a = s2xs3();
        let s = Subspace::span(&[SparseVec::unit(1)], 4);
        assert!(matches!(
            quotient_algebra(&a, &s, "bad"),
            Err(QuotientError::NotAnIdeal { .. })
        ));
    }

    #[test]
    fn rejects_unit() {
        let a = s2xs3();
        let ideal = ideal_generated(&a, &[SparseVec::unit(0)]);
        assert!(matches!(
            quotient_algebra(&a, &ideal, "zero"),
            Err(QuotientError::ContainsUnit)
        ));
    }
}
