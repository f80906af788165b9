//! Cochain complexes and their cohomology.

use thiserror::Error;

use crate::linalg::{kernel_basis, solve, SparseMatrix, SparseVec, Subspace};

/// A graded vector space with a degree +1 differential, given on a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    degrees: Vec<usize>,
    diff: Vec<SparseVec>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("d^2 != 0 in degree {degree} (basis element {witness})")]
    NotAComplex { degree: usize, witness: usize },
    #[error("d does not raise degree by one on basis element {0}")]
    WrongDegree(usize),
    #[error("subspace is not closed under the differential")]
    NotClosed { witness: SparseVec },
}

impl CochainComplex {
    pub fn new(degrees: Vec<usize>, diff: Vec<SparseVec>) -> Self {
        assert_eq!(degrees.len(), diff.len());
        CochainComplex { degrees, diff }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn d_basis(&self, i: usize) -> &SparseVec {
        &self.diff[i]
    }

    pub fn d(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            out.add_scaled(&self.diff[i], c);
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    fn in_degree(&self, k: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == k).collect()
    }

    /// The subcomplex spanned by homogeneous `vectors`, written in a basis of
    /// its own. Fails if the span is not closed under `d`.
    pub fn subcomplex(&self, vectors: &[SparseVec]) -> Result<(CochainComplex, Vec<SparseVec>), ComplexError> {
        let sub = Subspace::span(vectors, self.dim());
        let mut basis: Vec<(usize, SparseVec)> = sub
            .basis()
            .iter()
            .map(|v| {
                let deg = v.indices().next().map_or(0, |i| self.degrees[i]);
                (deg, v.clone())
            })
            .collect();
        basis.sort_by_key(|(d, _)| *d);
        let columns: Vec<SparseVec> = basis.iter().map(|(_, v)| v.clone()).collect();
        let inclusion = SparseMatrix::from_columns(self.dim(), &columns);
        let mut diff = Vec::with_capacity(columns.len());
        for v in &columns {
            let dv = self.d(v);
            let coords = solve(&inclusion, &dv).map_err(|_| ComplexError::NotClosed { witness: v.clone() })?;
            diff.push(coords);
        }
        Ok((
            CochainComplex::new(basis.iter().map(|(d, _)| *d).collect(), diff),
            columns,
        ))
    }
}

/// Cohomology in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCohomology {
    pub degree: usize,
    pub betti: usize,
    /// Cocycles whose classes form a basis, reduced against the coboundaries.
    pub representatives: Vec<SparseVec>,
    /// Echelon basis of the coboundaries.
    pub coboundaries: Vec<SparseVec>,
    pub cocycle_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degrees: Vec<DegreeCohomology>,
}

impl CohomologyReport {
    /// Betti numbers indexed by degree, from 0 to the top degree of the complex.
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn in_degree(&self, k: usize) -> Option<&DegreeCohomology> {
        self.degrees.get(k)
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees.iter().all(|d| d.betti == 0)
    }

    pub fn total_betti(&self) -> usize {
        self.degrees.iter().map(|d| d.betti).sum()
    }
}

/// Betti vectors agree after dropping trailing zeros.
pub fn same_betti(a: &[usize], b: &[usize]) -> bool {
    let trim = |v: &[usize]| v.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
    a[..trim(a)] == b[..trim(b)]
}

/// Pads or truncates a Betti vector to `len` entries.
pub fn padded(betti: &[usize], len: usize) -> Vec<usize> {
    let mut v = betti.to_vec();
    v.resize(len, 0);
    v
}

/// Kernel modulo image in every degree, with deterministic representatives.
pub fn cohomology(complex: &CochainComplex) -> Result<CohomologyReport, ComplexError> {
    let n = complex.dim();
    for i in 0..n {
        let di = complex.d_basis(i);
        if di.indices().any(|k| complex.degrees[k] != complex.degrees[i] + 1) {
            return Err(ComplexError::WrongDegree(i));
        }
        if !complex.d(di).is_zero() {
            return Err(ComplexError::NotAComplex {
                degree: complex.degrees[i],
                witness: i,
            });
        }
    }
    if n == 0 {
        return Ok(CohomologyReport { degrees: Vec::new() });
    }
    let top = complex.max_degree();
    let mut out = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let here = complex.in_degree(k);
        let next = complex.in_degree(k + 1);
        let mut next_pos = vec![usize::MAX; n];
        for (p, &i) in next.iter().enumerate() {
            next_pos[i] = p;
        }
        let columns: Vec<SparseVec> = here
            .iter()
            .map(|&i| complex.d_basis(i).reindex(|j| next_pos[j]))
            .collect();
        let dk = SparseMatrix::from_columns(next.len(), &columns);
        let cocycles: Vec<SparseVec> = kernel_basis(&dk)
            .into_iter()
            .map(|v| v.reindex(|p| here[p]))
            .collect();
        let images: Vec<SparseVec> = if k == 0 {
            Vec::new()
        } else {
            complex
                .in_degree(k - 1)
                .iter()
                .map(|&i| complex.d_basis(i).clone())
                .collect()
        };
        let boundaries = Subspace::span(&images, n);
        let mut spanned = boundaries.clone();
        let mut representatives = Vec::new();
        for z in &cocycles {
            if !spanned.contains(z) {
                representatives.push(boundaries.reduce(z));
                spanned = spanned.extend(std::slice::from_ref(z));
            }
        }
        out.push(DegreeCohomology {
            degree: k,
            betti: representatives.len(),
            representatives,
            coboundaries: boundaries.basis().to_vec(),
            cocycle_dim: cocycles.len(),
        });
    }
    Ok(CohomologyReport { degrees: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn betti_comparison_ignores_trailing_zeros() {
        assert!(same_betti(&[1, 0, 1], &[1, 0, 1, 0, 0]));
        assert!(!same_betti(&[1, 0, 1], &[1, 1]));
        assert_eq!(padded(&[1, 2], 4), vec![1, 2, 0, 0]);
    }

    #[test]
    fn zero_differential_betti_is_dimension() {
        let c = CochainComplex::new(vec![0, 2, 2, 3], vec![SparseVec::new(); 4]);
        assert_eq!(cohomology(&c).unwrap().betti(), vec![1, 0, 2, 1]);
    }

    #[test]
    fn identity_two_term_complex_is_acyclic() {
        let c = CochainComplex::new(vec![0, 1], vec![SparseVec::unit(1), SparseVec::new()]);
        let h = cohomology(&c).unwrap();
        assert!(h.is_acyclic());
        assert_eq!(h.betti(), vec![0, 0]);
    }

    #[test]
    fn detects_non_complex() {
        let c = CochainComplex::new(
            vec![0, 1, 2],
            vec![SparseVec::unit(1), SparseVec::unit(2), SparseVec::new()],
        );
        assert_eq!(
            cohomology(&c),
            Err(ComplexError::NotAComplex { degree: 0, witness: 0 })
        );
    }

    #[test]
    fn representatives_reduced_against_coboundaries() {
        // e0 -> e1 + e2 in degree 1; e1 and e2 are cocycles.
        let d0 = SparseVec::from_pairs([(1, int(1)), (2, int(1))]);
        let c = CochainComplex::new(vec![0, 1, 1], vec![d0, SparseVec::new(), SparseVec::new()]);
        let h = cohomology(&c).unwrap();
        assert_eq!(h.betti(), vec![0, 1]);
        let rep = &h.degrees[1].representatives[0];
        assert!(!rep.is_zero());
        assert_eq!(h.degrees[1].coboundaries.len(), 1);
    }

    #[test]
    fn subcomplex_must_be_closed() {
        let c = CochainComplex::new(vec![0, 1], vec![SparseVec::unit(1), SparseVec::new()]);
        assert!(c.subcomplex(&[SparseVec::unit(0)]).is_err());
        let (sub, _) = c.subcomplex(&[SparseVec::unit(1)]).unwrap();
        assert_eq!(cohomology(&sub).unwrap().total_betti(), 1);
    }
}
