//! Exact sparse linear algebra over the rationals.
//!
//! Every quotient, kernel and cohomology computation in the crate goes through
//! this module. Matrices are small (a few hundred rows at most), so elimination
//! runs on a dense copy and results are handed back in sparse form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational scalar, always kept in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(numer: i64, denom: i64) -> Scalar {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// `(-1)^k` as a scalar.
pub fn sign(odd: bool) -> Scalar {
    if odd {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

/// Formats a scalar as `p` or `p/q`.
pub fn format_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses `p`, `-p` or `p/q` into an exact rational.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// A sparse vector: coordinate index to nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec(BTreeMap<usize, Scalar>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(BTreeMap::new())
    }

    pub fn unit(i: usize) -> Self {
        let mut v = SparseVec::new();
        v.0.insert(i, Scalar::one());
        v
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> Self {
        let mut v = SparseVec::new();
        for (i, c) in pairs {
            v.add_at(i, &c);
        }
        v
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec::from_pairs(values.iter().cloned().enumerate())
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); dim];
        for (&i, c) in &self.0 {
            out[i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.0.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.0.iter().map(|(&i, c)| (i, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    /// Adds `c` to coordinate `i`, dropping the entry if it cancels.
    pub fn add_at(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let remove = {
            let slot = self.0.entry(i).or_insert_with(Scalar::zero);
            *slot += c;
            slot.is_zero()
        };
        if remove {
            self.0.remove(&i);
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &SparseVec, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (&i, x) in &other.0 {
            self.add_at(i, &(x * c));
        }
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(&i, x)| (i, x * c)).collect())
    }

    /// Reindexes coordinates; `map` must be injective on the support.
    pub fn reindex(&self, map: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(self.0.iter().map(|(&i, c)| (map(i), c.clone())))
    }

    pub fn dot(&self, other: &SparseVec) -> Scalar {
        let mut acc = Scalar::zero();
        for (&i, c) in &self.0 {
            if let Some(d) = other.0.get(&i) {
                acc += c * d;
            }
        }
        acc
    }
}

impl FromIterator<(usize, Scalar)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Scalar)>>(iter: T) -> Self {
        SparseVec::from_pairs(iter)
    }
}

impl Add for &SparseVec {
    type Output = SparseVec;
    fn add(self, rhs: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &SparseVec {
    type Output = SparseVec;
    fn sub(self, rhs: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl Neg for &SparseVec {
    type Output = SparseVec;
    fn neg(self) -> SparseVec {
        self.scaled(&-Scalar::one())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    OutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("duplicate entry at ({0}, {1})")]
    DuplicateEntry(usize, usize),
    #[error("right-hand side has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
}

/// The right-hand side is not in the image of the matrix.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("no solution: right-hand side is not in the image")]
pub struct NoSolution;

/// Sparse matrix with entries in canonical (row, col) order and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Scalar)>,
}

impl SparseMatrix {
    /// Builds a matrix from explicit entries, rejecting duplicates and
    /// out-of-range positions. Zero entries are dropped.
    pub fn new(
        rows: usize,
        cols: usize,
        entries: Vec<(usize, usize, Scalar)>,
    ) -> Result<Self, LinalgError> {
        let mut map = BTreeMap::new();
        for (r, c, x) in entries {
            if r >= rows || c >= cols {
                return Err(LinalgError::OutOfRange {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            if map.insert((r, c), x).is_some() {
                return Err(LinalgError::DuplicateEntry(r, c));
            }
        }
        Ok(SparseMatrix {
            rows,
            cols,
            entries: map
                .into_iter()
                .filter(|(_, x)| !x.is_zero())
                .map(|((r, c), x)| (r, c, x))
                .collect(),
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, Scalar::one())).collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_dense_with_cols(rows, cols)
    }

    fn from_dense_with_cols(rows: &[Vec<Scalar>], cols: usize) -> Self {
        let mut entries = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    entries.push((r, c, x.clone()));
                }
            }
        }
        SparseMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut entries: Vec<_> = columns
            .iter()
            .enumerate()
            .flat_map(|(c, v)| v.iter().map(move |(r, x)| (r, c, x.clone())))
            .collect();
        entries.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        debug_assert!(entries.iter().all(|e| e.0 < rows));
        SparseMatrix {
            rows,
            cols: columns.len(),
            entries,
        }
    }

    /// Matrix whose `i`-th row is `rows[i]`.
    pub fn from_rows(cols: usize, rows: &[SparseVec]) -> Self {
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(r, v)| v.iter().map(move |(c, x)| (r, c, x.clone())))
            .collect::<Vec<_>>();
        debug_assert!(entries.iter().all(|e| e.1 < cols));
        SparseMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, Scalar)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.entries
            .binary_search_by(|e| (e.0, e.1).cmp(&(row, col)))
            .map(|k| self.entries[k].2.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.cols]; self.rows];
        for (r, c, x) in &self.entries {
            out[*r][*c] = x.clone();
        }
        out
    }

    pub fn row(&self, r: usize) -> SparseVec {
        self.entries
            .iter()
            .filter(|e| e.0 == r)
            .map(|e| (e.1, e.2.clone()))
            .collect()
    }

    pub fn column(&self, c: usize) -> SparseVec {
        self.entries
            .iter()
            .filter(|e| e.1 == c)
            .map(|e| (e.0, e.2.clone()))
            .collect()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .map(|(r, c, x)| (*c, *r, x.clone()))
            .collect();
        entries.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, c, x) in &self.entries {
            let vc = v.get(*c);
            if !vc.is_zero() {
                out.add_at(*r, &(x * vc));
            }
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let columns: Vec<SparseVec> = (0..other.cols)
            .map(|c| self.mul_vec(&other.column(c)))
            .collect();
        SparseMatrix::from_columns(self.rows, &columns)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(format_scalar).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: SparseMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Gauss-Jordan elimination on a dense copy. Returns the reduced rows and
/// the pivot columns in increasing order.
fn rref_dense(mut a: Vec<Vec<Scalar>>, cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&p| !a[p][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        if !inv.is_one() {
            for x in a[r].iter_mut().skip(c) {
                *x *= &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rref(m: &SparseMatrix) -> Rref {
    let (reduced, pivots) = rref_dense(m.to_dense(), m.cols);
    Rref {
        matrix: SparseMatrix::from_dense_with_cols(&reduced, m.cols),
        rank: pivots.len(),
        pivots,
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    rref(m).rank
}

/// Basis of `{v : m v = 0}`, one vector per free column, in increasing
/// order of the free column.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVec> {
    let Rref { matrix, pivots, .. } = rref(m);
    let dense = matrix.to_dense();
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; m.cols];
        for &p in &pivots {
            s[p] = true;
        }
        s
    };
    (0..m.cols)
        .filter(|&f| !pivot_set[f])
        .map(|f| {
            let mut v = SparseVec::unit(f);
            for (i, &p) in pivots.iter().enumerate() {
                let x = &dense[i][f];
                if !x.is_zero() {
                    v.add_at(p, &-x);
                }
            }
            v
        })
        .collect()
}

/// Some `x` with `m x = b`, or [`NoSolution`]. Free variables are set to zero.
pub fn solve(m: &SparseMatrix, b: &SparseVec) -> Result<SparseVec, NoSolution> {
    if let Some(i) = b.max_index() {
        if i >= m.rows {
            return Err(NoSolution);
        }
    }
    let mut aug = m.to_dense();
    for (r, row) in aug.iter_mut().enumerate() {
        row.push(b.get(r));
    }
    let (reduced, pivots) = rref_dense(aug, m.cols + 1);
    if pivots.last() == Some(&m.cols) {
        return Err(NoSolution);
    }
    Ok(pivots
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, reduced[i][m.cols].clone()))
        .collect())
}

/// A subspace of `Q^dim` held in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    dim: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(vectors: &[SparseVec], dim: usize) -> Self {
        let m = SparseMatrix::from_rows(dim, vectors);
        let r = rref(&m);
        let rows = (0..r.rank).map(|i| r.matrix.row(i)).collect();
        Subspace {
            dim,
            rows,
            pivots: r.pivots,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Subspace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduced echelon basis.
    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Removes the pivot coordinates of `v` using the echelon basis. The result
    /// is zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = out.get(p);
            if !c.is_zero() {
                out.add_scaled(row, &-c);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn extend(&self, vectors: &[SparseVec]) -> Subspace {
        let mut all = self.rows.clone();
        all.extend_from_slice(vectors);
        Subspace::span(&all, self.dim)
    }
}

/// Coordinates for `Q^ambient / span(subspace)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientData {
    /// Standard basis vectors completing a basis of the quotient; these are the
    /// lexicographically earliest non-pivot coordinates.
    pub representatives: Vec<SparseVec>,
    /// Ambient coordinate index of each representative.
    pub representative_indices: Vec<usize>,
    /// `(ambient - rank) x ambient`, vanishing exactly on the subspace.
    pub projection: SparseMatrix,
}

pub fn quotient_data(subspace: &[SparseVec], ambient_dim: usize) -> QuotientData {
    let sub = Subspace::span(subspace, ambient_dim);
    let mut is_pivot = vec![false; ambient_dim];
    for &p in sub.pivots() {
        is_pivot[p] = true;
    }
    let reps: Vec<usize> = (0..ambient_dim).filter(|&j| !is_pivot[j]).collect();
    let mut position = vec![usize::MAX; ambient_dim];
    for (k, &j) in reps.iter().enumerate() {
        position[j] = k;
    }
    let mut entries = Vec::new();
    for (k, &j) in reps.iter().enumerate() {
        entries.push((k, j, Scalar::one()));
    }
    for (row, &p) in sub.basis().iter().zip(sub.pivots()) {
        for (j, x) in row.iter() {
            if j != p {
                entries.push((position[j], p, -x));
            }
        }
    }
    QuotientData {
        representatives: reps.iter().map(|&j| SparseVec::unit(j)).collect(),
        representative_indices: reps.clone(),
        projection: SparseMatrix::new(reps.len(), ambient_dim, entries)
            .expect("projection entries are distinct and in range"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rref_identity() {
        let r = rref(&SparseMatrix::identity(2));
        assert_eq!(r.matrix, SparseMatrix::identity(2));
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_zero() {
        let r = rref(&SparseMatrix::zero(3, 3));
        assert!(r.matrix.is_zero());
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_rank_one() {
        let r = rref(&m(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.matrix, m(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::identity(3)).is_empty());
        let k = kernel_basis(&SparseMatrix::zero(2, 3));
        assert_eq!(k, vec![v(&[1]), v(&[0, 1]), v(&[0, 0, 1])]);
        let k = kernel_basis(&m(&[&[1, 1]]));
        assert_eq!(k, vec![v(&[-1, 1])]);
    }

    #[test]
    fn solve_examples() {
        let b = v(&[3, -1]);
        assert_eq!(solve(&SparseMatrix::identity(2), &b), Ok(b.clone()));
        assert_eq!(solve(&SparseMatrix::zero(2, 2), &b), Err(NoSolution));
        let x = solve(&m(&[&[2]]), &v(&[1])).unwrap();
        assert_eq!(x.get(0), ratio(1, 2));
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_data(&[], 3);
        assert_eq!(q.representative_indices, vec![0, 1, 2]);
        assert_eq!(q.projection, SparseMatrix::identity(3));

        let q = quotient_data(&[v(&[1, 0]), v(&[0, 1])], 2);
        assert!(q.representatives.is_empty());
        assert_eq!(q.projection.rows(), 0);

        let q = quotient_data(&[v(&[1, 1])], 2);
        assert_eq!(q.representatives.len(), 1);
        assert_eq!(rank(&q.projection), 1);
        assert!(q.projection.mul_vec(&v(&[1, 1])).is_zero());
    }

    #[test]
    fn scalar_text_round_trip() {
        for s in ["0", "5", "-3", "7/2", "-1/3"] {
            assert_eq!(format_scalar(&parse_scalar(s).unwrap()), s);
        }
        assert_eq!(parse_scalar("4/6"), Some(ratio(2, 3)));
        assert_eq!(parse_scalar("1/0"), None);
        assert_eq!(parse_scalar("0.5"), None);
    }

    #[test]
    fn matrix_rejects_bad_entries() {
        assert!(matches!(
            SparseMatrix::new(1, 1, vec![(1, 0, int(1))]),
            Err(LinalgError::OutOfRange { .. })
        ));
        assert_eq!(
            SparseMatrix::new(2, 2, vec![(0, 0, int(1)), (0, 0, int(2))]),
            Err(LinalgError::DuplicateEntry(0, 0))
        );
    }

    fn small_matrix() -> impl Strategy<Value = SparseMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..4, r * c).prop_map(move |xs| {
                let rows: Vec<Vec<Scalar>> = xs.chunks(c).map(|ch| ch.iter().map(|&x| int(x)).collect()).collect();
                SparseMatrix::from_dense(&rows)
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(a in small_matrix()) {
            let once = rref(&a);
            let twice = rref(&once.matrix);
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn rank_nullity(a in small_matrix()) {
            let k = kernel_basis(&a);
            prop_assert_eq!(rank(&a) + k.len(), a.cols());
            for v in &k {
                prop_assert!(a.mul_vec(v).is_zero());
            }
        }

        #[test]
        fn solve_recovers_image(a in small_matrix(), seed in prop::collection::vec(-3i64..4, 6)) {
            let x: SparseVec = seed.iter().take(a.cols()).enumerate().map(|(i, &s)| (i, int(s))).collect();
            let b = a.mul_vec(&x);
            let y = solve(&a, &b).unwrap();
            prop_assert_eq!(a.mul_vec(&y), b);
        }

        #[test]
        fn quotient_projection_kills_subspace(a in small_matrix()) {
            let vectors: Vec<SparseVec> = (0..a.rows()).map(|r| a.row(r)).collect();
            let q = quotient_data(&vectors, a.cols());
            for v in &vectors {
                prop_assert!(q.projection.mul_vec(v).is_zero());
            }
            let restricted = SparseMatrix::from_columns(q.projection.rows(), &q.representatives.iter().map(|r| q.projection.mul_vec(r)).collect::<Vec<_>>());
            prop_assert_eq!(restricted, SparseMatrix::identity(q.representatives.len()));
        }
    }
}
