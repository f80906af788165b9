//! Koszul-signed tensor products of CDGAs.

use std::collections::HashMap;

use crate::algebra::{koszul, AlgebraOptions, DgAlgebra, GradedBasis};
use crate::linalg::{sign, SparseVec};

/// `A ⊗ B` with `(a⊗b)(a'⊗b') = (-1)^{|a'||b|} aa' ⊗ bb'` and
/// `d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db`.
#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    pub left: DgAlgebra,
    pub right: DgAlgebra,
    pub algebra: DgAlgebra,
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl TensorAlgebra {
    /// Index of `a_i ⊗ b_j` in the product basis.
    pub fn index(&self, i: usize, j: usize) -> usize {
        self.index[&(i, j)]
    }

    /// Factor indices of the `k`-th product basis element.
    pub fn pair(&self, k: usize) -> (usize, usize) {
        self.pairs[k]
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// `x ⊗ y` for vectors of the two factors.
    pub fn tensor(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_at(self.index(i, j), &(a * b));
            }
        }
        out
    }

    /// `x ⊗ 1`
    pub fn left_inclusion(&self, x: &SparseVec) -> SparseVec {
        self.tensor(x, &SparseVec::unit(self.right.unit()))
    }

    /// `1 ⊗ y`
    pub fn right_inclusion(&self, y: &SparseVec) -> SparseVec {
        self.tensor(&SparseVec::unit(self.left.unit()), y)
    }
}

pub fn tensor(a: &DgAlgebra, b: &DgAlgebra) -> TensorAlgebra {
    tensor_labeled(a, b, |i, j| format!("{}⊗{}", a.label(i), b.label(j)))
}

/// Tensor product with caller-chosen labels for `a_i ⊗ b_j`.
pub fn tensor_labeled(
    a: &DgAlgebra,
    b: &DgAlgebra,
    label: impl Fn(usize, usize) -> String,
) -> TensorAlgebra {
    let mut pairs: Vec<(usize, usize)> = (0..a.dim())
        .flat_map(|i| (0..b.dim()).map(move |j| (i, j)))
        .collect();
    pairs.sort_by_key(|&(i, j)| a.degree(i) + b.degree(j));
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let basis = GradedBasis::new(
        pairs
            .iter()
            .map(|&(i, j)| (label(i, j), a.degree(i) + b.degree(j)))
            .collect::<Vec<_>>(),
    )
    .expect("tensor labels must be distinct");

    let n = pairs.len();
    let mut products = Vec::new();
    for k in 0..n {
        let (i, j) = pairs[k];
        for l in k..n {
            let (i2, j2) = pairs[l];
            let left = a.basis_product(i, i2);
            if left.is_zero() {
                continue;
            }
            let right = b.basis_product(j, j2);
            if right.is_zero() {
                continue;
            }
            let s = sign(koszul(a.degree(i2), b.degree(j)));
            let mut v = SparseVec::new();
            for (p, x) in left.iter() {
                for (q, y) in right.iter() {
                    v.add_at(index[&(p, q)], &(x * y * &s));
                }
            }
            if !v.is_zero() {
                products.push((k, l, v));
            }
        }
    }
    let diff: Vec<(usize, SparseVec)> = pairs
        .iter()
        .enumerate()
        .map(|(k, &(i, j))| {
            let mut v = SparseVec::new();
            for (p, x) in a.d_basis(i).iter() {
                v.add_at(index[&(p, j)], x);
            }
            let s = sign(a.degree(i) % 2 == 1);
            for (q, y) in b.d_basis(j).iter() {
                v.add_at(index[&(i, q)], &(y * &s));
            }
            (k, v)
        })
        .collect();
    let unit = index[&(a.unit(), b.unit())];
    let algebra = DgAlgebra::new(
        format!("{}⊗{}", a.name(), b.name()),
        basis,
        unit,
        products,
        diff,
        AlgebraOptions {
            top_degree: None,
            simply_connected: a.is_simply_connected() && b.is_simply_connected(),
        },
    )
    .expect("tensor product of valid algebras is valid");
    TensorAlgebra {
        left: a.clone(),
        right: b.clone(),
        algebra,
        pairs,
        index,
    }
}
