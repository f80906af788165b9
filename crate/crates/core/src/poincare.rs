//! Poincaré duality CDGAs: orientation, dual basis, diagonal class and the
//! shriek map.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{koszul, DgAlgebra};
use crate::linalg::{kernel_basis, sign, solve, Scalar, SparseMatrix, SparseVec};
use crate::module::{DgModule, ModuleMap, ModuleViolation};
use crate::tensor::{tensor, TensorAlgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PdFailure {
    #[error("pairing A^{degree} x A^(n-{degree}) is degenerate: {witness} pairs to zero with everything")]
    DegenerateAt { degree: usize, witness: String },
    #[error("orientation does not vanish on d({witness})")]
    OrientationNotClosed { witness: String },
    #[error("{label} lies above the formal dimension {n}")]
    AboveFormalDimension { label: String, n: usize },
    #[error("orientation is supported on {label}, which is not of top degree")]
    OrientationOffTop { label: String },
}

/// A CDGA with an orientation `ε: A^n -> Q` satisfying Poincaré duality.
#[derive(Clone, Debug)]
pub struct PdAlgebra {
    pub algebra: DgAlgebra,
    pub n: usize,
    /// `ε`, as coefficients on basis elements of degree `n`.
    pub epsilon: SparseVec,
    /// `ω` with `ε(ω) = 1`.
    pub omega: SparseVec,
    dual: Vec<SparseVec>,
    square: TensorAlgebra,
}

fn epsilon_of(eps: &SparseVec, v: &SparseVec) -> Scalar {
    eps.dot(v)
}

/// Pairing matrix with rows `A^k` and columns `A^{n-k}`.
fn pairing(a: &DgAlgebra, eps: &SparseVec, k: usize, n: usize) -> (Vec<usize>, Vec<usize>, SparseMatrix) {
    let rows = a.basis().in_degree(k);
    let cols = a.basis().in_degree(n - k);
    let dense: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| epsilon_of(eps, &a.basis_product(i, j))).collect())
        .collect();
    let m = if rows.is_empty() {
        SparseMatrix::zero(0, cols.len())
    } else {
        SparseMatrix::from_dense(&dense)
    };
    (rows, cols, m)
}

/// Every Poincaré duality failure, in increasing degree.
pub fn pd_diagnostics(a: &DgAlgebra, n: usize, epsilon: &SparseVec) -> Vec<PdFailure> {
    let mut out = Vec::new();
    for i in 0..a.dim() {
        if a.degree(i) > n {
            out.push(PdFailure::AboveFormalDimension {
                label: a.label(i).to_string(),
                n,
            });
        }
    }
    for i in epsilon.indices() {
        if i >= a.dim() || a.degree(i) != n {
            out.push(PdFailure::OrientationOffTop {
                label: if i < a.dim() { a.label(i).to_string() } else { format!("#{i}") },
            });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let below_top = if n == 0 { Vec::new() } else { a.basis().in_degree(n - 1) };
    for i in below_top {
        if !epsilon_of(epsilon, a.d_basis(i)).is_zero() {
            out.push(PdFailure::OrientationNotClosed {
                witness: a.label(i).to_string(),
            });
        }
    }
    for k in 0..=n {
        let (rows, _, p) = pairing(a, epsilon, k, n);
        // a = Σ c_i a_i with ε(a·b) = 0 for all b: c in ker(P^T).
        let kernel = kernel_basis(&p.transpose());
        if let Some(c) = kernel.first() {
            let v = c.reindex(|p| rows[p]);
            out.push(PdFailure::DegenerateAt {
                degree: k,
                witness: a.format(&v),
            });
        }
    }
    out
}

/// Verifies both duality axioms and builds the dual basis and `A ⊗ A`.
/// Returns the failure that comes first: structural problems, then a
/// non-closed orientation, then degeneracy in increasing degree.
pub fn check_pd(a: &DgAlgebra, n: usize, epsilon: &SparseVec) -> Result<PdAlgebra, PdFailure> {
    if let Some(f) = pd_diagnostics(a, n, epsilon).into_iter().next() {
        return Err(f);
    }
    let top = a.basis().in_degree(n);
    let (w, e) = top
        .iter()
        .map(|&i| (i, epsilon.get(i)))
        .find(|(_, e)| !e.is_zero())
        .expect("non-degenerate pairing in degree 0 forces ε ≠ 0");
    let omega = SparseVec::unit(w).scaled(&(Scalar::one() / e));

    let mut dual = vec![SparseVec::new(); a.dim()];
    for k in 0..=n {
        let (rows, cols, p) = pairing(a, epsilon, k, n);
        for (pos, &i) in rows.iter().enumerate() {
            let c = solve(&p, &SparseVec::unit(pos)).expect("pairing is invertible");
            dual[i] = c.reindex(|q| cols[q]);
        }
    }
    Ok(PdAlgebra {
        square: tensor(a, a),
        algebra: a.clone(),
        n,
        epsilon: epsilon.clone(),
        omega,
        dual,
    })
}

impl PdAlgebra {
    pub fn epsilon(&self, v: &SparseVec) -> Scalar {
        epsilon_of(&self.epsilon, v)
    }

    /// `a_i*` for every basis element `a_i`.
    pub fn dual_basis(&self) -> &[SparseVec] {
        &self.dual
    }

    /// `A ⊗ A`.
    pub fn square(&self) -> &TensorAlgebra {
        &self.square
    }

    /// `Δ = Σ (-1)^{|a_i|} a_i ⊗ a_i*` in `A ⊗ A`.
    pub fn diagonal(&self) -> SparseVec {
        let a = &self.algebra;
        let mut out = SparseVec::new();
        for i in 0..a.dim() {
            let s = sign(a.degree(i) % 2 == 1);
            out.add_scaled(&self.square.tensor(&SparseVec::unit(i), &self.dual[i]), &s);
        }
        out
    }

    /// `s^{-n}A` as an `A⊗A`-module: `A` restricted along the multiplication
    /// `A⊗A -> A`, then suspended.
    pub fn desuspended_module(&self) -> DgModule {
        let a = &self.algebra;
        let mu: Vec<SparseVec> = self
            .square
            .pairs()
            .iter()
            .map(|&(i, j)| a.basis_product(i, j))
            .collect();
        DgModule::regular(a)
            .restrict(&self.square.algebra, &mu)
            .suspend(-(self.n as i64), |l| l.to_string())
            .expect("negative suspension cannot lower degrees")
    }

    /// `Δ^!(s^{-n}a) = Δ·(1⊗a)`, checked to be a module map.
    pub fn shriek_map(&self) -> Result<ModuleMap, ModuleViolation> {
        let delta = self.diagonal();
        let aa = &self.square;
        let images = (0..self.algebra.dim())
            .map(|i| aa.algebra.mul(&delta, &aa.right_inclusion(&SparseVec::unit(i))))
            .collect();
        ModuleMap::new(self.desuspended_module(), DgModule::regular(&aa.algebra), images)
    }

    /// `τ(a⊗b) = (-1)^{|a||b|} b⊗a` on `A ⊗ A`.
    pub fn twist(&self, v: &SparseVec) -> SparseVec {
        let a = &self.algebra;
        let mut out = SparseVec::new();
        for (k, c) in v.iter() {
            let (i, j) = self.square.pair(k);
            let s = sign(koszul(a.degree(i), a.degree(j)));
            out.add_at(self.square.index(j, i), &(c * &s));
        }
        out
    }

    /// Matrix of `a ↦ (a⊗1)·Δ`, one column per basis element.
    pub fn diagonal_multiplication(&self) -> SparseMatrix {
        let delta = self.diagonal();
        let aa = &self.square;
        let cols: Vec<SparseVec> = (0..self.algebra.dim())
            .map(|i| aa.algebra.mul(&aa.left_inclusion(&SparseVec::unit(i)), &delta))
            .collect();
        SparseMatrix::from_columns(aa.algebra.dim(), &cols)
    }

    /// `ε(a_i · a_j*)` for all `i, j`.
    pub fn duality_table(&self) -> Vec<Vec<Scalar>> {
        let a = &self.algebra;
        (0..a.dim())
            .map(|i| {
                (0..a.dim())
                    .map(|j| self.epsilon(&a.mul(&SparseVec::unit(i), &self.dual[j])))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::tests::s2xs3;
    use crate::algebra::{AlgebraOptions, GradedBasis};
    use crate::linalg::{int, rank};

    pub fn sphere(k: usize) -> PdAlgebra {
        let label = if k % 2 == 0 { "x" } else { "y" };
        let a = DgAlgebra::new(
            format!("s{k}"),
            GradedBasis::new(vec![("1", 0), (label, k)]).unwrap(),
            0,
            vec![],
            vec![],
            AlgebraOptions {
                top_degree: Some(k),
                simply_connected: k >= 2,
            },
        )
        .unwrap();
        check_pd(&a, k, &SparseVec::unit(1)).unwrap()
    }

    pub fn pd_s2xs3() -> PdAlgebra {
        check_pd(&s2xs3(), 5, &SparseVec::unit(3)).unwrap()
    }

    #[test]
    fn dual_basis_oracles() {
        let pd = pd_s2xs3();
        let d = pd.dual_basis();
        assert_eq!(d[0], SparseVec::unit(3));
        assert_eq!(d[1], SparseVec::unit(2));
        assert_eq!(d[2], SparseVec::unit(1));
        assert_eq!(d[3], SparseVec::unit(0));
        for (i, row) in pd.duality_table().iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(*e, if i == j { int(1) } else { int(0) });
            }
        }
        let s2 = sphere(2);
        assert_eq!(s2.dual_basis(), &[SparseVec::unit(1), SparseVec::unit(0)]);
    }

    #[test]
    fn diagonal_strings() {
        let pd = pd_s2xs3();
        assert_eq!(
            pd.square().algebra.format(&pd.diagonal()),
            "1⊗xy + x⊗y - y⊗x - xy⊗1"
        );
        let s3 = sphere(3);
        assert_eq!(s3.square().algebra.format(&s3.diagonal()), "1⊗y - y⊗1");
        let s2 = sphere(2);
        assert_eq!(s2.square().algebra.format(&s2.diagonal()), "1⊗x + x⊗1");
    }

    #[test]
    fn shriek_values() {
        let pd = pd_s2xs3();
        let f = pd.shriek_map().unwrap();
        let aa = &pd.square().algebra;
        assert_eq!(f.images[0], pd.diagonal());
        assert_eq!(aa.format(&f.images[1]), "x⊗xy - xy⊗x");
        assert_eq!(aa.format(&f.images[2]), "-y⊗xy - xy⊗y");
        assert_eq!(aa.format(&f.images[3]), "-xy⊗xy");
        assert!(f.source.check().is_ok());
    }

    #[test]
    fn diagonal_properties() {
        for pd in [sphere(2), sphere(3), sphere(4), pd_s2xs3()] {
            let aa = &pd.square().algebra;
            let delta = pd.diagonal();
            assert!(aa.d(&delta).is_zero());
            assert_eq!(pd.twist(&delta), delta.scaled(&sign(pd.n % 2 == 1)));
            assert_eq!(rank(&pd.diagonal_multiplication()), pd.algebra.dim());
        }
    }

    #[test]
    fn degenerate_truncation() {
        // drop xy from S^2 x S^3
        let a = DgAlgebra::new(
            "trunc",
            GradedBasis::new(vec![("1", 0), ("x", 2), ("y", 3)]).unwrap(),
            0,
            vec![],
            vec![],
            AlgebraOptions::default(),
        )
        .unwrap();
        let diags = pd_diagnostics(&a, 5, &SparseVec::new());
        assert!(diags.contains(&PdFailure::DegenerateAt {
            degree: 2,
            witness: "x".into()
        }));
        assert!(matches!(check_pd(&a, 5, &SparseVec::new()), Err(PdFailure::DegenerateAt { degree: 0, .. })));
    }

    #[test]
    fn orientation_not_closed() {
        let a = DgAlgebra::new(
            "bad",
            GradedBasis::new(vec![("1", 0), ("e", 1), ("x", 2)]).unwrap(),
            0,
            vec![],
            vec![(1, SparseVec::unit(2))],
            AlgebraOptions::default(),
        )
        .unwrap();
        assert_eq!(
            check_pd(&a, 2, &SparseVec::unit(2)).unwrap_err(),
            PdFailure::OrientationNotClosed { witness: "e".into() }
        );
    }

    #[test]
    fn top_degree_identity() {
        // (a⊗1)Δ = a⊗ω + ω⊗a for a of degree n-2
        let pd = pd_s2xs3();
        let aa = pd.square();
        let y = SparseVec::unit(2);
        let lhs = aa.algebra.mul(&aa.left_inclusion(&y), &pd.diagonal());
        let rhs = &aa.tensor(&y, &pd.omega) + &aa.tensor(&pd.omega, &y);
        assert_eq!(lhs, rhs);
    }
}
