//! Products of Poincaré duality algebras and the diagonal correspondence
//! `C⊗C⊗B⊗B ≅ (C⊗B)⊗(C⊗B)`.

use std::collections::HashSet;

use thiserror::Error;

use crate::algebra::{check_cdga_map, koszul, AlgebraOptions, DgAlgebra, GradedBasis};
use crate::cohomology::{cohomology, same_betti, ComplexError};
use crate::linalg::{sign, SparseVec};
use crate::poincare::{check_pd, PdAlgebra, PdFailure};
use crate::quotient::{ideal_generated, quotient_algebra, QuotientError};
use crate::tensor::{tensor, TensorAlgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error(transparent)]
    Pd(#[from] PdFailure),
    #[error("σ(Δ_C⊗Δ_B) = {image} is not ±Δ_A = {delta}")]
    CorrespondenceFailure { image: String, delta: String },
    #[error("σ is not multiplicative on ({})", .0.join(", "))]
    NotMultiplicative(Vec<String>),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Labels for `c ⊗ b`: the unit is dropped and the rest concatenated, so
/// `x⊗y` becomes `xy`. Right-hand labels get a prime when the factors share
/// labels. Falls back to `c⊗b` if that still collides.
fn product_labels(c: &DgAlgebra, b: &DgAlgebra, t: &TensorAlgebra) -> Vec<String> {
    let left: HashSet<&str> = (0..c.dim()).filter(|&i| i != c.unit()).map(|i| c.label(i)).collect();
    let clash = (0..b.dim()).any(|j| j != b.unit() && left.contains(b.label(j)));
    let right = |j: usize| {
        if clash {
            format!("{}'", b.label(j))
        } else {
            b.label(j).to_string()
        }
    };
    let short: Vec<String> = t
        .pairs()
        .iter()
        .map(|&(i, j)| match (i == c.unit(), j == b.unit()) {
            (true, true) => "1".to_string(),
            (true, false) => right(j),
            (false, true) => c.label(i).to_string(),
            (false, false) => format!("{}{}", c.label(i), right(j)),
        })
        .collect();
    if short.iter().collect::<HashSet<_>>().len() == short.len() {
        short
    } else {
        t.pairs()
            .iter()
            .map(|&(i, j)| format!("{}⊗{}", c.label(i), b.label(j)))
            .collect()
    }
}

/// `C ⊗ B` as a Poincaré duality algebra with `ε(c⊗b) = ε_C(c) ε_B(b)`,
/// along with the tensor indexing.
pub fn product_with_tensor(c: &PdAlgebra, b: &PdAlgebra) -> Result<(PdAlgebra, TensorAlgebra), PdFailure> {
    let t = tensor(&c.algebra, &b.algebra);
    let labels = product_labels(&c.algebra, &b.algebra, &t);
    let ta = &t.algebra;
    let basis = GradedBasis::new(labels.into_iter().zip(ta.basis().degrees().iter().copied()).collect::<Vec<_>>())
        .expect("product labels are distinct");
    let products = ta.stored_products().into_iter().map(|(i, j, v)| (i, j, v.clone()));
    let diff = (0..ta.dim()).map(|k| (k, ta.d_basis(k).clone()));
    let name = format!("{}x{}", c.algebra.name(), b.algebra.name());
    let algebra = DgAlgebra::new(
        name,
        basis,
        ta.unit(),
        products,
        diff,
        AlgebraOptions {
            top_degree: Some(c.n + b.n),
            simply_connected: c.algebra.is_simply_connected() && b.algebra.is_simply_connected(),
        },
    )
    .expect("relabeled tensor product is valid");
    let mut epsilon = SparseVec::new();
    for (i, x) in c.epsilon.iter() {
        for (j, y) in b.epsilon.iter() {
            epsilon.add_at(t.index(i, j), &(x * y));
        }
    }
    let pd = check_pd(&algebra, c.n + b.n, &epsilon)?;
    Ok((pd, t))
}

pub fn product_pd(c: &PdAlgebra, b: &PdAlgebra) -> Result<PdAlgebra, PdFailure> {
    Ok(product_with_tensor(c, b)?.0)
}

/// Betti numbers of `R/(g)`; empty when the ideal is everything.
fn quotient_betti(r: &DgAlgebra, g: &SparseVec) -> Result<Vec<usize>, ProductError> {
    match quotient_algebra(r, &ideal_generated(r, std::slice::from_ref(g)), "R/(g)") {
        Ok(q) => Ok(cohomology(&q.algebra.complex())?.betti()),
        Err(QuotientError::ContainsUnit) => Ok(Vec::new()),
        Err(e) => Err(e.into()),
    }
}

/// Outcome of comparing `σ(Δ_C ⊗ Δ_B)` with `Δ_{C⊗B}`.
#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub product: PdAlgebra,
    /// `σ(Δ_C⊗Δ_B) = sign · Δ_A`.
    pub sign: i8,
    pub image: String,
    pub delta: String,
    /// `(c⊗b)* = (-1)^{|c*||b|} c*⊗b*` for every basis pair.
    pub dual_sign_rule: bool,
    pub betti_factors: Vec<usize>,
    pub betti_product: Vec<usize>,
    pub betti_agree: bool,
}

/// Builds the shuffle `σ((c1⊗c2)⊗(b1⊗b2)) = (-1)^{|c2||b1|} (c1⊗b1)⊗(c2⊗b2)`,
/// checks it is a CDGA isomorphism, and compares diagonals and the
/// cohomology of the two untwisted quotients.
pub fn diagonal_correspondence(c: &PdAlgebra, b: &PdAlgebra) -> Result<CorrespondenceReport, ProductError> {
    let (pd, cb) = product_with_tensor(c, b)?;
    let (cc, bb) = (c.square(), b.square());
    let big = tensor(&cc.algebra, &bb.algebra);
    let aa = pd.square();
    let deg_c = |i: usize| c.algebra.degree(i);
    let deg_b = |j: usize| b.algebra.degree(j);
    let sigma: Vec<SparseVec> = big
        .pairs()
        .iter()
        .map(|&(k, l)| {
            let (c1, c2) = cc.pair(k);
            let (b1, b2) = bb.pair(l);
            let target = aa.index(cb.index(c1, b1), cb.index(c2, b2));
            SparseVec::unit(target).scaled(&sign(koszul(deg_c(c2), deg_b(b1))))
        })
        .collect();
    if let Err(w) = check_cdga_map(&big.algebra, &aa.algebra, &sigma) {
        return Err(ProductError::NotMultiplicative(w.labels));
    }
    let apply = |v: &SparseVec| {
        let mut out = SparseVec::new();
        for (k, x) in v.iter() {
            out.add_scaled(&sigma[k], x);
        }
        out
    };
    let source_delta = big.tensor(&c.diagonal(), &b.diagonal());
    let image = apply(&source_delta);
    let delta = pd.diagonal();
    let sign_found = if image == delta {
        1
    } else if image == -&delta {
        -1
    } else {
        return Err(ProductError::CorrespondenceFailure {
            image: aa.algebra.format(&image),
            delta: aa.algebra.format(&delta),
        });
    };

    let mut dual_sign_rule = true;
    for i in 0..c.algebra.dim() {
        for j in 0..b.algebra.dim() {
            let cs = &c.dual_basis()[i];
            let expected = cb.tensor(cs, &b.dual_basis()[j]);
            let s = cs
                .indices()
                .next()
                .map_or(false, |k| koszul(deg_c(k), deg_b(j)));
            if pd.dual_basis()[cb.index(i, j)] != expected.scaled(&sign(s)) {
                dual_sign_rule = false;
            }
        }
    }

    let betti_factors = quotient_betti(&big.algebra, &source_delta)?;
    let betti_product = quotient_betti(&aa.algebra, &delta)?;
    Ok(CorrespondenceReport {
        sign: sign_found,
        image: aa.algebra.format(&image),
        delta: aa.algebra.format(&delta),
        dual_sign_rule,
        betti_agree: same_betti(&betti_factors, &betti_product),
        betti_factors,
        betti_product,
        product: pd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::s2xs3;
    use crate::poincare::tests::sphere;

    fn point() -> PdAlgebra {
        let a = DgAlgebra::new(
            "point",
            GradedBasis::new(vec![("1", 0)]).unwrap(),
            0,
            vec![],
            vec![],
            AlgebraOptions::default(),
        )
        .unwrap();
        check_pd(&a, 0, &SparseVec::unit(0)).unwrap()
    }

    #[test]
    fn s2_times_s3_is_preset() {
        let p = product_pd(&sphere(2), &sphere(3)).unwrap();
        assert_eq!(p.n, 5);
        assert_eq!(p.algebra.basis().labels(), &["1", "x", "y", "xy"]);
        assert!(p.algebra.isomorphic_by_labels(&s2xs3(), &|l| l.to_string()));
    }

    #[test]
    fn point_is_neutral() {
        let s2 = sphere(2);
        let p = product_pd(&s2, &point()).unwrap();
        assert!(p.algebra.isomorphic_by_labels(&s2.algebra, &|l| l.to_string()));
        assert_eq!(p.n, 2);
    }

    #[test]
    fn s3_times_s3_primes() {
        let p = product_pd(&sphere(3), &sphere(3)).unwrap();
        assert_eq!(p.algebra.basis().labels(), &["1", "y'", "y", "yy'"]);
    }

    #[test]
    fn correspondence_sign_and_betti() {
        let r = diagonal_correspondence(&sphere(2), &sphere(3)).unwrap();
        assert_eq!(r.sign, 1);
        assert!(r.dual_sign_rule);
        assert!(r.betti_agree);
        let r = diagonal_correspondence(&sphere(3), &sphere(3)).unwrap();
        assert!(r.betti_agree);
        assert!(r.dual_sign_rule);
        // F(point, 2) is empty: both quotients vanish
        let r = diagonal_correspondence(&point(), &point()).unwrap();
        assert_eq!(r.sign, 1);
        assert!(r.betti_factors.is_empty() && r.betti_agree);
    }
}
