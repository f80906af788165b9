//! Odd-dimensional models: the truncated cone `C`, the twisted algebras
//! `C(ξ)` and `C(x)`, the untwisted quotient `A⊗A/(Δ)`, the map `Φ` and the
//! equivalence ideal.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{check_cdga, check_cdga_map, koszul, AlgebraError, Axiom, DgAlgebra, Witness};
use crate::cohomology::{cohomology, same_betti, ComplexError};
use crate::cone::{cone_model, top_generators, ConeError, MappingCone};
use crate::linalg::{int, kernel_basis, quotient_data, sign, solve, SparseMatrix, SparseVec, Subspace};
use crate::poincare::PdAlgebra;
use crate::quotient::{check_differential_ideal, ideal_generated, is_acyclic, quotient_algebra, QuotientAlgebra, QuotientError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistedError {
    #[error("n = {0} is even, so (S1)^2 is forced to vanish; ξ must be 0")]
    EvenDimensionNonzeroXi(usize),
    #[error("element must be homogeneous of degree {expected}")]
    WrongDegree { expected: usize },
    #[error("element is not a cocycle")]
    NotACocycle,
    #[error("requires odd formal dimension, got {0}")]
    EvenDimension(usize),
    #[error("requires a simply connected algebra")]
    NotSimplyConnected,
    #[error("Φ is not injective: Φ({0}) = 0")]
    NotInjective(String),
    #[error("Φ is not surjective: {0} is not hit")]
    NotSurjective(String),
    #[error("subspace is not acyclic")]
    NotAcyclic,
    #[error("projection changes cohomology: {before:?} vs {after:?}")]
    BettiMismatch { before: Vec<usize>, after: Vec<usize> },
    #[error("{axiom} fails on ({})", witness.labels.join(", "))]
    Axiom { axiom: Axiom, witness: Witness },
    #[error("quotients by the equivalence ideal differ")]
    QuotientsDiffer,
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Cocycles of `a` in degree `k`, as vectors in `a`.
pub fn cocycles(a: &DgAlgebra, k: usize) -> Vec<SparseVec> {
    let here = a.basis().in_degree(k);
    let next = a.basis().in_degree(k + 1);
    let mut pos = vec![usize::MAX; a.dim()];
    for (p, &i) in next.iter().enumerate() {
        pos[i] = p;
    }
    let cols: Vec<SparseVec> = here.iter().map(|&i| a.d_basis(i).reindex(|j| pos[j])).collect();
    kernel_basis(&SparseMatrix::from_columns(next.len(), &cols))
        .into_iter()
        .map(|v| v.reindex(|p| here[p]))
        .collect()
}

fn check_degree(a: &DgAlgebra, v: &SparseVec, k: usize) -> Result<(), TwistedError> {
    if v.is_zero() || a.basis().is_homogeneous_of(v, k) {
        Ok(())
    } else {
        Err(TwistedError::WrongDegree { expected: k })
    }
}

fn require_odd(pd: &PdAlgebra) -> Result<(), TwistedError> {
    if pd.n % 2 == 0 {
        Err(TwistedError::EvenDimension(pd.n))
    } else {
        Ok(())
    }
}

fn require_simply_connected(pd: &PdAlgebra) -> Result<(), TwistedError> {
    let dims = pd.algebra.basis().dims();
    if dims.first() == Some(&1) && dims.get(1).copied().unwrap_or(0) == 0 {
        Ok(())
    } else {
        Err(TwistedError::NotSimplyConnected)
    }
}

fn axiom_error(a: &DgAlgebra) -> Result<(), TwistedError> {
    match check_cdga(a).first_failure() {
        Some((axiom, w)) => Err(TwistedError::Axiom {
            axiom,
            witness: w.clone(),
        }),
        None => Ok(()),
    }
}

/// `C = C(Δ^!)/⟨ω⊗ω, ss^{-n}ω⟩` with the semi-trivial product.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub cone: MappingCone,
    pub subspace: Subspace,
    pub quotient: QuotientAlgebra,
}

impl Truncation {
    /// Index in `C` of a cone basis element that survives the quotient.
    pub fn position(&self, cone_index: usize) -> Option<usize> {
        self.quotient.representatives.iter().position(|&r| r == cone_index)
    }

    /// `A⊗A -> C`.
    pub fn inclusion(&self) -> Vec<SparseVec> {
        self.cone.inclusion().iter().map(|v| self.quotient.project(v)).collect()
    }
}

/// Quotients the cone by its top part, checking that the part is an acyclic
/// sub-dg-module and that the projection preserves Betti numbers.
pub fn truncate_cone(pd: &PdAlgebra, cone: MappingCone) -> Result<Truncation, TwistedError> {
    let subspace = ideal_generated(&cone.algebra, &top_generators(pd, &cone));
    check_differential_ideal(&cone.algebra, &subspace)?;
    if !is_acyclic(&cone.algebra, &subspace)? {
        return Err(TwistedError::NotAcyclic);
    }
    let quotient = quotient_algebra(&cone.algebra, &subspace, format!("C({})", pd.algebra.name()))?;
    let before = cohomology(&cone.algebra.complex())?.betti();
    let after = cohomology(&quotient.algebra.complex())?.betti();
    if !same_betti(&before, &after) {
        return Err(TwistedError::BettiMismatch { before, after });
    }
    Ok(Truncation {
        cone,
        subspace,
        quotient,
    })
}

/// `C(ξ)`: the truncated cone with `S1·S1 = ξ`.
#[derive(Clone, Debug)]
pub struct TwistedModel {
    pub algebra: DgAlgebra,
    pub xi: SparseVec,
    pub truncation: Truncation,
    /// Index of `S1` in `algebra`.
    pub s1: usize,
    /// Images of the basis of `A⊗A`.
    pub inclusion: Vec<SparseVec>,
}

/// Builds `C(ξ)` for `ξ ∈ (A⊗A)^{2n-2}` and verifies it is a CDGA receiving a
/// CDGA map from `A⊗A`.
pub fn build_cxi(pd: &PdAlgebra, xi: &SparseVec) -> Result<TwistedModel, TwistedError> {
    let aa = &pd.square().algebra;
    if pd.n % 2 == 0 && !xi.is_zero() {
        return Err(TwistedError::EvenDimensionNonzeroXi(pd.n));
    }
    check_degree(aa, xi, 2 * pd.n.max(1) - 2)?;
    let cone = cone_model(pd)?;
    let truncation = truncate_cone(pd, cone)?;
    let q = &truncation.quotient;
    let s1_cone = truncation.cone.shifted_index(pd.algebra.unit());
    let s1 = truncation.position(s1_cone).expect("S1 survives truncation");
    let square = q.project(&truncation.cone.include_target(xi));
    let mut products: Vec<(usize, usize, SparseVec)> = q
        .algebra
        .stored_products()
        .into_iter()
        .filter(|&(i, j, _)| (i, j) != (s1, s1))
        .map(|(i, j, v)| (i, j, v.clone()))
        .collect();
    products.push((s1, s1, square));
    let diff: Vec<(usize, SparseVec)> = (0..q.algebra.dim()).map(|i| (i, q.algebra.d_basis(i).clone())).collect();
    let algebra = DgAlgebra::new(
        format!("C({})[ξ]", pd.algebra.name()),
        q.algebra.basis().clone(),
        q.algebra.unit(),
        products,
        diff,
        Default::default(),
    )?;
    axiom_error(&algebra)?;
    let inclusion = truncation.inclusion();
    if let Err(w) = check_cdga_map(aa, &algebra, &inclusion) {
        return Err(TwistedError::Axiom {
            axiom: Axiom::Leibniz,
            witness: w,
        });
    }
    Ok(TwistedModel {
        algebra,
        xi: xi.clone(),
        truncation,
        s1,
        inclusion,
    })
}

impl TwistedModel {
    /// Basis pairs where the product `(a⊗b)·Sx'` differs from
    /// `(-1)^{(n-1)(|a|+|b|)+|b||x'|} S(a·x'·b)`, or `Sx·(a'⊗b')` differs from
    /// `(-1)^{|a'||x|} S(a'·x·b')`.
    pub fn product_rule_mismatches(&self, pd: &PdAlgebra) -> Vec<String> {
        let a = &pd.algebra;
        let t = &self.truncation;
        let n = pd.n;
        let mut out = Vec::new();
        let s_of = |v: &SparseVec| t.quotient.project(&t.cone.include_shifted(v));
        for (k, &(i, j)) in pd.square().pairs().iter().enumerate() {
            let ab = t.quotient.project(&SparseVec::unit(t.cone.target_index(k)));
            let Some((p, _)) = ab.iter().next() else { continue };
            for x in 0..a.dim() {
                let sx = s_of(&SparseVec::unit(x));
                if sx.is_zero() {
                    continue;
                }
                let (da, db, dx) = (a.degree(i), a.degree(j), a.degree(x));
                let axb = a.mul(&a.basis_product(i, x), &SparseVec::unit(j));
                let expected = s_of(&axb).scaled(&sign(((n - 1) * (da + db) + db * dx) % 2 == 1));
                let sq = sx.iter().next().unwrap().0;
                if self.algebra.basis_product(p, sq) != expected {
                    out.push(format!("({}⊗{})·S{}", a.label(i), a.label(j), a.label(x)));
                }
                let expected = s_of(&axb).scaled(&sign(koszul(da, dx)));
                if self.algebra.basis_product(sq, p) != expected {
                    out.push(format!("S{}·({}⊗{})", a.label(x), a.label(i), a.label(j)));
                }
            }
        }
        out
    }
}

/// `C(x) = C(x⊗ω)` for a cocycle `x ∈ A^{n-2}`.
pub fn c_of_x(pd: &PdAlgebra, x: &SparseVec) -> Result<TwistedModel, TwistedError> {
    require_odd(pd)?;
    check_degree(&pd.algebra, x, pd.n.saturating_sub(2))?;
    if !pd.algebra.d(x).is_zero() {
        return Err(TwistedError::NotACocycle);
    }
    build_cxi(pd, &pd.square().tensor(x, &pd.omega))
}

/// Deterministic sample of `ξ ∈ (A⊗A)^{2n-2}` with small integer coefficients.
pub fn sample_xi(pd: &PdAlgebra, seed: u64, count: usize) -> Vec<SparseVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let aa = &pd.square().algebra;
    let slots = if pd.n == 0 { Vec::new() } else { aa.basis().in_degree(2 * pd.n - 2) };
    (0..count)
        .map(|_| slots.iter().map(|&k| (k, int(rng.gen_range(-3..=3)))).collect())
        .collect()
}

/// `A⊗A/(Δ)` where `(Δ)` is spanned by all `(a_i⊗a_j)·Δ`.
pub fn quotient_by_diagonal(pd: &PdAlgebra) -> Result<QuotientAlgebra, TwistedError> {
    let aa = &pd.square().algebra;
    let ideal = ideal_generated(aa, &[pd.diagonal()]);
    Ok(quotient_algebra(aa, &ideal, format!("{}⊗{}/(Δ)", pd.algebra.name(), pd.algebra.name()))?)
}

/// Dimensions of `(Δ)` per degree.
pub fn diagonal_ideal_dims(pd: &PdAlgebra) -> Vec<usize> {
    let aa = &pd.square().algebra;
    let ideal = ideal_generated(aa, &[pd.diagonal()]);
    let mut dims = vec![0; aa.basis().max_degree() + 1];
    for v in ideal.basis() {
        if let Some(d) = aa.basis().degree_of(v) {
            dims[d] += 1;
        }
    }
    dims
}

/// `H^k(A⊗A)/([Δ])` presented as cocycles modulo `W = B^k + Z^{k-n}·Δ`.
#[derive(Clone, Debug)]
pub struct ReducedCohomology {
    pub degree: usize,
    pub cocycles: Subspace,
    pub killed: Subspace,
    /// Cocycles whose classes form a basis of the quotient.
    pub representatives: Vec<SparseVec>,
}

impl ReducedCohomology {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of a cocycle in the representative basis.
    pub fn coordinates(&self, v: &SparseVec) -> SparseVec {
        let mut cols: Vec<SparseVec> = self.representatives.clone();
        cols.extend(self.killed.basis().iter().cloned());
        let dim = self.cocycles.ambient_dim();
        let full = solve(&SparseMatrix::from_columns(dim, &cols), v).expect("cocycle lies in the span");
        full.iter().filter(|(i, _)| *i < self.dim()).map(|(i, c)| (i, c.clone())).collect()
    }
}

pub fn reduced_cohomology(pd: &PdAlgebra, k: usize) -> ReducedCohomology {
    let aa = &pd.square().algebra;
    let z = Subspace::span(&cocycles(aa, k), aa.dim());
    let mut killed: Vec<SparseVec> = if k == 0 {
        Vec::new()
    } else {
        aa.basis().in_degree(k - 1).iter().map(|&i| aa.d_basis(i).clone()).collect()
    };
    if k >= pd.n {
        let delta = pd.diagonal();
        killed.extend(cocycles(aa, k - pd.n).iter().map(|m| aa.mul(m, &delta)));
    }
    let killed = Subspace::span(&killed, aa.dim());
    let mut spanned = killed.clone();
    let mut reps = Vec::new();
    for v in z.basis() {
        if !spanned.contains(v) {
            reps.push(v.clone());
            spanned = spanned.extend(std::slice::from_ref(v));
        }
    }
    ReducedCohomology {
        degree: k,
        cocycles: z,
        killed,
        representatives: reps,
    }
}

/// Matrix of `Φ: H^{n-2}(A) -> H^{2n-2}(A⊗A)/([Δ])`, `[a] ↦ [a⊗ω]`.
#[derive(Clone, Debug)]
pub struct PhiData {
    pub source: Vec<SparseVec>,
    pub target: ReducedCohomology,
    pub matrix: SparseMatrix,
}

impl PhiData {
    pub fn is_bijective(&self) -> bool {
        self.matrix.rows() == self.matrix.cols() && crate::linalg::rank(&self.matrix) == self.matrix.cols()
    }

    /// `Φ^{-1}` as a matrix; requires bijectivity.
    pub fn inverse(&self) -> SparseMatrix {
        let n = self.matrix.cols();
        let cols: Vec<SparseVec> = (0..n)
            .map(|i| solve(&self.matrix, &SparseVec::unit(i)).expect("Φ is invertible"))
            .collect();
        SparseMatrix::from_columns(n, &cols)
    }
}

pub fn phi(pd: &PdAlgebra) -> Result<PhiData, TwistedError> {
    require_odd(pd)?;
    require_simply_connected(pd)?;
    let a = &pd.algebra;
    let k = pd.n - 2;
    let h = cohomology(&a.complex())?;
    let source: Vec<SparseVec> = h.in_degree(k).map(|d| d.representatives.clone()).unwrap_or_default();
    let target = reduced_cohomology(pd, 2 * pd.n - 2);
    let cols: Vec<SparseVec> = source
        .iter()
        .map(|x| target.coordinates(&pd.square().tensor(x, &pd.omega)))
        .collect();
    let matrix = SparseMatrix::from_columns(target.dim(), &cols);
    let kernel = kernel_basis(&matrix);
    if let Some(c) = kernel.first() {
        let mut x = SparseVec::new();
        for (i, coef) in c.iter() {
            x.add_scaled(&source[i], coef);
        }
        return Err(TwistedError::NotInjective(a.format(&x)));
    }
    if crate::linalg::rank(&matrix) < target.dim() {
        let missing = (0..target.dim())
            .find(|&i| solve(&matrix, &SparseVec::unit(i)).is_err())
            .expect("rank deficit has a witness");
        return Err(TwistedError::NotSurjective(pd.square().algebra.format(&target.representatives[missing])));
    }
    Ok(PhiData { source, target, matrix })
}

/// `I = S + dS + (Δ)^{>n} + ss^{-n}A^+` inside `C(Δ^!)`.
#[derive(Clone, Debug)]
pub struct EquivalenceIdeal {
    pub cone: MappingCone,
    /// Complement of the cocycles in `(A⊗A)^{2n-3}`, in `A⊗A` coordinates.
    pub s: Vec<SparseVec>,
    pub subspace: Subspace,
}

pub fn equivalence_ideal(pd: &PdAlgebra) -> Result<EquivalenceIdeal, TwistedError> {
    require_odd(pd)?;
    require_simply_connected(pd)?;
    let aa = &pd.square().algebra;
    let cone = cone_model(pd)?;
    let k = 2 * pd.n - 3;
    let slots = aa.basis().in_degree(k);
    let mut pos = vec![usize::MAX; aa.dim()];
    for (p, &i) in slots.iter().enumerate() {
        pos[i] = p;
    }
    let z_local: Vec<SparseVec> = cocycles(aa, k).iter().map(|v| v.reindex(|i| pos[i])).collect();
    let s: Vec<SparseVec> = quotient_data(&z_local, slots.len())
        .representative_indices
        .iter()
        .map(|&p| SparseVec::unit(slots[p]))
        .collect();

    let mut gens: Vec<SparseVec> = Vec::new();
    for v in &s {
        gens.push(cone.include_target(v));
        gens.push(cone.include_target(&aa.d(v)));
    }
    let delta = pd.diagonal();
    for i in 0..aa.dim() {
        if aa.degree(i) > 0 {
            gens.push(cone.include_target(&aa.mul(&SparseVec::unit(i), &delta)));
        }
    }
    for j in 0..pd.algebra.dim() {
        if pd.algebra.degree(j) > 0 {
            gens.push(SparseVec::unit(cone.shifted_index(j)));
        }
    }
    let subspace = Subspace::span(&gens, cone.algebra.dim());
    check_differential_ideal(&cone.algebra, &subspace)?;
    if !is_acyclic(&cone.algebra, &subspace)? {
        return Err(TwistedError::NotAcyclic);
    }
    Ok(EquivalenceIdeal { cone, s, subspace })
}

/// `ξ - ξ' = m·Δ + dβ` together with the comparison of `C(ξ)/I` and `C(ξ')/I`.
#[derive(Clone, Debug)]
pub struct EquivalenceWitness {
    /// `m ∈ (A⊗A)^{n-2}`.
    pub multiplier: SparseVec,
    /// `β ∈ (A⊗A)^{2n-3}`.
    pub primitive: SparseVec,
    /// Dimension of `C(ξ)/I`.
    pub quotient_dim: usize,
}

#[derive(Clone, Debug)]
pub enum XiDecision {
    EquivalentWitness(EquivalenceWitness),
    /// The classes differ; only the converse direction would separate them.
    NotDecidedHere,
}

pub fn decide_xi_equivalence(pd: &PdAlgebra, xi: &SparseVec, xi2: &SparseVec) -> Result<XiDecision, TwistedError> {
    require_odd(pd)?;
    let aa = &pd.square().algebra;
    let k = 2 * pd.n - 2;
    for v in [xi, xi2] {
        check_degree(aa, v, k)?;
        if !aa.d(v).is_zero() {
            return Err(TwistedError::NotACocycle);
        }
    }
    let delta = pd.diagonal();
    // multipliers of the form a⊗1 first, so witnesses read (a⊗1)·Δ when possible
    let mut mults = aa.basis().in_degree(pd.n - 2);
    mults.sort_by_key(|&k| pd.square().pair(k).1 != pd.algebra.unit());
    let prims = aa.basis().in_degree(k - 1);
    let mut cols: Vec<SparseVec> = mults.iter().map(|&i| aa.mul(&SparseVec::unit(i), &delta)).collect();
    cols.extend(prims.iter().map(|&i| aa.d_basis(i).clone()));
    let diff = xi - xi2;
    let Ok(sol) = solve(&SparseMatrix::from_columns(aa.dim(), &cols), &diff) else {
        return Ok(XiDecision::NotDecidedHere);
    };
    let mut multiplier = SparseVec::new();
    let mut primitive = SparseVec::new();
    for (c, v) in sol.iter() {
        if c < mults.len() {
            multiplier.add_at(mults[c], v);
        } else {
            primitive.add_at(prims[c - mults.len()], v);
        }
    }

    let ideal = equivalence_ideal(pd)?;
    let m1 = build_cxi(pd, xi)?;
    let m2 = build_cxi(pd, xi2)?;
    let project = |m: &TwistedModel| -> Vec<SparseVec> {
        ideal
            .subspace
            .basis()
            .iter()
            .map(|v| m.truncation.quotient.project(v))
            .filter(|v| !v.is_zero())
            .collect()
    };
    let i1 = Subspace::span(&project(&m1), m1.algebra.dim());
    let q1 = quotient_algebra(&m1.algebra, &i1, "C(ξ)/I")?;
    let i2 = Subspace::span(&project(&m2), m2.algebra.dim());
    let q2 = quotient_algebra(&m2.algebra, &i2, "C(ξ')/I")?;
    if !q1.algebra.isomorphic_by_labels(&q2.algebra, &|l| l.to_string()) {
        return Err(TwistedError::QuotientsDiffer);
    }
    Ok(XiDecision::EquivalentWitness(EquivalenceWitness {
        multiplier,
        primitive,
        quotient_dim: q1.algebra.dim(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::padded;
    use crate::poincare::tests::{pd_s2xs3, sphere};

    fn el(pd: &PdAlgebra, terms: &[(i64, &str, &str)]) -> SparseVec {
        let a = &pd.algebra;
        terms
            .iter()
            .map(|&(c, l, r)| (pd.square().index(a.index_of(l).unwrap(), a.index_of(r).unwrap()), int(c)))
            .collect()
    }

    #[test]
    fn truncation_sizes() {
        let s3 = sphere(3);
        let t = truncate_cone(&s3, cone_model(&s3).unwrap()).unwrap();
        assert_eq!(t.quotient.algebra.dim(), 4);
        let pd = pd_s2xs3();
        let t = truncate_cone(&pd, cone_model(&pd).unwrap()).unwrap();
        assert_eq!(t.quotient.algebra.dim(), 18);
    }

    #[test]
    fn cqr_family() {
        let pd = pd_s2xs3();
        for (q, r) in [(0, 0), (1, 0), (0, 1), (2, -3)] {
            let xi = el(&pd, &[(q, "y", "xy"), (r, "xy", "y")]);
            let m = build_cxi(&pd, &xi).unwrap();
            assert_eq!(m.algebra.basis_product(m.s1, m.s1), m.truncation.quotient.project(&m.truncation.cone.include_target(&xi)));
            assert!(m.product_rule_mismatches(&pd).is_empty());
        }
    }

    #[test]
    fn even_rejects_nonzero_xi() {
        let s2 = sphere(2);
        let xi = el(&s2, &[(1, "x", "x")]);
        assert_eq!(build_cxi(&s2, &xi).unwrap_err(), TwistedError::EvenDimensionNonzeroXi(2));
    }

    #[test]
    fn untwisted_quotients() {
        let pd = pd_s2xs3();
        assert_eq!(diagonal_ideal_dims(&pd), vec![0, 0, 0, 0, 0, 1, 0, 1, 1, 0, 1]);
        let q = quotient_by_diagonal(&pd).unwrap();
        let b = cohomology(&q.algebra.complex()).unwrap().betti();
        assert_eq!(padded(&b, 11), vec![1, 0, 2, 2, 1, 3, 1, 1, 1, 0, 0]);
        let q = quotient_by_diagonal(&sphere(3)).unwrap();
        assert_eq!(cohomology(&q.algebra.complex()).unwrap().betti(), vec![1, 0, 0, 1]);
        let q = quotient_by_diagonal(&sphere(2)).unwrap();
        assert_eq!(cohomology(&q.algebra.complex()).unwrap().betti(), vec![1, 0, 1]);
    }

    #[test]
    fn phi_on_s2xs3() {
        let pd = pd_s2xs3();
        let p = phi(&pd).unwrap();
        assert!(p.is_bijective());
        assert_eq!(p.source, vec![SparseVec::unit(2)]);
        let y_xy = el(&pd, &[(1, "y", "xy")]);
        assert_eq!(p.target.coordinates(&y_xy), p.matrix.column(0));
        let s3 = sphere(3);
        let p = phi(&s3).unwrap();
        assert_eq!((p.matrix.rows(), p.matrix.cols()), (0, 0));
    }

    #[test]
    fn c_of_x_matches_cqr() {
        let pd = pd_s2xs3();
        let m = c_of_x(&pd, &SparseVec::unit(2).scaled(&int(3))).unwrap();
        assert_eq!(m.xi, el(&pd, &[(3, "y", "xy")]));
        assert_eq!(c_of_x(&pd, &SparseVec::unit(1)).unwrap_err(), TwistedError::WrongDegree { expected: 3 });
    }

    #[test]
    fn equivalence_ideal_s3() {
        let s3 = sphere(3);
        let i = equivalence_ideal(&s3).unwrap();
        assert!(i.s.is_empty());
        let yy = i.cone.include_target(&el(&s3, &[(1, "y", "y")]));
        assert!(i.subspace.contains(&yy));
        assert!(i.subspace.contains(&SparseVec::unit(i.cone.shifted_index(1))));
    }

    #[test]
    fn xi_equivalence() {
        let pd = pd_s2xs3();
        let xi = el(&pd, &[(1, "y", "xy")]);
        let xi2 = el(&pd, &[(-1, "xy", "y")]);
        match decide_xi_equivalence(&pd, &xi, &xi2).unwrap() {
            XiDecision::EquivalentWitness(w) => {
                assert_eq!(w.multiplier, el(&pd, &[(1, "y", "1")]));
            }
            XiDecision::NotDecidedHere => panic!("expected a witness"),
        }
        assert!(matches!(
            decide_xi_equivalence(&pd, &xi, &xi.scaled(&int(2))).unwrap(),
            XiDecision::NotDecidedHere
        ));
        assert!(matches!(decide_xi_equivalence(&pd, &xi, &xi).unwrap(), XiDecision::EquivalentWitness(_)));
    }
}
