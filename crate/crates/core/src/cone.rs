//! Mapping cones with the semi-trivial product, the cone model `C(Δ^!)` and
//! the even-dimensional quotient model.

use thiserror::Error;

use crate::algebra::{
    check_cdga, check_cdga_map, koszul, AlgebraError, AlgebraOptions, Axiom, DgAlgebra, GradedBasis, Witness,
};
use crate::linalg::{sign, SparseVec, Subspace};
use crate::module::{DgModule, ModuleError, ModuleMap, ModuleViolation};
use crate::poincare::PdAlgebra;
use crate::quotient::{check_differential_ideal, ideal_generated, is_acyclic, quotient_algebra, QuotientAlgebra, QuotientError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error("not a module map: {0}")]
    NotAModuleMap(ModuleViolation),
    #[error("the target of the map must be the base ring as a module over itself")]
    TargetNotRegular,
    #[error("cone differential does not square to zero on {0}")]
    NotAComplex(String),
    #[error("product rule (iii) disagrees with rule (ii) and commutativity on {left}·{right}")]
    RuleMismatch { left: String, right: String },
    #[error("{axiom} fails on ({})", witness.labels.join(", "))]
    Axiom { axiom: Axiom, witness: Witness },
    #[error("formal dimension {0} is odd; the even model needs n even")]
    OddDimension(usize),
    #[error("the ideal is not acyclic")]
    NotAcyclic,
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

/// `C(f) = A ⊕_f sB` for a module map `f: B -> A` into the base ring `A`,
/// with `δ(a, sb) = (d a + f(b), -s db)` and the semi-trivial product.
#[derive(Clone, Debug)]
pub struct MappingCone {
    pub module: DgModule,
    pub algebra: DgAlgebra,
    pub map: ModuleMap,
    /// Cone index of each basis element of the target.
    target_pos: Vec<usize>,
    /// Cone index of `s b_j`.
    shifted_pos: Vec<usize>,
}

impl MappingCone {
    pub fn target_index(&self, i: usize) -> usize {
        self.target_pos[i]
    }

    pub fn shifted_index(&self, j: usize) -> usize {
        self.shifted_pos[j]
    }

    pub fn include_target(&self, v: &SparseVec) -> SparseVec {
        v.reindex(|i| self.target_pos[i])
    }

    pub fn include_shifted(&self, v: &SparseVec) -> SparseVec {
        v.reindex(|j| self.shifted_pos[j])
    }

    /// Images of the inclusion `a ↦ (a, 0)`, one per basis element of the ring.
    pub fn inclusion(&self) -> Vec<SparseVec> {
        self.target_pos.iter().map(|&p| SparseVec::unit(p)).collect()
    }

    /// Pairs `(sb, a)` where rule (iii) `sb·a = (-1)^{|b||a|} s(a·b)` differs
    /// from `(-1)^{|sb||a|} a·sb` with `a·sb` given by rule (ii).
    pub fn rule_iii_mismatches(&self) -> Vec<(String, String)> {
        let src = &self.map.source;
        let ring = src.ring();
        let mut out = Vec::new();
        for j in 0..src.dim() {
            for i in 0..ring.dim() {
                let direct = rule_iii(src, i, j);
                let via_ii = rule_ii(src, i, j).scaled(&sign(koszul(src.degree(j) + 1, ring.degree(i))));
                // |sb| = |b| - 1 has the parity of |b| + 1
                if direct != via_ii {
                    out.push((format!("s{}", src.label(j)), ring.label(i).to_string()));
                }
            }
        }
        out
    }
}

/// `a · sb = (-1)^{|a|} s(a·b)`, in source coordinates.
fn rule_ii(src: &DgModule, i: usize, j: usize) -> SparseVec {
    src.act_basis(i, j).scaled(&sign(src.ring().degree(i) % 2 == 1))
}

/// `sb · a = (-1)^{|b||a|} s(a·b)`, in source coordinates.
fn rule_iii(src: &DgModule, i: usize, j: usize) -> SparseVec {
    src.act_basis(i, j).scaled(&sign(koszul(src.degree(j), src.ring().degree(i))))
}

/// The mapping cone with semi-trivial product. Shifted basis elements are
/// labeled `prefix + label`.
pub fn mapping_cone(f: &ModuleMap, prefix: &str, name: &str) -> Result<MappingCone, ConeError> {
    f.check().map_err(ConeError::NotAModuleMap)?;
    if !f.target.is_regular() {
        return Err(ConeError::TargetNotRegular);
    }
    let (src, tgt) = (&f.source, &f.target);
    let ring = tgt.ring();

    // (degree, part, index); targets first within a degree
    let mut order: Vec<(usize, usize, usize)> = (0..tgt.dim()).map(|i| (tgt.degree(i), 0, i)).collect();
    for j in 0..src.dim() {
        if src.degree(j) == 0 {
            return Err(ModuleError::NegativeDegree {
                label: src.label(j).to_string(),
            }
            .into());
        }
        order.push((src.degree(j) - 1, 1, j));
    }
    order.sort();
    let mut target_pos = vec![0; tgt.dim()];
    let mut shifted_pos = vec![0; src.dim()];
    let mut entries = Vec::with_capacity(order.len());
    for (p, &(deg, part, k)) in order.iter().enumerate() {
        if part == 0 {
            target_pos[k] = p;
            entries.push((tgt.label(k).to_string(), deg));
        } else {
            shifted_pos[k] = p;
            entries.push((format!("{prefix}{}", src.label(k)), deg));
        }
    }
    let basis = GradedBasis::new(entries)?;
    let at = |v: &SparseVec| v.reindex(|i| target_pos[i]);
    let sh = |v: &SparseVec| v.reindex(|j| shifted_pos[j]);

    let size = order.len();
    let mut action = vec![vec![SparseVec::new(); size]; ring.dim()];
    for (r, row) in action.iter_mut().enumerate() {
        let s = sign(ring.degree(r) % 2 == 1);
        for i in 0..tgt.dim() {
            row[target_pos[i]] = at(tgt.act_basis(r, i));
        }
        for j in 0..src.dim() {
            row[shifted_pos[j]] = sh(src.act_basis(r, j)).scaled(&s);
        }
    }
    let mut diff = vec![SparseVec::new(); size];
    for i in 0..tgt.dim() {
        diff[target_pos[i]] = at(tgt.d_basis(i));
    }
    for j in 0..src.dim() {
        diff[shifted_pos[j]] = &at(&f.images[j]) - &sh(src.d_basis(j));
    }
    let module = DgModule::new(ring, basis.clone(), action, diff.clone())?;
    for p in 0..size {
        if !module.d(&diff[p]).is_zero() {
            return Err(ConeError::NotAComplex(module.label(p).to_string()));
        }
    }

    let mut products = Vec::new();
    for i in 0..tgt.dim() {
        for i2 in i..tgt.dim() {
            products.push((target_pos[i], target_pos[i2], at(&ring.basis_product(i, i2))));
        }
        for j in 0..src.dim() {
            let (p, q) = (target_pos[i], shifted_pos[j]);
            if p <= q {
                products.push((p, q, sh(&rule_ii(src, i, j))));
            } else {
                products.push((q, p, sh(&rule_iii(src, i, j))));
            }
        }
    }
    let algebra = DgAlgebra::new(
        name,
        basis,
        target_pos[ring.unit()],
        products,
        diff.into_iter().enumerate(),
        AlgebraOptions::default(),
    )?;
    let cone = MappingCone {
        module,
        algebra,
        map: f.clone(),
        target_pos,
        shifted_pos,
    };
    if let Some((left, right)) = cone.rule_iii_mismatches().into_iter().next() {
        return Err(ConeError::RuleMismatch { left, right });
    }
    Ok(cone)
}

/// `C(Δ^!) = A⊗A ⊕_{Δ^!} s s^{-n} A`, with suspension labels `S<label>`.
/// The semi-trivial product is verified to be a CDGA.
pub fn cone_model(pd: &PdAlgebra) -> Result<MappingCone, ConeError> {
    let f = pd.shriek_map().map_err(ConeError::NotAModuleMap)?;
    let cone = mapping_cone(&f, "S", &format!("C({})", pd.algebra.name()))?;
    if let Some((axiom, w)) = check_cdga(&cone.algebra).first_failure() {
        return Err(ConeError::Axiom {
            axiom,
            witness: w.clone(),
        });
    }
    if let Err(w) = check_cdga_map(&pd.square().algebra, &cone.algebra, &cone.inclusion()) {
        return Err(ConeError::Axiom {
            axiom: Axiom::Leibniz,
            witness: w,
        });
    }
    Ok(cone)
}

/// Triples `(x⊗y, a)` where the action on `s^{-n}A` differs from
/// `(-1)^{n|x|+n|y|+|a||y|} s^{-n}(x·a·y)`.
pub fn printed_module_sign_mismatches(pd: &PdAlgebra) -> Vec<String> {
    let a = &pd.algebra;
    let m = pd.desuspended_module();
    let aa = pd.square();
    let n = pd.n;
    let mut out = Vec::new();
    for (k, &(x, y)) in aa.pairs().iter().enumerate() {
        for t in 0..a.dim() {
            let (dx, dy, dt) = (a.degree(x), a.degree(y), a.degree(t));
            let odd = (n * dx + n * dy + dt * dy) % 2 == 1;
            let xay = a.mul(&a.basis_product(x, t), &SparseVec::unit(y));
            let printed = xay.scaled(&sign(odd));
            if *m.act_basis(k, t) != printed {
                out.push(format!("({}⊗{})·s^-{n}{}", a.label(x), a.label(y), a.label(t)));
            }
        }
    }
    out
}

/// `C(Δ^!)/⟨ω⊗ω, ss^{-n}ω⟩` for even `n`, with the induced map from `A⊗A`.
#[derive(Clone, Debug)]
pub struct EvenModel {
    pub cone: MappingCone,
    pub ideal: Subspace,
    pub quotient: QuotientAlgebra,
    /// Images of the basis of `A⊗A` in the quotient.
    pub inclusion: Vec<SparseVec>,
}

/// The generators `ω⊗ω` and `ss^{-n}ω` of the top ideal, in cone coordinates.
pub fn top_generators(pd: &PdAlgebra, cone: &MappingCone) -> Vec<SparseVec> {
    let aa = pd.square();
    vec![
        cone.include_target(&aa.tensor(&pd.omega, &pd.omega)),
        cone.include_shifted(&pd.omega),
    ]
}

pub fn even_model(pd: &PdAlgebra) -> Result<EvenModel, ConeError> {
    if pd.n % 2 == 1 {
        return Err(ConeError::OddDimension(pd.n));
    }
    let cone = cone_model(pd)?;
    let ideal = ideal_generated(&cone.algebra, &top_generators(pd, &cone));
    check_differential_ideal(&cone.algebra, &ideal)?;
    if !is_acyclic(&cone.algebra, &ideal)? {
        return Err(ConeError::NotAcyclic);
    }
    let quotient = quotient_algebra(&cone.algebra, &ideal, format!("C({})/I", pd.algebra.name()))?;
    let inclusion = cone.inclusion().iter().map(|v| quotient.project(v)).collect::<Vec<_>>();
    if let Err(w) = check_cdga_map(&pd.square().algebra, &quotient.algebra, &inclusion) {
        return Err(ConeError::Axiom {
            axiom: Axiom::Leibniz,
            witness: w,
        });
    }
    Ok(EvenModel {
        cone,
        ideal,
        quotient,
        inclusion,
    })
}
