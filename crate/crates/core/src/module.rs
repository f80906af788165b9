//! Differential graded modules over a CDGA, suspensions and module maps.

use thiserror::Error;

use crate::algebra::{AlgebraError, DgAlgebra, GradedBasis};
use crate::linalg::{sign, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("suspension pushes {label} to negative degree")]
    NegativeDegree { label: String },
    #[error("action table has wrong shape")]
    Shape,
    #[error("{0} does not preserve degrees")]
    Degree(String),
    #[error("module map source and target have different base rings")]
    DifferentRings,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Which module identity failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleAxiom {
    Unit,
    Associativity,
    DSquared,
    Leibniz,
    CommutesWithD,
    Linear,
}

/// A failed module identity on specific basis elements.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{axiom:?} fails on ({}): discrepancy {discrepancy:?}", labels.join(", "))]
pub struct ModuleViolation {
    pub axiom: ModuleAxiom,
    pub labels: Vec<String>,
    pub discrepancy: SparseVec,
}

/// A finite-dimensional dg-module over `ring`. `action[r][m]` is `a_r · m`.
#[derive(Clone, Debug)]
pub struct DgModule {
    ring: DgAlgebra,
    basis: GradedBasis,
    action: Vec<Vec<SparseVec>>,
    diff: Vec<SparseVec>,
    regular: bool,
}

impl DgModule {
    pub fn new(
        ring: &DgAlgebra,
        basis: GradedBasis,
        action: Vec<Vec<SparseVec>>,
        diff: Vec<SparseVec>,
    ) -> Result<Self, ModuleError> {
        let m = basis.len();
        if action.len() != ring.dim() || action.iter().any(|row| row.len() != m) || diff.len() != m {
            return Err(ModuleError::Shape);
        }
        for (r, row) in action.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !basis.is_homogeneous_of(v, ring.degree(r) + basis.degree(j)) {
                    return Err(ModuleError::Degree(format!("{}·{}", ring.label(r), basis.label(j))));
                }
            }
        }
        for (j, v) in diff.iter().enumerate() {
            if !basis.is_homogeneous_of(v, basis.degree(j) + 1) {
                return Err(ModuleError::Degree(format!("d({})", basis.label(j))));
            }
        }
        Ok(DgModule {
            ring: ring.clone(),
            basis,
            action,
            diff,
            regular: false,
        })
    }

    /// The ring as a module over itself.
    pub fn regular(ring: &DgAlgebra) -> Self {
        let n = ring.dim();
        let action = (0..n)
            .map(|r| (0..n).map(|j| ring.basis_product(r, j)).collect())
            .collect();
        let diff = (0..n).map(|j| ring.d_basis(j).clone()).collect();
        DgModule {
            ring: ring.clone(),
            basis: ring.basis().clone(),
            action,
            diff,
            regular: true,
        }
    }

    /// Restriction of scalars along a CDGA map `phi: ring -> self.ring`, given
    /// by the images of the basis of `ring`.
    pub fn restrict(&self, ring: &DgAlgebra, phi: &[SparseVec]) -> DgModule {
        let action = phi
            .iter()
            .map(|img| {
                (0..self.dim())
                    .map(|j| {
                        let mut v = SparseVec::new();
                        for (k, c) in img.iter() {
                            v.add_scaled(&self.action[k][j], c);
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        DgModule {
            ring: ring.clone(),
            basis: self.basis.clone(),
            action,
            diff: self.diff.clone(),
            regular: false,
        }
    }

    /// `s^k M` with `(s^k M)^p = M^{p+k}`, `r·s^k m = (-1)^{k|r|} s^k(r·m)` and
    /// `d(s^k m) = (-1)^k s^k(dm)`.
    pub fn suspend(&self, k: i64, label: impl Fn(&str) -> String) -> Result<DgModule, ModuleError> {
        let mut entries = Vec::with_capacity(self.dim());
        for j in 0..self.dim() {
            let deg = self.basis.degree(j) as i64 - k;
            if deg < 0 {
                return Err(ModuleError::NegativeDegree {
                    label: self.basis.label(j).to_string(),
                });
            }
            entries.push((label(self.basis.label(j)), deg as usize));
        }
        let basis = GradedBasis::new(entries)?;
        let k_odd = k.rem_euclid(2) == 1;
        let action = (0..self.ring.dim())
            .map(|r| {
                let s = sign(k_odd && self.ring.degree(r) % 2 == 1);
                self.action[r].iter().map(|v| v.scaled(&s)).collect()
            })
            .collect();
        let s = sign(k_odd);
        let diff = self.diff.iter().map(|v| v.scaled(&s)).collect();
        Ok(DgModule {
            ring: self.ring.clone(),
            basis,
            action,
            diff,
            regular: false,
        })
    }

    pub fn ring(&self) -> &DgAlgebra {
        &self.ring
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, j: usize) -> usize {
        self.basis.degree(j)
    }

    pub fn label(&self, j: usize) -> &str {
        self.basis.label(j)
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    pub fn act_basis(&self, r: usize, j: usize) -> &SparseVec {
        &self.action[r][j]
    }

    pub fn act(&self, r: &SparseVec, m: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in r.iter() {
            for (j, b) in m.iter() {
                out.add_scaled(&self.action[i][j], &(a * b));
            }
        }
        out
    }

    pub fn d_basis(&self, j: usize) -> &SparseVec {
        &self.diff[j]
    }

    pub fn d(&self, m: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in m.iter() {
            out.add_scaled(&self.diff[j], c);
        }
        out
    }

    pub fn format(&self, v: &SparseVec) -> String {
        self.basis.format(v)
    }

    fn violation(&self, axiom: ModuleAxiom, labels: Vec<String>, discrepancy: SparseVec) -> ModuleViolation {
        ModuleViolation {
            axiom,
            labels,
            discrepancy,
        }
    }

    /// Unit, associativity of the action, `d^2 = 0` and
    /// `d(r·m) = dr·m + (-1)^{|r|} r·dm`, on all basis elements.
    pub fn check(&self) -> Result<(), ModuleViolation> {
        let ring = &self.ring;
        let unit = ring.unit();
        for j in 0..self.dim() {
            let diff = &self.action[unit][j] - &SparseVec::unit(j);
            if !diff.is_zero() {
                return Err(self.violation(ModuleAxiom::Unit, vec![self.label(j).into()], diff));
            }
            let dd = self.d(&self.diff[j]);
            if !dd.is_zero() {
                return Err(self.violation(ModuleAxiom::DSquared, vec![self.label(j).into()], dd));
            }
        }
        for r in 0..ring.dim() {
            for j in 0..self.dim() {
                let rm = &self.action[r][j];
                let lhs = self.d(rm);
                let mut rhs = self.act(ring.d_basis(r), &SparseVec::unit(j));
                let s = sign(ring.degree(r) % 2 == 1);
                rhs.add_scaled(&self.act(&SparseVec::unit(r), &self.diff[j]), &s);
                let diff = &lhs - &rhs;
                if !diff.is_zero() {
                    return Err(self.violation(
                        ModuleAxiom::Leibniz,
                        vec![ring.label(r).into(), self.label(j).into()],
                        diff,
                    ));
                }
                for r2 in 0..ring.dim() {
                    let lhs = self.act(&ring.basis_product(r, r2), &SparseVec::unit(j));
                    let rhs = self.act(&SparseVec::unit(r), &self.action[r2][j]);
                    let diff = &lhs - &rhs;
                    if !diff.is_zero() {
                        return Err(self.violation(
                            ModuleAxiom::Associativity,
                            vec![ring.label(r).into(), ring.label(r2).into(), self.label(j).into()],
                            diff,
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A degree-preserving map of dg-modules, by images of source basis elements.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: DgModule,
    pub target: DgModule,
    pub images: Vec<SparseVec>,
}

impl ModuleMap {
    /// Builds the map and verifies degrees, `f d = d f` and
    /// `f(r·m) = r·f(m)` on all basis pairs.
    pub fn new(source: DgModule, target: DgModule, images: Vec<SparseVec>) -> Result<Self, ModuleViolation> {
        let f = ModuleMap {
            source,
            target,
            images,
        };
        f.check()?;
        Ok(f)
    }

    /// The zero map.
    pub fn zero(source: DgModule, target: DgModule) -> Self {
        let images = vec![SparseVec::new(); source.dim()];
        ModuleMap {
            source,
            target,
            images,
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in v.iter() {
            out.add_scaled(&self.images[j], c);
        }
        out
    }

    pub fn check(&self) -> Result<(), ModuleViolation> {
        let (src, tgt) = (&self.source, &self.target);
        let v = |axiom, labels: Vec<String>, discrepancy| ModuleViolation {
            axiom,
            labels,
            discrepancy,
        };
        if src.ring.dim() != tgt.ring.dim() || src.ring.basis() != tgt.ring.basis() || self.images.len() != src.dim() {
            return Err(v(ModuleAxiom::Linear, vec![], SparseVec::new()));
        }
        for j in 0..src.dim() {
            if !tgt.basis.is_homogeneous_of(&self.images[j], src.degree(j)) {
                return Err(v(ModuleAxiom::Linear, vec![src.label(j).into()], self.images[j].clone()));
            }
            let diff = &self.apply(src.d_basis(j)) - &tgt.d(&self.images[j]);
            if !diff.is_zero() {
                return Err(v(ModuleAxiom::CommutesWithD, vec![src.label(j).into()], diff));
            }
            for r in 0..src.ring.dim() {
                let lhs = self.apply(src.act_basis(r, j));
                let rhs = tgt.act(&SparseVec::unit(r), &self.images[j]);
                let diff = &lhs - &rhs;
                if !diff.is_zero() {
                    return Err(v(
                        ModuleAxiom::Linear,
                        vec![src.ring.label(r).into(), src.label(j).into()],
                        diff,
                    ));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::s2xs3;

    #[test]
    fn regular_module_passes() {
        let a = s2xs3();
        assert!(DgModule::regular(&a).check().is_ok());
    }

    #[test]
    fn suspension_passes_and_shifts() {
        let a = s2xs3();
        let m = DgModule::regular(&a);
        let s = m.suspend(-5, |l| l.to_string()).unwrap();
        assert!(s.check().is_ok());
        assert_eq!(s.basis().degrees(), &[5, 7, 8, 10]);
        let s1 = m.suspend(1, |l| format!("s{l}"));
        assert!(matches!(s1, Err(ModuleError::NegativeDegree { .. })));
    }

    #[test]
    fn wrong_sign_breaks_associativity_or_leibniz() {
        let a = s2xs3();
        let m = DgModule::regular(&a);
        let mut bad = m.clone();
        bad.action[2][2] = SparseVec::unit(3);
        assert!(bad.check().is_err());
    }

    #[test]
    fn identity_is_a_module_map() {
        let a = s2xs3();
        let m = DgModule::regular(&a);
        let id = (0..4).map(SparseVec::unit).collect();
        assert!(ModuleMap::new(m.clone(), m, id).is_ok());
    }
}
