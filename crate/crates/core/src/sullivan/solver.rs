//! Staged search for an isomorphism `ψ` between two generator tables that
//! fixes `A⊗A`.
//!
//! `ψ(g)` gets one unknown per basis term of degree `|g|`. Generators are
//! handled in table order; each stage solves `ψ(D₁g) = D₂ψ(g)` coefficient
//! by coefficient after substituting what earlier stages fixed.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{format_scalar, kernel_basis, rank, rref, Scalar, SparseMatrix, SparseVec};

use super::free::{differential, Coeff, FreeElement, Poly, Term};
use super::table::{s2xs3_table, GeneratorTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("tables are not comparable: {0}")]
    IncompatibleTables(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Exists,
    Obstructed,
    Unresolved,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Exists => "Exists",
            Verdict::Obstructed => "Obstructed",
            Verdict::Unresolved => "Unresolved",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ObstructionResult {
    /// A verified isomorphism: `images[g] = ψ(g)`, free unknowns set to 0.
    Exists {
        images: Vec<String>,
        assignment: Vec<(String, Scalar)>,
        trace: Vec<String>,
    },
    /// The stage at `generator` has no solution. `combination` lists the
    /// equations and weights summing to `0 = value`.
    Obstructed {
        generator: String,
        combination: Vec<(String, Scalar)>,
        value: Scalar,
        trace: Vec<String>,
    },
    Unresolved {
        generator: String,
        residual: Vec<String>,
        trace: Vec<String>,
    },
}

impl ObstructionResult {
    pub fn verdict(&self) -> Verdict {
        match self {
            ObstructionResult::Exists { .. } => Verdict::Exists,
            ObstructionResult::Obstructed { .. } => Verdict::Obstructed,
            ObstructionResult::Unresolved { .. } => Verdict::Unresolved,
        }
    }

    pub fn trace(&self) -> &[String] {
        match self {
            ObstructionResult::Exists { trace, .. }
            | ObstructionResult::Obstructed { trace, .. }
            | ObstructionResult::Unresolved { trace, .. } => trace,
        }
    }
}

struct Unknown {
    name: String,
}

struct State<'a> {
    t1: &'a GeneratorTable,
    t2: &'a GeneratorTable,
    unknowns: Vec<Unknown>,
    /// Solved unknowns as affine polynomials in the free ones.
    values: BTreeMap<usize, Poly>,
    psi: Vec<FreeElement<Poly>>,
    trace: Vec<String>,
}

fn compatible(t1: &GeneratorTable, t2: &GeneratorTable) -> Result<(), SolverError> {
    let (b1, b2) = (&t1.free.base, &t2.free.base);
    if b1.basis() != b2.basis() || !b1.isomorphic_by_labels(b2, &|l| l.to_string()) {
        return Err(SolverError::IncompatibleTables("base algebras differ".into()));
    }
    let d1: Vec<usize> = t1.generators().iter().map(|g| g.degree).collect();
    let d2: Vec<usize> = t2.generators().iter().map(|g| g.degree).collect();
    if d1 != d2 {
        return Err(SolverError::IncompatibleTables(format!(
            "generator degrees {d1:?} and {d2:?}"
        )));
    }
    if t1.degree_cap != t2.degree_cap {
        return Err(SolverError::IncompatibleTables(format!(
            "degree caps {} and {}",
            t1.degree_cap, t2.degree_cap
        )));
    }
    Ok(())
}

impl State<'_> {
    fn name(&self, v: usize) -> String {
        self.unknowns[v].name.clone()
    }

    fn show_poly(&self, p: &Poly) -> String {
        p.format(&|v| self.name(v))
    }

    fn show(&self, x: &FreeElement<Poly>) -> String {
        let fa = &self.t2.free;
        if x.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (t, c) in x.iter() {
            let label = fa.term_label(t);
            let label = if label.contains('⊗') && !label.contains('(') { format!("({label})") } else { label };
            let piece = match c.as_constant() {
                Some(k) if k.is_one() => label,
                Some(k) if k == -Scalar::one() => format!("-{label}"),
                Some(k) => format!("{}*{label}", format_scalar(&k)),
                None if c.terms().count() == 1 => {
                    let s = self.show_poly(c);
                    match s.strip_prefix('-') {
                        Some(rest) => format!("-{rest}*{label}"),
                        None => format!("{s}*{label}"),
                    }
                }
                None => format!("({})*{label}", self.show_poly(c)),
            };
            if out.is_empty() {
                out = piece;
            } else if let Some(rest) = piece.strip_prefix('-') {
                out.push_str(&format!(" - {rest}"));
            } else {
                out.push_str(&format!(" + {piece}"));
            }
        }
        out
    }

    /// `ψ` applied to an element of the source table.
    fn apply(&self, x: &FreeElement<Scalar>) -> FreeElement<Poly> {
        let fa = &self.t2.free;
        let mut out = FreeElement::zero();
        for (t, c) in x.iter() {
            let mut v = FreeElement::term(fa.base_term(fa.base.unit()), Poly::constant(c.clone()));
            for (g, &e) in t.exps.iter().enumerate() {
                for _ in 0..e {
                    v = fa.mul(&v, &self.psi[g]);
                }
            }
            v = fa.mul(&v, &FreeElement::term(fa.base_term(t.r), Poly::constant(Scalar::one())));
            out.add(&v);
        }
        out
    }

    fn substitute(&self, x: &FreeElement<Poly>) -> FreeElement<Poly> {
        x.map_coeffs(|p| p.substitute(&self.values))
    }

    /// Records solved unknowns and substitutes them everywhere.
    fn commit(&mut self, solved: &BTreeMap<usize, Poly>) {
        for (v, value) in solved {
            self.trace.push(format!("  ⇒ {} = {}", self.name(*v), self.show_poly(value)));
        }
        for value in self.values.values_mut() {
            *value = value.substitute(solved);
        }
        self.values.extend(solved.clone());
        self.psi = self.psi.iter().map(|x| self.substitute(x)).collect();
    }

    /// Runs the stage for generator `g`; `Err` carries the final result.
    fn stage(&mut self, g: usize) -> Result<(), ObstructionResult> {
        let fa = &self.t2.free;
        let gen = fa.generators[g].clone();
        let symbol = self.t1.entries[g].symbol.clone().unwrap_or_else(|| format!("c[{}]", gen.label));
        let own = fa.generator_term(g);
        let mut terms = vec![own.clone()];
        terms.extend(fa.terms_of_degree(gen.degree).into_iter().filter(|t| *t != own));
        let first = self.unknowns.len();
        let mut image = FreeElement::zero();
        for (k, t) in terms.iter().enumerate() {
            self.unknowns.push(Unknown {
                name: format!("{symbol}{}", k + 1),
            });
            image.add_term(t.clone(), &Poly::var(first + k));
        }
        self.psi[g] = image.clone();
        self.trace.push(format!(
            "stage {} (degree {}): ψ({}) = {}",
            gen.label,
            gen.degree,
            gen.label,
            self.show(&image)
        ));

        let lhs = self.apply(&self.t1.differentials[g]);
        let rhs = differential(fa, &self.t2.differentials, &image);
        let mut residual = lhs;
        residual.add(&rhs.map_coeffs(|p| p.scale(&-Scalar::one())));
        let residual = self.substitute(&residual);

        let equations: Vec<(Term, Poly)> = residual.iter().map(|(t, p)| (t.clone(), p.clone())).collect();
        let eq_label = |t: &Term| fa.term_label(t);
        if equations.iter().any(|(_, p)| p.degree() > 1) {
            let residual = equations
                .iter()
                .map(|(t, p)| format!("[{}] {} = 0", eq_label(t), self.show_poly(p)))
                .collect();
            self.trace.push("  constraints are nonlinear after substitution".into());
            return Err(ObstructionResult::Unresolved {
                generator: gen.label,
                residual,
                trace: std::mem::take(&mut self.trace),
            });
        }
        for (t, p) in &equations {
            self.trace.push(format!("  [{}] {} = 0", eq_label(t), self.show_poly(p)));
        }

        // equations in a single unknown first, as one would by hand
        let mut equations = equations;
        loop {
            let single = equations.iter().find_map(|(_, p)| {
                let vars: BTreeSet<usize> = p.variables().collect();
                (vars.len() == 1).then(|| {
                    let v = *vars.iter().next().unwrap();
                    (v, Poly::constant(-p.constant_term() / p.linear_coeff(v)))
                })
            });
            let Some((v, value)) = single else { break };
            let solved = BTreeMap::from([(v, value)]);
            self.commit(&solved);
            equations = equations
                .into_iter()
                .map(|(t, p)| (t, p.substitute(&solved)))
                .filter(|(_, p)| !p.is_zero_coeff())
                .collect();
        }
        if equations.iter().any(|(_, p)| p.variables().next().is_some()) {
            self.trace.push("  remaining:".into());
            for (t, p) in &equations {
                self.trace.push(format!("  [{}] {} = 0", eq_label(t), self.show_poly(p)));
            }
        }

        let vars: Vec<usize> = equations
            .iter()
            .flat_map(|(_, p)| p.variables().collect::<Vec<_>>())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let col: BTreeMap<usize, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let rows: Vec<SparseVec> = equations
            .iter()
            .map(|(_, p)| vars.iter().map(|&v| (col[&v], p.linear_coeff(v))).collect())
            .collect();
        let b: SparseVec = equations
            .iter()
            .enumerate()
            .map(|(i, (_, p))| (i, -p.constant_term()))
            .collect();
        let m = SparseMatrix::from_rows(vars.len(), &rows);

        let mut aug_rows = rows.clone();
        for (i, row) in aug_rows.iter_mut().enumerate() {
            row.add_at(vars.len(), &b.get(i));
        }
        let aug = SparseMatrix::from_rows(vars.len() + 1, &aug_rows);
        if rank(&aug) > rank(&m) {
            // y with yᵀM = 0 and y·b ≠ 0
            let y = kernel_basis(&m.transpose())
                .into_iter()
                .find(|y| !y.dot(&b).is_zero())
                .expect("inconsistent systems have a certificate");
            let value = -y.dot(&b);
            let combination: Vec<(String, Scalar)> =
                y.iter().map(|(i, c)| (eq_label(&equations[i].0), c.clone())).collect();
            let sum = combination
                .iter()
                .map(|(l, c)| format!("{}·[{}]", format_scalar(c), l))
                .collect::<Vec<_>>()
                .join(" + ");
            self.trace.push(format!(
                "  inconsistent: {sum} leaves 0 = {}",
                format_scalar(&value)
            ));
            return Err(ObstructionResult::Obstructed {
                generator: gen.label,
                combination,
                value,
                trace: std::mem::take(&mut self.trace),
            });
        }

        // pivot unknowns become affine in the free ones
        let reduced = rref(&aug);
        let dense = reduced.matrix.to_dense();
        let mut solved = BTreeMap::new();
        for (i, &p) in reduced.pivots.iter().enumerate() {
            let mut value = Poly::constant(dense[i][vars.len()].clone());
            for (j, &v) in vars.iter().enumerate() {
                if j != p && !dense[i][j].is_zero() {
                    value.add_assign(&Poly::var(v).scale(&-dense[i][j].clone()));
                }
            }
            solved.insert(vars[p], value);
        }
        self.commit(&solved);

        let lead = self.psi[g].get(&own).cloned().unwrap_or_default();
        match lead.as_constant() {
            Some(c) if !c.is_zero() => Ok(()),
            Some(_) => {
                self.trace.push(format!("  leading coefficient of ψ({}) is forced to 0", gen.label));
                Err(ObstructionResult::Obstructed {
                    generator: gen.label,
                    combination: Vec::new(),
                    value: Scalar::zero(),
                    trace: std::mem::take(&mut self.trace),
                })
            }
            None => {
                self.trace
                    .push(format!("  leading coefficient of ψ({}) is not determined", gen.label));
                Err(ObstructionResult::Unresolved {
                    generator: gen.label,
                    residual: vec![format!("{} ≠ 0", self.show_poly(&lead))],
                    trace: std::mem::take(&mut self.trace),
                })
            }
        }
    }

    /// Sets every free unknown to 0 and checks the result.
    fn finish(mut self) -> ObstructionResult {
        let free: BTreeMap<usize, Poly> = (0..self.unknowns.len())
            .filter(|v| !self.values.contains_key(v))
            .map(|v| (v, Poly::default()))
            .collect();
        if !free.is_empty() {
            let names: Vec<String> = free.keys().map(|&v| self.name(v)).collect();
            self.trace.push(format!("free unknowns set to 0: {}", names.join(", ")));
        }
        self.psi = self.psi.iter().map(|x| x.map_coeffs(|p| p.substitute(&free))).collect();
        let assignment: Vec<(String, Scalar)> = (0..self.unknowns.len())
            .map(|v| {
                let p = self.values.get(&v).map_or_else(Poly::default, |p| p.substitute(&free));
                (self.name(v), p.as_constant().expect("all unknowns are fixed"))
            })
            .collect();

        let fa = &self.t2.free;
        let mut failure = None;
        // generator coefficients must form an invertible matrix in each degree
        let degrees: BTreeSet<usize> = fa.generators.iter().map(|g| g.degree).collect();
        for d in degrees {
            let gens: Vec<usize> = (0..fa.ngens()).filter(|&g| fa.generators[g].degree == d).collect();
            let rows: Vec<SparseVec> = gens
                .iter()
                .map(|&g| {
                    gens.iter()
                        .enumerate()
                        .map(|(j, &h)| {
                            let c = self.psi[g].get(&fa.generator_term(h)).cloned().unwrap_or_default();
                            (j, c.constant_term())
                        })
                        .collect()
                })
                .collect();
            if rank(&SparseMatrix::from_rows(gens.len(), &rows)) < gens.len() {
                failure = Some(format!("ψ is not invertible on the degree {d} generators"));
            }
        }
        for k in 0..=self.t1.degree_cap {
            for t in fa.terms_of_degree(k) {
                let x = FreeElement::term(t.clone(), Scalar::one());
                let lhs = self.apply(&self.t1.d(&x));
                let rhs = differential(fa, &self.t2.differentials, &self.apply(&x));
                if lhs != rhs && failure.is_none() {
                    failure = Some(format!("ψD ≠ Dψ on {}", fa.term_label(&t)));
                }
                if t.exps.iter().all(|&e| e == 0) && self.apply(&x) != x.lift::<Poly>() && failure.is_none() {
                    failure = Some(format!("ψ moves {}", fa.term_label(&t)));
                }
            }
        }
        let images: Vec<String> = (0..fa.ngens())
            .map(|g| format!("ψ({}) = {}", fa.generators[g].label, self.show(&self.psi[g])))
            .collect();
        match failure {
            Some(f) => {
                self.trace.push(f.clone());
                ObstructionResult::Unresolved {
                    generator: String::new(),
                    residual: vec![f],
                    trace: self.trace,
                }
            }
            None => {
                self.trace.extend(images.iter().cloned());
                self.trace.push("verified: ψD = Dψ on all monomials up to the degree cap".into());
                ObstructionResult::Exists {
                    images,
                    assignment,
                    trace: self.trace,
                }
            }
        }
    }
}

/// Looks for a CDGA isomorphism `ψ: (ΛV, D₁) → (ΛV, D₂)` over `A⊗A`.
pub fn iso_obstruction(t1: &GeneratorTable, t2: &GeneratorTable) -> Result<ObstructionResult, SolverError> {
    compatible(t1, t2)?;
    let fa = &t2.free;
    let mut state = State {
        t1,
        t2,
        unknowns: Vec::new(),
        values: BTreeMap::new(),
        psi: vec![FreeElement::zero(); fa.ngens()],
        trace: Vec::new(),
    };
    for g in 0..fa.ngens() {
        if let Err(result) = state.stage(g) {
            return Ok(result);
        }
    }
    Ok(state.finish())
}

/// Pairwise verdicts for `s2xs3_table(qᵢ, 0)` against `s2xs3_table(qⱼ, 0)`.
#[derive(Clone, Debug)]
pub struct Classification {
    pub q: Vec<Scalar>,
    pub results: Vec<Vec<ObstructionResult>>,
}

impl Classification {
    pub fn verdicts(&self) -> Vec<Vec<Verdict>> {
        self.results.iter().map(|row| row.iter().map(|r| r.verdict()).collect()).collect()
    }

    /// Exists exactly on the diagonal.
    pub fn matches_theorem(&self) -> bool {
        self.verdicts().iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, v)| *v == if i == j { Verdict::Exists } else { Verdict::Obstructed })
        })
    }

    /// The trace of the `(i, j)` comparison with the closing constraint
    /// written in terms of `q = qᵢ` and `r = qⱼ`.
    pub fn explained_trace(&self, i: usize, j: usize) -> Vec<String> {
        let result = &self.results[i][j];
        let mut lines = result.trace().to_vec();
        if let ObstructionResult::Obstructed { value, .. } = result {
            let diff = &self.q[i] - &self.q[j];
            if !diff.is_zero() && !value.is_zero() {
                let kappa = value / &diff;
                lines.push(format!(
                    "with q = {1}, r = {2} that constant is {0}·(q - r), independent of the unknowns",
                    format_scalar(&kappa),
                    format_scalar(&self.q[i]),
                    format_scalar(&self.q[j])
                ));
                lines.push("q = r required".into());
            }
        }
        lines
    }
}

pub fn classify_example(q: &[Scalar]) -> Classification {
    let tables: Vec<GeneratorTable> = q.iter().map(|x| s2xs3_table(x, &Scalar::zero())).collect();
    let results = tables
        .iter()
        .map(|t1| {
            tables
                .iter()
                .map(|t2| iso_obstruction(t1, t2).expect("tables of one family are compatible"))
                .collect()
        })
        .collect();
    Classification { q: q.to_vec(), results }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn identity_exists() {
        let t = s2xs3_table(&int(1), &int(0));
        let r = iso_obstruction(&t, &t).unwrap();
        assert_eq!(r.verdict(), Verdict::Exists, "{:#?}", r.trace());
        assert!(r.trace().iter().any(|l| l == "  ⇒ α1 = 1"), "{:#?}", r.trace());
    }

    #[test]
    fn different_q_obstructed() {
        let t1 = s2xs3_table(&int(1), &int(0));
        let t2 = s2xs3_table(&int(0), &int(0));
        let r = iso_obstruction(&t1, &t2).unwrap();
        assert_eq!(r.verdict(), Verdict::Obstructed, "{:#?}", r.trace());
        match &r {
            ObstructionResult::Obstructed { generator, value, .. } => {
                assert_eq!(generator, "h");
                assert!(!value.is_zero());
            }
            _ => unreachable!(),
        }
        assert!(r.trace().iter().any(|l| l == "  ⇒ α1 = 1"));
    }

    #[test]
    fn classification_matrix() {
        let c = classify_example(&[int(0), int(1)]);
        assert!(c.matches_theorem(), "{:?}", c.verdicts());
        let lines = c.explained_trace(1, 0);
        assert_eq!(lines.last().unwrap(), "q = r required");
        let c = classify_example(&[int(0)]);
        assert_eq!(c.verdicts(), vec![vec![Verdict::Exists]]);
    }

    #[test]
    fn incompatible_tables() {
        let t = s2xs3_table(&int(1), &int(0));
        let pd = crate::presets::pd("s2xs3").unwrap();
        let empty = GeneratorTable::new("empty", pd, "0", vec![], 8).unwrap();
        assert!(matches!(iso_obstruction(&t, &empty), Err(SolverError::IncompatibleTables(_))));
    }
}
