//! The free graded commutative algebra `R ⊗ Λ(generators)` over a finite
//! dimensional CDGA `R`, with coefficients in `Q` or in a polynomial ring of
//! unknowns.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{format_terms, koszul, DgAlgebra};
use crate::expr::ExprRing;
use crate::linalg::{format_scalar, sign, Scalar, SparseVec};

/// Coefficient rings.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero_coeff() -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn from_scalar(c: &Scalar) -> Self;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
}

impl Coeff for Scalar {
    fn zero_coeff() -> Self {
        Zero::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_scalar(c: &Scalar) -> Self {
        c.clone()
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Scalar) -> Self {
        self * c
    }
}

/// Polynomial in numbered unknowns; a monomial is its sorted list of
/// variables (with repetition).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(BTreeMap<Vec<usize>, Scalar>);

impl Poly {
    pub fn var(v: usize) -> Self {
        Poly(BTreeMap::from([(vec![v], Scalar::one())]))
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly::default();
        if !Zero::is_zero(&c) {
            p.0.insert(Vec::new(), c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.0.iter()
    }

    pub fn degree(&self) -> usize {
        self.0.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.degree() {
            0 => Some(self.0.get(&Vec::new()).cloned().unwrap_or_else(Scalar::zero)),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.0.get(&Vec::new()).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn linear_coeff(&self, v: usize) -> Scalar {
        self.0.get(&vec![v]).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn variables(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().flatten().copied()
    }

    fn add_term(&mut self, mono: Vec<usize>, c: &Scalar) {
        let entry = self.0.entry(mono.clone()).or_insert_with(Scalar::zero);
        *entry += c;
        if Zero::is_zero(entry) {
            self.0.remove(&mono);
        }
    }

    /// Substitutes `v ↦ values[v]` for the variables that have a value.
    pub fn substitute(&self, values: &BTreeMap<usize, Poly>) -> Poly {
        let mut out = Poly::default();
        for (mono, c) in &self.0 {
            let mut term = Poly::constant(c.clone());
            let mut rest = Vec::new();
            for v in mono {
                match values.get(v) {
                    Some(p) => term = Coeff::mul(&term, p),
                    None => rest.push(*v),
                }
            }
            term = Coeff::mul(&term, &Poly(BTreeMap::from([(rest, Scalar::one())])));
            out.add_assign(&term);
        }
        out
    }

    pub fn format(&self, names: &dyn Fn(usize) -> String) -> String {
        let mut out = String::new();
        for (mono, c) in &self.0 {
            let negative = *c < Scalar::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let vars = mono.iter().map(|&v| names(v)).collect::<Vec<_>>().join("*");
            match (abs.is_one(), vars.is_empty()) {
                (_, true) => out.push_str(&format_scalar(&abs)),
                (true, false) => out.push_str(&vars),
                (false, false) => out.push_str(&format!("{}*{}", format_scalar(&abs), vars)),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl Coeff for Poly {
    fn zero_coeff() -> Self {
        Poly::default()
    }
    fn is_zero_coeff(&self) -> bool {
        self.0.is_empty()
    }
    fn from_scalar(c: &Scalar) -> Self {
        Poly::constant(c.clone())
    }
    fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.0 {
            self.add_term(m.clone(), c);
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Poly::default();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                let mut m: Vec<usize> = m1.iter().chain(m2).copied().collect();
                m.sort_unstable();
                out.add_term(m, &(c1 * c2));
            }
        }
        out
    }
    fn scale(&self, c: &Scalar) -> Self {
        if Zero::is_zero(c) {
            return Poly::default();
        }
        Poly(self.0.iter().map(|(m, x)| (m.clone(), x * c)).collect())
    }
}

/// Basis element `g_1^{e_1} g_2^{e_2} ... · r` with generators in table order.
/// Ordered by generator part first so pure base terms lead.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub exps: Vec<u32>,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FreeElement<K: Coeff> {
    terms: BTreeMap<Term, K>,
}

impl<K: Coeff> Default for FreeElement<K> {
    fn default() -> Self {
        FreeElement { terms: BTreeMap::new() }
    }
}

impl<K: Coeff> FreeElement<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(t: Term, c: K) -> Self {
        let mut e = Self::zero();
        e.add_term(t, &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &K)> {
        self.terms.iter()
    }

    pub fn get(&self, t: &Term) -> Option<&K> {
        self.terms.get(t)
    }

    pub fn add_term(&mut self, t: Term, c: &K) {
        if c.is_zero_coeff() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(x) => {
                x.add_assign(c);
                if x.is_zero_coeff() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c.clone());
            }
        }
    }

    pub fn add(&mut self, other: &Self) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (t, x) in &self.terms {
            out.add_term(t.clone(), &x.scale(c));
        }
        out
    }

    pub fn map_coeffs<L: Coeff>(&self, f: impl Fn(&K) -> L) -> FreeElement<L> {
        let mut out = FreeElement::zero();
        for (t, x) in &self.terms {
            out.add_term(t.clone(), &f(x));
        }
        out
    }
}

impl FreeElement<Scalar> {
    pub fn lift<K: Coeff>(&self) -> FreeElement<K> {
        self.map_coeffs(K::from_scalar)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub degree: usize,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// `R ⊗ Λ(generators)`; multiplication only, the differential lives with the
/// table.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    pub base: DgAlgebra,
    pub generators: Vec<Generator>,
}

impl FreeAlgebra {
    pub fn new(base: DgAlgebra, generators: Vec<Generator>) -> Self {
        FreeAlgebra { base, generators }
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    fn empty_exps(&self) -> Vec<u32> {
        vec![0; self.ngens()]
    }

    pub fn base_term(&self, r: usize) -> Term {
        Term {
            exps: self.empty_exps(),
            r,
        }
    }

    pub fn generator_term(&self, g: usize) -> Term {
        let mut exps = self.empty_exps();
        exps[g] = 1;
        Term {
            exps,
            r: self.base.unit(),
        }
    }

    pub fn one<K: Coeff>(&self) -> FreeElement<K> {
        FreeElement::term(self.base_term(self.base.unit()), K::from_scalar(&Scalar::one()))
    }

    pub fn generator<K: Coeff>(&self, g: usize) -> FreeElement<K> {
        FreeElement::term(self.generator_term(g), K::from_scalar(&Scalar::one()))
    }

    pub fn from_base<K: Coeff>(&self, v: &SparseVec) -> FreeElement<K> {
        let mut out = FreeElement::zero();
        for (r, c) in v.iter() {
            out.add_term(self.base_term(r), &K::from_scalar(c));
        }
        out
    }

    fn mono_degree(&self, exps: &[u32]) -> usize {
        exps.iter().zip(&self.generators).map(|(&e, g)| e as usize * g.degree).sum()
    }

    pub fn degree(&self, t: &Term) -> usize {
        self.base.degree(t.r) + self.mono_degree(&t.exps)
    }

    /// `(m·r)(m'·r') = (-1)^{|r||m'|} ± mm'·rr'`, where `±` reorders the odd
    /// generators of `mm'`.
    pub fn term_product(&self, a: &Term, b: &Term) -> Vec<(Term, Scalar)> {
        let mut odd = koszul(self.base.degree(a.r), self.mono_degree(&b.exps));
        let mut exps = Vec::with_capacity(self.ngens());
        let mut odd_in_a_after = 0u32;
        // count odd generators of `a` with larger index than each odd of `b`
        let odd_a: Vec<bool> = (0..self.ngens())
            .map(|i| self.generators[i].is_odd() && a.exps[i] > 0)
            .collect();
        for i in (0..self.ngens()).rev() {
            if self.generators[i].is_odd() && b.exps[i] > 0 && odd_in_a_after % 2 == 1 {
                odd = !odd;
            }
            if odd_a[i] {
                odd_in_a_after += 1;
            }
        }
        for i in 0..self.ngens() {
            let e = a.exps[i] + b.exps[i];
            if self.generators[i].is_odd() && e > 1 {
                return Vec::new();
            }
            exps.push(e);
        }
        let s = sign(odd);
        self.base
            .basis_product(a.r, b.r)
            .iter()
            .map(|(r, c)| {
                (
                    Term {
                        exps: exps.clone(),
                        r,
                    },
                    c * &s,
                )
            })
            .collect()
    }

    pub fn mul<K: Coeff>(&self, x: &FreeElement<K>, y: &FreeElement<K>) -> FreeElement<K> {
        let mut out = FreeElement::zero();
        for (a, c1) in x.iter() {
            for (b, c2) in y.iter() {
                let c = c1.mul(c2);
                for (t, s) in self.term_product(a, b) {
                    out.add_term(t, &c.scale(&s));
                }
            }
        }
        out
    }

    /// All basis terms of total degree `d`; odd generators appear at most once.
    pub fn terms_of_degree(&self, d: usize) -> Vec<Term> {
        let mut out = Vec::new();
        let mut exps = self.empty_exps();
        self.enumerate(0, d, &mut exps, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, i: usize, left: usize, exps: &mut Vec<u32>, out: &mut Vec<Term>) {
        if i == self.ngens() {
            for r in self.base.basis().in_degree(left) {
                out.push(Term { exps: exps.clone(), r });
            }
            return;
        }
        let g = &self.generators[i];
        let max = if g.degree == 0 {
            0
        } else if g.is_odd() {
            1
        } else {
            left / g.degree
        };
        for e in 0..=max as u32 {
            let used = e as usize * g.degree;
            if used > left {
                break;
            }
            exps[i] = e;
            self.enumerate(i + 1, left - used, exps, out);
        }
        exps[i] = 0;
    }

    pub fn term_label(&self, t: &Term) -> String {
        let gens: Vec<String> = t
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let l = &self.generators[i].label;
                if e == 1 {
                    l.clone()
                } else {
                    format!("{l}^{e}")
                }
            })
            .collect();
        let base = self.base.label(t.r);
        match (gens.is_empty(), t.r == self.base.unit()) {
            (true, _) => base.to_string(),
            (false, true) => gens.join("*"),
            (false, false) => format!("{}*({})", gens.join("*"), base),
        }
    }

    pub fn format(&self, x: &FreeElement<Scalar>) -> String {
        format_terms(x.iter().map(|(t, c)| (c.clone(), self.term_label(t))))
    }

    pub fn format_poly(&self, x: &FreeElement<Poly>, names: &dyn Fn(usize) -> String) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.iter()
            .map(|(t, c)| match c.as_constant() {
                Some(k) => format!("{}*{}", format_scalar(&k), self.term_label(t)),
                None => format!("({})*{}", c.format(names), self.term_label(t)),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Labels usable in expressions: base labels then generator labels.
    pub fn labels(&self) -> Vec<String> {
        self.base
            .basis()
            .labels()
            .iter()
            .cloned()
            .chain(self.generators.iter().map(|g| g.label.clone()))
            .collect()
    }
}

impl ExprRing for FreeAlgebra {
    type Value = FreeElement<Scalar>;

    fn number(&self, c: &Scalar) -> Self::Value {
        self.one::<Scalar>().scaled(c)
    }

    fn label(&self, l: &str) -> Option<Self::Value> {
        if let Some(r) = self.base.index_of(l) {
            return Some(FreeElement::term(self.base_term(r), Scalar::one()));
        }
        self.generators
            .iter()
            .position(|g| g.label == l)
            .map(|g| self.generator(g))
    }

    fn add(&self, x: &Self::Value, y: &Self::Value) -> Self::Value {
        let mut out = x.clone();
        out.add(y);
        out
    }

    fn neg(&self, x: &Self::Value) -> Self::Value {
        x.scaled(&-Scalar::one())
    }

    fn mul(&self, x: &Self::Value, y: &Self::Value) -> Self::Value {
        FreeAlgebra::mul(self, x, y)
    }
}

/// The derivation extending `d` on the base and `dg = diffs[g]`.
pub fn differential<K: Coeff>(fa: &FreeAlgebra, diffs: &[FreeElement<Scalar>], x: &FreeElement<K>) -> FreeElement<K> {
    let mut out = FreeElement::zero();
    for (t, c) in x.iter() {
        for (s, k) in d_term(fa, diffs, t).iter() {
            out.add_term(s.clone(), &c.scale(k));
        }
    }
    out
}

/// `d(m·r) = dm·r + (-1)^{|m|} m·dr`, with `d(g·m') = dg·m' + (-1)^{|g|} g·dm'`
/// for the first generator `g` of `m`.
pub fn d_term(fa: &FreeAlgebra, diffs: &[FreeElement<Scalar>], t: &Term) -> FreeElement<Scalar> {
    let mut out = FreeElement::zero();
    let mono = Term {
        exps: t.exps.clone(),
        r: fa.base.unit(),
    };
    let s = sign(fa.mono_degree(&t.exps) % 2 == 1);
    for (r, c) in fa.base.d_basis(t.r).iter() {
        out.add_term(Term { exps: t.exps.clone(), r }, &(c * &s));
    }
    let dm = d_monomial(fa, diffs, &mono);
    if !dm.is_zero() {
        out.add(&fa.mul(&dm, &FreeElement::term(fa.base_term(t.r), Scalar::one())));
    }
    out
}

fn d_monomial(fa: &FreeAlgebra, diffs: &[FreeElement<Scalar>], m: &Term) -> FreeElement<Scalar> {
    let Some(g) = m.exps.iter().position(|&e| e > 0) else {
        return FreeElement::zero();
    };
    let mut rest = m.clone();
    rest.exps[g] -= 1;
    let rest_el = FreeElement::term(rest.clone(), Scalar::one());
    let mut out = fa.mul(&diffs[g], &rest_el);
    let d_rest = d_monomial(fa, diffs, &rest);
    if !d_rest.is_zero() {
        let ge = FreeElement::term(fa.generator_term(g), sign(fa.generators[g].is_odd()));
        out.add(&fa.mul(&ge, &d_rest));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::poincare::tests::pd_s2xs3;

    fn fa() -> FreeAlgebra {
        let pd = pd_s2xs3();
        FreeAlgebra::new(
            pd.square().algebra.clone(),
            vec![
                Generator { label: "u".into(), degree: 4 },
                Generator { label: "z5".into(), degree: 5 },
                Generator { label: "w".into(), degree: 3 },
            ],
        )
    }

    #[test]
    fn odd_generators_anticommute() {
        let fa = fa();
        let z: FreeElement<Scalar> = fa.generator(1);
        let w: FreeElement<Scalar> = fa.generator(2);
        let zw = fa.mul(&z, &w);
        let wz = fa.mul(&w, &z);
        assert_eq!(zw, wz.scaled(&int(-1)));
        assert!(fa.mul(&z, &z).is_zero());
        let u: FreeElement<Scalar> = fa.generator(0);
        assert_eq!(fa.format(&fa.mul(&u, &u)), "u^2");
    }

    #[test]
    fn generator_base_sign() {
        // z5·(y⊗1) = -(y⊗1)·z5 since both are odd
        let fa = fa();
        let y1 = fa.label("y⊗1").unwrap();
        let z = fa.label("z5").unwrap();
        assert_eq!(fa.mul(&z, &y1), fa.mul(&y1, &z).scaled(&int(-1)));
        assert_eq!(fa.format(&fa.mul(&z, &y1)), "z5*(y⊗1)");
        assert_eq!(fa.format(&fa.mul(&y1, &z)), "-z5*(y⊗1)");
    }

    #[test]
    fn monomials_by_degree() {
        let fa = fa();
        // degree 4: x⊗x, u
        assert_eq!(fa.terms_of_degree(4).len(), 2);
        // degree 8: u^2, u·(x⊗x), z5·w, w·(y⊗y)?? no: |y⊗y| = 6; w·(x⊗y), w·(y⊗x), w·(1⊗xy), w·(xy⊗1), z5·(y⊗1), z5·(1⊗y)
        let t = fa.terms_of_degree(8);
        assert!(t.iter().any(|t| fa.term_label(t) == "u^2"));
        assert!(t.iter().all(|t| fa.degree(t) == 8));
    }

    #[test]
    fn poly_substitution() {
        let p = Coeff::mul(&Poly::var(0), &Poly::var(1));
        let mut p = p;
        p.add_assign(&Poly::var(0));
        let values = BTreeMap::from([(0, Poly::constant(int(2)))]);
        let q = p.substitute(&values);
        assert_eq!(q.linear_coeff(1), int(2));
        assert_eq!(q.constant_term(), int(2));
        assert_eq!(q.degree(), 1);
        assert_eq!(p.format(&|v| format!("c{v}")), "c0 + c0*c1");
    }
}
