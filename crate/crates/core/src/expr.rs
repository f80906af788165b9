//! Element expressions such as `1/2*(y⊗xy) - xy⊗y` or `u^2 - 2*z61*(1⊗x)`.
//!
//! Grammar:
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor (["*"|"."] factor)*        juxtaposition also multiplies
//! factor := atom ["^" integer]
//! atom   := number | label | "(" expr ")"
//! number := digits ["/" digits]
//! ```
//!
//! `−` (U+2212) is accepted for minus and `(x)` between label characters is
//! read as `⊗`. Labels are matched greedily against the known label set; at a
//! digit, the longer of the number and the label wins, ties going to the
//! number.

use thiserror::Error;

use crate::linalg::{parse_scalar, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{message} at position {position}")]
pub struct ExprError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError {
        position,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Number(Scalar),
    Label(String),
    Neg(Box<Expr>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Scalar),
    Label(String),
    Plus,
    Minus,
    Times,
    Caret,
    Open,
    Close,
}

fn is_label_char(c: char) -> bool {
    c.is_alphanumeric() || c == '\'' || c == '_' || c == '⊗'
}

/// Rewrites `a(x)b` to `a⊗b` when both neighbours are label characters.
fn normalize(chars: &[char]) -> Vec<char> {
    let mut out = Vec::with_capacity(chars.len());
    let mut i = 0;
    while i < chars.len() {
        if i + 2 < chars.len()
            && chars[i] == '('
            && chars[i + 1] == 'x'
            && chars[i + 2] == ')'
            && i > 0
            && is_label_char(chars[i - 1])
            && chars.get(i + 3).is_some_and(|&c| is_label_char(c))
        {
            out.push('⊗');
            i += 3;
        } else {
            out.push(chars[i]);
            i += 1;
        }
    }
    out
}

fn tokenize(input: &str, labels: &[Vec<char>]) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars = normalize(&input.chars().collect::<Vec<_>>());
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            ' ' | '\t' | '\n' => {
                i += 1;
                continue;
            }
            '+' => toks.push((start, Tok::Plus)),
            '-' | '−' => toks.push((start, Tok::Minus)),
            '*' | '.' | '·' => toks.push((start, Tok::Times)),
            '^' => toks.push((start, Tok::Caret)),
            '(' => toks.push((start, Tok::Open)),
            ')' => toks.push((start, Tok::Close)),
            _ => {
                let label_len = labels
                    .iter()
                    .filter(|l| chars[i..].starts_with(l))
                    .map(|l| l.len())
                    .max()
                    .unwrap_or(0);
                let mut num_len = 0;
                if c.is_ascii_digit() {
                    let mut j = i;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j + 1 < chars.len() && chars[j] == '.' && chars[j + 1].is_ascii_digit() {
                        return err(start, "decimal numbers are not allowed; write p/q");
                    }
                    if j + 1 < chars.len() && chars[j] == '/' && chars[j + 1].is_ascii_digit() {
                        j += 1;
                        while j < chars.len() && chars[j].is_ascii_digit() {
                            j += 1;
                        }
                    }
                    num_len = j - i;
                }
                if num_len > 0 && num_len >= label_len {
                    let text: String = chars[i..i + num_len].iter().collect();
                    match parse_scalar(&text) {
                        Some(v) => toks.push((start, Tok::Num(v))),
                        None => return err(start, format!("bad number {text}")),
                    }
                    i += num_len;
                } else if label_len > 0 {
                    toks.push((start, Tok::Label(chars[i..i + label_len].iter().collect())));
                    i += label_len;
                } else {
                    let mut j = i;
                    while j < chars.len() && is_label_char(chars[j]) {
                        j += 1;
                    }
                    let word: String = chars[i..j.max(i + 1)].iter().collect();
                    return err(start, format!("unknown label {word}"));
                }
                continue;
            }
        }
        i += 1;
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut terms = Vec::new();
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            terms.push(if negate { Expr::Neg(Box::new(t)) } else { t });
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut factors = vec![self.factor()?];
        loop {
            match self.peek() {
                Some(Tok::Times) => {
                    self.pos += 1;
                    factors.push(self.factor()?);
                }
                Some(Tok::Num(_)) | Some(Tok::Label(_)) | Some(Tok::Open) => factors.push(self.factor()?),
                _ => break,
            }
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let atom = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let at = self.here();
            match self.toks.get(self.pos) {
                Some((_, Tok::Num(v))) if v.is_integer() && v >= &Scalar::from_integer(0.into()) => {
                    let k: u32 = v.to_integer().try_into().map_err(|_| ExprError {
                        position: at,
                        message: "exponent too large".into(),
                    })?;
                    self.pos += 1;
                    return Ok(Expr::Power(Box::new(atom), k));
                }
                _ => return err(at, "expected a non-negative integer exponent"),
            }
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let at = self.here();
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::Num(v))) => {
                self.pos += 1;
                Ok(Expr::Number(v))
            }
            Some((_, Tok::Label(l))) => {
                self.pos += 1;
                Ok(Expr::Label(l))
            }
            Some((_, Tok::Open)) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return err(self.here(), "expected )");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => err(at, "unexpected symbol"),
            None => err(at, "unexpected end of expression"),
        }
    }
}

/// Parses `input` against the given label set.
pub fn parse<S: AsRef<str>>(input: &str, labels: &[S]) -> Result<Expr, ExprError> {
    let labels: Vec<Vec<char>> = labels.iter().map(|l| l.as_ref().chars().collect()).collect();
    let toks = tokenize(input, &labels)?;
    let end = input.chars().count();
    if toks.is_empty() {
        return err(0, "empty expression");
    }
    let mut p = Parser { toks, pos: 0, end };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return err(p.here(), "unexpected symbol");
    }
    Ok(e)
}

/// A ring in which expressions can be evaluated.
pub trait ExprRing {
    type Value: Clone;
    fn number(&self, c: &Scalar) -> Self::Value;
    fn label(&self, l: &str) -> Option<Self::Value>;
    fn add(&self, x: &Self::Value, y: &Self::Value) -> Self::Value;
    fn neg(&self, x: &Self::Value) -> Self::Value;
    fn mul(&self, x: &Self::Value, y: &Self::Value) -> Self::Value;
}

pub fn evaluate<R: ExprRing>(ring: &R, e: &Expr) -> Result<R::Value, ExprError> {
    Ok(match e {
        Expr::Number(c) => ring.number(c),
        Expr::Label(l) => ring.label(l).ok_or_else(|| ExprError {
            position: 0,
            message: format!("unknown label {l}"),
        })?,
        Expr::Neg(x) => ring.neg(&evaluate(ring, x)?),
        Expr::Sum(xs) => {
            let mut acc = evaluate(ring, &xs[0])?;
            for x in &xs[1..] {
                acc = ring.add(&acc, &evaluate(ring, x)?);
            }
            acc
        }
        Expr::Product(xs) => {
            let mut acc = evaluate(ring, &xs[0])?;
            for x in &xs[1..] {
                acc = ring.mul(&acc, &evaluate(ring, x)?);
            }
            acc
        }
        Expr::Power(x, k) => {
            let base = evaluate(ring, x)?;
            let mut acc = ring.number(&Scalar::from_integer(1.into()));
            for _ in 0..*k {
                acc = ring.mul(&acc, &base);
            }
            acc
        }
    })
}

/// Evaluates in a `DgAlgebra`, giving coordinates in its basis.
pub struct AlgebraRing<'a>(pub &'a crate::algebra::DgAlgebra);

impl ExprRing for AlgebraRing<'_> {
    type Value = crate::linalg::SparseVec;

    fn number(&self, c: &Scalar) -> Self::Value {
        crate::linalg::SparseVec::unit(self.0.unit()).scaled(c)
    }

    fn label(&self, l: &str) -> Option<Self::Value> {
        self.0.index_of(l).map(crate::linalg::SparseVec::unit)
    }

    fn add(&self, x: &Self::Value, y: &Self::Value) -> Self::Value {
        x + y
    }

    fn neg(&self, x: &Self::Value) -> Self::Value {
        -x
    }

    fn mul(&self, x: &Self::Value, y: &Self::Value) -> Self::Value {
        self.0.mul(x, y)
    }
}

/// Plain rationals, for numeric arguments such as `1/2` or `-3`.
pub struct RationalRing;

impl ExprRing for RationalRing {
    type Value = Scalar;

    fn number(&self, c: &Scalar) -> Scalar {
        c.clone()
    }

    fn label(&self, _: &str) -> Option<Scalar> {
        None
    }

    fn add(&self, x: &Scalar, y: &Scalar) -> Scalar {
        x + y
    }

    fn neg(&self, x: &Scalar) -> Scalar {
        -x
    }

    fn mul(&self, x: &Scalar, y: &Scalar) -> Scalar {
        x * y
    }
}

pub fn parse_rational(input: &str) -> Result<Scalar, ExprError> {
    evaluate(&RationalRing, &parse::<&str>(input, &[])?)
}

/// Parses and evaluates an element of `a`.
pub fn parse_element(a: &crate::algebra::DgAlgebra, input: &str) -> Result<crate::linalg::SparseVec, ExprError> {
    let e = parse(input, a.basis().labels())?;
    evaluate(&AlgebraRing(a), &e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::s2xs3;
    use crate::linalg::{int, ratio, SparseVec};
    use crate::tensor::tensor;

    #[test]
    fn tensor_expressions() {
        let a = s2xs3();
        let t = tensor(&a, &a);
        let aa = &t.algebra;
        let v = parse_element(aa, "1*(y⊗xy) + 2(xy⊗y)").unwrap();
        assert_eq!(aa.format(&v), "y⊗xy + 2*xy⊗y");
        let w = parse_element(aa, "y(x)xy − 1/3 xy(x)y").unwrap();
        assert_eq!(aa.format(&w), "y⊗xy - 1/3*xy⊗y");
        // (1⊗y)(y⊗1) = -y⊗y
        let p = parse_element(aa, "(1⊗y)*(y⊗1)").unwrap();
        assert_eq!(aa.format(&p), "-y⊗y");
        assert_eq!(parse_element(aa, "0").unwrap(), SparseVec::new());
    }

    #[test]
    fn products_and_powers() {
        let a = s2xs3();
        assert_eq!(parse_element(&a, "y.x").unwrap(), SparseVec::unit(3));
        assert_eq!(parse_element(&a, "x^2").unwrap(), SparseVec::new());
        assert_eq!(parse_element(&a, "x^0").unwrap(), SparseVec::unit(0));
        assert_eq!(parse_element(&a, "-(x + 1/2 xy)").unwrap(), SparseVec::from_pairs([(1, int(-1)), (3, ratio(-1, 2))]));
        assert_eq!(parse_element(&a, "2xy").unwrap(), SparseVec::from_pairs([(3, int(2))]));
    }

    #[test]
    fn errors_have_positions() {
        let a = s2xs3();
        let e = parse_element(&a, "x + w").unwrap_err();
        assert_eq!(e.position, 4);
        assert!(parse_element(&a, "0.5*x").is_err());
        assert!(parse_element(&a, "(x").is_err());
        assert!(parse_element(&a, "").is_err());
        assert!(parse_element(&a, "x +").is_err());
    }
}
