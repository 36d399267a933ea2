//! Laurent polynomials with exact complex-rational coefficients.
//!
//! Expressions are parsed from a small grammar: sums of products of numbers,
//! variables `z1..zd` (plain `z` when `d = 1`), named parameters, parentheses,
//! integer powers and division by single terms. Products are expanded, so
//! `"(z1-2)(z1-4)"` is accepted.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, to_f64};
use crate::subdivision::{LatticePolytope, Lifting};
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Self {
        Self(entries)
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl From<&[i64]> for ExponentVector {
    fn from(v: &[i64]) -> Self {
        Self(v.to_vec())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Complex number with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CRational {
    pub re: Rational,
    pub im: Rational,
}

impl CRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.re, -&self.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Self::new(&self.re / &norm, -&self.im / &norm))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
}

impl fmt::Display for CRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "({}*i)", self.im)
        } else {
            write!(f, "({}+{}*i)", self.re, self.im)
        }
    }
}

/// A nonzero Laurent polynomial in `dim` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    dim: usize,
    terms: BTreeMap<ExponentVector, CRational>,
}

impl LaurentPolynomial {
    /// Builds from a term map, dropping zero coefficients.
    pub fn new(dim: usize, terms: BTreeMap<ExponentVector, CRational>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        let mut kept = BTreeMap::new();
        for (e, c) in terms {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.dim(),
                });
            }
            if !c.is_zero() {
                kept.insert(e, c);
            }
        }
        if kept.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self { dim, terms: kept })
    }

    /// Convenience constructor from `(exponent, real coefficient)` pairs.
    pub fn from_real_terms(dim: usize, terms: &[(Vec<i64>, Rational)]) -> Result<Self> {
        let mut map: BTreeMap<ExponentVector, CRational> = BTreeMap::new();
        for (e, c) in terms {
            let entry = map
                .entry(ExponentVector(e.clone()))
                .or_insert_with(CRational::zero);
            *entry = entry.add(&CRational::real(c.clone()));
        }
        Self::new(dim, map)
    }

    pub fn monomial(exponent: ExponentVector, coefficient: CRational) -> Result<Self> {
        let dim = exponent.dim();
        Self::new(dim, BTreeMap::from([(exponent, coefficient)]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, CRational> {
        &self.terms
    }

    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Option<&CRational> {
        self.terms.get(e)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Sum, or `ZeroPolynomial` when everything cancels.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Self::new(self.dim, add_terms(&self.terms, &other.terms))
    }

    pub fn scale(&self, c: &CRational) -> Result<Self> {
        Self::new(
            self.dim,
            self.terms.iter().map(|(e, v)| (e.clone(), v.mul(c))).collect(),
        )
    }

    /// Nonnegative integer power.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::monomial(ExponentVector::zero(self.dim), CRational::one())
            .expect("one is nonzero");
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Evaluates at a point of the complex torus.
    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        debug_assert_eq!(z.len(), self.dim);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.0.iter()
                    .zip(z)
                    .fold(c.to_c64(), |acc, (&a, zj)| acc * zj.powi(a as i32))
            })
            .sum()
    }

    /// Partial derivative with respect to variable `var` (0-based).
    pub fn partial_derivative(&self, var: usize) -> Option<Self> {
        let terms: BTreeMap<ExponentVector, CRational> = self
            .terms
            .iter()
            .filter(|(e, _)| e.0[var] != 0)
            .map(|(e, c)| {
                let mut d = e.clone();
                d.0[var] -= 1;
                (d, c.mul(&CRational::real(rational::int(e.0[var]))))
            })
            .collect();
        Self::new(self.dim, terms).ok()
    }

    /// Coefficients as floating-point complex numbers, keyed by exponent.
    pub fn float_terms(&self) -> Vec<(Vec<i64>, Complex64)> {
        self.terms
            .iter()
            .map(|(e, c)| (e.0.clone(), c.to_c64()))
            .collect()
    }

    pub fn newton_polytope(&self) -> Result<LatticePolytope> {
        let points: Vec<Vec<i64>> = self.terms.keys().map(|e| e.0.clone()).collect();
        LatticePolytope::from_points(self.dim, &points)
    }

    /// Tropicalization `x ↦ max_a (⟨a,x⟩ − h(a))` over the support; `h ≡ 0` when absent.
    pub fn tropicalize(&self, h: Option<&Lifting>) -> Result<TropicalFunction> {
        let mut terms = BTreeMap::new();
        for e in self.terms.keys() {
            let height = match h {
                None => Rational::zero(),
                Some(l) => l.get(e.as_slice()).cloned().ok_or_else(|| Error::MissingLifting {
                    point: e.0.clone(),
                })?,
            };
            terms.insert(e.clone(), height);
        }
        Ok(TropicalFunction {
            dim: self.dim,
            terms,
            convention: Convention::MaxPlus,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(e, c)| TermJson {
                exp: e.0.clone(),
                re: c.re.clone(),
                im: c.im.clone(),
            })
            .collect();
        serde_json::to_value(PolyJson {
            dim: self.dim,
            terms,
        })
        .expect("polynomial JSON")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let p: PolyJson = serde_json::from_value(v.clone())?;
        let mut map: BTreeMap<ExponentVector, CRational> = BTreeMap::new();
        for t in p.terms {
            let entry = map.entry(ExponentVector(t.exp)).or_insert_with(CRational::zero);
            *entry = entry.add(&CRational::new(t.re, t.im));
        }
        Self::new(p.dim, map)
    }
}

fn add_terms(
    a: &BTreeMap<ExponentVector, CRational>,
    b: &BTreeMap<ExponentVector, CRational>,
) -> BTreeMap<ExponentVector, CRational> {
    let mut out = a.clone();
    for (e, c) in b {
        let entry = out.entry(e.clone()).or_insert_with(CRational::zero);
        *entry = entry.add(c);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl std::ops::Mul<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    /// Product; panics if the dimensions differ.
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let mut terms: BTreeMap<ExponentVector, CRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let entry = terms.entry(ea.add(eb)).or_insert_with(CRational::zero);
                *entry = entry.add(&ca.mul(cb));
            }
        }
        LaurentPolynomial::new(self.dim, terms).expect("product of nonzero polynomials")
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let term = format_term(e, c);
            if k == 0 {
                write!(f, "{term}")?;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

fn format_term(e: &ExponentVector, c: &CRational) -> String {
    let mono: Vec<String> = e
        .0
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(j, &a)| {
            if a == 1 {
                format!("z{}", j + 1)
            } else {
                format!("z{}^{}", j + 1, a)
            }
        })
        .collect();
    let mono = mono.join("*");
    if mono.is_empty() {
        return c.to_string();
    }
    if c.is_real() && c.re.is_one() {
        mono
    } else if c.is_real() && (-&c.re).is_one() {
        format!("-{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    dim: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<i64>,
    #[serde(with = "crate::rational::text")]
    re: Rational,
    #[serde(with = "crate::rational::text", default = "Rational::zero")]
    im: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `Trop(x) = max_a (⟨a,x⟩ − h(a))`
    MaxPlus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalFunction {
    dim: usize,
    terms: BTreeMap<ExponentVector, Rational>,
    convention: Convention,
}

impl TropicalFunction {
    pub fn from_heights(dim: usize, terms: BTreeMap<ExponentVector, Rational>) -> Self {
        Self {
            dim,
            terms,
            convention: Convention::MaxPlus,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, Rational> {
        &self.terms
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    fn term_value(a: &ExponentVector, h: &Rational, x: &[Rational]) -> Rational {
        a.0.iter()
            .zip(x)
            .fold(-h.clone(), |acc, (&ai, xi)| acc + rational::int(ai) * xi)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(a, h)| Self::term_value(a, h, x))
            .max()
            .expect("nonempty tropical function")
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(a, h)| {
                a.0.iter().zip(x).map(|(&ai, xi)| ai as f64 * xi).sum::<f64>() - to_f64(h)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Exponents attaining the maximum at `x`.
    pub fn argmax(&self, x: &[Rational]) -> Vec<ExponentVector> {
        let best = self.eval(x);
        self.terms
            .iter()
            .filter(|(a, h)| Self::term_value(a, h, x) == best)
            .map(|(a, _)| a.clone())
            .collect()
    }
}

impl fmt::Display for TropicalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, h)| {
                let mut s = String::new();
                for (j, &aj) in a.0.iter().enumerate() {
                    if aj == 0 {
                        continue;
                    }
                    let var = format!("x{}", j + 1);
                    let piece = match aj {
                        1 => var,
                        -1 => format!("-{var}"),
                        _ => format!("{aj}{var}"),
                    };
                    if !s.is_empty() && !piece.starts_with('-') {
                        s.push('+');
                    }
                    s.push_str(&piece);
                }
                let c = -h.clone();
                if s.is_empty() {
                    s = c.to_string();
                } else if c.is_positive() {
                    s = format!("{s}+{c}");
                } else if c.is_negative() {
                    s = format!("{s}{c}");
                }
                s
            })
            .collect();
        write!(f, "max({})", parts.join(", "))
    }
}

/// Parses an expression in variables `z1..z{dim}`.
pub fn parse_laurent(text: &str, dim: usize) -> Result<LaurentPolynomial> {
    parse_laurent_with(text, dim, &BTreeMap::new())
}

/// As [`parse_laurent`], substituting named parameters such as `t`.
pub fn parse_laurent_with(
    text: &str,
    dim: usize,
    params: &BTreeMap<String, CRational>,
) -> Result<LaurentPolynomial> {
    if dim == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    let tokens = lex(text, dim, params)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        dim,
        end: text.len(),
    };
    let value = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(syntax(t.pos, "unexpected token"));
    }
    LaurentPolynomial::new(dim, value)
}

fn syntax(position: usize, message: &str) -> Error {
    Error::Syntax {
        position,
        message: message.to_string(),
    }
}

#[derive(Debug, Clone)]
enum Tok {
    Const(CRational),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn lex(text: &str, dim: usize, params: &BTreeMap<String, CRational>) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, pos: start });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            // exponent part only when followed by a digit
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let value = rational::parse_decimal(&text[start..i])
                .ok_or_else(|| syntax(start, "malformed number"))?;
            let imaginary = i < bytes.len()
                && bytes[i] == b'i'
                && !bytes
                    .get(i + 1)
                    .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_');
            let constant = if imaginary {
                i += 1;
                CRational::new(Rational::zero(), value)
            } else {
                CRational::real(value)
            };
            out.push(Token {
                tok: Tok::Const(constant),
                pos: start,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let name = &text[start..i];
            let tok = if let Some(v) = params.get(name) {
                Tok::Const(v.clone())
            } else if name == "i" {
                Tok::Const(CRational::i())
            } else if name == "z" && dim == 1 {
                Tok::Var(0)
            } else if let Some(k) = name.strip_prefix('z').and_then(|k| k.parse::<usize>().ok()) {
                if k == 0 || k > dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: k,
                    });
                }
                Tok::Var(k - 1)
            } else {
                return Err(syntax(start, &format!("unknown identifier {name:?}")));
            };
            out.push(Token { tok, pos: start });
            continue;
        }
        return Err(syntax(start, &format!("unexpected character {c:?}")));
    }
    Ok(out)
}

type Terms = BTreeMap<ExponentVector, CRational>;

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    dim: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn constant(&self, c: CRational) -> Terms {
        let mut t = Terms::new();
        if !c.is_zero() {
            t.insert(ExponentVector::zero(self.dim), c);
        }
        t
    }

    fn expr(&mut self) -> Result<Terms> {
        let mut acc = Terms::new();
        let mut first = true;
        loop {
            let sign = match self.peek().map(|t| &t.tok) {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    1
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let mut term = self.term()?;
            if sign < 0 {
                term = term.into_iter().map(|(e, c)| (e, c.neg())).collect();
            }
            acc = add_terms(&acc, &term);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().map(|t| &t.tok) {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = mul_terms(&acc, &rhs);
                }
                Some(Tok::Slash) => {
                    let at = self.here();
                    self.pos += 1;
                    let rhs = self.factor()?;
                    let inv = invert_monomial(&rhs)
                        .ok_or_else(|| syntax(at, "division by a non-monomial"))?;
                    acc = mul_terms(&acc, &inv);
                }
                Some(Tok::Const(_) | Tok::Var(_) | Tok::LParen) => {
                    let rhs = self.factor()?;
                    acc = mul_terms(&acc, &rhs);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Terms> {
        if let Some(Tok::Minus) = self.peek().map(|t| &t.tok) {
            self.pos += 1;
            let inner = self.factor()?;
            return Ok(inner.into_iter().map(|(e, c)| (e, c.neg())).collect());
        }
        let base_pos = self.here();
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek().map(|t| &t.tok) {
            self.pos += 1;
            let k = self.exponent()?;
            return power(&base, k, self.dim).ok_or_else(|| {
                syntax(base_pos, "negative power of a non-monomial")
            });
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        let parenthesized = matches!(self.peek().map(|t| &t.tok), Some(Tok::LParen));
        if parenthesized {
            self.pos += 1;
        }
        let mut sign = 1;
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Minus) => {
                sign = -1;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        let at = self.here();
        let k = match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Const(c)) if c.is_real() && c.re.is_integer() => {
                self.pos += 1;
                rational::to_i64(&c.re).ok_or_else(|| syntax(at, "exponent too large"))?
            }
            _ => return Err(syntax(at, "expected an integer exponent")),
        };
        if parenthesized {
            self.expect_rparen()?;
        }
        Ok(sign * k)
    }

    fn expect_rparen(&mut self) -> Result<()> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::RParen) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(syntax(self.here(), "expected ')'")),
        }
    }

    fn atom(&mut self) -> Result<Terms> {
        let at = self.here();
        let Some(token) = self.peek().cloned() else {
            return Err(syntax(at, "unexpected end of input"));
        };
        self.pos += 1;
        match token.tok {
            Tok::Const(c) => Ok(self.constant(c)),
            Tok::Var(j) => {
                let mut e = ExponentVector::zero(self.dim);
                e.0[j] = 1;
                Ok(Terms::from([(e, CRational::one())]))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            _ => Err(syntax(at, "expected a number, variable or '('")),
        }
    }
}

fn mul_terms(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let entry = out.entry(ea.add(eb)).or_insert_with(CRational::zero);
            *entry = entry.add(&ca.mul(cb));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn invert_monomial(t: &Terms) -> Option<Terms> {
    if t.len() != 1 {
        return None;
    }
    let (e, c) = t.iter().next()?;
    Some(Terms::from([(e.neg(), c.inv()?)]))
}

fn power(base: &Terms, k: i64, dim: usize) -> Option<Terms> {
    let (b, n) = if k < 0 {
        (invert_monomial(base)?, k.unsigned_abs())
    } else {
        (base.clone(), k as u64)
    };
    let mut acc = Terms::from([(ExponentVector::zero(dim), CRational::one())]);
    for _ in 0..n {
        acc = mul_terms(&acc, &b);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn real_map(pairs: &[(&[i64], i64)]) -> BTreeMap<ExponentVector, CRational> {
        pairs
            .iter()
            .map(|(e, c)| (ExponentVector(e.to_vec()), CRational::real(int(*c))))
            .collect()
    }

    #[test]
    fn parses_unit_simplex() {
        let f = parse_laurent("1 + z1 + z2", 2).unwrap();
        assert_eq!(f.terms(), &real_map(&[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]));
    }

    #[test]
    fn parses_parameter_and_negative_powers() {
        let params = BTreeMap::from([("t".to_string(), CRational::one())]);
        let f = parse_laurent_with("t + z1 + z2 + z1^-1*z2^-1", 2, &params).unwrap();
        assert_eq!(
            f.terms(),
            &real_map(&[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1), (&[-1, -1], 1)])
        );
        let g = parse_laurent_with("t + z1 + z2 + 1/(z1 z2)", 2, &params).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn expands_products() {
        let f = parse_laurent("(z1-2)(z1-4)", 1).unwrap();
        assert_eq!(f.terms(), &real_map(&[(&[0], 8), (&[1], -6), (&[2], 1)]));
        let g = parse_laurent("(z - 2)*(z - 4)", 1).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn complex_and_decimal_coefficients() {
        let f = parse_laurent("0.5 + 2i*z1 - i", 1).unwrap();
        assert_eq!(
            f.coefficient(&ExponentVector(vec![0])).unwrap(),
            &CRational::new(ratio(1, 2), int(-1))
        );
        assert_eq!(
            f.coefficient(&ExponentVector(vec![1])).unwrap(),
            &CRational::new(int(0), int(2))
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse_laurent("1 + z1 $ z2", 2) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_laurent("z3", 2),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
        assert!(matches!(parse_laurent("z1 - z1", 2), Err(Error::ZeroPolynomial)));
        assert!(matches!(
            parse_laurent("1/(1+z1)", 1),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(parse_laurent("(1+z1", 1), Err(Error::Syntax { .. })));
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "1 + z1 + z2",
            "3/4*z1^-2*z2 - 7 + (1/2+3*i)*z2^5",
            "-z1 + 2i*z2 - 1/3*z1*z2",
        ] {
            let f = parse_laurent(text, 2).unwrap();
            let g = parse_laurent(&f.to_string(), 2).unwrap();
            assert_eq!(f, g, "{text} -> {f}");
        }
    }

    #[test]
    fn json_round_trip() {
        let f = parse_laurent("3/4*z1^-2*z2 - 7 + (1/2+3*i)*z2^5", 2).unwrap();
        let g = LaurentPolynomial::from_json(&f.to_json()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn evaluation_and_derivative() {
        let f = parse_laurent("(z-2)(z-4)", 1).unwrap();
        assert_eq!(f.eval(&[Complex64::new(2.0, 0.0)]), Complex64::new(0.0, 0.0));
        let df = f.partial_derivative(0).unwrap();
        assert_eq!(df.eval(&[Complex64::new(3.0, 0.0)]), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn tropical_display_and_values() {
        let params = BTreeMap::from([("t".to_string(), CRational::one())]);
        let f = parse_laurent_with("t + z1 + z2 + 1/(z1 z2)", 2, &params).unwrap();
        let mut h = Lifting::zero_on(&f.support());
        h.set(&[0, 0], int(-1));
        let trop = f.tropicalize(Some(&h)).unwrap();
        assert_eq!(trop.to_string(), "max(-x1-x2, 1, x2, x1)");
        assert_eq!(trop.eval(&[int(0), int(0)]), int(1));
        assert_eq!(trop.eval(&[int(3), int(0)]), int(3));
        let flat = f.tropicalize(None).unwrap();
        assert_eq!(flat.argmax(&[int(0), int(0)]).len(), 4);
    }

    #[test]
    fn tropicalize_requires_heights_on_support() {
        let f = parse_laurent("1 + z1 + z2", 2).unwrap();
        let h = Lifting::zero_on(&[ExponentVector(vec![0, 0])]);
        assert!(matches!(
            f.tropicalize(Some(&h)),
            Err(Error::MissingLifting { .. })
        ));
    }
}
