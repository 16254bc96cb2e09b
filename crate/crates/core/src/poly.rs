//! Small expression language over named parameters.
//!
//! Used for relation polynomials, parameter-dependent structure constants
//! (`lambda`), deformation denominators and isomorphism matrix entries. There
//! is no symbolic rational-function arithmetic: expressions with division are
//! only ever evaluated at rational points, while division-free expressions can
//! be expanded into [`Poly`].

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linalg::Scalar;

pub type Bindings = BTreeMap<String, Scalar>;

/// Builds bindings from `(name, value)` pairs.
pub fn bindings<'a>(pairs: impl IntoIterator<Item = (&'a str, Scalar)>) -> Bindings {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// A monomial: variable name to positive exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<String, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(BTreeMap::from([(name.to_string(), 1)]))
    }

    pub fn from_exponents<'a>(exps: impl IntoIterator<Item = (&'a str, u32)>) -> Self {
        Monomial(exps.into_iter().filter(|(_, e)| *e > 0).map(|(k, e)| (k.to_string(), e)).collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn exponents(&self) -> &BTreeMap<String, u32> {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (k, e) in &other.0 {
            *m.entry(k.clone()).or_insert(0) += e;
        }
        Monomial(m)
    }

    pub fn eval(&self, at: &Bindings) -> Result<Scalar> {
        let mut acc = Scalar::one();
        for (k, e) in &self.0 {
            let v = at.get(k).ok_or_else(|| Error::Parse(format!("unbound variable {k:?}")))?;
            acc = &acc * &v.pow(*e as i32).expect("positive power");
        }
        Ok(acc)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let s = self
            .0
            .iter()
            .map(|(k, e)| if *e == 1 { k.clone() } else { format!("{k}^{e}") })
            .join("*");
        write!(f, "{s}")
    }
}

/// Multivariate polynomial with rational coefficients; zero terms are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(name: &str) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(name), Scalar::one());
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn variables(&self) -> Vec<String> {
        self.terms.keys().flat_map(|m| m.0.keys().cloned()).sorted().dedup().collect()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// The homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, degree: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut p = Poly::zero();
        for (m, x) in &self.terms {
            p.add_term(m.clone(), x * c);
        }
        p
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        p
    }

    pub fn eval(&self, at: &Bindings) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            acc += c * &m.eval(at)?;
        }
        Ok(acc)
    }

    /// Substitutes the bound variables, leaving the others symbolic.
    pub fn substitute(&self, at: &Bindings) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in &self.terms {
            let mut rest = BTreeMap::new();
            let mut c = c.clone();
            for (k, e) in &m.0 {
                match at.get(k) {
                    Some(v) => c = &c * &v.pow(*e as i32).expect("positive power"),
                    None => {
                        rest.insert(k.clone(), *e);
                    }
                }
            }
            p.add_term(Monomial(rest), c);
        }
        p
    }

    pub fn parse(s: &str) -> Result<Poly> {
        Expr::parse(s)?.to_poly()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.signum() < 0;
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.0.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Parsed arithmetic expression over rationals and named variables.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Scalar),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr> {
        let tokens = tokenize(s)?;
        let mut p = Parser { tokens: &tokens, pos: 0, src: s };
        let e = p.expr()?;
        p.expect_end()?;
        Ok(e)
    }

    pub fn constant(c: Scalar) -> Expr {
        Expr::Num(c)
    }

    pub fn eval(&self, at: &Bindings) -> Result<Scalar> {
        Ok(match self {
            Expr::Num(c) => c.clone(),
            Expr::Var(v) => {
                at.get(v).cloned().ok_or_else(|| Error::Parse(format!("unbound variable {v:?}")))?
            }
            Expr::Neg(a) => -a.eval(at)?,
            Expr::Add(a, b) => a.eval(at)? + b.eval(at)?,
            Expr::Sub(a, b) => a.eval(at)? - b.eval(at)?,
            Expr::Mul(a, b) => a.eval(at)? * b.eval(at)?,
            Expr::Div(a, b) => {
                let den = b.eval(at)?;
                if den.is_zero() {
                    return Err(Error::VanishingDenominator);
                }
                a.eval(at)? / den
            }
            Expr::Pow(a, e) => a.eval(at)?.pow(*e).ok_or(Error::VanishingDenominator)?,
        })
    }

    /// Expands into a polynomial; fails on division by a non-constant or
    /// negative powers.
    pub fn to_poly(&self) -> Result<Poly> {
        Ok(match self {
            Expr::Num(c) => Poly::constant(c.clone()),
            Expr::Var(v) => Poly::var(v),
            Expr::Neg(a) => a.to_poly()?.scale(&-Scalar::one()),
            Expr::Add(a, b) => a.to_poly()?.add(&b.to_poly()?),
            Expr::Sub(a, b) => a.to_poly()?.add(&b.to_poly()?.scale(&-Scalar::one())),
            Expr::Mul(a, b) => a.to_poly()?.mul(&b.to_poly()?),
            Expr::Div(a, b) => {
                let den = b.to_poly()?;
                let c = match den.terms.iter().next() {
                    Some((m, c)) if den.terms.len() == 1 && m.0.is_empty() => c.clone(),
                    _ => return Err(Error::Parse("not a polynomial: division by a non-constant".into())),
                };
                a.to_poly()?.scale(&c.recip().ok_or(Error::VanishingDenominator)?)
            }
            Expr::Pow(a, e) => {
                if *e < 0 {
                    return Err(Error::Parse("not a polynomial: negative power".into()));
                }
                let base = a.to_poly()?;
                (0..*e).fold(Poly::constant(Scalar::one()), |acc, _| acc.mul(&base))
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Token {
    Num(Scalar),
    Ident(String),
    Op(char),
    /// `psi[{i,j,...}->m]` or `phi[...]`: a basis cochain; `m = 0` for `psi[{i,j}]`.
    Basis(Vec<usize>, usize),
}

pub(crate) fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |msg: &str, at: usize| Error::Parse(format!("{msg} at offset {at} in {s:?}"));
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Num(text.parse()?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            if (name == "psi" || name == "phi") && chars.get(i) == Some(&'[') {
                let close = chars[i..]
                    .iter()
                    .position(|&c| c == ']')
                    .ok_or_else(|| err("unterminated basis cochain", start))?;
                let body: String = chars[i + 1..i + close].iter().collect();
                let (indices, target) = parse_basis_body(&body).ok_or_else(|| err("malformed basis cochain", start))?;
                out.push(Token::Basis(indices, target));
                i += close + 1;
            } else {
                out.push(Token::Ident(name));
            }
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(err(&format!("unexpected character {c:?}"), i));
        }
    }
    Ok(out)
}

/// Parses `{1,2}->3`, or `{1,2}` (target 0) for a scalar-valued form.
fn parse_basis_body(body: &str) -> Option<(Vec<usize>, usize)> {
    let (lhs, rhs) = body.split_once("->").unwrap_or((body, "0"));
    let lhs = lhs.trim().strip_prefix('{')?.strip_suffix('}')?;
    let indices = if lhs.trim().is_empty() {
        Vec::new()
    } else {
        lhs.split(',').map(|x| x.trim().parse().ok()).collect::<Option<Vec<usize>>>()?
    };
    Some((indices, rhs.trim().parse().ok()?))
}

pub(crate) struct Parser<'a> {
    pub(crate) tokens: &'a [Token],
    pub(crate) pos: usize,
    pub(crate) src: &'a str,
}

impl<'a> Parser<'a> {
    pub(crate) fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    pub(crate) fn peek_op(&self, op: char) -> bool {
        matches!(self.peek(), Some(Token::Op(c)) if *c == op)
    }

    pub(crate) fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} (token {}) in {:?}", self.pos, self.src))
    }

    pub(crate) fn expect_end(&self) -> Result<()> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    pub(crate) fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.peek_op('-') {
            self.pos += 1;
            Expr::Neg(Box::new(self.term()?))
        } else {
            if self.peek_op('+') {
                self.pos += 1;
            }
            self.term()?
        };
        loop {
            if self.peek_op('+') {
                self.pos += 1;
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.peek_op('-') {
                self.pos += 1;
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        loop {
            if self.peek_op('*') {
                self.pos += 1;
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.peek_op('/') {
                self.pos += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    pub(crate) fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek_op('^') {
            self.pos += 1;
            let neg = if self.peek_op('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = match self.peek() {
                Some(Token::Num(n)) if n.is_integer() => {
                    let v: i32 = n.to_string().parse().map_err(|_| self.error("exponent too large"))?;
                    self.pos += 1;
                    v
                }
                _ => return Err(self.error("expected integer exponent")),
            };
            return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Token::Ident(v)) => {
                self.pos += 1;
                Ok(Expr::Var(v))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.peek_op(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.power()?)))
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(pairs: &[(&str, i64)]) -> Bindings {
        bindings(pairs.iter().map(|&(k, v)| (k, Scalar::from_int(v))))
    }

    #[test]
    fn parse_relation_polynomial() {
        let r3 = Poly::parse("2*t1*t5 - 2*t6*t2").unwrap();
        assert_eq!(r3.eval(&at(&[("t1", 1), ("t5", 2), ("t6", 1), ("t2", 2)])).unwrap(), Scalar::zero());
        assert_eq!(
            r3.eval(&at(&[("t1", 1), ("t5", 1), ("t6", 0), ("t2", 0)])).unwrap(),
            Scalar::from_int(2)
        );
        assert_eq!(r3.min_degree(), Some(2));
        let r1 = Poly::parse("-2*t2*t4-4*t5*t3-2*t5*t4*t3+2*t5^2*t1+2*t5*t6*t2").unwrap();
        assert_eq!(r1.homogeneous_part(2), Poly::parse("-2*t2*t4 - 4*t3*t5").unwrap());
        assert_eq!(r1.variables(), vec!["t1", "t2", "t3", "t4", "t5", "t6"]);
    }

    #[test]
    fn rational_expressions() {
        let e = Expr::parse("(1)/(1+t1)").unwrap();
        assert_eq!(e.eval(&at(&[("t1", 1)])).unwrap(), Scalar::new(1, 2));
        assert!(matches!(e.eval(&at(&[("t1", -1)])), Err(Error::VanishingDenominator)));
        assert!(e.to_poly().is_err());
        let g = Expr::parse("-1/2*t^-1").unwrap();
        assert_eq!(g.eval(&at(&[("t", 2)])).unwrap(), Scalar::new(-1, 4));
        assert_eq!(Expr::parse("1/2*x").unwrap().to_poly().unwrap(), Poly::var("x").scale(&Scalar::new(1, 2)));
    }

    #[test]
    fn partial_substitution() {
        let p = Poly::parse("lambda*t1 + lambda^2 + t2").unwrap();
        let q = p.substitute(&at(&[("lambda", 3)]));
        assert_eq!(q, Poly::parse("3*t1 + 9 + t2").unwrap());
    }

    #[test]
    fn display_roundtrip() {
        let p = Poly::parse("3 - 1/2*x^2*y + y").unwrap();
        assert_eq!(Poly::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn parse_errors() {
        assert!(Expr::parse("2*").is_err());
        assert!(Expr::parse("(x").is_err());
        assert!(Expr::parse("x $ y").is_err());
        assert!(Expr::parse("x y").is_err());
        assert!(Expr::parse("y").unwrap().eval(&Bindings::new()).is_err());
    }
}
