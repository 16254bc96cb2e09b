//! Text syntax for cochains: a signed sum of terms `coef*psi[{i,j}->m]`,
//! where `coef` is any expression over numbers and named parameters.
//! Scalar-valued forms drop the target: `psi[{1,2,3}]`.

use std::fmt;

use crate::cochains::{AdjCochain, TrivCochain};
use crate::error::{Error, Result};
use crate::poly::{tokenize, Bindings, Expr, Parser, Token};

/// One parsed term before its coefficient is evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicTerm {
    pub coeff: Expr,
    pub indices: Vec<usize>,
    /// Output basis index, 0 for scalar-valued forms.
    pub target: usize,
}

pub fn parse_terms(s: &str) -> Result<Vec<SymbolicTerm>> {
    let tokens = tokenize(s)?;
    let err = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
    if tokens.is_empty() {
        return Err(err("empty cochain"));
    }
    if tokens == [Token::Num(crate::linalg::Scalar::zero())] {
        return Ok(Vec::new());
    }
    // Split at top-level binary + and -.
    let mut pieces: Vec<Vec<Token>> = vec![Vec::new()];
    let mut depth = 0i32;
    for (pos, t) in tokens.iter().enumerate() {
        match t {
            Token::Op('(') => depth += 1,
            Token::Op(')') => depth -= 1,
            Token::Op(c @ ('+' | '-')) if depth == 0 && pos > 0 => {
                let binary = !matches!(tokens[pos - 1], Token::Op('*' | '/' | '^' | '(' | '+' | '-'));
                if binary {
                    pieces.push(if *c == '-' { vec![Token::Op('-')] } else { Vec::new() });
                    continue;
                }
            }
            _ => {}
        }
        pieces.last_mut().unwrap().push(t.clone());
    }
    if depth != 0 {
        return Err(err("unbalanced parentheses"));
    }
    pieces.into_iter().map(|p| split_term(p, s)).collect()
}

fn split_term(mut toks: Vec<Token>, src: &str) -> Result<SymbolicTerm> {
    let err = |msg: &str| Error::Parse(format!("{msg} in {src:?}"));
    let basis: Vec<usize> = toks
        .iter()
        .enumerate()
        .filter(|(_, t)| matches!(t, Token::Basis(..)))
        .map(|(i, _)| i)
        .collect();
    let [at] = basis[..] else {
        return Err(err("each term needs exactly one basis cochain"));
    };
    let Token::Basis(indices, target) = toks[at].clone() else { unreachable!() };
    let before = at.checked_sub(1).map(|i| toks[i].clone());
    let after = toks.get(at + 1).cloned();
    match (before, after) {
        (Some(Token::Op('*')), _) => {
            toks.drain(at - 1..=at);
        }
        (_, Some(Token::Op('*'))) => {
            toks.drain(at..=at + 1);
        }
        (_, Some(Token::Op('/'))) | (_, None) | (Some(Token::Op('-' | '+')), _) | (None, _) => {
            toks[at] = Token::Num(crate::linalg::Scalar::one());
        }
        _ => return Err(err("basis cochain must be joined by '*'")),
    }
    if toks.is_empty() || toks == [Token::Op('-')] {
        toks.push(Token::Num(crate::linalg::Scalar::one()));
    }
    let mut parser = Parser { tokens: &toks, pos: 0, src };
    let coeff = parser.expr()?;
    parser.expect_end()?;
    Ok(SymbolicTerm { coeff, indices, target })
}

/// Parses a V-valued cochain on a `dim`-dimensional space.
pub fn parse_adj(s: &str, dim: usize, at: &Bindings) -> Result<AdjCochain> {
    let terms = parse_terms(s)?;
    let degree = terms.first().map_or(0, |t| t.indices.len());
    let mut out = AdjCochain::zero(dim, degree);
    for t in terms {
        if t.target == 0 {
            return Err(Error::Parse(format!("missing '->target' in {s:?}")));
        }
        out.add_unsorted(&t.indices, t.target, t.coeff.eval(at)?)?;
    }
    Ok(out)
}

/// Like [`parse_adj`] but with an explicit degree, so `"0"` parses.
pub fn parse_adj_degree(s: &str, dim: usize, degree: usize, at: &Bindings) -> Result<AdjCochain> {
    let c = parse_adj(s, dim, at)?;
    if c.is_zero() {
        return Ok(AdjCochain::zero(dim, degree));
    }
    if c.degree() != degree {
        return Err(Error::Dimension(format!("expected a {degree}-cochain, got degree {}", c.degree())));
    }
    Ok(c)
}

/// Parses a scalar-valued alternating form.
pub fn parse_triv(s: &str, dim: usize, at: &Bindings) -> Result<TrivCochain> {
    let terms = parse_terms(s)?;
    let degree = terms.first().map_or(0, |t| t.indices.len());
    let mut out = TrivCochain::zero(dim, degree);
    for t in terms {
        if t.target != 0 {
            return Err(Error::Parse(format!("scalar form with a target in {s:?}")));
        }
        if t.indices.len() != degree {
            return Err(Error::Dimension("terms of mixed degree".into()));
        }
        let Some((idx, sign)) = crate::exterior::sort_with_sign(&t.indices) else { continue };
        let c = t.coeff.eval(at)?;
        out.add_term(idx, if sign < 0 { -c } else { c })?;
    }
    Ok(out)
}

impl fmt::Display for TrivCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms().enumerate() {
            let neg = c.signum() < 0;
            let a = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            let inner: Vec<String> = idx.entries().iter().map(|i| i.to_string()).collect();
            write!(f, "psi[{{{}}}]", inner.join(","))?;
        }
        Ok(())
    }
}
