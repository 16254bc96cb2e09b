use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::{binomial, enumerate_multiindices, sort_with_sign, MultiIndex};
use crate::linalg::Scalar;

/// An alternating form in `C^q(V, k)`, stored by its values on increasing
/// basis wedges.
#[derive(Clone, PartialEq, Eq)]
pub struct TrivCochain {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<MultiIndex, Scalar>,
}

impl TrivCochain {
    pub fn zero(dim: usize, degree: usize) -> Self {
        TrivCochain { dim, degree, coeffs: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, index: MultiIndex, c: Scalar) -> Result<()> {
        if index.len() != self.degree {
            return Err(Error::Dimension(format!(
                "term of degree {} added to a {}-form",
                index.len(),
                self.degree
            )));
        }
        if index.max_entry() > self.dim {
            return Err(Error::IndexOutOfRange { index: index.max_entry(), dim: self.dim });
        }
        if c.is_zero() {
            return Ok(());
        }
        let slot = self.coeffs.entry(index.clone()).or_insert_with(Scalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&index);
        }
        Ok(())
    }

    pub fn get(&self, index: &MultiIndex) -> Scalar {
        self.coeffs.get(index).cloned().unwrap_or_default()
    }

    /// Alternating evaluation on basis vectors.
    pub fn eval(&self, args: &[usize]) -> Scalar {
        match sort_with_sign(args) {
            None => Scalar::zero(),
            Some((idx, s)) => {
                let v = self.get(&idx);
                if s < 0 {
                    -v
                } else {
                    v
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> TrivCochain {
        let mut out = TrivCochain::zero(self.dim, self.degree);
        for (i, x) in &self.coeffs {
            out.add_term(i.clone(), x * c).expect("same shape");
        }
        out
    }

    pub fn add(&self, other: &TrivCochain) -> Result<TrivCochain> {
        if self.dim != other.dim || self.degree != other.degree {
            return Err(Error::Dimension("forms of different shape".into()));
        }
        let mut out = self.clone();
        for (i, x) in &other.coeffs {
            out.add_term(i.clone(), x.clone())?;
        }
        Ok(out)
    }

    pub fn space_dim(dim: usize, degree: usize) -> usize {
        binomial(dim, degree)
    }

    pub fn to_vector(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); Self::space_dim(self.dim, self.degree)];
        for (i, c) in &self.coeffs {
            v[i.rank_in(self.dim)] = c.clone();
        }
        v
    }

    pub fn from_vector(dim: usize, degree: usize, v: &[Scalar]) -> Result<Self> {
        if v.len() != Self::space_dim(dim, degree) {
            return Err(Error::Dimension("vector length does not match form space".into()));
        }
        let mut out = TrivCochain::zero(dim, degree);
        for (idx, x) in enumerate_multiindices(dim, degree).into_iter().zip(v) {
            out.add_term(idx, x.clone())?;
        }
        Ok(out)
    }

    pub fn basis_elements(dim: usize, degree: usize) -> Vec<TrivCochain> {
        enumerate_multiindices(dim, degree)
            .into_iter()
            .map(|idx| {
                let mut c = TrivCochain::zero(dim, degree);
                c.coeffs.insert(idx, Scalar::one());
                c
            })
            .collect()
    }
}

impl fmt::Debug for TrivCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C^{}(V,k)(dim {}) {{", self.degree, self.dim)?;
        for (i, c) in &self.coeffs {
            write!(f, " {i}:{c}")?;
        }
        write!(f, " }}")
    }
}
