use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Matrix, Scalar};

/// A subspace of `Q^n` given by a linearly independent basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Scalar::zero(); ambient_dim];
                v[i] = Scalar::one();
                v
            })
            .collect();
        Subspace { ambient_dim, basis }
    }

    /// Span of arbitrary vectors. The basis is the nonzero rows of the
    /// row-reduced stack, so it is canonical for the subspace.
    pub fn span(ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient_dim);
        }
        assert!(vectors.iter().all(|v| v.len() == ambient_dim), "vector length mismatch");
        let m = Matrix::from_rows(vectors).expect("uniform rows");
        let (r, rank) = m.rref();
        Subspace { ambient_dim, basis: (0..rank).map(|i| r.row(i).to_vec()).collect() }
    }

    /// Wraps vectors the caller knows to be independent, keeping their order.
    pub(crate) fn from_independent(ambient_dim: usize, basis: Vec<Vec<Scalar>>) -> Self {
        debug_assert!(basis.iter().all(|v| v.len() == ambient_dim));
        Subspace { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Matrix with the basis vectors as columns.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim, &self.basis)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).expect("uniform rows").rank() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.ambient_dim, vs))
    }

    /// Solves `U a = W b` and returns the span of the `U a`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let n = self.ambient_dim;
        let (p, q) = (self.dim(), other.dim());
        let mut m = Matrix::zeros(n, p + q);
        for (j, v) in self.basis.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = v[i].clone();
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for i in 0..n {
                m[(i, p + j)] = -&v[i];
            }
        }
        let sols = kernel_basis(&m);
        let vectors = sols
            .basis()
            .iter()
            .map(|x| {
                let mut v = vec![Scalar::zero(); n];
                for (a, u) in x[..p].iter().zip(&self.basis) {
                    if a.is_zero() {
                        continue;
                    }
                    for i in 0..n {
                        v[i] += a * &u[i];
                    }
                }
                v
            })
            .collect();
        Ok(Subspace::span(n, vectors))
    }

    /// Greedily picks, in order, the candidates that are independent modulo
    /// `self`. Deterministic: the same inputs always give the same picks.
    pub fn complete_with(&self, candidates: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let n = self.ambient_dim;
        let p = self.dim();
        let mut cols = self.basis.clone();
        cols.extend(candidates.iter().cloned());
        if cols.is_empty() {
            return Vec::new();
        }
        let mut m = Matrix::from_columns(n, &cols);
        let pivots = m.rref_in_place();
        pivots.into_iter().filter(|&j| j >= p).map(|j| candidates[j - p].clone()).collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Dimension(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}
