//! Adjoint, trivial, cyclic and reduced cyclic cohomology, computed from
//! explicit coboundary matrices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cochains::{
    coboundary_adj, coboundary_triv, AdjCochain, BilinearForm, LieAlgebra, MetricAlgebra, TrivCochain,
};
use crate::error::{Error, Result};
use crate::exterior::enumerate_multiindices;
use crate::linalg::{image, kernel_basis, Matrix, Scalar, Subspace};

/// Matrix of `D: C^p(V,V) -> C^{p+1}(V,V)` in the basis order of
/// [`AdjCochain::to_vector`].
pub fn coboundary_matrix_adj(alg: &LieAlgebra, p: usize) -> Matrix {
    let n = alg.dim();
    let cols: Vec<Vec<Scalar>> = AdjCochain::basis_elements(n, p)
        .iter()
        .map(|c| coboundary_adj(alg, c).expect("same dimension").to_vector())
        .collect();
    Matrix::from_columns(AdjCochain::space_dim(n, p + 1), &cols)
}

/// Matrix of `D: C^q(V,k) -> C^{q+1}(V,k)`.
pub fn coboundary_matrix_triv(alg: &LieAlgebra, q: usize) -> Matrix {
    let n = alg.dim();
    let cols: Vec<Vec<Scalar>> = TrivCochain::basis_elements(n, q)
        .iter()
        .map(|c| coboundary_triv(alg, c).expect("same dimension").to_vector())
        .collect();
    Matrix::from_columns(TrivCochain::space_dim(n, q + 1), &cols)
}

/// A cohomology group: its dimension and cocycles whose classes form a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup<C> {
    pub dim: usize,
    pub representatives: Vec<C>,
}

fn require_jacobi(alg: &LieAlgebra) -> Result<()> {
    if alg.is_jacobi() {
        Ok(())
    } else {
        let dd = crate::cochains::nr_bracket(alg.cochain(), alg.cochain())?;
        Err(Error::Jacobi(dd.to_string()))
    }
}

/// Cocycles and coboundaries of the adjoint complex in one degree.
fn adjoint_cocycles(alg: &LieAlgebra, n: usize) -> (Subspace, Subspace) {
    let z = kernel_basis(&coboundary_matrix_adj(alg, n));
    let b = if n == 0 {
        Subspace::zero(z.ambient_dim())
    } else {
        image(&coboundary_matrix_adj(alg, n - 1))
    };
    (z, b)
}

fn quotient<C>(z: &Subspace, b: &Subspace, build: impl Fn(&[Scalar]) -> C) -> CohomologyGroup<C> {
    let reps = b.complete_with(z.basis());
    CohomologyGroup { dim: z.dim() - b.dim(), representatives: reps.iter().map(|v| build(v)).collect() }
}

/// `H^n(V,V)`.
pub fn adjoint_cohomology(alg: &LieAlgebra, n: usize) -> Result<CohomologyGroup<AdjCochain>> {
    require_jacobi(alg)?;
    let dim = alg.dim();
    let (z, b) = adjoint_cocycles(alg, n);
    Ok(quotient(&z, &b, |v| AdjCochain::from_vector(dim, n, v).expect("length")))
}

/// `dim H^n(V,k)`.
pub fn trivial_cohomology(alg: &LieAlgebra, n: usize) -> Result<usize> {
    require_jacobi(alg)?;
    let z = kernel_basis(&coboundary_matrix_triv(alg, n)).dim();
    let b = if n == 0 { 0 } else { coboundary_matrix_triv(alg, n - 1).rank() };
    Ok(z - b)
}

/// `CC^n`: the cochains in `C^n(V,V)` whose lowering with `b` is alternating,
/// as the solution space of the alternation constraints.
pub fn cyclic_subspace(b: &BilinearForm, n: usize) -> Result<Subspace> {
    if !b.is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    let dim = b.dim();
    let ambient = AdjCochain::space_dim(dim, n);
    // Row vector of the lowered value T(I, j) = sum_i c_{I,i} B_ij.
    let lowered = |idx: &crate::exterior::MultiIndex, j: usize| -> Vec<Scalar> {
        let mut row = vec![Scalar::zero(); ambient];
        let base = idx.rank_in(dim) * dim;
        for i in 1..=dim {
            row[base + i - 1] = b.eval(i, j).clone();
        }
        row
    };
    let mut rows = Vec::new();
    for idx in enumerate_multiindices(dim, n) {
        for &j in idx.entries() {
            rows.push(lowered(&idx, j));
        }
    }
    for big in enumerate_multiindices(dim, n + 1) {
        let reference = lowered(&big.without_position(n), big.entries()[n]);
        for r in 0..n {
            let mut row = lowered(&big.without_position(r), big.entries()[r]);
            let negate = (n - r) % 2 == 1;
            for (x, y) in row.iter_mut().zip(&reference) {
                *x = if negate { -&*x - y } else { &*x - y };
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(Subspace::full(ambient));
    }
    Ok(kernel_basis(&Matrix::from_rows(rows)?))
}

fn require_metric(alg: &LieAlgebra, b: &BilinearForm) -> Result<()> {
    MetricAlgebra::new(alg.clone(), b.clone()).map(|_| ())
}

/// Image under `D` of the cyclic subspace, as a matrix whose columns are
/// `D` of the subspace basis.
fn restricted(d: &Matrix, sub: &Subspace) -> Result<Matrix> {
    if sub.dim() == 0 {
        return Ok(Matrix::zeros(d.rows(), 0));
    }
    d.mul(&sub.basis_matrix())
}

/// Coordinates in `sub` back to ambient vectors.
fn embed(sub: &Subspace, coords: &Subspace) -> Subspace {
    let m = sub.basis_matrix();
    Subspace::span(sub.ambient_dim(), coords.basis().iter().map(|x| m.mul_vec(x)).collect())
}

/// `HC^n`: cohomology of `D` restricted to cyclic cochains. In degree 0
/// this is the kernel on `CC^0`, which corresponds to `Z^1(V,k)`.
pub fn cyclic_cohomology(alg: &LieAlgebra, b: &BilinearForm, n: usize) -> Result<CohomologyGroup<AdjCochain>> {
    require_jacobi(alg)?;
    require_metric(alg, b)?;
    let dim = alg.dim();
    let cc = cyclic_subspace(b, n)?;
    let z = embed(&cc, &kernel_basis(&restricted(&coboundary_matrix_adj(alg, n), &cc)?));
    let bd = if n == 0 {
        Subspace::zero(cc.ambient_dim())
    } else {
        let prev = cyclic_subspace(b, n - 1)?;
        image(&restricted(&coboundary_matrix_adj(alg, n - 1), &prev)?)
    };
    Ok(quotient(&z, &bd, |v| AdjCochain::from_vector(dim, n, v).expect("length")))
}

/// `HRC^n = (Z^n ∩ CC^n) / (B^n ∩ CC^n)`, where `B^n` contains coboundaries
/// of arbitrary, possibly non-cyclic, cochains.
pub fn reduced_cyclic_cohomology(
    alg: &LieAlgebra,
    b: &BilinearForm,
    n: usize,
) -> Result<CohomologyGroup<AdjCochain>> {
    require_jacobi(alg)?;
    require_metric(alg, b)?;
    let dim = alg.dim();
    let cc = cyclic_subspace(b, n)?;
    let (z, bd) = adjoint_cocycles(alg, n);
    let zc = z.intersect(&cc)?;
    let bc = bd.intersect(&cc)?;
    Ok(quotient(&zc, &bc, |v| AdjCochain::from_vector(dim, n, v).expect("length")))
}

/// One row of a cohomology table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub n: usize,
    pub hc: usize,
    pub hrc: usize,
    pub h: usize,
    /// `dim H^n(V,k)`.
    pub h_triv: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub id: String,
    pub dim: usize,
    pub rows: Vec<ReportRow>,
    /// `dim H^{max+1}(V,k)`, needed to cross-check the last `HC` row.
    pub h_triv_next: usize,
}

impl CohomologyReport {
    /// Computes all groups for `n = 0..=max_degree`, reusing coboundary
    /// matrices across degrees.
    pub fn compute(id: &str, metric: &MetricAlgebra, max_degree: usize) -> Result<Self> {
        let alg = &metric.algebra;
        let b = &metric.form;
        require_jacobi(alg)?;
        let n_dim = alg.dim();
        let adj: Vec<Matrix> = (0..=max_degree).map(|p| coboundary_matrix_adj(alg, p)).collect();
        let triv: Vec<Matrix> = (0..=max_degree + 1).map(|q| coboundary_matrix_triv(alg, q)).collect();
        let cc: Vec<Subspace> = (0..=max_degree).map(|p| cyclic_subspace(b, p)).collect::<Result<_>>()?;
        // Every dimension below is a rank: Z ∩ CC is the kernel of D on CC,
        // and dim(B ∩ CC) = dim B + dim CC - dim(B + CC).
        let adj_ranks: Vec<usize> = adj.iter().map(Matrix::rank).collect();
        let cyc_ranks: Vec<usize> =
            adj.iter().zip(&cc).map(|(d, c)| restricted(d, c).map(|m| m.rank())).collect::<Result<_>>()?;
        let triv_ranks: Vec<usize> = triv.iter().map(Matrix::rank).collect();
        let h_triv = |q: usize| -> usize {
            let cdim = TrivCochain::space_dim(n_dim, q);
            cdim - triv_ranks[q] - if q == 0 { 0 } else { triv_ranks[q - 1] }
        };
        let mut rows = Vec::new();
        for n in 0..=max_degree {
            let prev = |v: &[usize]| if n == 0 { 0 } else { v[n - 1] };
            let zc = cc[n].dim() - cyc_ranks[n];
            let bc = if n == 0 {
                0
            } else {
                let mut cols: Vec<Vec<Scalar>> = (0..adj[n - 1].cols()).map(|j| adj[n - 1].column(j)).collect();
                cols.extend(cc[n].basis().iter().cloned());
                let joint = Matrix::from_columns(AdjCochain::space_dim(n_dim, n), &cols).rank();
                adj_ranks[n - 1] + cc[n].dim() - joint
            };
            rows.push(ReportRow {
                n,
                hc: zc - prev(&cyc_ranks),
                hrc: zc - bc,
                h: AdjCochain::space_dim(n_dim, n) - adj_ranks[n] - prev(&adj_ranks),
                h_triv: h_triv(n),
            });
        }
        Ok(CohomologyReport { id: id.to_string(), dim: alg.dim(), rows, h_triv_next: h_triv(max_degree + 1) })
    }

    pub fn hc(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.hc).collect()
    }

    pub fn hrc(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.hrc).collect()
    }

    pub fn h(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.h).collect()
    }

    /// `dim H^q(V,k)` for `q = 0..=max_degree+1`.
    pub fn h_triv(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.rows.iter().map(|r| r.h_triv).collect();
        v.push(self.h_triv_next);
        v
    }

    /// Degrees `n >= 1` where `HC^n` differs from `H^{n+1}(V,k)`.
    pub fn two_route_mismatches(&self) -> Vec<usize> {
        let triv = self.h_triv();
        self.rows.iter().filter(|r| r.n >= 1 && r.hc != triv[r.n + 1]).map(|r| r.n).collect()
    }
}

impl fmt::Display for CohomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (dim {})", self.id, self.dim)?;
        writeln!(f, "{:>3} | {:>5} | {:>6} | {:>5}", "n", "HC^n", "HRC^n", "H^n")?;
        writeln!(f, "{}", "-".repeat(29))?;
        for r in &self.rows {
            writeln!(f, "{:>3} | {:>5} | {:>6} | {:>5}", r.n, r.hc, r.hrc, r.h)?;
        }
        Ok(())
    }
}

/// `Σ_{k+l=n} a_k b_l`.
pub fn convolve(a: &[usize], b: &[usize], n: usize) -> usize {
    (0..=n).map(|k| a.get(k).copied().unwrap_or(0) * b.get(n - k).copied().unwrap_or(0)).sum()
}

/// Compares `h^n_triv(g ⊕ h)` against the Künneth convolution.
pub fn kunneth_check(g: &LieAlgebra, h: &LieAlgebra, n: usize) -> Result<bool> {
    let gs: Vec<usize> = (0..=n).map(|k| trivial_cohomology(g, k)).collect::<Result<_>>()?;
    let hs: Vec<usize> = (0..=n).map(|k| trivial_cohomology(h, k)).collect::<Result<_>>()?;
    Ok(trivial_cohomology(&g.direct_sum(h), n)? == convolve(&gs, &hs, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochains::parse_adj;
    use crate::poly::Bindings;

    fn sl2() -> MetricAlgebra {
        let d = parse_adj("psi[{1,2}->3] - 2*psi[{1,3}->1] + 2*psi[{2,3}->2]", 3, &Bindings::new()).unwrap();
        let b = BilinearForm::new(Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]])).unwrap();
        MetricAlgebra::new(LieAlgebra::new(d).unwrap(), b).unwrap()
    }

    fn diamond() -> MetricAlgebra {
        let d = parse_adj("psi[{1,2}->2] - psi[{1,3}->3] + psi[{2,3}->4]", 4, &Bindings::new()).unwrap();
        let b = BilinearForm::new(Matrix::from_i64(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]))
            .unwrap();
        MetricAlgebra::new(LieAlgebra::new(d).unwrap(), b).unwrap()
    }

    fn abelian(n: usize) -> MetricAlgebra {
        MetricAlgebra::new(LieAlgebra::abelian(n), BilinearForm::identity(n)).unwrap()
    }

    #[test]
    fn sl2_coboundary_ranks() {
        let m = sl2();
        // dim C^1 = 9 and ker D^1 = im D^0 is 3-dimensional.
        assert_eq!(coboundary_matrix_adj(&m.algebra, 0).rank(), 3);
        assert_eq!(coboundary_matrix_adj(&m.algebra, 1).rank(), 6);
        // H^2 = 0: ker D^2 = im D^1.
        assert_eq!(kernel_basis(&coboundary_matrix_adj(&m.algebra, 2)).dim(), 6);
    }

    #[test]
    fn sl2_table() {
        let r = CohomologyReport::compute("sl2C", &sl2(), 3).unwrap();
        assert_eq!(r.hc(), vec![0, 0, 1, 0]);
        assert_eq!(r.hrc(), vec![0, 0, 0, 0]);
        assert_eq!(r.h(), vec![0, 0, 0, 0]);
        assert_eq!(r.h_triv(), vec![1, 0, 0, 1, 0]);
        assert!(r.two_route_mismatches().is_empty());
    }

    #[test]
    fn sl2_hc2_is_spanned_by_d() {
        let m = sl2();
        let g = cyclic_cohomology(&m.algebra, &m.form, 2).unwrap();
        assert_eq!(g.dim, 1);
        let cc = cyclic_subspace(&m.form, 2).unwrap();
        let zc = kernel_basis(&restricted(&coboundary_matrix_adj(&m.algebra, 2), &cc).unwrap());
        let z = embed(&cc, &zc);
        assert!(z.contains(&m.algebra.cochain().to_vector()));
        let b = image(&restricted(&coboundary_matrix_adj(&m.algebra, 1), &cyclic_subspace(&m.form, 1).unwrap()).unwrap());
        assert!(!b.contains(&m.algebra.cochain().to_vector()));
    }

    #[test]
    fn sl2_reduced_gap() {
        let m = sl2();
        let cc = cyclic_subspace(&m.form, 2).unwrap();
        let b = image(&coboundary_matrix_adj(&m.algebra, 1));
        assert_eq!(cc.dim(), 1);
        assert_eq!(b.dim(), 6);
        assert_eq!(b.intersect(&cc).unwrap().dim(), 1);
        assert_eq!(reduced_cyclic_cohomology(&m.algebra, &m.form, 2).unwrap().dim, 0);
    }

    #[test]
    fn diamond_table() {
        let r = CohomologyReport::compute("diamond4C", &diamond(), 3).unwrap();
        assert_eq!(r.hc(), vec![1, 0, 1, 1]);
        assert_eq!(r.hrc(), vec![1, 0, 1, 1]);
        assert_eq!(r.h(), vec![1, 2, 2, 2]);
        assert!(r.two_route_mismatches().is_empty());
    }

    #[test]
    fn cyclic_subspace_dimensions() {
        let b = diamond().form;
        let dims: Vec<usize> = (0..4).map(|p| cyclic_subspace(&b, p).unwrap().dim()).collect();
        assert_eq!(dims, vec![4, 6, 4, 1]);
        assert_eq!(cyclic_subspace(&BilinearForm::identity(6), 2).unwrap().dim(), 20);
        assert!(cyclic_subspace(&BilinearForm::new(Matrix::zeros(2, 2)).unwrap(), 1).is_err());
    }

    #[test]
    fn cyclic_subspace_is_cyclic() {
        let b = diamond().form;
        for p in 0..4 {
            for v in cyclic_subspace(&b, p).unwrap().basis() {
                let c = AdjCochain::from_vector(4, p, v).unwrap();
                assert!(crate::cochains::is_cyclic(&c, &b).unwrap());
            }
        }
    }

    #[test]
    fn abelian_cohomology_is_cochains() {
        let r = CohomologyReport::compute("ab2", &abelian(2), 2).unwrap();
        assert_eq!(r.h(), vec![2, 4, 2]);
        assert_eq!(r.h_triv(), vec![1, 2, 1, 0]);
        let c1 = LieAlgebra::abelian(1);
        assert_eq!((0..3).map(|n| trivial_cohomology(&c1, n).unwrap()).collect::<Vec<_>>(), vec![1, 1, 0]);
    }

    #[test]
    fn representatives_are_independent_cocycles() {
        let m = diamond();
        for n in 0..4 {
            let g = adjoint_cohomology(&m.algebra, n).unwrap();
            assert_eq!(g.representatives.len(), g.dim);
            for r in &g.representatives {
                assert!(coboundary_adj(&m.algebra, r).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn kunneth_small_cases() {
        let s = sl2().algebra;
        let c1 = LieAlgebra::abelian(1);
        for n in 0..5 {
            assert!(kunneth_check(&s, &c1, n).unwrap());
            assert!(kunneth_check(&c1, &c1, n).unwrap());
        }
        assert_eq!(trivial_cohomology(&s.direct_sum(&c1), 3).unwrap(), 1);
    }

    #[test]
    fn rejects_non_metric_input() {
        let m = sl2();
        assert!(matches!(
            cyclic_cohomology(&m.algebra, &BilinearForm::identity(3), 1),
            Err(Error::NotInvariant)
        ));
        let bad = LieAlgebra::new_unchecked(
            parse_adj("psi[{1,2}->3] + psi[{1,3}->1] + psi[{2,3}->1]", 3, &Bindings::new()).unwrap(),
        )
        .unwrap();
        assert!(matches!(adjoint_cohomology(&bad, 1), Err(Error::Jacobi(_))));
    }

    #[test]
    fn report_renders_and_serializes() {
        let r = CohomologyReport::compute("sl2C", &sl2(), 3).unwrap();
        let text = r.to_string();
        assert!(text.contains("HRC^n"));
        assert_eq!(text.lines().count(), 7);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<CohomologyReport>(&json).unwrap(), r);
    }
}
