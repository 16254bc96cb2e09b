//! Exact linear algebra over the rationals: scalars, dense matrices, subspaces
//! and the congruence diagonalization used for signatures.

mod echelon;
mod matrix;
mod scalar;
mod subspace;

pub use matrix::Matrix;
pub use scalar::Scalar;
pub use subspace::Subspace;

use crate::error::{Error, Result};

/// Returns the reduced row-echelon form of `m` together with its rank.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    m.rref()
}

/// Basis of the null space `{ x : m x = 0 }`, one vector per free column.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let (r, _) = m.rref();
    let n = m.cols();
    let mut pivot_of_row = Vec::new();
    let mut is_pivot = vec![false; n];
    for i in 0..r.rows() {
        if let Some(j) = (0..n).find(|&j| !r[(i, j)].is_zero()) {
            pivot_of_row.push((i, j));
            is_pivot[j] = true;
        }
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![Scalar::zero(); n];
        v[free] = Scalar::one();
        for &(i, p) in &pivot_of_row {
            let x = &r[(i, free)];
            if !x.is_zero() {
                v[p] = -x;
            }
        }
        basis.push(v);
    }
    Subspace::from_independent(n, basis)
}

/// A particular solution of `m x = rhs` with all free variables zero, or
/// `None` when the system is inconsistent.
pub fn solve(m: &Matrix, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if rhs.len() != m.rows() {
        return Err(Error::Dimension("right-hand side length differs from row count".into()));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut aug = Matrix::zeros(rows, cols + 1);
    for i in 0..rows {
        for j in 0..cols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, cols)] = rhs[i].clone();
    }
    let pivots = aug.rref_in_place();
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = vec![Scalar::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[(i, cols)].clone();
    }
    Ok(Some(x))
}

/// Column space of `m`, as a subspace of `Q^rows`.
pub fn image(m: &Matrix) -> Subspace {
    Subspace::span(m.rows(), (0..m.cols()).map(|j| m.column(j)).collect())
}

/// Intersection of two subspaces of the same ambient space.
pub fn intersect(u: &Subspace, w: &Subspace) -> Result<Subspace> {
    u.intersect(w)
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix, by exact
/// congruence diagonalization.
pub fn signature(b: &Matrix) -> Result<(usize, usize, usize)> {
    if !b.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = b.rows();
    let mut m = b.clone();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut k = 0;
    while k < n {
        if m[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !m[(j, j)].is_zero()) {
                swap_sym(&mut m, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !m[(k, j)].is_zero()) {
                // All remaining diagonal entries vanish but m[k][j] != 0:
                // adding row/column j to k makes the pivot 2 m[k][j].
                add_sym(&mut m, k, j, &Scalar::one());
            } else {
                // Row and column k are zero.
                zero += 1;
                k += 1;
                continue;
            }
        }
        let p = m[(k, k)].clone();
        match p.signum() {
            1 => pos += 1,
            -1 => neg += 1,
            _ => unreachable!("pivot fixed above"),
        }
        for i in k + 1..n {
            if m[(i, k)].is_zero() {
                continue;
            }
            let f = -(&m[(i, k)] / &p);
            add_sym(&mut m, i, k, &f);
        }
        k += 1;
    }
    Ok((pos, neg, zero))
}

/// Simultaneous row/column swap.
fn swap_sym(m: &mut Matrix, a: usize, b: usize) {
    let n = m.rows();
    for j in 0..n {
        let t = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = t;
    }
    for i in 0..n {
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
    }
}

/// Row i += f * row j, then column i += f * column j.
fn add_sym(m: &mut Matrix, i: usize, j: usize, f: &Scalar) {
    let n = m.rows();
    for c in 0..n {
        let v = &m[(i, c)] + &(f * &m[(j, c)]);
        m[(i, c)] = v;
    }
    for r in 0..n {
        let v = &m[(r, i)] + &(f * &m[(r, j)]);
        m[(r, i)] = v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit(n: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4], &[0, 1]]);
        let b: Vec<Scalar> = [3, 6, 1].iter().map(|&x| Scalar::from_int(x)).collect();
        let x = solve(&m, &b).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let bad: Vec<Scalar> = [3, 7, 1].iter().map(|&x| Scalar::from_int(x)).collect();
        assert!(solve(&m, &bad).unwrap().is_none());
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        assert_eq!(kernel_basis(&Matrix::zeros(3, 3)).dim(), 3);
        assert_eq!(kernel_basis(&Matrix::identity(3)).dim(), 0);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = Matrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 2);
        for v in k.basis() {
            assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn coordinate_plane_intersection() {
        let u = Subspace::span(3, vec![unit(3, 0), unit(3, 1)]);
        let w = Subspace::span(3, vec![unit(3, 1), unit(3, 2)]);
        let x = intersect(&u, &w).unwrap();
        assert_eq!(x.dim(), 1);
        assert!(x.contains(&unit(3, 1)));
        assert_eq!(intersect(&u, &u).unwrap().dim(), 2);
        let other = Subspace::span(4, vec![unit(4, 0)]);
        assert!(matches!(intersect(&u, &other), Err(Error::Dimension(_))));
    }

    #[test]
    fn signatures_of_known_forms() {
        assert_eq!(signature(&Matrix::identity(4)).unwrap(), (4, 0, 0));
        let sl2 = Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]]);
        assert_eq!(signature(&sl2).unwrap(), (2, 1, 0));
        let anti = Matrix::from_i64(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]);
        assert_eq!(signature(&anti).unwrap(), (2, 2, 0));
        let osc = Matrix::from_i64(&[&[0, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 0, 0, 0]]);
        assert_eq!(signature(&osc).unwrap(), (3, 1, 0));
        let degenerate = Matrix::from_i64(&[&[0, 0], &[0, 0]]);
        assert_eq!(signature(&degenerate).unwrap(), (0, 0, 2));
        let nonsym = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert!(matches!(signature(&nonsym), Err(Error::NotSymmetric)));
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
            Matrix::from_rows(
                v.chunks(cols).map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            prop_assert_eq!(m.rank() + kernel_basis(&m).dim(), m.cols());
            prop_assert_eq!(m.rank(), m.transpose().rank());
            let (r, _) = m.rref();
            prop_assert_eq!(r.rref().0, r);
        }

        #[test]
        fn intersection_dimension_formula(
            a in small_matrix(5, 3),
            b in small_matrix(5, 2),
        ) {
            let u = image(&a);
            let w = image(&b);
            let uw = intersect(&u, &w).unwrap();
            let wu = intersect(&w, &u).unwrap();
            prop_assert_eq!(uw.dim(), wu.dim());
            prop_assert_eq!(uw.dim(), u.dim() + w.dim() - u.sum(&w).unwrap().dim());
            for v in uw.basis() {
                prop_assert!(u.contains(v) && w.contains(v));
            }
        }

        #[test]
        fn signature_invariant_under_congruence(
            diag in prop::collection::vec(-2i64..=2, 4),
            g in small_matrix(4, 4),
        ) {
            let mut b = Matrix::zeros(4, 4);
            for (i, x) in diag.iter().enumerate() {
                b[(i, i)] = Scalar::from_int(*x);
            }
            prop_assume!(g.rank() == 4);
            let gbg = g.transpose().mul(&b).unwrap().mul(&g).unwrap();
            prop_assert_eq!(signature(&gbg).unwrap(), signature(&b).unwrap());
        }
    }
}
