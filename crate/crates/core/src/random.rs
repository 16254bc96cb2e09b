//! Seeded random objects for property checks.

use rand::Rng;

use crate::cochains::{AdjCochain, TrivCochain};
use crate::exterior::enumerate_multiindices;
use crate::linalg::{Matrix, Scalar};

/// `p/q` with `|p| <= 9`, `1 <= q <= 5`.
pub fn scalar(rng: &mut impl Rng) -> Scalar {
    Scalar::new(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn point(rng: &mut impl Rng, len: usize) -> Vec<Scalar> {
    (0..len).map(|_| scalar(rng)).collect()
}

/// Sparse cochain with small integer coefficients; each entry is present
/// with probability `density`.
pub fn adj(rng: &mut impl Rng, dim: usize, degree: usize, density: f64) -> AdjCochain {
    let mut c = AdjCochain::zero(dim, degree);
    for idx in enumerate_multiindices(dim, degree) {
        for t in 1..=dim {
            if rng.gen_bool(density) {
                c.add_term(idx.clone(), t, Scalar::from_int(rng.gen_range(-3..=3))).expect("index in range");
            }
        }
    }
    c
}

pub fn triv(rng: &mut impl Rng, dim: usize, degree: usize) -> TrivCochain {
    let mut c = TrivCochain::zero(dim, degree);
    for idx in enumerate_multiindices(dim, degree) {
        c.add_term(idx, Scalar::from_int(rng.gen_range(-3..=3))).expect("index in range");
    }
    c
}

/// Random invertible matrix: a signed permutation with diagonal entries
/// scaled by 1 or 2, followed by `shears` elementary operations
/// `col_i += c·col_j` with `c` in `{-2, -1, 1, 2}`. Few shears keep
/// conjugated structure constants sparse.
pub fn invertible(rng: &mut impl Rng, n: usize, shears: usize) -> Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut m = Matrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        m[(i, j)] = Scalar::from_int(sign * rng.gen_range(1..=2));
    }
    if n < 2 {
        return m;
    }
    for _ in 0..shears {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = Scalar::from_int([-2, -1, 1, 2][rng.gen_range(0..4)]);
        for r in 0..n {
            let v = &m[(r, i)] + &(&c * &m[(r, j)]);
            m[(r, i)] = v;
        }
    }
    m
}
