//! Slow reference evaluators, used as oracles for the sparse code paths.

use itertools::Itertools;

use crate::cochains::AdjCochain;
use crate::error::Result;
use crate::exterior::{enumerate_multiindices, permutation_sign};
use crate::linalg::Scalar;

/// `phi ∘ psi` by summing over all permutations of the arguments and
/// dividing out the stabilizer, independent of the unshuffle enumeration.
pub fn compose_by_permutations(phi: &AdjCochain, psi: &AdjCochain) -> Result<AdjCochain> {
    let n = phi.dim();
    let (k, l) = (phi.degree(), psi.degree());
    if k == 0 {
        return Ok(AdjCochain::zero(n, l.saturating_sub(1)));
    }
    let total = k + l - 1;
    let norm: i64 = (1..=l as i64).product::<i64>() * (1..=(k - 1) as i64).product::<i64>();
    let mut out = AdjCochain::zero(n, total);
    for j in enumerate_multiindices(n, total) {
        let js = j.entries();
        let mut acc = vec![Scalar::zero(); n];
        for perm in (0..total).permutations(total) {
            let sign = permutation_sign(&perm);
            let args: Vec<usize> = perm.iter().map(|&p| js[p]).collect();
            let inner = psi.eval(&args[..l])?;
            for (m, x) in inner.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let mut outer_args = vec![m + 1];
                outer_args.extend_from_slice(&args[l..]);
                for (t, y) in phi.eval(&outer_args)?.iter().enumerate() {
                    let v = x * y;
                    if sign < 0 {
                        acc[t] -= &v;
                    } else {
                        acc[t] += &v;
                    }
                }
            }
        }
        for (t, x) in acc.into_iter().enumerate() {
            out.add_term(j.clone(), t + 1, x / Scalar::from_int(norm))?;
        }
    }
    Ok(out)
}

/// Bracket built from [`compose_by_permutations`].
pub fn bracket_by_permutations(phi: &AdjCochain, psi: &AdjCochain) -> Result<AdjCochain> {
    let (k, l) = (phi.degree(), psi.degree());
    let a = compose_by_permutations(phi, psi)?;
    let b = compose_by_permutations(psi, phi)?;
    if ((k + 1) * (l + 1)) % 2 == 0 {
        a.sub(&b)
    } else {
        a.add(&b)
    }
}
