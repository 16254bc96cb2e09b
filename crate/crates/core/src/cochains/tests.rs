use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exterior::{enumerate_multiindices, MultiIndex};
use crate::linalg::{Matrix, Scalar};
use crate::poly::Bindings;

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn adj(text: &str, dim: usize) -> AdjCochain {
    parse_adj(text, dim, &Bindings::new()).unwrap()
}

fn so3() -> LieAlgebra {
    LieAlgebra::new(adj("psi[{1,2}->3] + psi[{2,3}->1] - psi[{1,3}->2]", 3)).unwrap()
}

fn sl2() -> LieAlgebra {
    LieAlgebra::new(adj("psi[{1,2}->3] + 2*psi[{1,3}->1] - 2*psi[{2,3}->2]", 3)).unwrap()
}

fn diamond() -> LieAlgebra {
    LieAlgebra::new(adj("psi[{1,2}->2] - psi[{1,3}->3] + psi[{2,3}->4]", 4)).unwrap()
}

fn diamond_form() -> BilinearForm {
    BilinearForm::new(Matrix::from_i64(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]])).unwrap()
}

fn algebras() -> Vec<LieAlgebra> {
    let heis = LieAlgebra::new(adj("psi[{1,2}->3]", 3)).unwrap();
    let aff = LieAlgebra::new(adj("psi[{1,2}->2]", 2)).unwrap();
    vec![so3(), sl2(), diamond(), heis, sl2().direct_sum(&LieAlgebra::abelian(1)), aff.direct_sum(&aff)]
}

fn random_adj(rng: &mut ChaCha8Rng, dim: usize, degree: usize, density: f64) -> AdjCochain {
    crate::random::adj(rng, dim, degree, density)
}

fn random_triv(rng: &mut ChaCha8Rng, dim: usize, degree: usize) -> TrivCochain {
    crate::random::triv(rng, dim, degree)
}

fn naive_compose(phi: &AdjCochain, psi: &AdjCochain) -> AdjCochain {
    crate::cochains::reference::compose_by_permutations(phi, psi).unwrap()
}

/// Chevalley–Eilenberg coboundary evaluated directly on the bracket, without
/// the sparse index bookkeeping of `coboundary_adj`.
fn naive_coboundary(alg: &LieAlgebra, c: &AdjCochain) -> AdjCochain {
    let n = alg.dim();
    let p = c.degree();
    let mut out = AdjCochain::zero(n, p + 1);
    for j in enumerate_multiindices(n, p + 1) {
        let js = j.entries();
        let mut acc = vec![Scalar::zero(); n];
        for a in 0..=p {
            let rest: Vec<usize> = js.iter().enumerate().filter(|(q, _)| *q != a).map(|(_, &x)| x).collect();
            let mut e = vec![Scalar::zero(); n];
            e[js[a] - 1] = Scalar::one();
            let br = alg.bracket(&e, &c.eval(&rest).unwrap());
            for t in 0..n {
                let v = br[t].clone();
                acc[t] += if a % 2 == 0 { v } else { -v };
            }
        }
        for a in 0..=p {
            for b in a + 1..=p {
                for (m, x) in alg.bracket_basis(js[a], js[b]).iter().enumerate() {
                    let mut args = vec![m + 1];
                    args.extend(js.iter().enumerate().filter(|(q, _)| *q != a && *q != b).map(|(_, &y)| y));
                    let val = c.eval(&args).unwrap();
                    for t in 0..n {
                        let v = x * &val[t];
                        acc[t] += if (a + b) % 2 == 0 { v } else { -v };
                    }
                }
            }
        }
        for (t, x) in acc.into_iter().enumerate() {
            out.add_term(j.clone(), t + 1, x).unwrap();
        }
    }
    out
}

fn graded_sign(k: usize, l: usize) -> Scalar {
    if (k + 1) * (l + 1) % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

#[test]
fn jacobi_detects_non_algebras() {
    for alg in algebras() {
        assert!(alg.is_jacobi());
    }
    let bad = adj("psi[{1,2}->3] + psi[{1,3}->1] + psi[{2,3}->1]", 3);
    assert!(matches!(LieAlgebra::new(bad.clone()), Err(crate::Error::Jacobi(_))));
    assert!(!LieAlgebra::new_unchecked(bad).unwrap().is_jacobi());
}

#[test]
fn bracket_with_itself_is_twice_the_jacobiator() {
    // Jacobiator in the form sum over cyclic (x,y,z) of [[x,y],z].
    let d = adj("psi[{1,2}->3] + psi[{1,3}->1] + psi[{2,3}->1]", 3);
    let alg = LieAlgebra::new_unchecked(d.clone()).unwrap();
    let e = |i: usize| {
        let mut v = vec![Scalar::zero(); 3];
        v[i - 1] = Scalar::one();
        v
    };
    let mut jac = vec![Scalar::zero(); 3];
    for (x, y, z) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        let inner = alg.bracket(&e(x), &e(y));
        let term = alg.bracket(&inner, &e(z));
        for t in 0..3 {
            jac[t] += &term[t];
        }
    }
    let dd = nr_bracket(&d, &d).unwrap();
    let got = dd.eval(&[1, 2, 3]).unwrap();
    let want: Vec<Scalar> = jac.iter().map(|x| x * s(2)).collect();
    assert_eq!(got, want);
}

#[test]
fn identity_bracket_returns_d() {
    for alg in algebras() {
        let id = AdjCochain::identity(alg.dim());
        assert_eq!(nr_bracket(alg.cochain(), &id).unwrap(), *alg.cochain());
    }
}

#[test]
fn coboundary_of_vector_is_adjoint_action() {
    for alg in algebras() {
        let n = alg.dim();
        for x in 1..=n {
            let mut c = AdjCochain::zero(n, 0);
            c.add_term(MultiIndex::empty(), x, Scalar::one()).unwrap();
            let dc = coboundary_adj(&alg, &c).unwrap();
            for v in 1..=n {
                assert_eq!(dc.eval(&[v]).unwrap(), alg.bracket_basis(v, x).to_vec());
            }
        }
    }
}

#[test]
fn coboundary_matches_naive_and_squares_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for alg in algebras() {
        let n = alg.dim();
        for p in 0..=3.min(n) {
            let c = random_adj(&mut rng, n, p, 0.4);
            let dc = coboundary_adj(&alg, &c).unwrap();
            assert_eq!(dc, naive_coboundary(&alg, &c));
            assert!(coboundary_adj(&alg, &dc).unwrap().is_zero());
        }
    }
}

#[test]
fn coboundary_is_signed_bracket_with_d() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for alg in algebras() {
        let n = alg.dim();
        for p in 0..=3.min(n) {
            let c = random_adj(&mut rng, n, p, 0.4);
            let br = if p == 0 {
                alg.cochain().compose(&c).unwrap()
            } else {
                nr_bracket(alg.cochain(), &c).unwrap()
            };
            let signed = br.scale(&s(coboundary_sign(p) as i64));
            assert_eq!(coboundary_adj(&alg, &c).unwrap(), signed, "p = {p}");
        }
    }
}

#[test]
fn trivial_coboundary_squares_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for alg in algebras() {
        let n = alg.dim();
        for q in 1..n {
            let w = random_triv(&mut rng, n, q);
            let dw = coboundary_triv(&alg, &w).unwrap();
            assert!(coboundary_triv(&alg, &dw).unwrap().is_zero());
        }
        // 1-forms: Dω(x,y) = ω([x,y]).
        let w = random_triv(&mut rng, n, 1);
        let dw = coboundary_triv(&alg, &w).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                let want: Scalar = alg.bracket_basis(i, j).iter().enumerate().map(|(m, c)| c * &w.eval(&[m + 1])).sum();
                assert_eq!(dw.eval(&[i, j]), want);
            }
        }
    }
}

#[test]
fn invariance_examples() {
    assert!(is_invariant(&so3(), &BilinearForm::identity(3)).unwrap());
    assert!(!is_invariant(&sl2(), &BilinearForm::identity(3)).unwrap());
    assert!(is_invariant(&diamond(), &diamond_form()).unwrap());
    assert!(!is_invariant(&diamond(), &BilinearForm::identity(4)).unwrap());
    assert!(matches!(
        BilinearForm::new(Matrix::from_i64(&[&[0, 1], &[0, 0]])),
        Err(crate::Error::NotSymmetric)
    ));
}

#[test]
fn bracket_and_structure_cochains_are_cyclic() {
    assert!(is_cyclic(so3().cochain(), &BilinearForm::identity(3)).unwrap());
    assert!(is_cyclic(diamond().cochain(), &diamond_form()).unwrap());
    // The lowered identity is the form itself, symmetric rather than alternating.
    assert!(!is_cyclic(&AdjCochain::identity(4), &diamond_form()).unwrap());
    assert!(!is_cyclic(&adj("psi[{1,2}->1]", 3), &BilinearForm::identity(3)).unwrap());
    let degenerate = BilinearForm::new(Matrix::zeros(3, 3)).unwrap();
    assert!(matches!(is_cyclic(so3().cochain(), &degenerate), Err(crate::Error::DegenerateForm)));
}

#[test]
fn raise_inverts_tilde() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let b = diamond_form();
    for q in 1..=4 {
        let w = random_triv(&mut rng, 4, q);
        let c = raise(&w, &b).unwrap();
        assert_eq!(c.degree(), q - 1);
        assert_eq!(tilde(&c, &b).unwrap().to_triv().unwrap(), w);
    }
}

fn forms() -> Vec<BilinearForm> {
    vec![
        BilinearForm::identity(3),
        diamond_form(),
        BilinearForm::new(Matrix::from_i64(&[&[2, 1, 0], &[1, 0, 0], &[0, 0, -1]])).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn compose_matches_permutation_sum(seed in any::<u64>(), k in 0usize..=3, l in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 4;
        prop_assume!(k + l >= 1 && k + l - 1 <= n);
        let phi = random_adj(&mut rng, n, k, 0.3);
        let psi = random_adj(&mut rng, n, l, 0.3);
        prop_assert_eq!(phi.compose(&psi).unwrap(), naive_compose(&phi, &psi));
    }

    #[test]
    fn bracket_is_graded_antisymmetric(seed in any::<u64>(), k in 1usize..=3, l in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_adj(&mut rng, 4, k, 0.3);
        let psi = random_adj(&mut rng, 4, l, 0.3);
        let a = nr_bracket(&phi, &psi).unwrap();
        let b = nr_bracket(&psi, &phi).unwrap();
        prop_assert_eq!(a, b.scale(&-graded_sign(k, l)));
    }

    #[test]
    fn bracket_satisfies_graded_jacobi(seed in any::<u64>(), k in 1usize..=2, l in 1usize..=2, m in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 3;
        let phi = random_adj(&mut rng, n, k, 0.3);
        let psi = random_adj(&mut rng, n, l, 0.3);
        let chi = random_adj(&mut rng, n, m, 0.3);
        let lhs = nr_bracket(&phi, &nr_bracket(&psi, &chi).unwrap()).unwrap();
        let r1 = nr_bracket(&nr_bracket(&phi, &psi).unwrap(), &chi).unwrap();
        let r2 = nr_bracket(&psi, &nr_bracket(&phi, &chi).unwrap()).unwrap().scale(&graded_sign(k, l));
        prop_assert_eq!(lhs, r1.add(&r2).unwrap());
    }

    #[test]
    fn cyclic_cochains_close_under_bracket(seed in any::<u64>(), q1 in 2usize..=3, q2 in 1usize..=3, f in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = forms().swap_remove(f);
        let n = b.dim();
        prop_assume!(q1 + q2 - 2 <= n);
        let phi = raise(&random_triv(&mut rng, n, q1), &b).unwrap();
        let psi = raise(&random_triv(&mut rng, n, q2), &b).unwrap();
        prop_assert!(is_cyclic(&phi, &b).unwrap());
        let br = nr_bracket(&phi, &psi).unwrap();
        prop_assert!(is_cyclic(&br, &b).unwrap());
    }

    #[test]
    fn bracket_triv_matches_lowered_bracket(seed in any::<u64>(), q1 in 2usize..=3, q2 in 2usize..=3, f in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = forms().swap_remove(f);
        let n = b.dim();
        prop_assume!(q1 + q2 - 2 <= n);
        let w1 = random_triv(&mut rng, n, q1);
        let w2 = random_triv(&mut rng, n, q2);
        let lowered = tilde(&nr_bracket(&raise(&w1, &b).unwrap(), &raise(&w2, &b).unwrap()).unwrap(), &b).unwrap();
        prop_assert_eq!(bracket_triv(&w1, &w2, &b).unwrap(), lowered.to_triv().unwrap());
    }
}
