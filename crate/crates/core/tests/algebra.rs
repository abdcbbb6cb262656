use proptest::prelude::*;

use johnsonlab::coef::{q, qf};
use johnsonlab::combinat::{lyndon_words, necklace_count, witt_dimension};
use johnsonlab::cyclic::cyclic_basis;
use johnsonlab::goldman::{goldman_bracket, jacobi_residual, kappa, kappa_inverse, kk_action, turaev_cobracket, CyclicPair};
use johnsonlab::lie::{is_lie, lie_basis, lyndon_decompose, LiePoly};
use johnsonlab::{cyclic_project, Alphabet, CyclicPoly, TensorPoly, Word};

fn g2() -> Alphabet {
    Alphabet::symplectic(2).unwrap()
}

fn word(max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..4, 1..=max)
}

fn poly(max_terms: usize, len: usize) -> impl Strategy<Value = CyclicPoly> {
    prop::collection::vec((-5i64..=5, 1i64..=3, prop::collection::vec(0u8..4, len)), 1..=max_terms).prop_map(|ts| {
        let mut c = CyclicPoly::zero(g2());
        for (a, b, w) in ts {
            c.add_word(&Word::from_slice(&w), qf(a, b));
        }
        c
    })
}

proptest! {
    #[test]
    fn projection_is_rotation_invariant(w in word(8), k in 0usize..8) {
        let w = Word::from_slice(&w);
        let r = w.rotated(k % w.len());
        prop_assert_eq!(cyclic_project(&TensorPoly::word(g2(), w.letters())), cyclic_project(&TensorPoly::word(g2(), r.letters())));
    }

    #[test]
    fn commutators_vanish_cyclically(u in word(4), v in word(4)) {
        let (u, v) = (TensorPoly::word(g2(), &u), TensorPoly::word(g2(), &v));
        prop_assert!(cyclic_project(&u.commutator(&v)).is_zero());
    }

    #[test]
    fn bracket_is_antisymmetric(x in poly(3, 3), y in poly(3, 4)) {
        let s = goldman_bracket(&x, &y).unwrap().add(&goldman_bracket(&y, &x).unwrap());
        prop_assert!(s.is_zero());
    }

    #[test]
    fn jacobi_in_higher_weight(x in poly(2, 3), y in poly(2, 4), z in poly(2, 4)) {
        prop_assert!(jacobi_residual(&x, &y, &z).unwrap().is_zero());
    }

    #[test]
    fn kappa_round_trip(x in poly(4, 5)) {
        prop_assume!(!x.is_zero());
        prop_assert_eq!(kappa_inverse(&kappa(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn kappa_is_a_derivation(x in poly(2, 3), u in word(3), v in word(3)) {
        let (u, v) = (TensorPoly::word(g2(), &u), TensorPoly::word(g2(), &v));
        let lhs = kk_action(&x, &u.mul(&v)).unwrap();
        let rhs = kk_action(&x, &u).unwrap().mul(&v).add(&u.mul(&kk_action(&x, &v).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_brackets_stay_lie(i in 0usize..20, j in 0usize..20) {
        let b3 = lie_basis(g2(), 3);
        let b2 = lie_basis(g2(), 2);
        let x = LiePoly::from_tensor(b3[i % b3.len()].1.clone()).unwrap();
        let y = LiePoly::from_tensor(b2[j % b2.len()].1.clone()).unwrap();
        let z = x.bracket(&y).unwrap();
        prop_assert!(is_lie(z.tensor()));
        let back = LiePoly::from_lyndon(g2(), &lyndon_decompose(z.tensor()).unwrap()).unwrap();
        prop_assert_eq!(back, z);
    }
}

#[test]
fn basis_sizes_match_counting_formulas() {
    for g in 1..=2u64 {
        let al = Alphabet::symplectic(g as usize).unwrap();
        for n in 1..=6usize {
            assert_eq!(necklace_count(2 * g, n as u64), cyclic_basis(al, n).len().into());
            assert_eq!(witt_dimension(2 * g, n as u64), lie_basis(al, n).len().into());
            assert_eq!(lyndon_words(2 * g as u8, n).len(), lie_basis(al, n).len());
        }
    }
}

#[test]
fn cobracket_of_small_words() {
    let al = Alphabet::symplectic(1).unwrap();
    // A single letter has no self-intersections.
    assert!(turaev_cobracket(&CyclicPoly::word(al, &[0])).unwrap().is_zero());
    for w in cyclic_basis(al, 5) {
        let d = turaev_cobracket(&CyclicPoly::from_canonical_terms(al, [(w, q(1))])).unwrap();
        assert_eq!(d.swap(), CyclicPair::zero(al).sub(&d));
    }
}

#[test]
fn non_lie_tensor_rejected() {
    let al = g2();
    assert!(LiePoly::from_tensor(TensorPoly::word(al, &[0, 1])).is_err());
    assert!(LiePoly::from_tensor(TensorPoly::word(al, &[0, 1]).sub(&TensorPoly::word(al, &[1, 0])).scale(&q(3))).is_ok());
}
