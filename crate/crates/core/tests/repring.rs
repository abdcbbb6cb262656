use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use johnsonlab::repring::{
    decompose, euler_series, irr_character, irr_dimension, mobius_invert, mobius_invert_rep, Exponent, RepElement,
    SpCharacter,
};

fn weights(chi: &SpCharacter) -> Vec<Exponent> {
    let mut out = Vec::new();
    for (e, c) in chi.terms() {
        let n: u64 = c.try_into().expect("an actual representation");
        out.extend(std::iter::repeat(e.clone()).take(n as usize));
    }
    out
}

/// `k`-subsets (or multisets when `repeat`) of the weight list, summed.
fn brute_power(chi: &SpCharacter, k: usize, repeat: bool) -> SpCharacter {
    fn go(w: &[Exponent], start: usize, k: usize, repeat: bool, acc: &mut Exponent, out: &mut BTreeMap<Exponent, BigInt>) {
        if k == 0 {
            *out.entry(acc.clone()).or_default() += 1;
            return;
        }
        for i in start..w.len() {
            for (a, x) in acc.iter_mut().zip(&w[i]) {
                *a += x;
            }
            go(w, if repeat { i } else { i + 1 }, k - 1, repeat, acc, out);
            for (a, x) in acc.iter_mut().zip(&w[i]) {
                *a -= x;
            }
        }
    }
    let w = weights(chi);
    let mut out = BTreeMap::new();
    go(&w, 0, k, repeat, &mut vec![0; chi.genus()], &mut out);
    SpCharacter::from_weights(chi.genus(), out).unwrap()
}

#[test]
fn newton_identities_match_monomial_expansion() {
    for g in 1..=3 {
        let h = SpCharacter::defining(g);
        let l2 = h.exterior_power(2);
        for chi in [&h, &l2] {
            for k in 0..=4 {
                assert_eq!(chi.exterior_power(k), brute_power(chi, k, false), "g={g} L^{k}");
                assert_eq!(chi.symmetric_power(k), brute_power(chi, k, true), "g={g} S^{k}");
            }
        }
    }
}

#[test]
fn freudenthal_agrees_with_weyl_dimension() {
    for g in 1..=3 {
        for lambda in [vec![], vec![1], vec![1, 1], vec![2], vec![2, 1], vec![2, 2], vec![3, 1], vec![1, 1, 1], vec![3, 2, 1]] {
            if lambda.len() > g {
                continue;
            }
            let chi = irr_character(&lambda, g).unwrap();
            assert!(chi.is_weyl_invariant());
            assert_eq!(chi.dimension(), irr_dimension(&lambda, g).unwrap(), "{lambda:?} g={g}");
        }
    }
    assert_eq!(irr_dimension(&[1, 1, 1], 3).unwrap(), BigInt::from(14));
    assert_eq!(irr_dimension(&[2, 2], 2).unwrap(), BigInt::from(14));
    assert!(irr_dimension(&[1, 1], 1).is_err());
}

#[test]
fn non_invariant_character_rejected() {
    let chi = SpCharacter::monomial(2, vec![1, 0], BigInt::from(1));
    assert!(!chi.is_weyl_invariant());
    assert!(decompose(&chi).is_err());
}

#[test]
fn tensor_square_of_defining() {
    // H ⊗ H = S^2 H + L^2 H = [2] + [1,1] + [].
    let h = SpCharacter::defining(3);
    let r = decompose(&h.mul(&h).unwrap()).unwrap();
    let mut expect = RepElement::irreducible(&[2]);
    expect.add(vec![1, 1], 1.into());
    expect.add(vec![], 1.into());
    assert_eq!(r, expect);
}

fn partition() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..3, 3).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.retain(|&x| x > 0);
        v
    })
}

proptest! {
    #[test]
    fn decompose_inverts_character(parts in prop::collection::vec((partition(), 1i64..4), 1..4)) {
        let mut r = RepElement::new();
        for (p, m) in parts {
            r.add(p, m.into());
        }
        prop_assert_eq!(decompose(&r.character(3).unwrap()).unwrap(), r);
    }

    #[test]
    fn mobius_inverts_euler_series(h in prop::collection::vec(-6i64..7, 1..8)) {
        let n = h.len();
        let mut hh: Vec<BigInt> = vec![BigInt::from(0)];
        hh.extend(h.into_iter().map(BigInt::from));
        let phi = euler_series(&hh, &BigInt::from(1), n);
        prop_assert_eq!(mobius_invert(&phi, n).unwrap(), hh);
    }
}

#[test]
fn character_mode_refines_dimension_mode() {
    // Free Lie algebra on H at genus 2: Euler series 1 - H x.
    let g = 2;
    let phi = vec![RepElement::irreducible(&[]), {
        let mut r = RepElement::new();
        r.add(vec![1], BigInt::from(-1));
        r
    }];
    let h = mobius_invert_rep(&phi, g, 6).unwrap();
    let dims = mobius_invert(&[BigInt::from(1), BigInt::from(-4)], 6).unwrap();
    for n in 1..=6 {
        assert_eq!(h[n].dimension(g).unwrap(), dims[n], "degree {n}");
    }
    let mut l2 = RepElement::irreducible(&[1, 1]);
    l2.add(vec![], 1.into());
    assert_eq!(h[2], l2);
}
