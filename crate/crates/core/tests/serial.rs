use proptest::prelude::*;

use johnsonlab::coef::qf;
use johnsonlab::derivation::DerKind;
use johnsonlab::genus0::{ejk_generator, SpecialDer0};
use johnsonlab::goldman::{turaev_cobracket, CyclicPair};
use johnsonlab::repring::RepElement;
use johnsonlab::serial::Json;
use johnsonlab::subspace::theta_der_basis;
use johnsonlab::{Alphabet, CyclicPoly, Error, TensorPoly, Word};

fn tensor(genus: usize) -> impl Strategy<Value = TensorPoly> {
    let rank = 2 * genus as u8;
    prop::collection::vec((-9i64..=9, 1i64..=7, prop::collection::vec(0..rank, 0..6)), 0..6).prop_map(move |ts| {
        let al = Alphabet::symplectic(genus).unwrap();
        let mut t = TensorPoly::zero(al);
        for (a, b, w) in ts {
            t.add_term(Word::from_slice(&w), qf(a, b));
        }
        t
    })
}

proptest! {
    #[test]
    fn tensor_round_trip(t in tensor(2)) {
        let s = t.to_json_string();
        let back = TensorPoly::from_json_str(&s).unwrap();
        prop_assert_eq!(back.to_json_string(), s);
        prop_assert_eq!(back, t);
    }

    #[test]
    fn cyclic_round_trip(t in tensor(1)) {
        let c = johnsonlab::cyclic_project(&t);
        prop_assert_eq!(CyclicPoly::from_json_str(&c.to_json_string()).unwrap(), c);
    }

    #[test]
    fn pair_round_trip(t in tensor(2)) {
        let p = turaev_cobracket(&johnsonlab::cyclic_project(&t)).unwrap();
        prop_assert_eq!(CyclicPair::from_json_str(&p.to_json_string()).unwrap(), p);
    }
}

#[test]
fn derivations_round_trip() {
    let al = Alphabet::symplectic(2).unwrap();
    for d in theta_der_basis(al, 1, DerKind::Lie).unwrap().basis() {
        let back = johnsonlab::derivation::ThetaDerivation::from_json_str(&d.to_json_string()).unwrap();
        assert_eq!(&back, d);
    }
    let e = ejk_generator(Alphabet::boundary(4, 0).unwrap(), 1, 2).unwrap();
    assert_eq!(SpecialDer0::from_json_str(&e.to_json_string()).unwrap(), e);
}

#[test]
fn rep_elements_use_partition_keys() {
    let mut r = RepElement::irreducible(&[2, 2]);
    r.add(vec![], 1.into());
    let s = r.to_json_string();
    assert_eq!(s, r#"{"[2,2]":1,"[]":1}"#);
    assert_eq!(RepElement::from_json_str(&s).unwrap(), r);
}

#[test]
fn errors_carry_locations() {
    let bad = [
        (r#"{"model":"symplectic","genus":1,"terms":[{"coef":"1","word":["a1"]},{"coef":"−1","word":[]}]}"#, "$.terms[1].coef (byte 0)"),
        (r#"{"model":"symplectic","genus":1,"terms":[{"coef":"1","word":["a2"]}]}"#, "$.terms[0].word[0]"),
        (r#"{"model":"symplectic","genus":1,"terms":[{"coef":"1/0","word":[]}]}"#, "$.terms[0].coef"),
    ];
    for (s, loc) in bad {
        match TensorPoly::from_json_str(s) {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with(loc), "{location} vs {loc}"),
            Err(Error::UnknownLetter(_)) if loc.contains("word") => {}
            other => panic!("{s}: {other:?}"),
        }
    }
    match TensorPoly::from_json_str("{\"model\":") {
        Err(Error::Parse { location, .. }) => assert!(location.starts_with("line 1 column"), "{location}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn lie_input_is_checked() {
    let s = r#"{"model":"symplectic","genus":1,"terms":[{"coef":"1","word":["a1","b1"]}]}"#;
    assert!(johnsonlab::LiePoly::from_json_str(s).is_err());
}
