use proptest::prelude::*;

use johnsonlab::framing::{arf, classify_orbit, FramingData, OrbitDescriptor};
use johnsonlab::Error;

#[test]
fn arf_examples() {
    assert_eq!(arf(&FramingData::new(vec![1, 3, -5], vec![7, 1, 1]).unwrap()).unwrap(), 0);
    assert_eq!(arf(&FramingData::new(vec![0], vec![2]).unwrap()).unwrap(), 1);
    assert_eq!(arf(&FramingData::new(vec![0, 2], vec![2, 4]).unwrap()).unwrap(), 0);
    assert!(FramingData::new(vec![], vec![]).is_err());
}

#[test]
fn orbit_descriptors() {
    let f = FramingData::new(vec![1, 1], vec![1, 1]).unwrap();
    assert_eq!(classify_orbit(&f).unwrap(), OrbitDescriptor::Arf { arf: 0 });

    let mut t = FramingData::new(vec![0], vec![0]).unwrap();
    assert!(matches!(classify_orbit(&t), Err(Error::InsufficientData(_))));
    t.scc = vec![("a".into(), 2), ("b".into(), 4)];
    assert_eq!(classify_orbit(&t).unwrap(), OrbitDescriptor::Gcd { gcd: 2, arf: 1, parity_consistent: true });
    t.scc = vec![("a".into(), 3)];
    assert_eq!(classify_orbit(&t).unwrap(), OrbitDescriptor::Gcd { gcd: 3, arf: 1, parity_consistent: false });
}

proptest! {
    #[test]
    fn arf_depends_only_on_parities(a in prop::collection::vec(-20i64..20, 1..5), shift in prop::collection::vec(-3i64..3, 10)) {
        let g = a.len();
        let b: Vec<i64> = a.iter().map(|x| x * 7 + 1).collect();
        let f = FramingData::new(a.clone(), b.clone()).unwrap();
        let a2: Vec<i64> = a.iter().zip(&shift).map(|(x, s)| x + 2 * s).collect();
        let b2: Vec<i64> = b.iter().zip(shift.iter().rev()).map(|(x, s)| x + 2 * s).collect();
        let f2 = FramingData::new(a2, b2).unwrap();
        prop_assert_eq!(arf(&f).unwrap(), arf(&f2).unwrap());
        prop_assert_eq!(f.genus, g);
    }
}
