use std::sync::Arc;

use wrmc::bimod::{left_unitor, left_unitor_inv, right_unitor, right_unitor_inv, BimoduleMap};
use wrmc::corpus::random::Sampler;
use wrmc::exactla::Field;

#[test]
fn random_bimodules_are_valid_and_unital() {
    for field in [Field::Rational, Field::Prime(101), Field::Prime(2)] {
        let mut s = Sampler::new(field, 99);
        for _ in 0..60 {
            let a = s.algebra(3).unwrap();
            let b = s.algebra(3).unwrap();
            let f = Arc::new(s.bimodule(&a, &b, 3).unwrap());
            let v = f.validate();
            assert!(v.ok(), "{} {}: {:?}", a.name, b.name, v.failing_names());
            let id = BimoduleMap::identity(&f);
            assert_eq!(left_unitor(&f).unwrap().compose(&left_unitor_inv(&f).unwrap()).unwrap(), id);
            assert_eq!(right_unitor(&f).unwrap().compose(&right_unitor_inv(&f).unwrap()).unwrap(), id);
        }
    }
}

#[test]
fn samplers_are_deterministic() {
    let draw = |seed| {
        let mut s = Sampler::new(Field::Prime(101), seed);
        let a = s.algebra(3).unwrap();
        let b = s.algebra(3).unwrap();
        s.bimodule(&a, &b, 3).unwrap()
    };
    assert_eq!(draw(4), draw(4));
}
