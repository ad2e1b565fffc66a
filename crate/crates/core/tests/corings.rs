use std::sync::Arc;

use wrmc::bicat::{check_axioms, Bicategory};
use wrmc::bimod::{Bim, Bimodule, BimoduleMap};
use wrmc::coring::*;
use wrmc::corpus::algebras::{ground, truncated_poly};
use wrmc::corpus::contexts::{matrix_morita, random_corner, zero_context};
use wrmc::corpus::corings::{bicomodule_corpus, classical_cell, coring_catalog, ground_inclusion, random_two_cell, rem_samples};
use wrmc::corpus::random::Sampler;
use wrmc::exactla::Field;
use wrmc::wide::{check_context, identity_context, WideContext};
use wrmc::Error;

const FIELDS: [Field; 2] = [Field::Rational, Field::Prime(101)];

#[test]
fn catalog_corings_are_valid() {
    for field in FIELDS {
        for seed in coring_catalog(field).unwrap() {
            let report = seed.coring.validate();
            assert!(report.ok(), "{}: {:?}", seed.name, report.failing_names());
        }
    }
}

#[test]
fn sweedler_coring_of_dual_numbers_has_dimension_four() {
    let field = Field::Rational;
    let a = Arc::new(truncated_poly(field, 2));
    let k = Arc::new(ground(field));
    let c = sweedler_coring(&a, &k, &ground_inclusion(&a)).unwrap();
    assert_eq!(c.dim(), 4);
    assert!(c.validate().ok());
    assert!(!c.is_trivial());
    assert!(trivial_coring(&a).unwrap().is_trivial());
}

#[test]
fn corrupted_corings_fail_with_witness() {
    for field in FIELDS {
        let two = field.from_i64(2);
        for seed in coring_catalog(field).unwrap() {
            let bad = seed.coring.with_scaled_delta(&two);
            let report = bad.validate();
            assert!(!report.ok(), "{}", seed.name);
            assert!(report.failures().all(|f| f.witness().is_some()));

            let report = seed.coring.with_scaled_counit(&two).validate();
            assert_eq!(report.failing_names(), vec!["right counit", "left counit"], "{}", seed.name);
        }
    }
}

#[test]
fn identity_two_cells_over_trivial_corings_are_the_centre() {
    let field = Field::Prime(101);
    for seed in coring_catalog(field).unwrap().into_iter().filter(|s| s.coring.is_trivial()) {
        let id = Rem.id1(&seed.coring).unwrap();
        // reduced 2-cells I -> I are A-bimodule maps A -> A, i.e. the centre of A
        let centre_dim = if seed.name == "trivial m2" { 1 } else { seed.coring.base.dim() };
        assert_eq!(rem_two_cell_basis(&id, &id).unwrap().len(), centre_dim, "{}", seed.name);
    }
}

#[test]
fn identity_cells_pass_and_scaled_entwining_fails() {
    for field in FIELDS {
        for seed in coring_catalog(field).unwrap() {
            let id = rem_identity_cell(&seed.coring).unwrap();
            assert!(check_entwined_cell(&id).unwrap().ok(), "{}", seed.name);
            let mut bad = id.clone();
            bad.entwining = bad.entwining.scale(&field.from_i64(2));
            let report = check_entwined_cell(&bad).unwrap();
            assert!(!report.ok());
            assert!(report.failing_names().contains(&"counit condition"));
        }
    }
}

#[test]
fn cells_from_bicomodules() {
    for field in FIELDS {
        let corpus = bicomodule_corpus(field, 11, 24).unwrap();
        assert!(corpus.len() >= 20);
        for (name, b) in &corpus {
            assert!(b.validate().ok(), "{name}: {:?}", b.validate().failing_names());
            let cell = cell_from_bicomodule(b).unwrap();
            assert!(check_entwined_cell(&cell).unwrap().ok(), "{name}");
        }
    }
}

#[test]
fn regular_bicomodule_of_trivial_coring_gives_identity_cell() {
    let field = Field::Rational;
    for seed in coring_catalog(field).unwrap().into_iter().filter(|s| s.coring.is_trivial()) {
        let cell = cell_from_bicomodule(&Bicomodule::regular(&seed.coring).unwrap()).unwrap();
        assert_eq!(cell, rem_identity_cell(&seed.coring).unwrap(), "{}", seed.name);
    }
}

#[test]
fn broken_comodule_is_rejected() {
    let field = Field::Rational;
    let seed = coring_catalog(field).unwrap().into_iter().find(|s| s.name == "sweedler k in dual2").unwrap();
    let b = Bicomodule::regular(&seed.coring).unwrap();
    let bad = Bicomodule { right_coaction: b.right_coaction.scale(&field.from_i64(3)), ..b };
    assert!(!bad.validate().ok());
    assert!(matches!(cell_from_bicomodule(&bad), Err(Error::Invalid(_))));
}

#[test]
fn cofree_comodule_maps_are_colinear() {
    let field = Field::Prime(101);
    let seed = coring_catalog(field).unwrap().into_iter().find(|s| s.name == "sweedler k in k2").unwrap();
    let c = &seed.coring;
    let x = Arc::new(Bimodule::regular(&c.base));
    let cofree = Comodule::cofree(c, &x).unwrap();
    assert!(cofree.validate().ok());
    let id = BimoduleMap::identity(&cofree.carrier);
    assert!(cofree.colinearity_defect(&cofree, &id).unwrap().is_none());
    // a random endomorphism of the regular comodule is almost never colinear
    let regular = Comodule::regular(c).unwrap();
    assert!(regular.validate().ok());
    let mut s = Sampler::new(field, 3);
    let mut found = false;
    for _ in 0..5 {
        let f = s.map(&regular.carrier, &regular.carrier).unwrap();
        if regular.colinearity_defect(&regular, &f).unwrap().is_some() {
            found = true;
        }
    }
    assert!(found);
}

#[test]
fn two_cell_condition() {
    let field = Field::Prime(101);
    let mut s = Sampler::new(field, 9);
    for seed in coring_catalog(field).unwrap() {
        let cell = cell_from_bicomodule(&Bicomodule::regular(&seed.coring).unwrap()).unwrap();
        let a = random_two_cell(&mut s, &cell, &cell).unwrap();
        assert!(check_two_cell(&a).unwrap().ok(), "{}", seed.name);
        let id2 = Rem.id2(&cell).unwrap();
        assert!(check_two_cell(&id2).unwrap().ok());
    }
}

#[test]
fn rem_bicategory_axioms_hold() {
    let field = Field::Prime(101);
    let samples = rem_samples(field, 5, 6).unwrap();
    let report = check_axioms(&Rem, &samples);
    assert!(report.ok(), "{:?}", report.failures().collect::<Vec<_>>());
}

fn corrupted(c: &WideContext<Bim>) -> WideContext<Bim> {
    let field = c.eta.source().field();
    WideContext { eta: c.eta.scale(&field.from_i64(2)), ..c.clone() }
}

#[test]
fn reduction_to_trivial_corings_agrees() {
    for field in FIELDS {
        let bim = Bim::new(field);
        let mut cases = vec![matrix_morita(field, 2).unwrap()];
        for seed in coring_catalog(field).unwrap().into_iter().filter(|s| s.coring.is_trivial()) {
            cases.push(identity_context(&bim, &seed.coring.base).unwrap());
        }
        let mut s = Sampler::new(field, 21);
        for _ in 0..20 {
            cases.push(random_corner(&mut s).unwrap().0);
        }
        let good = cases.len();
        let broken: Vec<_> = cases.iter().map(corrupted).collect();
        cases.extend(broken);
        for (i, c) in cases.iter().enumerate() {
            let classical = check_context(&bim, c).unwrap().ok();
            assert_eq!(classical, i < good, "case {i}");
            let w = classical_to_wrem(c).unwrap();
            let reduced = check_wrem_context(&w).unwrap();
            assert_eq!(classical, reduced.ok(), "case {i}: {:?}", reduced.failing_names());
            let agreement = reduction_agreement(c).unwrap();
            assert!(agreement.ok(), "case {i}: {:?}", agreement.failures().collect::<Vec<_>>());
            assert_eq!(&wrem_to_classical(&w).unwrap(), c);
        }
    }
}

#[test]
fn wrem_to_classical_needs_trivial_corings() {
    let field = Field::Rational;
    let seed = coring_catalog(field).unwrap().into_iter().find(|s| s.name == "sweedler k in dual2").unwrap();
    let c = &seed.coring;
    let reg = cell_from_bicomodule(&Bicomodule::regular(c).unwrap()).unwrap();
    let space = wrem_context_space(&reg, &reg).unwrap();
    let ctx = space.context(&vec![field.zero(); space.dim()]).unwrap();
    assert!(check_wrem_context(&ctx).unwrap().ok());
    assert!(matches!(wrem_to_classical(&ctx), Err(Error::Invalid(_))));
}

#[test]
fn context_space_over_trivial_corings_matches_classical() {
    let field = Field::Prime(101);
    let c = matrix_morita(field, 2).unwrap();
    let f = classical_cell(&c.f).unwrap();
    let g = classical_cell(&c.g).unwrap();
    let space = wrem_context_space(&f, &g).unwrap();
    // eta and rho are each determined up to a common scalar
    assert_eq!(space.dim(), 1);
    let mut s = Sampler::new(field, 4);
    for _ in 0..3 {
        let w = space.sample(&mut s).unwrap();
        assert!(check_wrem_context(&w).unwrap().ok());
        let back = wrem_to_classical(&w).unwrap();
        assert!(check_context(&Bim::new(field), &back).unwrap().ok());
    }
    let z = zero_context(&c.f, &c.g).unwrap();
    assert!(check_wrem_context(&classical_to_wrem(&z).unwrap()).unwrap().ok());
}

#[test]
fn context_spaces_over_sweedler_corings() {
    // Comodules over a Sweedler coring of k in A are vector spaces (A = k^n or
    // k[x]/x^2 over k, k2 x k2 blocks for M2). The regular cell acts as V -> V^n, the
    // identity cell as V -> V, so contexts are scalars of the centre on (id, id)
    // and vanish as soon as one side is the regular cell.
    let field = Field::Prime(101);
    let mut s = Sampler::new(field, 8);
    for seed in coring_catalog(field).unwrap().into_iter().filter(|s| !s.coring.is_trivial()) {
        let c = &seed.coring;
        let id = Rem.id1(c).unwrap();
        let space = wrem_context_space(&id, &id).unwrap();
        let expected = if seed.name == "sweedler k2 in m2" { 2 } else { 1 };
        assert_eq!(space.dim(), expected, "{}", seed.name);
        let w = space.sample(&mut s).unwrap();
        assert!(check_wrem_context(&w).unwrap().ok(), "{}", seed.name);
        let mut bad = w.clone();
        bad.rho.map = bad.rho.map.scale(&field.from_i64(2));
        if !w.rho.map.is_zero() {
            assert!(!check_wrem_context(&bad).unwrap().ok());
        }
        if seed.base.is_none() {
            continue;
        }
        let reg = cell_from_bicomodule(&Bicomodule::regular(c).unwrap()).unwrap();
        assert_eq!(wrem_context_space(&reg, &id).unwrap().dim(), 0, "{}", seed.name);
        assert_eq!(wrem_context_space(&reg, &reg).unwrap().dim(), 0, "{}", seed.name);
    }
}

#[test]
fn ill_typed_wrem_context_is_an_error() {
    let field = Field::Rational;
    let c = matrix_morita(field, 2).unwrap();
    let mut w = classical_to_wrem(&c).unwrap();
    std::mem::swap(&mut w.eta, &mut w.rho);
    assert!(matches!(check_wrem_context(&w), Err(Error::NotComposable(_))));
}
