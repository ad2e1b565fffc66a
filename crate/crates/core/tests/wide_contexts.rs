use std::sync::Arc;

use wrmc::bicat::{check_axioms, Bicategory, LinearBicategory};
use wrmc::bimod::{tensor_over, Bim, Bimodule, BimoduleMap};
use wrmc::corpus::algebras::{matrix_algebra, product, small_catalog, truncated_poly};
use wrmc::corpus::contexts::{
    context_pairs, corner_context, matrix_morita, matrix_theta, random_corner, scaling_morphism, wide_samples,
};
use wrmc::corpus::random::Sampler;
use wrmc::exactla::{Field, Matrix};
use wrmc::wide::*;
use wrmc::Error;

const FIELDS: [Field; 2] = [Field::Rational, Field::Prime(101)];

#[test]
fn identity_contexts_pass() {
    for field in FIELDS {
        let bim = Bim::new(field);
        for c in small_catalog(field) {
            let id = identity_context(&bim, &c.algebra).unwrap();
            assert!(check_context(&bim, &id).unwrap().ok(), "{}", c.name);
        }
        let m2 = Arc::new(matrix_algebra(field, 2));
        assert!(check_context(&bim, &identity_context(&bim, &m2).unwrap()).unwrap().ok());
    }
}

#[test]
fn matrix_context_passes_and_scaled_eta_fails() {
    for field in FIELDS {
        let bim = Bim::new(field);
        let c = matrix_morita(field, 2).unwrap();
        assert_eq!(tensor_over(&c.f, &c.g).unwrap().dim(), 4);
        assert_eq!(tensor_over(&c.g, &c.f).unwrap().dim(), 1);
        assert!(check_context(&bim, &c).unwrap().ok());

        let mut bad = c.clone();
        bad.eta = bad.eta.scale(&field.from_i64(2));
        let report = check_context(&bim, &bad).unwrap();
        assert!(!report.ok());
        let w = report.failures().next().and_then(|r| r.witness()).expect("witness");
        assert!(w.coordinate.is_some());
    }
}

#[test]
fn matrix_context_values() {
    // eta(e_i (x) e_j) = E_ij and rho(e_i (x) e_j) = delta_ij, read through the tensor section
    let field = Field::Rational;
    let c = matrix_morita(field, 2).unwrap();
    let fg = tensor_over(&c.f, &c.g).unwrap();
    let sec = &fg.tensor().unwrap().section;
    let proj = &fg.tensor().unwrap().projection;
    let on_ambient = c.eta.matrix().mul(proj);
    for i in 0..2 {
        for j in 0..2 {
            let col = on_ambient.col(i * 2 + j);
            let expected = Matrix::basis_vector(field, 4, i * 2 + j);
            assert_eq!(col, expected);
        }
    }
    assert_eq!(sec.rows(), 4);
}

#[test]
fn corner_contexts_pass() {
    for field in FIELDS {
        let bim = Bim::new(field);
        let mut s = Sampler::new(field, 5);
        for _ in 0..20 {
            let (c, _) = random_corner(&mut s).unwrap();
            assert!(check_context(&bim, &c).unwrap().ok());
            assert!(check_context(&bim, &reverse_context(&c)).unwrap().ok());
        }
    }
}

#[test]
fn non_idempotent_is_rejected() {
    let field = Field::Rational;
    let a = Arc::new(truncated_poly(field, 2));
    let e = vec![field.one(), field.one()];
    assert!(matches!(corner_context(&a, &e), Err(Error::NotIdempotent)));
}

#[test]
fn products_of_contexts_are_contexts() {
    let field = Field::Prime(101);
    let bim = Bim::new(field);
    for (i, (outer, inner)) in context_pairs(field, 3, 24).unwrap().iter().enumerate() {
        let prod = multiply_contexts(&bim, outer, inner).unwrap();
        assert!(check_context(&bim, &prod).unwrap().ok(), "pair {i}");
    }
}

#[test]
fn mismatched_product_is_an_error() {
    let field = Field::Rational;
    let bim = Bim::new(field);
    let m = matrix_morita(field, 2).unwrap();
    assert!(matches!(multiply_contexts(&bim, &m, &m), Err(Error::NotComposable(_))));
}

#[test]
fn morphism_checks() {
    let field = Field::Rational;
    let bim = Bim::new(field);
    let c = matrix_morita(field, 2).unwrap();
    assert!(check_morphism(&bim, &identity_morphism(&bim, &c).unwrap(), &c, &c).unwrap().ok());
    let two = scaling_morphism(&c, &field.from_i64(2), &field.one());
    let report = check_morphism(&bim, &two, &c, &c).unwrap();
    assert_eq!(report.failing_names(), vec!["eta compatibility", "rho compatibility"]);

    // (2, 1/2) from c to itself is compatible, and so is its square
    let half = field.ratio(1, 2).unwrap();
    let m = scaling_morphism(&c, &field.from_i64(2), &half);
    assert!(check_morphism(&bim, &m, &c, &c).unwrap().ok());
    let sq = compose_morphisms(&bim, &m, &m).unwrap();
    assert!(check_morphism(&bim, &sq, &c, &c).unwrap().ok());
}

#[test]
fn product_of_morphisms_is_a_morphism() {
    let field = Field::Prime(101);
    let bim = Bim::new(field);
    let c = matrix_morita(field, 2).unwrap();
    let r = reverse_context(&c);
    let (s, t) = (field.from_i64(3), field.from_i64(5));
    let st = &s * &t;
    let scaled = scale_context(&bim, &c, &st);
    let m1 = scaling_morphism(&c, &s, &t);
    let m2 = identity_morphism(&bim, &r).unwrap();
    assert!(check_morphism(&bim, &m1, &scaled, &c).unwrap().ok());
    let prod = multiply_morphisms(&bim, &m1, &m2).unwrap();
    let from = multiply_contexts(&bim, &scaled, &r).unwrap();
    let to = multiply_contexts(&bim, &c, &r).unwrap();
    assert!(check_morphism(&bim, &prod, &from, &to).unwrap().ok());

    let ids = multiply_morphisms(&bim, &identity_morphism(&bim, &c).unwrap(), &m2).unwrap();
    assert_eq!(ids, identity_morphism(&bim, &to).unwrap());
}

#[test]
fn unitors_type_check_only_with_f_component_first() {
    let field = Field::Rational;
    let bim = Bim::new(field);
    let c = matrix_morita(field, 2).unwrap();
    let id_a = identity_context(&bim, &bim.target(&c.f)).unwrap();
    let id_b = identity_context(&bim, &bim.source(&c.f)).unwrap();
    let left_src = multiply_contexts(&bim, &id_a, &c).unwrap();
    let right_src = multiply_contexts(&bim, &c, &id_b).unwrap();

    let left = context_left_unitor(&bim, &c).unwrap();
    assert!(check_morphism(&bim, &left, &left_src, &c).unwrap().ok());
    let right = context_right_unitor(&bim, &c).unwrap();
    assert!(check_morphism(&bim, &right, &right_src, &c).unwrap().ok());

    // the g-side component first does not even have the right type
    let swapped =
        ContextMorphism::<Bim> { alpha: wrmc::bimod::left_unitor(&c.g).unwrap(), beta: wrmc::bimod::right_unitor(&c.f).unwrap() };
    assert!(matches!(check_morphism(&bim, &swapped, &left_src, &c), Err(Error::NotComposable(_))));
}

#[test]
fn associator_is_a_morphism_with_inverse() {
    let field = Field::Prime(101);
    let bim = Bim::new(field);
    let c = matrix_morita(field, 2).unwrap();
    let r = reverse_context(&c);
    let a = context_associator(&bim, &c, &r, &c).unwrap();
    let from = multiply_contexts(&bim, &multiply_contexts(&bim, &c, &r).unwrap(), &c).unwrap();
    let to = multiply_contexts(&bim, &c, &multiply_contexts(&bim, &r, &c).unwrap()).unwrap();
    assert!(check_morphism(&bim, &a, &from, &to).unwrap().ok());
    let ainv = context_associator_inv(&bim, &c, &r, &c).unwrap();
    assert_eq!(compose_morphisms(&bim, &ainv, &a).unwrap(), identity_morphism(&bim, &from).unwrap());
}

#[test]
fn wide_bicategory_axioms_hold() {
    let field = Field::Prime(101);
    let w = W::new(Bim::new(field));
    let samples = wide_samples(field, 17, 6).unwrap();
    let report = check_axioms(&w, &samples);
    assert!(report.ok(), "{:?}", report.failures().collect::<Vec<_>>());
}

#[test]
fn wide_two_cells_are_compatible() {
    let field = Field::Prime(101);
    let w = W::new(Bim::new(field));
    let samples = wide_samples(field, 23, 4).unwrap();
    for cells in &samples.whiskers {
        for m in cells {
            assert!(w.check(m).unwrap().ok());
        }
    }
}

#[test]
fn equivalence_recovers_identity_rho() {
    for field in FIELDS {
        let bim = Bim::new(field);
        for c in small_catalog(field) {
            let i = bim.id1(&c.algebra).unwrap();
            let eta = bim.right_unitor(&i).unwrap();
            let theta = bim.left_unitor_inv(&i).unwrap();
            let sol = context_from_equivalence(&bim, &i, &i, &eta, &theta).unwrap();
            assert_eq!(sol.solution_dim, 1);
            assert_eq!(sol.context.rho, bim.left_unitor(&i).unwrap(), "{}", c.name);
        }
    }
}

#[test]
fn equivalence_recovers_matrix_rho() {
    for field in FIELDS {
        let bim = Bim::new(field);
        let c = matrix_morita(field, 2).unwrap();
        let theta = matrix_theta(&c).unwrap();
        let sol = context_from_equivalence(&bim, &c.f, &c.g, &c.eta, &theta).unwrap();
        assert_eq!(sol.solution_dim, 1);
        assert_eq!(sol.context.rho, c.rho);
        assert!(equivalence_diagram(&bim, &c.f, &c.g, &c.eta).unwrap().ok());
    }
}

#[test]
fn equivalence_rejects_non_invertible_theta() {
    let field = Field::Rational;
    let bim = Bim::new(field);
    let c = matrix_morita(field, 2).unwrap();
    let gf = tensor_over(&c.g, &c.f).unwrap();
    let zero = BimoduleMap::zero(&bim.id1(&bim.source(&c.f)).unwrap(), &gf);
    assert!(matches!(context_from_equivalence(&bim, &c.f, &c.g, &c.eta, &zero), Err(Error::Invalid(_))));
}

#[test]
fn surjective_cells_of_matrix_context_invert() {
    for field in FIELDS {
        let bim = Bim::new(field);
        let c = matrix_morita(field, 2).unwrap();
        match epi_implies_iso(&bim, &c).unwrap() {
            EpiIsoOutcome::Invertible { eta_inv, rho_inv, report } => {
                assert!(report.ok());
                assert_eq!(c.eta.compose(&eta_inv).unwrap(), BimoduleMap::identity(c.eta.target()));
                assert_eq!(rho_inv.compose(&c.rho).unwrap(), BimoduleMap::identity(c.rho.source()));
            }
            EpiIsoOutcome::Skipped(why) => panic!("skipped: {why}"),
        }
        let id = identity_context(&bim, &Arc::new(product(field, 2))).unwrap();
        assert!(matches!(epi_implies_iso(&bim, &id).unwrap(), EpiIsoOutcome::Invertible { .. }));
    }
}

#[test]
fn degenerate_corner_is_skipped() {
    let field = Field::Rational;
    let bim = Bim::new(field);
    let a = Arc::new(product(field, 2));
    let (c, corner) = corner_context(&a, &[field.one(), field.zero()]).unwrap();
    assert_eq!(corner.algebra.dim(), 1);
    // the image of eta is A e A = k e, a proper ideal
    assert_eq!(c.eta.rank(), 1);
    assert!(!bim.is_epi(&c.eta));
    match epi_implies_iso(&bim, &c).unwrap() {
        EpiIsoOutcome::Skipped(why) => assert_eq!(why, "eta not surjective"),
        EpiIsoOutcome::Invertible { .. } => panic!("eta is not surjective"),
    }
    let _ = Bimodule::regular(&a);
}
