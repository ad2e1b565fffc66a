use std::sync::Arc;

use proptest::prelude::*;

use wrmc::bicat::check_axioms;
use wrmc::bimod::{tensor_over, Bim};
use wrmc::coring::{cell_from_bicomodule, check_entwined_cell, check_wrem_context, classical_to_wrem, wrem_to_classical};
use wrmc::corpus::contexts::{context_pairs, random_corner};
use wrmc::corpus::corings::bicomodule_corpus;
use wrmc::corpus::random::{bim_samples, Sampler};
use wrmc::exactla::{Field, Matrix, QuotientSpace, Scalar, Solution};
use wrmc::wide::{check_context, multiply_contexts};

const F101: Field = Field::Prime(101);

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(F101), Just(Field::Prime(7))]
}

fn scalar(f: Field) -> impl Strategy<Value = Scalar> {
    (-30i64..30, 1i64..8).prop_map(move |(n, d)| match f {
        Field::Rational => f.ratio(n, d).unwrap(),
        _ => f.from_i64(n),
    })
}

fn matrix(f: Field, max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(scalar(f), r * c).prop_map(move |data| Matrix::from_raw(f, r, c, data))
    })
}

fn field_and_matrix(max: usize) -> impl Strategy<Value = Matrix> {
    field().prop_flat_map(move |f| matrix(f, max))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(f in field(), seed in any::<u64>()) {
        let mut s = Sampler::new(f, seed);
        let (a, b, c) = (s.scalar(), s.scalar(), s.scalar());
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_strings_round_trip(f in field(), seed in any::<u64>()) {
        let x = Sampler::new(f, seed).scalar();
        prop_assert_eq!(f.parse(&x.to_canonical()).unwrap(), x);
    }

    #[test]
    fn rank_nullity(m in field_and_matrix(5)) {
        let k = m.kernel_basis().unwrap();
        let rank = m.rank().unwrap();
        prop_assert_eq!(rank + k.cols(), m.cols());
        prop_assert_eq!(rank, m.transpose().rank().unwrap());
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(k.rank().unwrap(), k.cols());
    }

    #[test]
    fn solve_finds_solutions_of_consistent_systems(m in field_and_matrix(5), seed in any::<u64>()) {
        let mut s = Sampler::new(m.field(), seed);
        let x0 = s.matrix(m.cols(), 1);
        let b = m.mul(&x0);
        match m.solve(&b).unwrap() {
            Solution::Solved { x, kernel_dim } => {
                prop_assert_eq!(m.mul(&x), b);
                prop_assert_eq!(kernel_dim, m.cols() - m.rank().unwrap());
            }
            Solution::NoSolution => prop_assert!(false, "consistent system reported unsolvable"),
        }
    }

    #[test]
    fn inverse_is_two_sided(f in field(), n in 1usize..5, seed in any::<u64>()) {
        let a = Sampler::new(f, seed).invertible(n).unwrap();
        let inv = a.inverse().unwrap();
        prop_assert_eq!(a.mul(&inv), Matrix::identity(f, n));
        prop_assert_eq!(inv.mul(&a), Matrix::identity(f, n));
    }

    #[test]
    fn quotient_maps_split(rel in field_and_matrix(5)) {
        let f = rel.field();
        let rows: Vec<Vec<Scalar>> = (0..rel.cols()).map(|j| rel.col(j).entries().to_vec()).collect();
        let q = QuotientSpace::new(f, rel.rows(), rows).unwrap();
        prop_assert_eq!(q.projection().mul(q.section()), Matrix::identity(f, q.quotient_dim()));
        prop_assert_eq!(q.quotient_dim(), rel.rows() - rel.rank().unwrap());
        prop_assert!(q.projection().mul(&rel).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn bim_axioms_on_random_tuples(seed in any::<u64>()) {
        let samples = bim_samples(F101, seed, 2, 2).unwrap();
        let report = check_axioms(&Bim::new(F101), &samples);
        prop_assert!(report.ok(), "{:?}", report.failing_names());
    }

    #[test]
    fn tensor_dimension_is_ambient_minus_relation_rank(seed in any::<u64>()) {
        let mut s = Sampler::new(F101, seed);
        let a = s.algebra(3).unwrap();
        let b = s.algebra(2).unwrap();
        let c = s.algebra(2).unwrap();
        let m = Arc::new(s.bimodule(&b, &a, 3).unwrap());
        let n = Arc::new(s.bimodule(&a, &c, 3).unwrap());
        let (dm, dn) = (m.dim(), n.dim());
        let blocks: Vec<Matrix> = m
            .right_action()
            .iter()
            .zip(n.left_action())
            .map(|(r, l)| r.kron(&Matrix::identity(F101, dn)).sub(&Matrix::identity(F101, dm).kron(l)))
            .collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        let relation_rank = if refs.is_empty() { 0 } else { Matrix::hstack(&refs).rank().unwrap() };
        prop_assert_eq!(tensor_over(&m, &n).unwrap().dim(), dm * dn - relation_rank);
    }

    #[test]
    fn products_of_random_pairs_are_contexts(seed in any::<u64>()) {
        let bim = Bim::new(F101);
        for (outer, inner) in context_pairs(F101, seed, 2).unwrap() {
            let p = multiply_contexts(&bim, &outer, &inner).unwrap();
            prop_assert!(check_context(&bim, &p).unwrap().ok());
        }
    }

    #[test]
    fn reduction_round_trips_corners(seed in any::<u64>()) {
        let (c, _) = random_corner(&mut Sampler::new(F101, seed)).unwrap();
        let w = classical_to_wrem(&c).unwrap();
        prop_assert!(check_wrem_context(&w).unwrap().ok());
        prop_assert!(wrem_to_classical(&w).unwrap() == c);
    }

    #[test]
    fn bicomodules_give_entwined_cells(seed in any::<u64>()) {
        for (name, b) in bicomodule_corpus(F101, seed, 2).unwrap() {
            let report = check_entwined_cell(&cell_from_bicomodule(&b).unwrap()).unwrap();
            prop_assert!(report.ok(), "{}: {:?}", name, report.failing_names());
        }
    }
}
