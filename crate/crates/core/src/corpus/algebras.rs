//! Small algebras with known characters.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::exactla::{Field, Scalar};

/// An algebra together with some algebra maps to the ground field, given by
/// their values on the basis.
#[derive(Clone, Debug)]
pub struct CatalogAlgebra {
    pub name: String,
    pub algebra: Arc<Algebra>,
    pub characters: Vec<Vec<Scalar>>,
    /// Defining representation on column vectors, when the algebra is
    /// presented as a matrix algebra: one matrix per basis element.
    pub columns: Option<Vec<crate::exactla::Matrix>>,
}

fn unit_at(field: Field, dim: usize, ones: &[usize]) -> Vec<Scalar> {
    (0..dim).map(|i| if ones.contains(&i) { field.one() } else { field.zero() }).collect()
}

/// The ground field k.
pub fn ground(field: Field) -> Algebra {
    Algebra::from_rule(field, 1, vec![field.one()], |_, _| vec![(0, field.one())])
}

/// k x ... x k with `n` orthogonal idempotents.
pub fn product(field: Field, n: usize) -> Algebra {
    let all: Vec<usize> = (0..n).collect();
    Algebra::from_rule(field, n, unit_at(field, n, &all), |i, j| if i == j { vec![(i, field.one())] } else { vec![] })
}

/// k[x]/(x^n) in the basis 1, x, ..., x^(n-1).
pub fn truncated_poly(field: Field, n: usize) -> Algebra {
    Algebra::from_rule(field, n, unit_at(field, n, &[0]), |i, j| if i + j < n { vec![(i + j, field.one())] } else { vec![] })
}

/// Group algebra of the cyclic group of order `n`, basis 1, g, ..., g^(n-1).
pub fn group_algebra(field: Field, n: usize) -> Algebra {
    Algebra::from_rule(field, n, unit_at(field, n, &[0]), |i, j| vec![((i + j) % n, field.one())])
}

/// M_n(k) in the matrix-unit basis, `E_ij` at index `i * n + j`.
pub fn matrix_algebra(field: Field, n: usize) -> Algebra {
    let diag: Vec<usize> = (0..n).map(|i| i * n + i).collect();
    Algebra::from_rule(field, n * n, unit_at(field, n * n, &diag), |a, b| {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        if j == k {
            vec![(i * n + l, field.one())]
        } else {
            vec![]
        }
    })
}

/// Upper triangular 2x2 matrices, basis E11, E12, E22.
pub fn upper_triangular(field: Field) -> Algebra {
    let units = [(0, 0), (0, 1), (1, 1)];
    Algebra::from_rule(field, 3, unit_at(field, 3, &[0, 2]), |a, b| {
        let (i, j) = units[a];
        let (k, l) = units[b];
        if j == k {
            let idx = units.iter().position(|&u| u == (i, l)).expect("upper triangular");
            vec![(idx, field.one())]
        } else {
            vec![]
        }
    })
}

fn matrix_unit(field: Field, n: usize, i: usize, j: usize) -> crate::exactla::Matrix {
    crate::exactla::Matrix::from_fn(field, n, n, |r, c| if r == i && c == j { field.one() } else { field.zero() })
}

/// Algebras of dimension at most three, each with at least one character.
pub fn small_catalog(field: Field) -> Vec<CatalogAlgebra> {
    let z = field.zero();
    let o = field.one();
    let mut out = vec![
        CatalogAlgebra { name: "k".into(), algebra: Arc::new(ground(field)), characters: vec![vec![o.clone()]], columns: None },
        CatalogAlgebra {
            name: "k2".into(),
            algebra: Arc::new(product(field, 2)),
            characters: vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            columns: None,
        },
        CatalogAlgebra {
            name: "k3".into(),
            algebra: Arc::new(product(field, 3)),
            characters: (0..3).map(|i| unit_at(field, 3, &[i])).collect(),
            columns: None,
        },
        CatalogAlgebra {
            name: "dual2".into(),
            algebra: Arc::new(truncated_poly(field, 2)),
            characters: vec![vec![o.clone(), z.clone()]],
            columns: None,
        },
        CatalogAlgebra {
            name: "trunc3".into(),
            algebra: Arc::new(truncated_poly(field, 3)),
            characters: vec![vec![o.clone(), z.clone(), z.clone()]],
            columns: None,
        },
        CatalogAlgebra {
            name: "z2".into(),
            algebra: Arc::new(group_algebra(field, 2)),
            characters: vec![vec![o.clone(), o.clone()], vec![o.clone(), -&o]],
            columns: None,
        },
        CatalogAlgebra {
            name: "t2".into(),
            algebra: Arc::new(upper_triangular(field)),
            characters: vec![vec![o.clone(), z.clone(), z.clone()], vec![z.clone(), z.clone(), o.clone()]],
            columns: Some(vec![matrix_unit(field, 2, 0, 0), matrix_unit(field, 2, 0, 1), matrix_unit(field, 2, 1, 1)]),
        },
    ];
    // Over a field of characteristic 2 the two characters of k[Z/2] coincide.
    if field == Field::Prime(2) {
        out[5].characters.truncate(1);
    }
    out
}
