//! Building blocks for bimodules: standard representations, characters,
//! direct sums, basis changes, and invariant subspaces.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::bimod::Bimodule;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar, Solution};

/// How the ground field, in whatever basis it is presented, acts on `k^n`: its
/// one basis element is `1 / unit` times the identity.
fn ground_action(k: &Algebra, n: usize) -> Vec<Matrix> {
    let s = k.unit()[0].inv().expect("unit of a one-dimensional algebra is nonzero");
    vec![Matrix::identity(k.field(), n).scale(&s)]
}

/// Column vectors k^n as an (M_n(k), k)-bimodule.
pub fn columns(mn: &Arc<Algebra>, k: &Arc<Algebra>, n: usize) -> Bimodule {
    let field = mn.field();
    let left = (0..n * n)
        .map(|a| Matrix::from_fn(field, n, n, |r, c| if r == a / n && c == a % n { field.one() } else { field.zero() }))
        .collect();
    Bimodule::new(mn.clone(), k.clone(), left, ground_action(k, n)).expect("shapes")
}

/// Row vectors k^n as a (k, M_n(k))-bimodule: `y . E_ij` acts by the transpose.
pub fn rows(k: &Arc<Algebra>, mn: &Arc<Algebra>, n: usize) -> Bimodule {
    let field = mn.field();
    let right = (0..n * n)
        .map(|a| Matrix::from_fn(field, n, n, |r, c| if c == a / n && r == a % n { field.one() } else { field.zero() }))
        .collect();
    Bimodule::new(k.clone(), mn.clone(), ground_action(k, n), right).expect("shapes")
}

/// One-dimensional bimodule on which A acts by `chi` and B by `psi`.
pub fn character_module(a: &Arc<Algebra>, chi: &[Scalar], b: &Arc<Algebra>, psi: &[Scalar]) -> Bimodule {
    let f = a.field();
    let one = |s: &Scalar| Matrix::from_raw(f, 1, 1, vec![s.clone()]);
    Bimodule::new(a.clone(), b.clone(), chi.iter().map(one).collect(), psi.iter().map(one).collect()).expect("shapes")
}

/// A acting on itself from the left, with the ground field on the right.
pub fn left_regular(a: &Arc<Algebra>, k: &Arc<Algebra>) -> Bimodule {
    let left = (0..a.dim()).map(|i| a.left_mult(i)).collect();
    Bimodule::new(a.clone(), k.clone(), left, ground_action(k, a.dim())).expect("shapes")
}

/// B acting on itself from the right, with the ground field on the left.
pub fn right_regular(k: &Arc<Algebra>, b: &Arc<Algebra>) -> Bimodule {
    let right = (0..b.dim()).map(|j| b.right_mult(j)).collect();
    Bimodule::new(k.clone(), b.clone(), ground_action(k, b.dim()), right).expect("shapes")
}

/// Left module given by matrices, made a bimodule with the ground field on the right.
pub fn from_left_representation(a: &Arc<Algebra>, k: &Arc<Algebra>, mats: Vec<Matrix>) -> Result<Bimodule> {
    let n = mats.first().map_or(0, Matrix::rows);
    Bimodule::new(a.clone(), k.clone(), mats, ground_action(k, n))
}

/// Right module from a left matrix representation via transposes.
pub fn from_right_representation(k: &Arc<Algebra>, b: &Arc<Algebra>, mats: &[Matrix]) -> Result<Bimodule> {
    let n = mats.first().map_or(0, Matrix::rows);
    Bimodule::new(k.clone(), b.clone(), ground_action(k, n), mats.iter().map(Matrix::transpose).collect())
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let f = a.field();
    let (m, n) = (a.rows(), b.rows());
    Matrix::from_fn(f, m + n, m + n, |r, c| {
        if r < m && c < m {
            a.get(r, c).clone()
        } else if r >= m && c >= m {
            b.get(r - m, c - m).clone()
        } else {
            f.zero()
        }
    })
}

pub fn direct_sum(x: &Bimodule, y: &Bimodule) -> Result<Bimodule> {
    if x.left() != y.left() || x.right() != y.right() {
        return Err(Error::AlgebraMismatch("direct sum of bimodules over different algebras".into()));
    }
    let left = x.left_action().iter().zip(y.left_action()).map(|(a, b)| block_diag(a, b)).collect();
    let right = x.right_action().iter().zip(y.right_action()).map(|(a, b)| block_diag(a, b)).collect();
    Bimodule::new(x.left().clone(), x.right().clone(), left, right)
}

/// The same bimodule in the basis given by the columns of `p`.
pub fn change_basis(m: &Bimodule, p: &Matrix) -> Result<Bimodule> {
    let pinv = p.inverse()?;
    let conj = |a: &Matrix| pinv.mul(a).mul(p);
    Bimodule::new(
        m.left().clone(),
        m.right().clone(),
        m.left_action().iter().map(conj).collect(),
        m.right_action().iter().map(conj).collect(),
    )
}

/// Matrix of `op` restricted to the invariant subspace spanned by the
/// (independent) columns of `basis`.
pub fn restrict_operator(basis: &Matrix, op: &Matrix) -> Result<Matrix> {
    match basis.solve(&op.mul(basis))? {
        Solution::Solved { x, .. } => Ok(x),
        Solution::NoSolution => Err(Error::Invalid("subspace is not invariant".into())),
    }
}

/// The sub-bimodule spanned by the columns of `basis`, acted on through
/// algebra maps `into_left: A' -> A`, `into_right: B' -> B` (columns are images
/// of basis elements).
pub fn sub_bimodule(
    m: &Bimodule,
    basis: &Matrix,
    new_left: &Arc<Algebra>,
    into_left: &Matrix,
    new_right: &Arc<Algebra>,
    into_right: &Matrix,
) -> Result<Bimodule> {
    let left = (0..new_left.dim())
        .map(|i| restrict_operator(basis, &m.left_of(into_left.col(i).entries())))
        .collect::<Result<Vec<_>>>()?;
    let right = (0..new_right.dim())
        .map(|i| restrict_operator(basis, &m.right_of(into_right.col(i).entries())))
        .collect::<Result<Vec<_>>>()?;
    Bimodule::new(new_left.clone(), new_right.clone(), left, right)
}
