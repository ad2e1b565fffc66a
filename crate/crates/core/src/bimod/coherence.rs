//! Associator, unitors, and the composite iota = r^-1 l.

use std::sync::Arc;

use super::tensor::{tensor_over, Chain, Word};
use super::{Bimodule, BimoduleMap};
use crate::error::Result;
use crate::exactla::Matrix;

/// `(m n) p -> m (n p)`, routed through the flat triple tensor.
pub fn associator(m: &Arc<Bimodule>, n: &Arc<Bimodule>, p: &Arc<Bimodule>) -> Result<BimoduleMap> {
    let src = tensor_over(&tensor_over(m, n)?, p)?;
    let dst = tensor_over(m, &tensor_over(n, p)?)?;
    Chain::start(Word::of(&src)).expand(0)?.contract(1, 2)?.finish_at(&dst)
}

/// `m (n p) -> (m n) p`.
pub fn associator_inv(m: &Arc<Bimodule>, n: &Arc<Bimodule>, p: &Arc<Bimodule>) -> Result<BimoduleMap> {
    let src = tensor_over(m, &tensor_over(n, p)?)?;
    let dst = tensor_over(&tensor_over(m, n)?, p)?;
    Chain::start(Word::of(&src)).expand(1)?.contract(0, 2)?.finish_at(&dst)
}

/// `A (x)_A m -> m`, the left action.
pub fn left_unitor(m: &Arc<Bimodule>) -> Result<BimoduleMap> {
    let id = Arc::new(Bimodule::regular(m.left()));
    let src = tensor_over(&id, m)?;
    let (a, d) = (id.dim(), m.dim());
    let act = Matrix::from_fn(m.field(), d, a * d, |r, col| m.left_action()[col / d].get(r, col % d).clone());
    let sec = &src.tensor().expect("tensor").section;
    Ok(BimoduleMap::raw(src.clone(), m.clone(), act.mul(sec)))
}

/// `m -> A (x)_A m`, `x -> 1 (x) x`.
pub fn left_unitor_inv(m: &Arc<Bimodule>) -> Result<BimoduleMap> {
    let id = Arc::new(Bimodule::regular(m.left()));
    let dst = tensor_over(&id, m)?;
    let lift = m.left().unit_vector().kron(&Matrix::identity(m.field(), m.dim()));
    let proj = &dst.tensor().expect("tensor").projection;
    Ok(BimoduleMap::raw(m.clone(), dst.clone(), proj.mul(&lift)))
}

/// `m (x)_B B -> m`, the right action.
pub fn right_unitor(m: &Arc<Bimodule>) -> Result<BimoduleMap> {
    let id = Arc::new(Bimodule::regular(m.right()));
    let src = tensor_over(m, &id)?;
    let (b, d) = (id.dim(), m.dim());
    let act = Matrix::from_fn(m.field(), d, d * b, |r, col| m.right_action()[col % b].get(r, col / b).clone());
    let sec = &src.tensor().expect("tensor").section;
    Ok(BimoduleMap::raw(src.clone(), m.clone(), act.mul(sec)))
}

/// `m -> m (x)_B B`, `x -> x (x) 1`.
pub fn right_unitor_inv(m: &Arc<Bimodule>) -> Result<BimoduleMap> {
    let id = Arc::new(Bimodule::regular(m.right()));
    let dst = tensor_over(m, &id)?;
    let lift = Matrix::identity(m.field(), m.dim()).kron(&m.right().unit_vector());
    let proj = &dst.tensor().expect("tensor").projection;
    Ok(BimoduleMap::raw(m.clone(), dst.clone(), proj.mul(&lift)))
}

/// `A (x) m -> m (x) B`, the composite `r^-1 l`.
pub fn iota(m: &Arc<Bimodule>) -> Result<BimoduleMap> {
    right_unitor_inv(m)?.compose(&left_unitor(m)?)
}

/// `m (x) B -> A (x) m`, the composite `l^-1 r`.
pub fn iota_inv(m: &Arc<Bimodule>) -> Result<BimoduleMap> {
    left_unitor_inv(m)?.compose(&right_unitor(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::algebras;
    use crate::exactla::Field;

    #[test]
    fn identity_unitors_agree() {
        let a = Arc::new(algebras::matrix_algebra(Field::Prime(101), 2));
        let id = Arc::new(Bimodule::regular(&a));
        let l = left_unitor(&id).unwrap();
        let r = right_unitor(&id).unwrap();
        assert_eq!(l, r);
        let back = l.compose(&left_unitor_inv(&id).unwrap()).unwrap();
        assert_eq!(back, BimoduleMap::identity(&id));
    }

    #[test]
    fn associator_invertible_on_matrix_algebra() {
        let a = Arc::new(algebras::matrix_algebra(Field::Rational, 2));
        let m = Arc::new(Bimodule::regular(&a));
        let f = associator(&m, &m, &m).unwrap();
        assert_eq!(f.source().dim(), 4);
        assert_eq!(f.target().dim(), 4);
        let g = associator_inv(&m, &m, &m).unwrap();
        assert_eq!(g.compose(&f).unwrap(), BimoduleMap::identity(f.source()));
        assert_eq!(f.compose(&g).unwrap(), BimoduleMap::identity(f.target()));
    }
}
