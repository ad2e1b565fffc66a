use std::sync::Arc;

use super::{Bimodule, BimoduleMap};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, RowReducer, Scalar};

/// Basis of the space of bimodule maps `m -> n`, as a list of maps.
///
/// Unknown `X[r][c]` sits at index `r * m.dim + c`; the constraints are
/// `X L_m(a) = L_n(a) X` and `X R_m(b) = R_n(b) X` on basis elements.
pub fn hom_basis(m: &Arc<Bimodule>, n: &Arc<Bimodule>) -> Result<Vec<BimoduleMap>> {
    if m.left() != n.left() || m.right() != n.right() {
        return Err(Error::AlgebraMismatch("hom between bimodules over different algebras".into()));
    }
    let field = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let width = dm * dn;
    let mut red = RowReducer::new(field, width);
    let pairs = m.left_action().iter().zip(n.left_action()).chain(m.right_action().iter().zip(n.right_action()));
    for (am, an) in pairs {
        for r in 0..dn {
            for c in 0..dm {
                if red.is_full() {
                    break;
                }
                let mut row = vec![field.zero(); width];
                for k in 0..dm {
                    let v = am.get(k, c);
                    if !v.is_zero() {
                        row[r * dm + k] = &row[r * dm + k] + v;
                    }
                }
                for k in 0..dn {
                    let v = an.get(r, k);
                    if !v.is_zero() {
                        row[k * dm + c] = &row[k * dm + c] - v;
                    }
                }
                red.push(row);
            }
        }
    }
    let kernel = red.kernel_basis();
    Ok((0..kernel.cols())
        .map(|j| {
            let x = Matrix::from_fn(field, dn, dm, |r, c| kernel.get(r * dm + c, j).clone());
            BimoduleMap::raw(m.clone(), n.clone(), x)
        })
        .collect())
}

/// `sum_i c_i basis_i`.
pub fn map_from_coords(m: &Arc<Bimodule>, n: &Arc<Bimodule>, basis: &[BimoduleMap], coords: &[Scalar]) -> BimoduleMap {
    let mut acc = Matrix::zeros(m.field(), n.dim(), m.dim());
    for (b, c) in basis.iter().zip(coords) {
        if !c.is_zero() {
            acc = acc.add(&b.matrix().scale(c));
        }
    }
    BimoduleMap::raw(m.clone(), n.clone(), acc)
}
