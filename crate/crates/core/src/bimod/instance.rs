use std::sync::Arc;

use super::coherence;
use super::hom::{hom_basis, map_from_coords};
use super::tensor::{tensor_over, Chain, Splice, Word};
use super::{Bimodule, BimoduleMap};
use crate::algebra::Algebra;
use crate::bicat::{Bicategory, LinearBicategory};
use crate::error::{Error, Result};
use crate::exactla::{Field, Scalar};
use crate::report::Witness;

/// The bicategory of finite-dimensional bimodules over one ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bim {
    pub field: Field,
}

impl Bim {
    pub fn new(field: Field) -> Self {
        Bim { field }
    }
}

impl Bicategory for Bim {
    type Obj = Arc<Algebra>;
    type Cell1 = Arc<Bimodule>;
    type Cell2 = BimoduleMap;

    fn source(&self, f: &Arc<Bimodule>) -> Arc<Algebra> {
        f.right().clone()
    }
    fn target(&self, f: &Arc<Bimodule>) -> Arc<Algebra> {
        f.left().clone()
    }
    fn dom(&self, a: &BimoduleMap) -> Arc<Bimodule> {
        a.source().clone()
    }
    fn cod(&self, a: &BimoduleMap) -> Arc<Bimodule> {
        a.target().clone()
    }

    fn id1(&self, x: &Arc<Algebra>) -> Result<Arc<Bimodule>> {
        Ok(Arc::new(Bimodule::regular(x)))
    }

    fn hcomp1(&self, f: &Arc<Bimodule>, g: &Arc<Bimodule>) -> Result<Arc<Bimodule>> {
        tensor_over(f, g)
    }

    fn id2(&self, f: &Arc<Bimodule>) -> Result<BimoduleMap> {
        Ok(BimoduleMap::identity(f))
    }

    fn hcomp2(&self, a: &BimoduleMap, b: &BimoduleMap) -> Result<BimoduleMap> {
        let src = tensor_over(a.source(), b.source())?;
        Ok(Chain::start(Word::of(&src)).apply(0, 1, a, Splice::Keep)?.apply(1, 1, b, Splice::Keep)?.finish())
    }

    fn vcomp(&self, second: &BimoduleMap, first: &BimoduleMap) -> Result<BimoduleMap> {
        second.compose(first)
    }

    fn associator(&self, f: &Arc<Bimodule>, g: &Arc<Bimodule>, h: &Arc<Bimodule>) -> Result<BimoduleMap> {
        coherence::associator(f, g, h)
    }
    fn associator_inv(&self, f: &Arc<Bimodule>, g: &Arc<Bimodule>, h: &Arc<Bimodule>) -> Result<BimoduleMap> {
        coherence::associator_inv(f, g, h)
    }
    fn left_unitor(&self, f: &Arc<Bimodule>) -> Result<BimoduleMap> {
        coherence::left_unitor(f)
    }
    fn left_unitor_inv(&self, f: &Arc<Bimodule>) -> Result<BimoduleMap> {
        coherence::left_unitor_inv(f)
    }
    fn right_unitor(&self, f: &Arc<Bimodule>) -> Result<BimoduleMap> {
        coherence::right_unitor(f)
    }
    fn right_unitor_inv(&self, f: &Arc<Bimodule>) -> Result<BimoduleMap> {
        coherence::right_unitor_inv(f)
    }

    fn diff2(&self, a: &BimoduleMap, b: &BimoduleMap, label: &str) -> Option<Witness> {
        a.diff(b, label)
    }
}

impl LinearBicategory for Bim {
    fn field(&self) -> Field {
        self.field
    }

    fn hom_basis(&self, f: &Arc<Bimodule>, g: &Arc<Bimodule>) -> Result<Vec<BimoduleMap>> {
        hom_basis(f, g)
    }

    fn coords(&self, a: &BimoduleMap) -> Vec<Scalar> {
        a.matrix().entries().to_vec()
    }

    fn combine(&self, f: &Arc<Bimodule>, g: &Arc<Bimodule>, basis: &[BimoduleMap], coeffs: &[Scalar]) -> BimoduleMap {
        map_from_coords(f, g, basis, coeffs)
    }

    fn scale2(&self, a: &BimoduleMap, s: &Scalar) -> BimoduleMap {
        a.scale(s)
    }

    fn is_epi(&self, a: &BimoduleMap) -> bool {
        a.is_surjective()
    }

    fn is_mono(&self, a: &BimoduleMap) -> bool {
        a.is_injective()
    }

    fn invert(&self, a: &BimoduleMap) -> Result<BimoduleMap> {
        a.inverse().map_err(|_| {
            Error::NotInvertible(format!(
                "2-cell of rank {} between dims {} and {}",
                a.rank(),
                a.source().dim(),
                a.target().dim()
            ))
        })
    }
}
