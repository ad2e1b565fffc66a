//! Corings, comodules and bicomodules, entwined cells, and the bicategory
//! REM(Bim) with its wide Morita contexts.

mod cell;
mod wrem;

use std::fmt;
use std::sync::Arc;

pub use cell::{
    cell_from_bicomodule, cell_from_comodule, check_entwined_cell, check_two_cell, lift, rem_compose, rem_hcompose,
    rem_identity_cell, rem_two_cell_basis, rem_unitors, rem_vcompose, EntwinedCell, EntwinedTwoCell, Rem,
};
pub use wrem::{
    check_wrem_context, classical_to_wrem, reduction_agreement, wrem_context_space, wrem_to_classical, WremContext, WremSpace,
};

use crate::algebra::Algebra;
use crate::bimod::{
    balanced_map, hom_basis, induced_map, left_unitor_inv, map_from_coords, right_unitor_inv, tensor_over, Bimodule, BimoduleMap,
    Chain, Splice, Word,
};
use crate::corpus::modules::direct_sum;
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::report::{Report, Witness};

/// An A-coring: comultiplication `C -> C (x)_A C` and counit `C -> A`.
#[derive(Clone, PartialEq)]
pub struct Coring {
    pub base: Arc<Algebra>,
    pub carrier: Arc<Bimodule>,
    pub delta: BimoduleMap,
    pub counit: BimoduleMap,
}

impl fmt::Debug for Coring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coring(dim {} over {:?})", self.carrier.dim(), self.base)
    }
}

pub(crate) fn regular(a: &Arc<Algebra>) -> Arc<Bimodule> {
    Arc::new(Bimodule::regular(a))
}

fn compare(report: &mut Report, name: &str, lhs: &BimoduleMap, rhs: &BimoduleMap) {
    report.record(name, Ok(lhs.diff(rhs, name)));
}

impl Coring {
    pub fn new(base: Arc<Algebra>, carrier: Arc<Bimodule>, delta: BimoduleMap, counit: BimoduleMap) -> Result<Self> {
        if carrier.left() != &base || carrier.right() != &base {
            return Err(Error::AlgebraMismatch("coring carrier must be a bimodule over its base".into()));
        }
        if **delta.source() != *carrier || **delta.target() != *tensor_over(&carrier, &carrier)? {
            return Err(Error::NotComposable("comultiplication must run C -> C (x) C".into()));
        }
        if **counit.source() != *carrier || **counit.target() != Bimodule::regular(&base) {
            return Err(Error::NotComposable("counit must run C -> A".into()));
        }
        Ok(Coring { base, carrier, delta, counit })
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// Coassociativity and both counit laws.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        if let Err(e) = self.validate_into(&mut report) {
            report.error("coring structure", e.to_string());
        }
        report
    }

    fn validate_into(&self, report: &mut Report) -> Result<()> {
        let c = &self.carrier;
        let split = || Chain::start(Word::single(c)).then(&self.delta, Splice::Split);
        let left = split()?.apply(1, 1, &self.delta, Splice::Split)?.finish();
        let right = split()?.apply(0, 1, &self.delta, Splice::Split)?.finish();
        compare(report, "coassociativity", &left, &right);
        let eps_right = split()?.apply(1, 1, &self.counit, Splice::Keep)?.finish();
        compare(report, "right counit", &eps_right, &right_unitor_inv(c)?);
        let eps_left = split()?.apply(0, 1, &self.counit, Splice::Keep)?.finish();
        compare(report, "left counit", &eps_left, &left_unitor_inv(c)?);
        Ok(())
    }

    /// Whether this is the trivial coring of its base.
    pub fn is_trivial(&self) -> bool {
        trivial_coring(&self.base).map(|t| t == *self).unwrap_or(false)
    }

    /// The same structure with the comultiplication scaled.
    pub fn with_scaled_delta(&self, s: &crate::exactla::Scalar) -> Coring {
        Coring { delta: self.delta.scale(s), ..self.clone() }
    }

    pub fn with_scaled_counit(&self, s: &crate::exactla::Scalar) -> Coring {
        Coring { counit: self.counit.scale(s), ..self.clone() }
    }
}

/// `(A, l^-1, id)`.
pub fn trivial_coring(a: &Arc<Algebra>) -> Result<Coring> {
    let c = regular(a);
    Coring::new(a.clone(), c.clone(), left_unitor_inv(&c)?, BimoduleMap::identity(&c))
}

/// `A (x)_B A` for an algebra map `B -> A` (columns are images of the basis
/// of B), with `a (x) a' -> (a (x) 1) (x) (1 (x) a')` and multiplication as counit.
pub fn sweedler_coring(a: &Arc<Algebra>, b: &Arc<Algebra>, inclusion: &Matrix) -> Result<Coring> {
    let field = a.field();
    let n = a.dim();
    let reg = Bimodule::regular(a);
    let id_a = Matrix::identity(field, n);
    let ab = Arc::new(reg.restrict(a, &id_a, b, inclusion)?);
    let ba = Arc::new(reg.restrict(b, inclusion, a, &id_a)?);
    let c = tensor_over(&ab, &ba)?;
    let cc = tensor_over(&c, &c)?;
    let c_proj = &c.tensor().expect("tensor").projection;
    let cc_proj = &cc.tensor().expect("tensor").projection;
    let one = a.unit_vector();
    let in_c = |x: &Matrix, y: &Matrix| c_proj.mul(&x.kron(y));
    let mut delta_amb = Matrix::zeros(field, cc.dim(), n * n);
    let mut mult = Matrix::zeros(field, n, n * n);
    for i in 0..n {
        let ei = Matrix::basis_vector(field, n, i);
        let left = in_c(&ei, &one);
        for j in 0..n {
            let ej = Matrix::basis_vector(field, n, j);
            let image = cc_proj.mul(&left.kron(&in_c(&one, &ej)));
            let prod = a.multiply(&a.basis(i), &a.basis(j))?;
            for r in 0..cc.dim() {
                delta_amb.set(r, i * n + j, image.get(r, 0).clone());
            }
            for (r, v) in prod.into_iter().enumerate() {
                mult.set(r, i * n + j, v);
            }
        }
    }
    let delta = balanced_map(&c, &cc, &delta_amb)?;
    let counit = balanced_map(&c, &regular(a), &mult)?;
    Coring::new(a.clone(), c, delta, counit)
}

/// A right C-comodule: an (S, A)-bimodule `X` with a coaction `X -> X (x)_A C`.
#[derive(Clone, Debug, PartialEq)]
pub struct Comodule {
    pub coring: Arc<Coring>,
    pub carrier: Arc<Bimodule>,
    pub coaction: BimoduleMap,
}

impl Comodule {
    pub fn new(coring: Arc<Coring>, carrier: Arc<Bimodule>, coaction: BimoduleMap) -> Result<Self> {
        if **coaction.source() != *carrier || **coaction.target() != *tensor_over(&carrier, &coring.carrier)? {
            return Err(Error::NotComposable("coaction must run X -> X (x) C".into()));
        }
        Ok(Comodule { coring, carrier, coaction })
    }

    /// `X (x)_A C` with coaction `X (x) Delta`.
    pub fn cofree(coring: &Arc<Coring>, x: &Arc<Bimodule>) -> Result<Self> {
        let xc = tensor_over(x, &coring.carrier)?;
        let coaction = Chain::start(Word::of(&xc)).apply(1, 1, &coring.delta, Splice::Split)?.contract(0, 2)?.finish();
        Comodule::new(coring.clone(), xc, coaction)
    }

    /// The coring as a comodule over itself.
    pub fn regular(coring: &Arc<Coring>) -> Result<Self> {
        Comodule::new(coring.clone(), coring.carrier.clone(), coring.delta.clone())
    }

    /// A right A-module over the trivial coring, with coaction `r^-1`.
    pub fn trivial(coring: &Arc<Coring>, x: &Arc<Bimodule>) -> Result<Self> {
        if !coring.is_trivial() {
            return Err(Error::Invalid("trivial coactions need the trivial coring".into()));
        }
        Comodule::new(coring.clone(), x.clone(), right_unitor_inv(x)?)
    }

    /// `X (+) Y` with the block coaction, its two inclusions and two projections.
    pub fn direct_sum(&self, other: &Comodule) -> Result<(Comodule, [BimoduleMap; 2], [BimoduleMap; 2])> {
        if self.coring != other.coring {
            return Err(Error::AlgebraMismatch("direct sum of comodules over different corings".into()));
        }
        let (x, y) = (&self.carrier, &other.carrier);
        let sum = Arc::new(direct_sum(x, y)?);
        let field = sum.field();
        let (n, m) = (x.dim(), y.dim());
        let block = |rows: usize, cols: usize, r0: usize, c0: usize| {
            Matrix::from_fn(field, rows, cols, |r, c| if r + c0 == c + r0 { field.one() } else { field.zero() })
        };
        let ins = [
            BimoduleMap::new(x.clone(), sum.clone(), block(n + m, n, 0, 0))?,
            BimoduleMap::new(y.clone(), sum.clone(), block(n + m, m, n, 0))?,
        ];
        let outs = [
            BimoduleMap::new(sum.clone(), x.clone(), block(n, n + m, 0, 0))?,
            BimoduleMap::new(sum.clone(), y.clone(), block(m, n + m, 0, n))?,
        ];
        let id_c = BimoduleMap::identity(&self.coring.carrier);
        let part = |inc: &BimoduleMap, co: &BimoduleMap, out: &BimoduleMap| -> Result<BimoduleMap> {
            induced_map(inc, &id_c)?.compose(&co.compose(out)?)
        };
        let coaction = part(&ins[0], &self.coaction, &outs[0])?.add(&part(&ins[1], &other.coaction, &outs[1])?)?;
        Ok((Comodule::new(self.coring.clone(), sum, coaction)?, ins, outs))
    }

    /// A basis of the colinear bimodule maps into `other`.
    pub fn colinear_basis(&self, other: &Comodule) -> Result<Vec<BimoduleMap>> {
        let maps = hom_basis(&self.carrier, &other.carrier)?;
        if maps.is_empty() {
            return Ok(maps);
        }
        let id_c = BimoduleMap::identity(&self.coring.carrier);
        let mut columns = Vec::with_capacity(maps.len());
        for f in &maps {
            let lhs = other.coaction.compose(f)?;
            let rhs = induced_map(f, &id_c)?.compose(&self.coaction)?;
            columns.push(lhs.matrix().sub(rhs.matrix()).entries().to_vec());
        }
        let field = self.carrier.field();
        let system = Matrix::from_fn(field, columns[0].len(), columns.len(), |i, j| columns[j][i].clone());
        let kernel = system.kernel_basis()?;
        Ok((0..kernel.cols()).map(|j| map_from_coords(&self.carrier, &other.carrier, &maps, kernel.col(j).entries())).collect())
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        if let Err(e) = self.validate_into(&mut report) {
            report.error("comodule structure", e.to_string());
        }
        report
    }

    fn validate_into(&self, report: &mut Report) -> Result<()> {
        let x = &self.carrier;
        let co = &self.coring;
        let split = || Chain::start(Word::single(x)).then(&self.coaction, Splice::Split);
        let outer = split()?.apply(0, 1, &self.coaction, Splice::Split)?.finish();
        let inner = split()?.apply(1, 1, &co.delta, Splice::Split)?.finish();
        compare(report, "coaction coassociative", &outer, &inner);
        let eps = split()?.apply(1, 1, &co.counit, Splice::Keep)?.finish();
        compare(report, "coaction counital", &eps, &right_unitor_inv(x)?);
        Ok(())
    }

    /// Whether a bimodule map between comodules commutes with the coactions.
    pub fn colinearity_defect(&self, other: &Comodule, f: &BimoduleMap) -> Result<Option<Witness>> {
        let lhs = other.coaction.compose(f)?;
        let rhs =
            Chain::start(Word::of(self.coaction.target())).apply(0, 1, f, Splice::Keep)?.finish().compose(&self.coaction)?;
        Ok(lhs.diff(&rhs, "coaction after f vs (f (x) C) after coaction"))
    }
}

/// A (C, D)-bicomodule over `A` and `B`: compatible left and right coactions
/// on an (A, B)-bimodule.
#[derive(Clone, Debug, PartialEq)]
pub struct Bicomodule {
    pub left: Arc<Coring>,
    pub right: Arc<Coring>,
    pub carrier: Arc<Bimodule>,
    /// `M -> M (x)_B D`
    pub right_coaction: BimoduleMap,
    /// `M -> C (x)_A M`
    pub left_coaction: BimoduleMap,
}

impl Bicomodule {
    pub fn new(
        left: Arc<Coring>,
        right: Arc<Coring>,
        carrier: Arc<Bimodule>,
        right_coaction: BimoduleMap,
        left_coaction: BimoduleMap,
    ) -> Result<Self> {
        if **right_coaction.source() != *carrier || **right_coaction.target() != *tensor_over(&carrier, &right.carrier)? {
            return Err(Error::NotComposable("right coaction must run M -> M (x) D".into()));
        }
        if **left_coaction.source() != *carrier || **left_coaction.target() != *tensor_over(&left.carrier, &carrier)? {
            return Err(Error::NotComposable("left coaction must run M -> C (x) M".into()));
        }
        Ok(Bicomodule { left, right, carrier, right_coaction, left_coaction })
    }

    /// A right comodule with the trivial left coaction `l^-1` of its left algebra.
    pub fn with_trivial_left(x: &Comodule) -> Result<Self> {
        let left = Arc::new(trivial_coring(x.carrier.left())?);
        Bicomodule::new(left, x.coring.clone(), x.carrier.clone(), x.coaction.clone(), left_unitor_inv(&x.carrier)?)
    }

    /// The coring over itself on both sides.
    pub fn regular(c: &Arc<Coring>) -> Result<Self> {
        Bicomodule::new(c.clone(), c.clone(), c.carrier.clone(), c.delta.clone(), c.delta.clone())
    }

    pub fn right_comodule(&self) -> Comodule {
        Comodule { coring: self.right.clone(), carrier: self.carrier.clone(), coaction: self.right_coaction.clone() }
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        report.extend_prefixed("right: ", self.right_comodule().validate());
        if let Err(e) = self.validate_left(&mut report) {
            report.error("bicomodule structure", e.to_string());
        }
        report
    }

    fn validate_left(&self, report: &mut Report) -> Result<()> {
        let m = &self.carrier;
        let c = &self.left;
        let split = || Chain::start(Word::single(m)).then(&self.left_coaction, Splice::Split);
        let outer = split()?.apply(1, 1, &self.left_coaction, Splice::Split)?.finish();
        let inner = split()?.apply(0, 1, &c.delta, Splice::Split)?.finish();
        compare(report, "left: coaction coassociative", &outer, &inner);
        let eps = split()?.apply(0, 1, &c.counit, Splice::Keep)?.finish();
        compare(report, "left: coaction counital", &eps, &left_unitor_inv(m)?);
        let lr = split()?.apply(1, 1, &self.right_coaction, Splice::Split)?.finish();
        let rl = Chain::start(Word::single(m))
            .then(&self.right_coaction, Splice::Split)?
            .apply(0, 1, &self.left_coaction, Splice::Split)?
            .finish();
        compare(report, "coactions commute", &lr, &rl);
        Ok(())
    }
}
