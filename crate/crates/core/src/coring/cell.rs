use std::sync::Arc;

use super::{regular, Bicomodule, Comodule, Coring};
use crate::bicat::Bicategory;
use crate::bimod::{
    associator, associator_inv, hom_basis, iota, iota_inv, left_unitor, left_unitor_inv, map_from_coords, right_unitor,
    right_unitor_inv, tensor_over, Bimodule, BimoduleMap, Chain, Splice, Word,
};
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::report::{Report, Witness};

/// A 1-cell `(M, m)` from `(D:B)` to `(C:A)`: an (A, B)-bimodule with
/// `m: C (x)_A M -> M (x)_B D`.
#[derive(Clone, Debug, PartialEq)]
pub struct EntwinedCell {
    pub source: Arc<Coring>,
    pub target: Arc<Coring>,
    pub module: Arc<Bimodule>,
    pub entwining: BimoduleMap,
}

impl EntwinedCell {
    pub fn new(source: Arc<Coring>, target: Arc<Coring>, module: Arc<Bimodule>, entwining: BimoduleMap) -> Result<Self> {
        if module.left() != &target.base || module.right() != &source.base {
            return Err(Error::AlgebraMismatch("cell module must be a bimodule over the target and source bases".into()));
        }
        if **entwining.source() != *tensor_over(&target.carrier, &module)?
            || **entwining.target() != *tensor_over(&module, &source.carrier)?
        {
            return Err(Error::NotComposable("entwining must run C (x) M -> M (x) D".into()));
        }
        Ok(EntwinedCell { source, target, module, entwining })
    }

    /// `C (x)_A M`, where reduced 2-cells out of this cell start.
    pub fn reduced_domain(&self) -> Result<Arc<Bimodule>> {
        tensor_over(&self.target.carrier, &self.module)
    }
}

/// A reduced 2-cell `alpha: C (x)_A M -> M'` between cells with the same corings.
#[derive(Clone, Debug, PartialEq)]
pub struct EntwinedTwoCell {
    pub source: EntwinedCell,
    pub target: EntwinedCell,
    pub map: BimoduleMap,
}

impl EntwinedTwoCell {
    pub fn new(source: EntwinedCell, target: EntwinedCell, map: BimoduleMap) -> Result<Self> {
        if source.source != target.source || source.target != target.target {
            return Err(Error::NotComposable("2-cell between cells over different corings".into()));
        }
        if **map.source() != *source.reduced_domain()? || **map.target() != *target.module {
            return Err(Error::NotComposable("2-cell map must run C (x) M -> M'".into()));
        }
        Ok(EntwinedTwoCell { source, target, map })
    }
}

/// `phi (l (eps (x) X))`: the reduced 2-cell induced by a plain map `X -> Y`.
pub fn lift(coring: &Coring, phi: &BimoduleMap) -> Result<BimoduleMap> {
    let x = phi.source();
    Chain::start(Word::of(&tensor_over(&coring.carrier, x)?))
        .apply(0, 1, &coring.counit, Splice::Keep)?
        .then(&left_unitor(x)?, Splice::Keep)?
        .then(phi, Splice::Keep)
        .map(Chain::finish)
}

fn diff_into(report: &mut Report, name: &str, lhs: &BimoduleMap, rhs: &BimoduleMap) {
    report.record(name, Ok(lhs.diff(rhs, name)));
}

/// Both entwining equations: the counit one up to `iota_M` and the
/// comultiplication one in the flat word `M D D`.
pub fn check_entwined_cell(cell: &EntwinedCell) -> Result<Report> {
    let (c, d, m) = (&cell.target, &cell.source, &cell.module);
    let cm = cell.reduced_domain()?;
    let mut report = Report::new();

    let lhs = Chain::start(Word::of(&cm)).then(&cell.entwining, Splice::Split)?.apply(1, 1, &d.counit, Splice::Keep)?.finish();
    let rhs = Chain::start(Word::of(&cm)).apply(0, 1, &c.counit, Splice::Keep)?.then(&iota(m)?, Splice::Split)?.finish();
    diff_into(&mut report, "counit condition", &lhs, &rhs);

    let lhs = Chain::start(Word::of(&cm))
        .apply(0, 1, &c.delta, Splice::Split)?
        .contract(1, 2)?
        .apply(1, 1, &cell.entwining, Splice::Split)?
        .contract(0, 2)?
        .apply(0, 1, &cell.entwining, Splice::Split)?
        .finish();
    let rhs = Chain::start(Word::of(&cm)).then(&cell.entwining, Splice::Split)?.apply(1, 1, &d.delta, Splice::Split)?.finish();
    diff_into(&mut report, "comultiplication condition", &lhs, &rhs);
    Ok(report)
}

/// Both sides of `m' (C alpha) (Delta M) = (alpha D) (C m) (Delta M)`.
pub(crate) fn two_cell_sides(
    source: &EntwinedCell,
    target: &EntwinedCell,
    map: &BimoduleMap,
) -> Result<(BimoduleMap, BimoduleMap)> {
    let c = &source.target;
    let cm = source.reduced_domain()?;
    let spread = || -> Result<Chain> { Chain::start(Word::of(&cm)).apply(0, 1, &c.delta, Splice::Split)?.contract(1, 2) };
    let lhs = spread()?.apply(1, 1, map, Splice::Keep)?.contract(0, 2)?.apply(0, 1, &target.entwining, Splice::Split)?.finish();
    let rhs = spread()?.apply(1, 1, &source.entwining, Splice::Split)?.contract(0, 2)?.apply(0, 1, map, Splice::Keep)?.finish();
    Ok((lhs, rhs))
}

/// A basis of the reduced 2-cells `f -> g`: the kernel of the 2-cell
/// condition inside `Hom(C (x) M, M')`.
pub fn rem_two_cell_basis(f: &EntwinedCell, g: &EntwinedCell) -> Result<Vec<EntwinedTwoCell>> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::NotComposable("2-cells need cells over the same corings".into()));
    }
    let dom = f.reduced_domain()?;
    let maps = hom_basis(&dom, &g.module)?;
    if maps.is_empty() {
        return Ok(vec![]);
    }
    let mut columns = Vec::with_capacity(maps.len());
    for phi in &maps {
        let (lhs, rhs) = two_cell_sides(f, g, phi)?;
        columns.push(lhs.matrix().sub(rhs.matrix()).entries().to_vec());
    }
    let field = dom.field();
    let system = Matrix::from_fn(field, columns[0].len(), columns.len(), |i, j| columns[j][i].clone());
    let kernel = system.kernel_basis()?;
    (0..kernel.cols())
        .map(|j| {
            let map = map_from_coords(&dom, &g.module, &maps, kernel.col(j).entries());
            EntwinedTwoCell::new(f.clone(), g.clone(), map)
        })
        .collect()
}

pub fn check_two_cell(a: &EntwinedTwoCell) -> Result<Report> {
    let (lhs, rhs) = two_cell_sides(&a.source, &a.target, &a.map)?;
    let mut report = Report::new();
    diff_into(&mut report, "2-cell condition", &lhs, &rhs);
    Ok(report)
}

/// `m = l (eps_C (x) M (x) D) (C (x) rho^M)`: a right D-comodule that is an
/// (A, B)-bimodule is a cell from D to any A-coring C.
pub fn cell_from_comodule(x: &Comodule, target: &Arc<Coring>) -> Result<EntwinedCell> {
    let report = x.validate();
    if !report.ok() {
        return Err(Error::Invalid(format!("not a comodule: {:?}", report.failing_names())));
    }
    let (c, m) = (target, &x.carrier);
    let entwining = Chain::start(Word::of(&tensor_over(&c.carrier, m)?))
        .apply(1, 1, &x.coaction, Splice::Split)?
        .apply(0, 1, &c.counit, Splice::Keep)?
        .contract(0, 2)?
        .apply(0, 1, &left_unitor(m)?, Splice::Keep)?
        .finish_at(&tensor_over(m, &x.coring.carrier)?)?;
    EntwinedCell::new(x.coring.clone(), c.clone(), m.clone(), entwining)
}

/// The cell of a bicomodule's right coaction, with its left coring as target.
pub fn cell_from_bicomodule(b: &Bicomodule) -> Result<EntwinedCell> {
    cell_from_comodule(&b.right_comodule(), &b.left)
}

/// `(A, iota_C^-1)`.
pub fn rem_identity_cell(c: &Arc<Coring>) -> Result<EntwinedCell> {
    let a = regular(&c.base);
    let entwining = iota_inv(&c.carrier)?.retype(&tensor_over(&c.carrier, &a)?, &tensor_over(&a, &c.carrier)?)?;
    EntwinedCell::new(c.clone(), c.clone(), a, entwining)
}

/// `(M (x) W, (M (x) w)(m (x) W))`.
pub fn rem_hcompose(mc: &EntwinedCell, wc: &EntwinedCell) -> Result<EntwinedCell> {
    if mc.source != wc.target {
        return Err(Error::NotComposable("cells do not share the middle coring".into()));
    }
    let mw = tensor_over(&mc.module, &wc.module)?;
    let entwining = Chain::start(Word::of(&tensor_over(&mc.target.carrier, &mw)?))
        .expand(1)?
        .contract(0, 2)?
        .apply(0, 1, &mc.entwining, Splice::Split)?
        .contract(1, 2)?
        .apply(1, 1, &wc.entwining, Splice::Split)?
        .contract(0, 2)?
        .finish_at(&tensor_over(&mw, &wc.source.carrier)?)?;
    EntwinedCell::new(wc.source.clone(), mc.target.clone(), mw, entwining)
}

/// `alpha beta = (M' beta)(m' W)(C alpha W)(Delta M W)`, the product of
/// 2-cells over the products of their cells.
pub fn rem_vcompose(a: &EntwinedTwoCell, b: &EntwinedTwoCell) -> Result<EntwinedTwoCell> {
    let source = rem_hcompose(&a.source, &b.source)?;
    let target = rem_hcompose(&a.target, &b.target)?;
    let c = &a.source.target;
    let map = Chain::start(Word::of(&source.reduced_domain()?))
        .expand(1)?
        .apply(0, 1, &c.delta, Splice::Split)?
        .contract(1, 2)?
        .apply(1, 1, &a.map, Splice::Keep)?
        .contract(0, 2)?
        .apply(0, 1, &a.target.entwining, Splice::Split)?
        .contract(1, 2)?
        .apply(1, 1, &b.map, Splice::Keep)?
        .finish_at(&target.module)?;
    EntwinedTwoCell::new(source, target, map)
}

/// `alpha' o alpha = alpha' (C alpha)(Delta M)`.
pub fn rem_compose(second: &EntwinedTwoCell, first: &EntwinedTwoCell) -> Result<EntwinedTwoCell> {
    if first.target != second.source {
        return Err(Error::NotComposable("2-cells do not meet".into()));
    }
    let c = &first.source.target;
    let map = Chain::start(Word::of(&first.source.reduced_domain()?))
        .apply(0, 1, &c.delta, Splice::Split)?
        .contract(1, 2)?
        .apply(1, 1, &first.map, Splice::Keep)?
        .contract(0, 2)?
        .apply(0, 1, &second.map, Splice::Keep)?
        .finish();
    EntwinedTwoCell::new(first.source.clone(), second.target.clone(), map)
}

/// Left and right unitors of a cell as reduced 2-cells.
pub fn rem_unitors(cell: &EntwinedCell) -> Result<(EntwinedTwoCell, EntwinedTwoCell)> {
    let rem = Rem;
    Ok((rem.left_unitor(cell)?, rem.right_unitor(cell)?))
}

fn lifted(source: EntwinedCell, target: EntwinedCell, phi: &BimoduleMap) -> Result<EntwinedTwoCell> {
    let map = lift(&source.target, phi)?;
    EntwinedTwoCell::new(source, target, map)
}

/// REM(Bim): corings, entwined cells, reduced 2-cells.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rem;

impl Bicategory for Rem {
    type Obj = Arc<Coring>;
    type Cell1 = EntwinedCell;
    type Cell2 = EntwinedTwoCell;

    fn source(&self, f: &EntwinedCell) -> Arc<Coring> {
        f.source.clone()
    }
    fn target(&self, f: &EntwinedCell) -> Arc<Coring> {
        f.target.clone()
    }
    fn dom(&self, a: &EntwinedTwoCell) -> EntwinedCell {
        a.source.clone()
    }
    fn cod(&self, a: &EntwinedTwoCell) -> EntwinedCell {
        a.target.clone()
    }

    fn id1(&self, x: &Arc<Coring>) -> Result<EntwinedCell> {
        rem_identity_cell(x)
    }
    fn hcomp1(&self, f: &EntwinedCell, g: &EntwinedCell) -> Result<EntwinedCell> {
        rem_hcompose(f, g)
    }
    fn id2(&self, f: &EntwinedCell) -> Result<EntwinedTwoCell> {
        lifted(f.clone(), f.clone(), &BimoduleMap::identity(&f.module))
    }
    fn hcomp2(&self, a: &EntwinedTwoCell, b: &EntwinedTwoCell) -> Result<EntwinedTwoCell> {
        rem_vcompose(a, b)
    }
    fn vcomp(&self, second: &EntwinedTwoCell, first: &EntwinedTwoCell) -> Result<EntwinedTwoCell> {
        rem_compose(second, first)
    }

    fn associator(&self, f: &EntwinedCell, g: &EntwinedCell, h: &EntwinedCell) -> Result<EntwinedTwoCell> {
        let src = rem_hcompose(&rem_hcompose(f, g)?, h)?;
        let dst = rem_hcompose(f, &rem_hcompose(g, h)?)?;
        lifted(src, dst, &associator(&f.module, &g.module, &h.module)?)
    }
    fn associator_inv(&self, f: &EntwinedCell, g: &EntwinedCell, h: &EntwinedCell) -> Result<EntwinedTwoCell> {
        let src = rem_hcompose(f, &rem_hcompose(g, h)?)?;
        let dst = rem_hcompose(&rem_hcompose(f, g)?, h)?;
        lifted(src, dst, &associator_inv(&f.module, &g.module, &h.module)?)
    }
    fn left_unitor(&self, f: &EntwinedCell) -> Result<EntwinedTwoCell> {
        let src = rem_hcompose(&rem_identity_cell(&f.target)?, f)?;
        lifted(src, f.clone(), &left_unitor(&f.module)?)
    }
    fn left_unitor_inv(&self, f: &EntwinedCell) -> Result<EntwinedTwoCell> {
        let dst = rem_hcompose(&rem_identity_cell(&f.target)?, f)?;
        lifted(f.clone(), dst, &left_unitor_inv(&f.module)?)
    }
    fn right_unitor(&self, f: &EntwinedCell) -> Result<EntwinedTwoCell> {
        let src = rem_hcompose(f, &rem_identity_cell(&f.source)?)?;
        lifted(src, f.clone(), &right_unitor(&f.module)?)
    }
    fn right_unitor_inv(&self, f: &EntwinedCell) -> Result<EntwinedTwoCell> {
        let dst = rem_hcompose(f, &rem_identity_cell(&f.source)?)?;
        lifted(f.clone(), dst, &right_unitor_inv(&f.module)?)
    }

    fn diff2(&self, a: &EntwinedTwoCell, b: &EntwinedTwoCell, label: &str) -> Option<Witness> {
        a.map.diff(&b.map, label)
    }
}
