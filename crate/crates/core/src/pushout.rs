//! Push-out functors between comodule categories and the natural maps a
//! context induces on them, evaluated at finitely many comodules.

use std::sync::Arc;

use crate::bicat::Bicategory;
use crate::bimod::{induced_map, left_unitor, right_unitor, tensor_over, Bimodule, BimoduleMap, Chain, Splice, Word};
use crate::coring::{cell_from_comodule, check_wrem_context, Comodule, Coring, EntwinedCell, EntwinedTwoCell, Rem, WremContext};
use crate::error::{Error, Result};
use crate::report::{Report, Witness};
use crate::wide::WideContext;

/// `- (x)_A M` from right C-comodules to right D-comodules.
#[derive(Clone, Debug, PartialEq)]
pub struct PushoutFunctor {
    pub cell: EntwinedCell,
}

impl PushoutFunctor {
    pub fn new(cell: EntwinedCell) -> Self {
        PushoutFunctor { cell }
    }

    /// `X (x) M` with coaction `(X m)(rho^X M)`.
    pub fn apply(&self, x: &Comodule) -> Result<Comodule> {
        let cell = &self.cell;
        if x.coring != cell.target {
            return Err(Error::AlgebraMismatch("comodule is not over the target coring of the cell".into()));
        }
        let xm = tensor_over(&x.carrier, &cell.module)?;
        let coaction = Chain::start(Word::of(&xm))
            .apply(0, 1, &x.coaction, Splice::Split)?
            .contract(1, 2)?
            .apply(1, 1, &cell.entwining, Splice::Split)?
            .contract(0, 2)?
            .finish_at(&tensor_over(&xm, &cell.source.carrier)?)?;
        Comodule::new(cell.source.clone(), xm, coaction)
    }

    /// `f (x) M`.
    pub fn apply_map(&self, f: &BimoduleMap) -> Result<BimoduleMap> {
        induced_map(f, &BimoduleMap::identity(&self.cell.module))
    }
}

pub fn pushout_apply(p: &PushoutFunctor, x: &Comodule) -> Result<Comodule> {
    p.apply(x)
}

/// `(X eta)(rho^X M N)` followed by `X (x) A ~ X`, on `(X M) N`.
fn tilde(x: &Comodule, first: &Arc<Bimodule>, second: &Arc<Bimodule>, pair: &BimoduleMap) -> Result<BimoduleMap> {
    let xmn = tensor_over(&tensor_over(&x.carrier, first)?, second)?;
    Chain::start(Word::of(&xmn))
        .expand(0)?
        .apply(0, 1, &x.coaction, Splice::Split)?
        .contract(2, 2)?
        .contract(1, 2)?
        .apply(1, 1, pair, Splice::Keep)?
        .then(&right_unitor(&x.carrier)?, Splice::Keep)?
        .finish_at(&x.carrier)
}

/// `eta~_X: N M (X) -> X` for a right C-comodule `X`.
pub fn eta_tilde(ctx: &WremContext, x: &Comodule) -> Result<BimoduleMap> {
    if x.coring != ctx.f.target {
        return Err(Error::AlgebraMismatch("eta~ is defined on comodules over the target coring".into()));
    }
    tilde(x, &ctx.f.module, &ctx.g.module, &ctx.eta.map)
}

/// `rho~_Y: M N (Y) -> Y` for a right D-comodule `Y`.
pub fn rho_tilde(ctx: &WremContext, y: &Comodule) -> Result<BimoduleMap> {
    if y.coring != ctx.f.source {
        return Err(Error::AlgebraMismatch("rho~ is defined on comodules over the source coring".into()));
    }
    tilde(y, &ctx.g.module, &ctx.f.module, &ctx.rho.map)
}

/// A comodule morphism sample: a map between two named sample comodules.
#[derive(Clone, Debug)]
pub struct SampleMorphism {
    pub name: String,
    pub from: Comodule,
    pub to: Comodule,
    pub map: BimoduleMap,
}

/// Comodules on both sides and morphisms between them, at which the
/// push-out context is evaluated.
#[derive(Clone, Debug, Default)]
pub struct CatSamples {
    pub c_side: Vec<(String, Comodule)>,
    pub d_side: Vec<(String, Comodule)>,
    pub c_morphisms: Vec<SampleMorphism>,
    pub d_morphisms: Vec<SampleMorphism>,
}

/// The push-out functors with `eta~`, `rho~` form a context between the
/// comodule categories: colinearity, naturality, and
/// `eta~_{N(Y)} = N rho~_Y`, `rho~_{M(X)} = M eta~_X`, checked at the samples.
pub fn check_cat_context(ctx: &WremContext, samples: &CatSamples) -> Result<Report> {
    let m = PushoutFunctor::new(ctx.f.clone());
    let n = PushoutFunctor::new(ctx.g.clone());
    let mut report = Report::new();
    for (name, x) in &samples.c_side {
        report.record(
            format!("eta~ colinear at {name}"),
            (|| {
                let nmx = n.apply(&m.apply(x)?)?;
                nmx.colinearity_defect(x, &eta_tilde(ctx, x)?)
            })(),
        );
        report.record(
            format!("rho~ at M({name}) is M eta~"),
            (|| {
                let mx = m.apply(x)?;
                let lhs = rho_tilde(ctx, &mx)?;
                let rhs = m.apply_map(&eta_tilde(ctx, x)?)?;
                Ok(lhs.diff(&rhs, "rho~_M(X) vs M eta~_X"))
            })(),
        );
    }
    for (name, y) in &samples.d_side {
        report.record(
            format!("rho~ colinear at {name}"),
            (|| {
                let mny = m.apply(&n.apply(y)?)?;
                mny.colinearity_defect(y, &rho_tilde(ctx, y)?)
            })(),
        );
        report.record(
            format!("eta~ at N({name}) is N rho~"),
            (|| {
                let ny = n.apply(y)?;
                let lhs = eta_tilde(ctx, &ny)?;
                let rhs = n.apply_map(&rho_tilde(ctx, y)?)?;
                Ok(lhs.diff(&rhs, "eta~_N(Y) vs N rho~_Y"))
            })(),
        );
    }
    for s in &samples.c_morphisms {
        report.record(
            format!("eta~ natural at {}", s.name),
            (|| {
                if let Some(w) = s.from.colinearity_defect(&s.to, &s.map)? {
                    return Err(Error::Invalid(format!("sample morphism is not colinear: {w}")));
                }
                let lhs = s.map.compose(&eta_tilde(ctx, &s.from)?)?;
                let rhs = eta_tilde(ctx, &s.to)?.compose(&n.apply_map(&m.apply_map(&s.map)?)?)?;
                Ok(lhs.diff(&rhs, "f eta~_X vs eta~_X' NM(f)"))
            })(),
        );
    }
    for s in &samples.d_morphisms {
        report.record(
            format!("rho~ natural at {}", s.name),
            (|| {
                if let Some(w) = s.from.colinearity_defect(&s.to, &s.map)? {
                    return Err(Error::Invalid(format!("sample morphism is not colinear: {w}")));
                }
                let lhs = s.map.compose(&rho_tilde(ctx, &s.from)?)?;
                let rhs = rho_tilde(ctx, &s.to)?.compose(&m.apply_map(&n.apply_map(&s.map)?)?)?;
                Ok(lhs.diff(&rhs, "f rho~_Y vs rho~_Y' MN(f)"))
            })(),
        );
    }
    Ok(report)
}

/// `eta~_{Y (x) C} = Y (x) eta~_C` for a right A-module `Y`, up to rebracketing.
pub fn cofree_identity(ctx: &WremContext, y: &Arc<Bimodule>) -> Result<Option<Witness>> {
    let c = &ctx.f.target;
    let cofree = Comodule::cofree(c, y)?;
    let regular = Comodule::regular(c)?;
    let (mm, nn) = (&ctx.f.module, &ctx.g.module);
    let lhs = eta_tilde(ctx, &cofree)?;
    let rhs = Chain::start(Word::of(&tensor_over(&tensor_over(&cofree.carrier, mm)?, nn)?))
        .expand(0)?
        .expand(0)?
        .contract(1, 2)?
        .contract(1, 2)?
        .apply(1, 1, &eta_tilde(ctx, &regular)?, Splice::Keep)?
        .finish_at(&cofree.carrier)?;
    Ok(lhs.diff(&rhs, "eta~_{Y C} vs Y eta~_C"))
}

/// The entwining recovered from the lifted functor: `l (eps_C M D)` applied
/// to the coaction of `M(C)`. Equals `m` for every cell.
pub fn recover_entwining(p: &PushoutFunctor) -> Result<BimoduleMap> {
    let cell = &p.cell;
    let c = &cell.target;
    let mc = p.apply(&Comodule::regular(c)?)?;
    Chain::start(Word::of(&mc.carrier))
        .then(&mc.coaction, Splice::Split)?
        .expand(0)?
        .apply(0, 1, &c.counit, Splice::Keep)?
        .contract(0, 2)?
        .apply(0, 1, &left_unitor(&cell.module)?, Splice::Keep)?
        .finish_at(cell.entwining.target())
}

/// A context rebuilt from category-level data.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub context: WremContext,
    /// Hypotheses on the supplied maps, then the context equations.
    pub report: Report,
}

/// Builds `((M, m), (N, n), eps_C eta~_C, eps_D rho~_D)` where `M` is a right
/// D-comodule, `N` a right C-comodule, and the two maps are the values of the
/// natural transformations at the regular comodules.
pub fn reconstruct_context(
    m: &Comodule,
    n: &Comodule,
    eta_tilde_at_c: &BimoduleMap,
    rho_tilde_at_d: &BimoduleMap,
) -> Result<Reconstruction> {
    let (c, d) = (&n.coring, &m.coring);
    let f = cell_from_comodule(m, c)?;
    let g = cell_from_comodule(n, d)?;
    let mut report = Report::new();
    let eta = reconstructed(&f, &g, c, eta_tilde_at_c, "eta~_C", &mut report)?;
    let rho = reconstructed(&g, &f, d, rho_tilde_at_d, "rho~_D", &mut report)?;
    let context = WideContext {
        eta: EntwinedTwoCell::new(Rem.hcomp1(&f, &g)?, Rem.id1(c)?, eta)?,
        rho: EntwinedTwoCell::new(Rem.hcomp1(&g, &f)?, Rem.id1(d)?, rho)?,
        f,
        g,
    };
    if !report.ok() {
        return Err(Error::Invalid(format!("hypotheses fail: {:?}", report.failing_names())));
    }
    report.extend_prefixed("", check_wrem_context(&context)?);
    Ok(Reconstruction { context, report })
}

/// `eps_C tilde` on `C (x) (M N)`, after checking `tilde` is colinear out of
/// the push-out of the regular comodule.
fn reconstructed(
    f: &EntwinedCell,
    g: &EntwinedCell,
    c: &Arc<Coring>,
    tilde: &BimoduleMap,
    name: &str,
    report: &mut Report,
) -> Result<BimoduleMap> {
    let regular = Comodule::regular(c)?;
    let pushed = PushoutFunctor::new(g.clone()).apply(&PushoutFunctor::new(f.clone()).apply(&regular)?)?;
    if **tilde.source() != *pushed.carrier || **tilde.target() != *c.carrier {
        return Err(Error::NotComposable(format!("{name} must run (C M) N -> C")));
    }
    report.record(format!("{name} colinear"), pushed.colinearity_defect(&regular, tilde));
    let cmn = tensor_over(&c.carrier, &tensor_over(&f.module, &g.module)?)?;
    Chain::start(Word::of(&cmn))
        .expand(1)?
        .contract(0, 2)?
        .then(tilde, Splice::Keep)?
        .then(&c.counit, Splice::Keep)
        .map(Chain::finish)
}
