//! Wide Morita contexts in REM(Bim), unfolded into equations between plain
//! bimodule maps.

use std::sync::Arc;

use super::cell::{lift, rem_hcompose, rem_identity_cell, two_cell_sides, EntwinedCell, EntwinedTwoCell, Rem};
use super::{regular, trivial_coring, Coring};
use crate::bicat::Bicategory;
use crate::bimod::{
    hom_basis, iota, left_unitor, left_unitor_inv, map_from_coords, right_unitor_inv, tensor_over, Bim, Bimodule, BimoduleMap,
    Chain, Splice, Word,
};
use crate::corpus::random::Sampler;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};
use crate::report::Report;
use crate::wide::{context_sides, WideContext};

pub type WremContext = WideContext<Rem>;

/// Named sides of every equation a context in REM(Bim) must satisfy. The
/// iota correction in the first two sits on the side that ends in `A (x) C`
/// (resp. `B (x) D`), which is the only placement that type-checks.
fn equations(
    f: &EntwinedCell,
    g: &EntwinedCell,
    eta: &BimoduleMap,
    rho: &BimoduleMap,
) -> Result<Vec<(&'static str, BimoduleMap, BimoduleMap)>> {
    let (c, d) = (&f.target, &f.source);
    let mut out = Vec::new();

    let coaction = |x: &Arc<Coring>,
                    first: &EntwinedCell,
                    second: &EntwinedCell,
                    pair: &BimoduleMap|
     -> Result<(BimoduleMap, BimoduleMap)> {
        let xy = tensor_over(&first.module, &second.module)?;
        let start = Word::of(&tensor_over(&x.carrier, &xy)?);
        let lhs = Chain::start(start.clone())
            .expand(1)?
            .apply(0, 1, &x.delta, Splice::Split)?
            .contract(1, 2)?
            .apply(1, 1, &first.entwining, Splice::Split)?
            .contract(2, 2)?
            .apply(2, 1, &second.entwining, Splice::Split)?
            .contract(1, 2)?
            .contract(0, 2)?
            .apply(0, 1, pair, Splice::Keep)?
            .then(&iota(&x.carrier)?, Splice::Split)?
            .finish();
        let rhs =
            Chain::start(start).apply(0, 1, &x.delta, Splice::Split)?.contract(1, 2)?.apply(1, 1, pair, Splice::Keep)?.finish();
        Ok((lhs, rhs))
    };
    let (l, r) = coaction(c, f, g, eta)?;
    out.push(("eta coaction condition", l, r));
    let (l, r) = coaction(d, g, f, rho)?;
    out.push(("rho coaction condition", l, r));

    // iota_M (eta M) = (M rho)(m N M), and the mirror image for N
    let balance = |x: &Arc<Coring>,
                   first: &EntwinedCell,
                   second: &EntwinedCell,
                   own: &BimoduleMap,
                   other: &BimoduleMap|
     -> Result<(BimoduleMap, BimoduleMap)> {
        let word = Word::new(vec![x.carrier.clone(), first.module.clone(), second.module.clone(), first.module.clone()])?;
        let lhs = Chain::start(word.clone())
            .contract(1, 2)?
            .contract(0, 2)?
            .apply(0, 1, own, Splice::Keep)?
            .then(&iota(&first.module)?, Splice::Split)?
            .finish();
        let rhs = Chain::start(word)
            .contract(0, 2)?
            .apply(0, 1, &first.entwining, Splice::Split)?
            .contract(2, 2)?
            .contract(1, 2)?
            .apply(1, 1, other, Splice::Keep)?
            .finish();
        Ok((lhs, rhs))
    };
    let (l, r) = balance(c, f, g, eta, rho)?;
    out.push(("balance on M", l, r));
    let (l, r) = balance(d, g, f, rho, eta)?;
    out.push(("balance on N", l, r));

    let fg = rem_hcompose(f, g)?;
    let gf = rem_hcompose(g, f)?;
    let (l, r) = two_cell_sides(&fg, &rem_identity_cell(c)?, eta)?;
    out.push(("eta is a 2-cell", l, r));
    let (l, r) = two_cell_sides(&gf, &rem_identity_cell(d)?, rho)?;
    out.push(("rho is a 2-cell", l, r));
    Ok(out)
}

fn typed(ctx: &WremContext) -> Result<()> {
    let (f, g) = (&ctx.f, &ctx.g);
    if f.source != g.target || f.target != g.source {
        return Err(Error::NotComposable("N does not run opposite to M".into()));
    }
    let rem = Rem;
    if ctx.eta.source != rem.hcomp1(f, g)? || ctx.eta.target != rem.id1(&f.target)? {
        return Err(Error::NotComposable("eta must run C (x) M (x) N -> A".into()));
    }
    if ctx.rho.source != rem.hcomp1(g, f)? || ctx.rho.target != rem.id1(&f.source)? {
        return Err(Error::NotComposable("rho must run D (x) N (x) M -> B".into()));
    }
    Ok(())
}

/// Checks the four context equations and that `eta`, `rho` are 2-cells.
pub fn check_wrem_context(ctx: &WremContext) -> Result<Report> {
    typed(ctx)?;
    let mut report = Report::new();
    for (name, lhs, rhs) in equations(&ctx.f, &ctx.g, &ctx.eta.map, &ctx.rho.map)? {
        report.record(name, Ok(lhs.diff(&rhs, name)));
    }
    Ok(report)
}

/// A context in Bim read over the trivial corings: cells `(P, iota_P)` and
/// 2-cells `eta (l (eps (x) P Q))`.
pub fn classical_to_wrem(ctx: &WideContext<Bim>) -> Result<WremContext> {
    let (p, q) = (&ctx.f, &ctx.g);
    let c = Arc::new(trivial_coring(p.left())?);
    let d = Arc::new(trivial_coring(p.right())?);
    let f = EntwinedCell::new(d.clone(), c.clone(), p.clone(), iota(p)?)?;
    let g = EntwinedCell::new(c.clone(), d.clone(), q.clone(), iota(q)?)?;
    let rem = Rem;
    let eta = EntwinedTwoCell::new(rem.hcomp1(&f, &g)?, rem.id1(&c)?, lift(&c, &ctx.eta)?)?;
    let rho = EntwinedTwoCell::new(rem.hcomp1(&g, &f)?, rem.id1(&d)?, lift(&d, &ctx.rho)?)?;
    Ok(WideContext { f, g, eta, rho })
}

/// The inverse of [`classical_to_wrem`]; needs trivial corings.
pub fn wrem_to_classical(ctx: &WremContext) -> Result<WideContext<Bim>> {
    if !ctx.f.source.is_trivial() || !ctx.f.target.is_trivial() {
        return Err(Error::Invalid("classical contexts live over trivial corings".into()));
    }
    let (p, q) = (&ctx.f.module, &ctx.g.module);
    for (cell, name) in [(&ctx.f, "M"), (&ctx.g, "N")] {
        if cell.entwining != iota(&cell.module)? {
            return Err(Error::Invalid(format!("the entwining of {name} is not iota")));
        }
    }
    let eta = ctx.eta.map.compose(&left_unitor_inv(&tensor_over(p, q)?)?)?;
    let rho = ctx.rho.map.compose(&left_unitor_inv(&tensor_over(q, p)?)?)?;
    Ok(WideContext { f: p.clone(), g: q.clone(), eta, rho })
}

/// `r^-1 d l` on the flat word `A X Y X`: a difference `(X Y) X -> X` of the
/// classical diagrams moved to where the reduced equations live.
fn transported(d: &BimoduleMap, x: &Arc<Bimodule>, y: &Arc<Bimodule>) -> Result<BimoduleMap> {
    let a = regular(x.left());
    let xyx = tensor_over(&tensor_over(x, y)?, x)?;
    let rebracket = Chain::start(Word::new(vec![a, x.clone(), y.clone(), x.clone()])?)
        .contract(1, 2)?
        .contract(1, 2)?
        .contract(0, 2)?
        .finish();
    right_unitor_inv(x)?.compose(&d.compose(&left_unitor(&xyx)?)?.compose(&rebracket)?)
}

/// Over trivial corings the balance equations are the two context diagrams
/// transported along `l` and `r^-1` (the one on N with the sides swapped),
/// and the coaction and 2-cell equations hold for any `eta`, `rho`. Both are
/// checked on difference maps, so failures and their witnesses correspond
/// coordinate by coordinate.
pub fn reduction_agreement(ctx: &WideContext<Bim>) -> Result<Report> {
    let bim = Bim::new(ctx.f.field());
    let w = classical_to_wrem(ctx)?;
    let [on_g, on_f] = context_sides(&bim, ctx)?;
    let on_m = transported(&on_f.2.sub(&on_f.3)?, &ctx.f, &ctx.g)?;
    let on_n = transported(&on_g.3.sub(&on_g.2)?, &ctx.g, &ctx.f)?;
    let mut report = Report::new();
    for (name, lhs, rhs) in equations(&w.f, &w.g, &w.eta.map, &w.rho.map)? {
        let diff = lhs.sub(&rhs)?;
        let (label, expected) = match name {
            "balance on M" => (format!("{name} vs {}", on_f.0), on_m.clone()),
            "balance on N" => (format!("{name} vs {}", on_g.0), on_n.clone()),
            _ => (format!("{name} holds"), BimoduleMap::zero(diff.source(), diff.target())),
        };
        report.record(label.clone(), Ok(diff.diff(&expected, &label)));
    }
    Ok(report)
}

/// All pairs `(eta, rho)` making `((M, m), (N, n), eta, rho)` a context: a
/// kernel of the jointly linear equations, in coordinates against Hom bases.
pub struct WremSpace {
    pub f: EntwinedCell,
    pub g: EntwinedCell,
    pub eta_basis: Vec<BimoduleMap>,
    pub rho_basis: Vec<BimoduleMap>,
    /// Columns are solutions, eta coordinates first.
    pub kernel: Matrix,
}

fn residual(f: &EntwinedCell, g: &EntwinedCell, eta: &BimoduleMap, rho: &BimoduleMap) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    for (_, lhs, rhs) in equations(f, g, eta, rho)? {
        out.extend(lhs.matrix().sub(rhs.matrix()).entries().iter().cloned());
    }
    Ok(out)
}

pub fn wrem_context_space(f: &EntwinedCell, g: &EntwinedCell) -> Result<WremSpace> {
    let rem = Rem;
    let fg = rem.hcomp1(f, g)?;
    let gf = rem.hcomp1(g, f)?;
    let eta_src = fg.reduced_domain()?;
    let rho_src = gf.reduced_domain()?;
    let a = regular(&f.target.base);
    let b = regular(&f.source.base);
    let eta_basis = hom_basis(&eta_src, &a)?;
    let rho_basis = hom_basis(&rho_src, &b)?;
    let eta0 = BimoduleMap::zero(&eta_src, &a);
    let rho0 = BimoduleMap::zero(&rho_src, &b);
    let mut columns = Vec::new();
    for e in &eta_basis {
        columns.push(residual(f, g, e, &rho0)?);
    }
    for r in &rho_basis {
        columns.push(residual(f, g, &eta0, r)?);
    }
    let field = a.field();
    let rows = columns.first().map_or(0, Vec::len);
    let system = Matrix::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone());
    let kernel = if columns.is_empty() { Matrix::zeros(field, 0, 0) } else { system.kernel_basis()? };
    Ok(WremSpace { f: f.clone(), g: g.clone(), eta_basis, rho_basis, kernel })
}

impl WremSpace {
    pub fn dim(&self) -> usize {
        self.kernel.cols()
    }

    /// The context with the given coordinates against the kernel basis.
    pub fn context(&self, coeffs: &[Scalar]) -> Result<WremContext> {
        let field = self.kernel.field();
        let x = self.kernel.mul(&Matrix::column(field, coeffs.to_vec()));
        let k = self.eta_basis.len();
        let rem = Rem;
        let fg = rem.hcomp1(&self.f, &self.g)?;
        let gf = rem.hcomp1(&self.g, &self.f)?;
        let id_c = rem.id1(&self.f.target)?;
        let id_d = rem.id1(&self.f.source)?;
        let eta = map_from_coords(&fg.reduced_domain()?, &id_c.module, &self.eta_basis, &x.entries()[..k]);
        let rho = map_from_coords(&gf.reduced_domain()?, &id_d.module, &self.rho_basis, &x.entries()[k..]);
        Ok(WideContext {
            f: self.f.clone(),
            g: self.g.clone(),
            eta: EntwinedTwoCell::new(fg, id_c, eta)?,
            rho: EntwinedTwoCell::new(gf, id_d, rho)?,
        })
    }

    /// A random element of the space.
    pub fn sample(&self, s: &mut Sampler) -> Result<WremContext> {
        let coeffs: Vec<Scalar> = (0..self.dim()).map(|_| s.scalar()).collect();
        self.context(&coeffs)
    }
}
