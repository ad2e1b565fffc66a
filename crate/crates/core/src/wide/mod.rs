//! Wide right Morita contexts over any bicategory, their morphisms and
//! products, and the bicategory they form.

mod equivalence;
mod instance;

use std::fmt;

pub use equivalence::{context_from_equivalence, epi_implies_iso, equivalence_diagram, EpiIsoOutcome, EquivalenceSolution};
pub use instance::{TypedMorphism, W};

use crate::bicat::Bicategory;
use crate::error::{Error, Result};
use crate::report::Report;

/// `(f, g, eta, rho)` with `f` from B to A, `g` from A to B,
/// `eta: f g -> I_A` and `rho: g f -> I_B`.
pub struct WideContext<B: Bicategory> {
    pub f: B::Cell1,
    pub g: B::Cell1,
    pub eta: B::Cell2,
    pub rho: B::Cell2,
}

impl<B: Bicategory> Clone for WideContext<B> {
    fn clone(&self) -> Self {
        WideContext { f: self.f.clone(), g: self.g.clone(), eta: self.eta.clone(), rho: self.rho.clone() }
    }
}

impl<B: Bicategory> fmt::Debug for WideContext<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WideContext")
            .field("f", &self.f)
            .field("g", &self.g)
            .field("eta", &self.eta)
            .field("rho", &self.rho)
            .finish()
    }
}

impl<B: Bicategory> PartialEq for WideContext<B> {
    fn eq(&self, o: &Self) -> bool {
        self.f == o.f && self.g == o.g && self.eta == o.eta && self.rho == o.rho
    }
}

/// `(alpha, beta)` with `alpha: f -> f'` and `beta: g -> g'`.
pub struct ContextMorphism<B: Bicategory> {
    pub alpha: B::Cell2,
    pub beta: B::Cell2,
}

impl<B: Bicategory> Clone for ContextMorphism<B> {
    fn clone(&self) -> Self {
        ContextMorphism { alpha: self.alpha.clone(), beta: self.beta.clone() }
    }
}

impl<B: Bicategory> fmt::Debug for ContextMorphism<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ContextMorphism").field("alpha", &self.alpha).field("beta", &self.beta).finish()
    }
}

impl<B: Bicategory> PartialEq for ContextMorphism<B> {
    fn eq(&self, o: &Self) -> bool {
        self.alpha == o.alpha && self.beta == o.beta
    }
}

fn expect_type<B: Bicategory>(inst: &B, cell: &B::Cell2, dom: &B::Cell1, cod: &B::Cell1, what: &str) -> Result<()> {
    if inst.dom(cell) != *dom || inst.cod(cell) != *cod {
        return Err(Error::NotComposable(format!("{what} is not typed as required")));
    }
    Ok(())
}

/// Checks the cell types of a candidate context, returning `(A, B)`.
fn context_objects<B: Bicategory>(inst: &B, c: &WideContext<B>) -> Result<(B::Obj, B::Obj)> {
    let a = inst.target(&c.f);
    let b = inst.source(&c.f);
    if inst.source(&c.g) != a || inst.target(&c.g) != b {
        return Err(Error::NotComposable("g does not run opposite to f".into()));
    }
    expect_type(inst, &c.eta, &inst.hcomp1(&c.f, &c.g)?, &inst.id1(&a)?, "eta: f g -> I_A")?;
    expect_type(inst, &c.rho, &inst.hcomp1(&c.g, &c.f)?, &inst.id1(&b)?, "rho: g f -> I_B")?;
    Ok((a, b))
}

/// Evaluates both context diagrams exactly.
pub fn check_context<B: Bicategory>(inst: &B, c: &WideContext<B>) -> Result<Report> {
    let mut report = Report::new();
    for (name, label, lhs, rhs) in context_sides(inst, c)? {
        report.record(name, Ok(inst.diff2(&lhs, &rhs, label)));
    }
    Ok(report)
}

/// Both sides of the two context diagrams, with check names and labels.
pub fn context_sides<B: Bicategory>(
    inst: &B,
    c: &WideContext<B>,
) -> Result<[(&'static str, &'static str, B::Cell2, B::Cell2); 2]> {
    context_objects(inst, c)?;
    let (f, g) = (&c.f, &c.g);
    let lhs =
        inst.vcomp(&inst.right_unitor(g)?, &inst.vcomp(&inst.hcomp2(&inst.id2(g)?, &c.eta)?, &inst.associator(g, f, g)?)?)?;
    let rhs = inst.vcomp(&inst.left_unitor(g)?, &inst.hcomp2(&c.rho, &inst.id2(g)?)?)?;
    let on_g = ("diagram on (g f) g", "r_g (1 eta) a vs l_g (rho 1)", lhs, rhs);
    let lhs = inst.vcomp(&inst.left_unitor(f)?, &inst.hcomp2(&c.eta, &inst.id2(f)?)?)?;
    let rhs =
        inst.vcomp(&inst.right_unitor(f)?, &inst.vcomp(&inst.hcomp2(&inst.id2(f)?, &c.rho)?, &inst.associator(f, g, f)?)?)?;
    Ok([on_g, ("diagram on (f g) f", "l_f (eta 1) vs r_f (1 rho) a", lhs, rhs)])
}

/// Checks `eta' (alpha beta) = eta` and `rho' (beta alpha) = rho`.
pub fn check_morphism<B: Bicategory>(
    inst: &B,
    m: &ContextMorphism<B>,
    from: &WideContext<B>,
    to: &WideContext<B>,
) -> Result<Report> {
    expect_type(inst, &m.alpha, &from.f, &to.f, "alpha: f -> f'")?;
    expect_type(inst, &m.beta, &from.g, &to.g, "beta: g -> g'")?;
    let mut report = Report::new();
    let lhs = inst.vcomp(&to.eta, &inst.hcomp2(&m.alpha, &m.beta)?)?;
    report.record("eta compatibility", Ok(inst.diff2(&lhs, &from.eta, "eta' (alpha beta) vs eta")));
    let lhs = inst.vcomp(&to.rho, &inst.hcomp2(&m.beta, &m.alpha)?)?;
    report.record("rho compatibility", Ok(inst.diff2(&lhs, &from.rho, "rho' (beta alpha) vs rho")));
    Ok(report)
}

/// The product `(f p, q g, eta * gamma, mu * rho)` of `outer` (from B to A)
/// and `inner = (p, q, gamma, mu)` (from C to B).
pub fn multiply_contexts<B: Bicategory>(inst: &B, outer: &WideContext<B>, inner: &WideContext<B>) -> Result<WideContext<B>> {
    if inst.source(&outer.f) != inst.target(&inner.f) {
        return Err(Error::NotComposable("contexts do not share the middle object".into()));
    }
    let (f, g, eta, rho) = (&outer.f, &outer.g, &outer.eta, &outer.rho);
    let (p, q, gamma, mu) = (&inner.f, &inner.g, &inner.eta, &inner.rho);
    let fp = inst.hcomp1(f, p)?;
    let qg = inst.hcomp1(q, g)?;
    let id_f = inst.id2(f)?;
    let id_q = inst.id2(q)?;

    // eta * gamma: (f p)(q g) -> f (p (q g)) -> f ((p q) g) -> f (I g) -> f g -> I
    let steps = [
        inst.associator(f, p, &qg)?,
        inst.hcomp2(&id_f, &inst.associator_inv(p, q, g)?)?,
        inst.hcomp2(&id_f, &inst.hcomp2(gamma, &inst.id2(g)?)?)?,
        inst.hcomp2(&id_f, &inst.left_unitor(g)?)?,
        eta.clone(),
    ];
    let eta_gamma = compose_all(inst, &steps)?;

    // mu * rho: (q g)(f p) -> q (g (f p)) -> q ((g f) p) -> q (I p) -> q p -> I
    let steps = [
        inst.associator(q, g, &fp)?,
        inst.hcomp2(&id_q, &inst.associator_inv(g, f, p)?)?,
        inst.hcomp2(&id_q, &inst.hcomp2(rho, &inst.id2(p)?)?)?,
        inst.hcomp2(&id_q, &inst.left_unitor(p)?)?,
        mu.clone(),
    ];
    let mu_rho = compose_all(inst, &steps)?;
    Ok(WideContext { f: fp, g: qg, eta: eta_gamma, rho: mu_rho })
}

/// Composes cells listed in the order they are applied.
pub(crate) fn compose_all<B: Bicategory>(inst: &B, steps: &[B::Cell2]) -> Result<B::Cell2> {
    let mut acc = steps[0].clone();
    for s in &steps[1..] {
        acc = inst.vcomp(s, &acc)?;
    }
    Ok(acc)
}

/// `(alpha, beta)(sigma, tau) = (alpha sigma, tau beta)`.
pub fn multiply_morphisms<B: Bicategory>(
    inst: &B,
    outer: &ContextMorphism<B>,
    inner: &ContextMorphism<B>,
) -> Result<ContextMorphism<B>> {
    Ok(ContextMorphism { alpha: inst.hcomp2(&outer.alpha, &inner.alpha)?, beta: inst.hcomp2(&inner.beta, &outer.beta)? })
}

/// `second` after `first`, componentwise.
pub fn compose_morphisms<B: Bicategory>(
    inst: &B,
    second: &ContextMorphism<B>,
    first: &ContextMorphism<B>,
) -> Result<ContextMorphism<B>> {
    Ok(ContextMorphism { alpha: inst.vcomp(&second.alpha, &first.alpha)?, beta: inst.vcomp(&second.beta, &first.beta)? })
}

pub fn identity_morphism<B: Bicategory>(inst: &B, c: &WideContext<B>) -> Result<ContextMorphism<B>> {
    Ok(ContextMorphism { alpha: inst.id2(&c.f)?, beta: inst.id2(&c.g)? })
}

/// `(I_A, I_A, r_I, l_I)`.
pub fn identity_context<B: Bicategory>(inst: &B, a: &B::Obj) -> Result<WideContext<B>> {
    let i = inst.id1(a)?;
    Ok(WideContext { eta: inst.right_unitor(&i)?, rho: inst.left_unitor(&i)?, f: i.clone(), g: i })
}

/// `(a_{f,p,u}, a^-1_{v,q,g})`: `(Gamma Lambda) Omega -> Gamma (Lambda Omega)`.
pub fn context_associator<B: Bicategory>(
    inst: &B,
    x: &WideContext<B>,
    y: &WideContext<B>,
    z: &WideContext<B>,
) -> Result<ContextMorphism<B>> {
    Ok(ContextMorphism { alpha: inst.associator(&x.f, &y.f, &z.f)?, beta: inst.associator_inv(&z.g, &y.g, &x.g)? })
}

pub fn context_associator_inv<B: Bicategory>(
    inst: &B,
    x: &WideContext<B>,
    y: &WideContext<B>,
    z: &WideContext<B>,
) -> Result<ContextMorphism<B>> {
    Ok(ContextMorphism { alpha: inst.associator_inv(&x.f, &y.f, &z.f)?, beta: inst.associator(&z.g, &y.g, &x.g)? })
}

/// `(r_f, l_g): Gamma I_B -> Gamma`.
pub fn context_right_unitor<B: Bicategory>(inst: &B, c: &WideContext<B>) -> Result<ContextMorphism<B>> {
    Ok(ContextMorphism { alpha: inst.right_unitor(&c.f)?, beta: inst.left_unitor(&c.g)? })
}

pub fn context_right_unitor_inv<B: Bicategory>(inst: &B, c: &WideContext<B>) -> Result<ContextMorphism<B>> {
    Ok(ContextMorphism { alpha: inst.right_unitor_inv(&c.f)?, beta: inst.left_unitor_inv(&c.g)? })
}

/// `(l_f, r_g): I_A Gamma -> Gamma`; the f-side component comes first.
pub fn context_left_unitor<B: Bicategory>(inst: &B, c: &WideContext<B>) -> Result<ContextMorphism<B>> {
    Ok(ContextMorphism { alpha: inst.left_unitor(&c.f)?, beta: inst.right_unitor(&c.g)? })
}

pub fn context_left_unitor_inv<B: Bicategory>(inst: &B, c: &WideContext<B>) -> Result<ContextMorphism<B>> {
    Ok(ContextMorphism { alpha: inst.left_unitor_inv(&c.f)?, beta: inst.right_unitor_inv(&c.g)? })
}

/// The same context with `eta` and `rho` scaled; still a context.
pub fn scale_context<B: crate::bicat::LinearBicategory>(
    inst: &B,
    c: &WideContext<B>,
    s: &crate::exactla::Scalar,
) -> WideContext<B> {
    WideContext { f: c.f.clone(), g: c.g.clone(), eta: inst.scale2(&c.eta, s), rho: inst.scale2(&c.rho, s) }
}

/// `(g, f, rho, eta)`: the same data read in the opposite direction.
pub fn reverse_context<B: Bicategory>(c: &WideContext<B>) -> WideContext<B> {
    WideContext { f: c.g.clone(), g: c.f.clone(), eta: c.rho.clone(), rho: c.eta.clone() }
}
