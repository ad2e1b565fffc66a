//! A bicategory interface and a sample-driven checker for its axioms.

use std::fmt;

use crate::error::Result;
use crate::exactla::{Field, Scalar};
use crate::report::{Report, Witness};

/// Operations every bicategory instance provides.
///
/// A 1-cell `f` goes from `source(f)` to `target(f)`; `hcomp1(f, g)` is `f g`
/// and needs `source(f) == target(g)`. `vcomp(b, a)` is `b` after `a`.
pub trait Bicategory {
    type Obj: Clone + fmt::Debug + PartialEq;
    type Cell1: Clone + fmt::Debug + PartialEq;
    type Cell2: Clone + fmt::Debug + PartialEq;

    fn source(&self, f: &Self::Cell1) -> Self::Obj;
    fn target(&self, f: &Self::Cell1) -> Self::Obj;
    fn dom(&self, a: &Self::Cell2) -> Self::Cell1;
    fn cod(&self, a: &Self::Cell2) -> Self::Cell1;

    fn id1(&self, x: &Self::Obj) -> Result<Self::Cell1>;
    fn hcomp1(&self, f: &Self::Cell1, g: &Self::Cell1) -> Result<Self::Cell1>;
    fn id2(&self, f: &Self::Cell1) -> Result<Self::Cell2>;
    fn hcomp2(&self, a: &Self::Cell2, b: &Self::Cell2) -> Result<Self::Cell2>;
    fn vcomp(&self, second: &Self::Cell2, first: &Self::Cell2) -> Result<Self::Cell2>;

    /// `(f g) h -> f (g h)`.
    fn associator(&self, f: &Self::Cell1, g: &Self::Cell1, h: &Self::Cell1) -> Result<Self::Cell2>;
    fn associator_inv(&self, f: &Self::Cell1, g: &Self::Cell1, h: &Self::Cell1) -> Result<Self::Cell2>;
    /// `I f -> f`.
    fn left_unitor(&self, f: &Self::Cell1) -> Result<Self::Cell2>;
    fn left_unitor_inv(&self, f: &Self::Cell1) -> Result<Self::Cell2>;
    /// `f I -> f`.
    fn right_unitor(&self, f: &Self::Cell1) -> Result<Self::Cell2>;
    fn right_unitor_inv(&self, f: &Self::Cell1) -> Result<Self::Cell2>;

    /// `None` when the two 2-cells are equal, otherwise where they differ.
    fn diff2(&self, a: &Self::Cell2, b: &Self::Cell2, label: &str) -> Option<Witness>;
}

/// Instances whose Hom-categories are finite-dimensional vector spaces.
pub trait LinearBicategory: Bicategory {
    fn field(&self) -> Field;
    /// A basis of the 2-cells `f -> g`.
    fn hom_basis(&self, f: &Self::Cell1, g: &Self::Cell1) -> Result<Vec<Self::Cell2>>;
    /// Coordinates of a 2-cell in a fixed ambient space determined by its type.
    fn coords(&self, a: &Self::Cell2) -> Vec<Scalar>;
    fn combine(&self, f: &Self::Cell1, g: &Self::Cell1, basis: &[Self::Cell2], coeffs: &[Scalar]) -> Self::Cell2;
    fn scale2(&self, a: &Self::Cell2, s: &Scalar) -> Self::Cell2;
    fn is_epi(&self, a: &Self::Cell2) -> bool;
    fn is_mono(&self, a: &Self::Cell2) -> bool;
    fn invert(&self, a: &Self::Cell2) -> Result<Self::Cell2>;
}

/// Finite samples the axiom checker runs on.
pub struct AxiomSamples<B: Bicategory> {
    pub objects: Vec<B::Obj>,
    /// Composable paths `f1 f2 ...`; every prefix feeds the checks of its length
    /// (pentagon needs four cells).
    pub paths: Vec<Vec<B::Cell1>>,
    /// Horizontally composable 2-cells `a1 a2 ...` for naturality.
    pub whiskers: Vec<Vec<B::Cell2>>,
    /// `([a, b], [a2, b2])` with `a2` after `a`, `b2` after `b`.
    pub interchanges: Vec<([B::Cell2; 2], [B::Cell2; 2])>,
    /// Vertically composable `a1, a2, a3` (each after the previous).
    pub chains: Vec<[B::Cell2; 3]>,
}

impl<B: Bicategory> Default for AxiomSamples<B> {
    fn default() -> Self {
        AxiomSamples { objects: vec![], paths: vec![], whiskers: vec![], interchanges: vec![], chains: vec![] }
    }
}

impl<B: Bicategory> AxiomSamples<B> {
    pub fn len(&self) -> usize {
        self.objects.len() + self.paths.len() + self.whiskers.len() + self.interchanges.len() + self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Runs every axiom on every sample. Non-composable samples become error
/// entries rather than being skipped.
pub fn check_axioms<B: Bicategory>(inst: &B, samples: &AxiomSamples<B>) -> Report {
    let mut report = Report::new();
    for (i, x) in samples.objects.iter().enumerate() {
        report.record(format!("identity unitors agree[{i}]"), identity_unitors(inst, x));
    }
    for (i, path) in samples.paths.iter().enumerate() {
        if let Err(e) = check_path(inst, path) {
            report.error(format!("path[{i}]"), e.to_string());
            continue;
        }
        let f = &path[0];
        report.record(format!("unitors invertible[{i}]"), unitors_invertible(inst, f));
        report.record(format!("unit coherence[{i}]"), unit_coherence(inst, f));
        if path.len() >= 2 {
            let g = &path[1];
            report.record(format!("triangle[{i}]"), triangle(inst, f, g));
            report.record(format!("right unitor of composite[{i}]"), right_unitor_of_composite(inst, f, g));
            report.record(format!("left unitor of composite[{i}]"), left_unitor_of_composite(inst, f, g));
            report.record(format!("identity 2-cells compose[{i}]"), identities_compose(inst, f, g));
        }
        if path.len() >= 3 {
            report.record(format!("associator invertible[{i}]"), associator_invertible(inst, f, &path[1], &path[2]));
        }
        if path.len() >= 4 {
            report.record(format!("pentagon[{i}]"), pentagon(inst, f, &path[1], &path[2], &path[3]));
        }
    }
    for (i, cells) in samples.whiskers.iter().enumerate() {
        let a = &cells[0];
        report.record(format!("identity 2-cells neutral[{i}]"), identity_neutral(inst, a));
        report.record(format!("right unitor natural[{i}]"), right_unitor_natural(inst, a));
        report.record(format!("left unitor natural[{i}]"), left_unitor_natural(inst, a));
        if cells.len() >= 3 {
            report.record(format!("associator natural[{i}]"), associator_natural(inst, a, &cells[1], &cells[2]));
        }
    }
    for (i, (lower, upper)) in samples.interchanges.iter().enumerate() {
        report.record(format!("interchange[{i}]"), interchange(inst, lower, upper));
    }
    for (i, chain) in samples.chains.iter().enumerate() {
        report.record(format!("vertical associativity[{i}]"), vertical_assoc(inst, chain));
    }
    report
}

fn check_path<B: Bicategory>(inst: &B, path: &[B::Cell1]) -> Result<()> {
    if path.is_empty() {
        return Err(crate::Error::NotComposable("empty path".into()));
    }
    for (k, w) in path.windows(2).enumerate() {
        if inst.source(&w[0]) != inst.target(&w[1]) {
            return Err(crate::Error::NotComposable(format!("cells {k} and {} do not compose", k + 1)));
        }
    }
    Ok(())
}

fn same<B: Bicategory>(inst: &B, a: &B::Cell2, b: &B::Cell2, label: &str) -> Result<Option<Witness>> {
    if inst.dom(a) != inst.dom(b) || inst.cod(a) != inst.cod(b) {
        return Err(crate::Error::NotComposable(format!("{label}: composites have different types")));
    }
    Ok(inst.diff2(a, b, label))
}

fn identity_unitors<B: Bicategory>(inst: &B, x: &B::Obj) -> Result<Option<Witness>> {
    let i = inst.id1(x)?;
    same(inst, &inst.right_unitor(&i)?, &inst.left_unitor(&i)?, "r_I vs l_I")
}

fn unitors_invertible<B: Bicategory>(inst: &B, f: &B::Cell1) -> Result<Option<Witness>> {
    let id_f = inst.id2(f)?;
    let l = inst.left_unitor(f)?;
    let li = inst.left_unitor_inv(f)?;
    let r = inst.right_unitor(f)?;
    let ri = inst.right_unitor_inv(f)?;
    if let Some(w) = same(inst, &inst.vcomp(&l, &li)?, &id_f, "l l^-1")? {
        return Ok(Some(w));
    }
    if let Some(w) = same(inst, &inst.vcomp(&li, &l)?, &inst.id2(&inst.dom(&l))?, "l^-1 l")? {
        return Ok(Some(w));
    }
    if let Some(w) = same(inst, &inst.vcomp(&r, &ri)?, &id_f, "r r^-1")? {
        return Ok(Some(w));
    }
    same(inst, &inst.vcomp(&ri, &r)?, &inst.id2(&inst.dom(&r))?, "r^-1 r")
}

/// `r_f (l_f 1) = l_f (1 r_f) a_{I,f,I}` on `(I f) I`.
fn unit_coherence<B: Bicategory>(inst: &B, f: &B::Cell1) -> Result<Option<Witness>> {
    let ia = inst.id1(&inst.target(f))?;
    let ib = inst.id1(&inst.source(f))?;
    let lhs = inst.vcomp(&inst.right_unitor(f)?, &inst.hcomp2(&inst.left_unitor(f)?, &inst.id2(&ib)?)?)?;
    let rhs = inst.vcomp(
        &inst.left_unitor(f)?,
        &inst.vcomp(&inst.hcomp2(&inst.id2(&ia)?, &inst.right_unitor(f)?)?, &inst.associator(&ia, f, &ib)?)?,
    )?;
    same(inst, &lhs, &rhs, "r(l 1) vs l(1 r)a")
}

/// `(1_f l_g) a_{f,I,g} = r_f 1_g` on `(f I) g`.
fn triangle<B: Bicategory>(inst: &B, f: &B::Cell1, g: &B::Cell1) -> Result<Option<Witness>> {
    let i = inst.id1(&inst.source(f))?;
    let lhs = inst.vcomp(&inst.hcomp2(&inst.id2(f)?, &inst.left_unitor(g)?)?, &inst.associator(f, &i, g)?)?;
    let rhs = inst.hcomp2(&inst.right_unitor(f)?, &inst.id2(g)?)?;
    same(inst, &lhs, &rhs, "(1 l) a vs r 1")
}

/// `r_{fg} = (1_f r_g) a_{f,g,I}`.
fn right_unitor_of_composite<B: Bicategory>(inst: &B, f: &B::Cell1, g: &B::Cell1) -> Result<Option<Witness>> {
    let fg = inst.hcomp1(f, g)?;
    let i = inst.id1(&inst.source(g))?;
    let rhs = inst.vcomp(&inst.hcomp2(&inst.id2(f)?, &inst.right_unitor(g)?)?, &inst.associator(f, g, &i)?)?;
    same(inst, &inst.right_unitor(&fg)?, &rhs, "r_fg vs (1 r) a")
}

/// `l_{fg} = (l_f 1_g) a^-1_{I,f,g}`.
fn left_unitor_of_composite<B: Bicategory>(inst: &B, f: &B::Cell1, g: &B::Cell1) -> Result<Option<Witness>> {
    let fg = inst.hcomp1(f, g)?;
    let i = inst.id1(&inst.target(f))?;
    let rhs = inst.vcomp(&inst.hcomp2(&inst.left_unitor(f)?, &inst.id2(g)?)?, &inst.associator_inv(&i, f, g)?)?;
    same(inst, &inst.left_unitor(&fg)?, &rhs, "l_fg vs (l 1) a^-1")
}

fn identities_compose<B: Bicategory>(inst: &B, f: &B::Cell1, g: &B::Cell1) -> Result<Option<Witness>> {
    let lhs = inst.hcomp2(&inst.id2(f)?, &inst.id2(g)?)?;
    same(inst, &lhs, &inst.id2(&inst.hcomp1(f, g)?)?, "1_f 1_g vs 1_fg")
}

fn associator_invertible<B: Bicategory>(inst: &B, f: &B::Cell1, g: &B::Cell1, h: &B::Cell1) -> Result<Option<Witness>> {
    let a = inst.associator(f, g, h)?;
    let ai = inst.associator_inv(f, g, h)?;
    if let Some(w) = same(inst, &inst.vcomp(&ai, &a)?, &inst.id2(&inst.dom(&a))?, "a^-1 a")? {
        return Ok(Some(w));
    }
    same(inst, &inst.vcomp(&a, &ai)?, &inst.id2(&inst.cod(&a))?, "a a^-1")
}

/// `a_{f,g,hk} a_{fg,h,k} = (1_f a_{g,h,k}) a_{f,gh,k} (a_{f,g,h} 1_k)`.
fn pentagon<B: Bicategory>(inst: &B, f: &B::Cell1, g: &B::Cell1, h: &B::Cell1, k: &B::Cell1) -> Result<Option<Witness>> {
    let fg = inst.hcomp1(f, g)?;
    let gh = inst.hcomp1(g, h)?;
    let hk = inst.hcomp1(h, k)?;
    let lhs = inst.vcomp(&inst.associator(f, g, &hk)?, &inst.associator(&fg, h, k)?)?;
    let step1 = inst.hcomp2(&inst.associator(f, g, h)?, &inst.id2(k)?)?;
    let step2 = inst.associator(f, &gh, k)?;
    let step3 = inst.hcomp2(&inst.id2(f)?, &inst.associator(g, h, k)?)?;
    let rhs = inst.vcomp(&step3, &inst.vcomp(&step2, &step1)?)?;
    same(inst, &lhs, &rhs, "pentagon")
}

fn identity_neutral<B: Bicategory>(inst: &B, a: &B::Cell2) -> Result<Option<Witness>> {
    let left = inst.vcomp(&inst.id2(&inst.cod(a))?, a)?;
    if let Some(w) = same(inst, &left, a, "1 a vs a")? {
        return Ok(Some(w));
    }
    let right = inst.vcomp(a, &inst.id2(&inst.dom(a))?)?;
    same(inst, &right, a, "a 1 vs a")
}

/// `r_{f'} (a 1_I) = a r_f`.
fn right_unitor_natural<B: Bicategory>(inst: &B, a: &B::Cell2) -> Result<Option<Witness>> {
    let (f, f2) = (inst.dom(a), inst.cod(a));
    let i = inst.id1(&inst.source(&f))?;
    let lhs = inst.vcomp(&inst.right_unitor(&f2)?, &inst.hcomp2(a, &inst.id2(&i)?)?)?;
    let rhs = inst.vcomp(a, &inst.right_unitor(&f)?)?;
    same(inst, &lhs, &rhs, "r (a 1) vs a r")
}

/// `l_{f'} (1_I a) = a l_f`.
fn left_unitor_natural<B: Bicategory>(inst: &B, a: &B::Cell2) -> Result<Option<Witness>> {
    let (f, f2) = (inst.dom(a), inst.cod(a));
    let i = inst.id1(&inst.target(&f))?;
    let lhs = inst.vcomp(&inst.left_unitor(&f2)?, &inst.hcomp2(&inst.id2(&i)?, a)?)?;
    let rhs = inst.vcomp(a, &inst.left_unitor(&f)?)?;
    same(inst, &lhs, &rhs, "l (1 a) vs a l")
}

/// `a_{f'g'h'} ((x y) z) = (x (y z)) a_{fgh}`.
fn associator_natural<B: Bicategory>(inst: &B, x: &B::Cell2, y: &B::Cell2, z: &B::Cell2) -> Result<Option<Witness>> {
    let (f, g, h) = (inst.dom(x), inst.dom(y), inst.dom(z));
    let (f2, g2, h2) = (inst.cod(x), inst.cod(y), inst.cod(z));
    let lhs = inst.vcomp(&inst.associator(&f2, &g2, &h2)?, &inst.hcomp2(&inst.hcomp2(x, y)?, z)?)?;
    let rhs = inst.vcomp(&inst.hcomp2(x, &inst.hcomp2(y, z)?)?, &inst.associator(&f, &g, &h)?)?;
    same(inst, &lhs, &rhs, "a ((x y) z) vs (x (y z)) a")
}

/// `(a2 a)(b2 b) = (a2 b2)(a b)` with horizontal products on both sides.
fn interchange<B: Bicategory>(inst: &B, lower: &[B::Cell2; 2], upper: &[B::Cell2; 2]) -> Result<Option<Witness>> {
    let lhs = inst.hcomp2(&inst.vcomp(&upper[0], &lower[0])?, &inst.vcomp(&upper[1], &lower[1])?)?;
    let rhs = inst.vcomp(&inst.hcomp2(&upper[0], &upper[1])?, &inst.hcomp2(&lower[0], &lower[1])?)?;
    same(inst, &lhs, &rhs, "interchange")
}

fn vertical_assoc<B: Bicategory>(inst: &B, c: &[B::Cell2; 3]) -> Result<Option<Witness>> {
    let lhs = inst.vcomp(&inst.vcomp(&c[2], &c[1])?, &c[0])?;
    let rhs = inst.vcomp(&c[2], &inst.vcomp(&c[1], &c[0])?)?;
    same(inst, &lhs, &rhs, "(c b) a vs c (b a)")
}
