use super::*;
use crate::report::Witness;

/// Wide right Morita contexts in `B` as a bicategory: contexts are 1-cells,
/// context morphisms (with their end points) are 2-cells.
#[derive(Clone, Debug)]
pub struct W<B> {
    pub base: B,
}

/// A context morphism together with the contexts it runs between.
pub struct TypedMorphism<B: Bicategory> {
    pub morphism: ContextMorphism<B>,
    pub from: WideContext<B>,
    pub to: WideContext<B>,
}

impl<B: Bicategory> Clone for TypedMorphism<B> {
    fn clone(&self) -> Self {
        TypedMorphism { morphism: self.morphism.clone(), from: self.from.clone(), to: self.to.clone() }
    }
}

impl<B: Bicategory> fmt::Debug for TypedMorphism<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.morphism.fmt(f)
    }
}

impl<B: Bicategory> PartialEq for TypedMorphism<B> {
    fn eq(&self, o: &Self) -> bool {
        self.morphism == o.morphism && self.from == o.from && self.to == o.to
    }
}

impl<B: Bicategory> TypedMorphism<B> {
    pub fn new(morphism: ContextMorphism<B>, from: WideContext<B>, to: WideContext<B>) -> Self {
        TypedMorphism { morphism, from, to }
    }
}

impl<B: Bicategory> W<B> {
    pub fn new(base: B) -> Self {
        W { base }
    }

    /// Checks the compatibility conditions of a typed morphism.
    pub fn check(&self, m: &TypedMorphism<B>) -> Result<Report> {
        check_morphism(&self.base, &m.morphism, &m.from, &m.to)
    }
}

impl<B: Bicategory> Bicategory for W<B> {
    type Obj = B::Obj;
    type Cell1 = WideContext<B>;
    type Cell2 = TypedMorphism<B>;

    fn source(&self, c: &WideContext<B>) -> B::Obj {
        self.base.source(&c.f)
    }
    fn target(&self, c: &WideContext<B>) -> B::Obj {
        self.base.target(&c.f)
    }
    fn dom(&self, m: &TypedMorphism<B>) -> WideContext<B> {
        m.from.clone()
    }
    fn cod(&self, m: &TypedMorphism<B>) -> WideContext<B> {
        m.to.clone()
    }

    fn id1(&self, x: &B::Obj) -> Result<WideContext<B>> {
        identity_context(&self.base, x)
    }
    fn hcomp1(&self, x: &WideContext<B>, y: &WideContext<B>) -> Result<WideContext<B>> {
        multiply_contexts(&self.base, x, y)
    }
    fn id2(&self, c: &WideContext<B>) -> Result<TypedMorphism<B>> {
        Ok(TypedMorphism::new(identity_morphism(&self.base, c)?, c.clone(), c.clone()))
    }
    fn hcomp2(&self, a: &TypedMorphism<B>, b: &TypedMorphism<B>) -> Result<TypedMorphism<B>> {
        let m = multiply_morphisms(&self.base, &a.morphism, &b.morphism)?;
        Ok(TypedMorphism::new(m, self.hcomp1(&a.from, &b.from)?, self.hcomp1(&a.to, &b.to)?))
    }
    fn vcomp(&self, second: &TypedMorphism<B>, first: &TypedMorphism<B>) -> Result<TypedMorphism<B>> {
        if first.to != second.from {
            return Err(Error::NotComposable("context morphisms do not meet".into()));
        }
        let m = compose_morphisms(&self.base, &second.morphism, &first.morphism)?;
        Ok(TypedMorphism::new(m, first.from.clone(), second.to.clone()))
    }
    fn associator(&self, x: &WideContext<B>, y: &WideContext<B>, z: &WideContext<B>) -> Result<TypedMorphism<B>> {
        let m = context_associator(&self.base, x, y, z)?;
        let from = self.hcomp1(&self.hcomp1(x, y)?, z)?;
        let to = self.hcomp1(x, &self.hcomp1(y, z)?)?;
        Ok(TypedMorphism::new(m, from, to))
    }
    fn associator_inv(&self, x: &WideContext<B>, y: &WideContext<B>, z: &WideContext<B>) -> Result<TypedMorphism<B>> {
        let m = context_associator_inv(&self.base, x, y, z)?;
        let from = self.hcomp1(x, &self.hcomp1(y, z)?)?;
        let to = self.hcomp1(&self.hcomp1(x, y)?, z)?;
        Ok(TypedMorphism::new(m, from, to))
    }
    fn left_unitor(&self, c: &WideContext<B>) -> Result<TypedMorphism<B>> {
        let from = self.hcomp1(&self.id1(&self.target(c))?, c)?;
        Ok(TypedMorphism::new(context_left_unitor(&self.base, c)?, from, c.clone()))
    }
    fn left_unitor_inv(&self, c: &WideContext<B>) -> Result<TypedMorphism<B>> {
        let to = self.hcomp1(&self.id1(&self.target(c))?, c)?;
        Ok(TypedMorphism::new(context_left_unitor_inv(&self.base, c)?, c.clone(), to))
    }
    fn right_unitor(&self, c: &WideContext<B>) -> Result<TypedMorphism<B>> {
        let from = self.hcomp1(c, &self.id1(&self.source(c))?)?;
        Ok(TypedMorphism::new(context_right_unitor(&self.base, c)?, from, c.clone()))
    }
    fn right_unitor_inv(&self, c: &WideContext<B>) -> Result<TypedMorphism<B>> {
        let to = self.hcomp1(c, &self.id1(&self.source(c))?)?;
        Ok(TypedMorphism::new(context_right_unitor_inv(&self.base, c)?, c.clone(), to))
    }

    fn diff2(&self, a: &TypedMorphism<B>, b: &TypedMorphism<B>, label: &str) -> Option<Witness> {
        self.base
            .diff2(&a.morphism.alpha, &b.morphism.alpha, &format!("{label} (alpha)"))
            .or_else(|| self.base.diff2(&a.morphism.beta, &b.morphism.beta, &format!("{label} (beta)")))
    }
}
