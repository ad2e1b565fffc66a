//! Tensor products over algebras as explicit quotients, and transport of maps
//! through multi-factor tensor words.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use super::{Bimodule, BimoduleMap, TensorData};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, QuotientSpace};

thread_local! {
    static WORDS: RefCell<HashMap<Vec<Arc<Bimodule>>, Arc<Bimodule>>> = RefCell::new(HashMap::new());
}

/// `m (x)_B n`. The quotient basis is fixed by the pivot pattern of the
/// middle-action relations, with ambient index `i * n.dim + j`.
pub fn tensor_over(m: &Arc<Bimodule>, n: &Arc<Bimodule>) -> Result<Arc<Bimodule>> {
    tensor_word(&[m.clone(), n.clone()])
}

/// Tensor product of several factors, presented over the full ambient space
/// of the factors. Built by tensoring one factor at a time on the right, so a
/// two-factor word is exactly [`tensor_over`].
pub fn tensor_word(leaves: &[Arc<Bimodule>]) -> Result<Arc<Bimodule>> {
    match leaves.len() {
        0 => Err(Error::Shape("empty tensor word".into())),
        1 => Ok(leaves[0].clone()),
        _ => {
            if let Some(hit) = WORDS.with(|w| w.borrow().get(leaves).cloned()) {
                return Ok(hit);
            }
            let built = Arc::new(build_word(leaves)?);
            WORDS.with(|w| w.borrow_mut().insert(leaves.to_vec(), built.clone()));
            Ok(built)
        }
    }
}

fn build_word(leaves: &[Arc<Bimodule>]) -> Result<Bimodule> {
    for (i, pair) in leaves.windows(2).enumerate() {
        if pair[0].right() != pair[1].left() {
            return Err(Error::AlgebraMismatch(format!(
                "factor {i} acts on the right through a different algebra than factor {} on the left",
                i + 1
            )));
        }
    }
    let field = leaves[0].field();
    let mut cur: Bimodule = (*leaves[0]).clone();
    let mut proj = Matrix::identity(field, cur.dim());
    let mut sec = Matrix::identity(field, cur.dim());
    for next in &leaves[1..] {
        let (module, q) = binary_step(&cur, next)?;
        let id_n = Matrix::identity(field, next.dim());
        proj = q.projection().mul(&proj.kron(&id_n));
        sec = sec.kron(&id_n).mul(q.section());
        cur = module;
    }
    let data = TensorData { leaves: leaves.to_vec(), projection: proj, section: sec };
    Ok(Bimodule::assemble(cur.left.clone(), cur.right.clone(), cur.dim, cur.left_action, cur.right_action, Some(Arc::new(data))))
}

/// The relation vectors spanning `{(m b) (x) n - m (x) (b n)}`.
pub(crate) fn middle_relations(m: &Bimodule, n: &Bimodule) -> Vec<Vec<crate::exactla::Scalar>> {
    let field = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let mut out = Vec::new();
    for (rb, lb) in m.right_action().iter().zip(n.left_action()) {
        for x in 0..dm {
            for y in 0..dn {
                let mut v = vec![field.zero(); dm * dn];
                for x2 in 0..dm {
                    let c = rb.get(x2, x);
                    if !c.is_zero() {
                        let i = x2 * dn + y;
                        v[i] = &v[i] + c;
                    }
                }
                for y2 in 0..dn {
                    let c = lb.get(y2, y);
                    if !c.is_zero() {
                        let i = x * dn + y2;
                        v[i] = &v[i] - c;
                    }
                }
                if v.iter().any(|s| !s.is_zero()) {
                    out.push(v);
                }
            }
        }
    }
    out
}

fn binary_step(m: &Bimodule, n: &Bimodule) -> Result<(Bimodule, QuotientSpace)> {
    let field = m.field();
    let q = QuotientSpace::new(field, m.dim() * n.dim(), middle_relations(m, n))?;
    let id_m = Matrix::identity(field, m.dim());
    let id_n = Matrix::identity(field, n.dim());
    let left = m.left_action().iter().map(|l| q.projection().mul(&l.kron(&id_n)).mul(q.section())).collect();
    let right = n.right_action().iter().map(|r| q.projection().mul(&id_m.kron(r)).mul(q.section())).collect();
    let module = Bimodule::assemble(m.left().clone(), n.right().clone(), q.quotient_dim(), left, right, None);
    Ok((module, q))
}

/// `f (x) g` on tensor products, checked to be well defined: the ambient map
/// must send the source relations into the target relations.
pub fn induced_map(f: &BimoduleMap, g: &BimoduleMap) -> Result<BimoduleMap> {
    let src = tensor_over(f.source(), g.source())?;
    let dst = tensor_over(f.target(), g.target())?;
    let field = src.field();
    let ambient = f.matrix().kron(g.matrix());
    let sd = data_or_identity(&src);
    let dd = data_or_identity(&dst);
    let leak = dd.0.mul(&ambient).mul(&Matrix::identity(field, sd.1.rows()).sub(&sd.1.mul(&sd.0)));
    if !leak.is_zero() {
        return Err(Error::IllDefined("ambient map does not preserve the tensor relations".into()));
    }
    Ok(BimoduleMap::raw(src, dst, dd.0.mul(&ambient).mul(&sd.1)))
}

/// The map out of a tensor product induced by a map on the leaves' ambient
/// space, which must vanish on the tensor relations and be bilinear.
pub fn balanced_map(src: &Arc<Bimodule>, dst: &Arc<Bimodule>, ambient: &Matrix) -> Result<BimoduleMap> {
    let (proj, sec) = data_or_identity(src);
    let leak = ambient.mul(&Matrix::identity(src.field(), sec.rows()).sub(&sec.mul(&proj)));
    if !leak.is_zero() {
        return Err(Error::IllDefined("map is not balanced over the middle algebra".into()));
    }
    BimoduleMap::new(src.clone(), dst.clone(), ambient.mul(&sec))
}

fn data_or_identity(b: &Bimodule) -> (Matrix, Matrix) {
    match b.tensor() {
        Some(t) => (t.projection.clone(), t.section.clone()),
        None => {
            let i = Matrix::identity(b.field(), b.dim());
            (i.clone(), i)
        }
    }
}

/// A bimodule viewed as a tensor word over explicit factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    leaves: Vec<Arc<Bimodule>>,
    module: Arc<Bimodule>,
}

impl Word {
    pub fn new(leaves: Vec<Arc<Bimodule>>) -> Result<Word> {
        let module = tensor_word(&leaves)?;
        Ok(Word { leaves, module })
    }

    /// The module as a one-factor word, never looking inside.
    pub fn single(m: &Arc<Bimodule>) -> Word {
        Word { leaves: vec![m.clone()], module: m.clone() }
    }

    /// A tensor product viewed through its own factors; other modules as one factor.
    pub fn of(m: &Arc<Bimodule>) -> Word {
        match m.tensor() {
            Some(t) => Word { leaves: t.leaves.clone(), module: m.clone() },
            None => Word::single(m),
        }
    }

    pub fn leaves(&self) -> &[Arc<Bimodule>] {
        &self.leaves
    }

    pub fn module(&self) -> &Arc<Bimodule> {
        &self.module
    }

    fn ambient_maps(&self) -> (Matrix, Matrix) {
        if self.leaves.len() == 1 {
            let i = Matrix::identity(self.module.field(), self.module.dim());
            (i.clone(), i)
        } else {
            let t = self.module.tensor().expect("multi-factor word is a tensor");
            (t.projection.clone(), t.section.clone())
        }
    }
}

/// How the target of a map applied inside a word enters the new word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Splice {
    /// The target becomes a single factor.
    Keep,
    /// A tensor-product target contributes its own factors.
    Split,
}

/// A linear map being assembled step by step through tensor words.
#[derive(Clone, Debug)]
pub struct Chain {
    start: Arc<Bimodule>,
    word: Word,
    matrix: Matrix,
}

impl Chain {
    pub fn start(word: Word) -> Chain {
        let m = word.module.clone();
        Chain { matrix: Matrix::identity(m.field(), m.dim()), start: m, word }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Applies `phi` to factors `pos..pos + len` of the current word.
    pub fn apply(self, pos: usize, len: usize, phi: &BimoduleMap, splice: Splice) -> Result<Chain> {
        let (word, step) = transport(&self.word, pos, len, phi, splice)?;
        Ok(Chain { start: self.start, word, matrix: step.mul(&self.matrix) })
    }

    /// Replaces a tensor-product factor by its own factors.
    pub fn expand(self, pos: usize) -> Result<Chain> {
        let leaf = self.word.leaves.get(pos).ok_or_else(|| Error::Shape(format!("no factor at {pos}")))?.clone();
        self.apply(pos, 1, &BimoduleMap::identity(&leaf), Splice::Split)
    }

    /// Groups factors `pos..pos + len` into one tensor-product factor.
    pub fn contract(self, pos: usize, len: usize) -> Result<Chain> {
        if len == 1 {
            return Ok(self);
        }
        let end = pos + len;
        if end > self.word.leaves.len() {
            return Err(Error::Shape(format!("cannot group factors {pos}..{end}")));
        }
        let sub = tensor_word(&self.word.leaves[pos..end])?;
        self.apply(pos, len, &BimoduleMap::identity(&sub), Splice::Keep)
    }

    /// Applies a map to the whole current word.
    pub fn then(self, phi: &BimoduleMap, splice: Splice) -> Result<Chain> {
        let n = self.word.leaves.len();
        self.apply(0, n, phi, splice)
    }

    pub fn finish(self) -> BimoduleMap {
        BimoduleMap::raw(self.start, self.word.module, self.matrix)
    }

    /// Finishes and checks that the result lands in `target`.
    pub fn finish_at(self, target: &Arc<Bimodule>) -> Result<BimoduleMap> {
        if *self.word.module != **target {
            return Err(Error::NotComposable(format!("composite ends in {:?}, expected {:?}", self.word.module, target)));
        }
        Ok(BimoduleMap::raw(self.start, target.clone(), self.matrix))
    }
}

fn product(leaves: &[Arc<Bimodule>]) -> usize {
    leaves.iter().map(|l| l.dim()).product()
}

/// New word and the matrix (new quotient x old quotient) of `id (x) phi (x) id`.
fn transport(old: &Word, pos: usize, len: usize, phi: &BimoduleMap, splice: Splice) -> Result<(Word, Matrix)> {
    let end = pos + len;
    if len == 0 || end > old.leaves.len() {
        return Err(Error::Shape(format!("factor range {pos}..{end} outside a word of {}", old.leaves.len())));
    }
    let sub = Word::new(old.leaves[pos..end].to_vec())?;
    if *sub.module != **phi.source() {
        return Err(Error::NotComposable(format!(
            "map from {:?} applied to factors {pos}..{end} forming {:?}",
            phi.source(),
            sub.module
        )));
    }
    let tword = match splice {
        Splice::Keep => Word::single(phi.target()),
        Splice::Split => Word::of(phi.target()),
    };
    let mut leaves: Vec<Arc<Bimodule>> = old.leaves[..pos].to_vec();
    leaves.extend(tword.leaves.iter().cloned());
    leaves.extend(old.leaves[end..].iter().cloned());
    let new = Word::new(leaves)?;

    let field = old.module.field();
    let (sub_proj, _) = sub.ambient_maps();
    let (_, t_sec) = tword.ambient_maps();
    let phi_amb = t_sec.mul(phi.matrix()).mul(&sub_proj);
    let pre = product(&old.leaves[..pos]);
    let post = product(&old.leaves[end..]);
    let (mid_in, mid_out) = (phi_amb.cols(), phi_amb.rows());

    let (_, old_sec) = old.ambient_maps();
    let (new_proj, _) = new.ambient_maps();
    let q_old = old.module.dim();
    let mut amb = Matrix::zeros(field, pre * mid_out * post, q_old);
    for c in 0..q_old {
        for p in 0..pre {
            for i in 0..mid_in {
                for s in 0..post {
                    let v = old_sec.get((p * mid_in + i) * post + s, c);
                    if v.is_zero() {
                        continue;
                    }
                    for o in 0..mid_out {
                        let a = phi_amb.get(o, i);
                        if a.is_zero() {
                            continue;
                        }
                        let r = (p * mid_out + o) * post + s;
                        let cur = amb.get(r, c).clone();
                        amb.set(r, c, &cur + &(a * v));
                    }
                }
            }
        }
    }
    Ok((new.clone(), new_proj.mul(&amb)))
}
