//! Bimodules, bimodule maps, tensor products over algebras, and the coherence
//! cells of the bicategory of bimodules.

mod coherence;
mod hom;
mod instance;
mod tensor;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub use coherence::{associator, associator_inv, iota, iota_inv, left_unitor, left_unitor_inv, right_unitor, right_unitor_inv};
pub use hom::{hom_basis, map_from_coords};
pub use instance::Bim;
pub use tensor::{balanced_map, induced_map, tensor_over, tensor_word, Chain, Splice, Word};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};
use crate::report::{Report, Witness};

/// Presentation of a tensor product: its factors and the maps to and from the
/// ambient space of the factors' coordinates (left factor most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorData {
    pub leaves: Vec<Arc<Bimodule>>,
    /// dim x (product of leaf dims)
    pub projection: Matrix,
    /// (product of leaf dims) x dim
    pub section: Matrix,
}

/// An (A, B)-bimodule: a 1-cell from B to A.
///
/// Equality is structural, including how a tensor product was assembled, so
/// `(f g) h` and `f (g h)` are different values linked by the associator.
#[derive(Clone)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    dim: usize,
    left_action: Vec<Matrix>,
    right_action: Vec<Matrix>,
    tensor: Option<Arc<TensorData>>,
    fingerprint: u64,
}

impl PartialEq for Bimodule {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && self.dim == other.dim
            && self.left == other.left
            && self.right == other.right
            && self.left_action == other.left_action
            && self.right_action == other.right_action
            && self.tensor == other.tensor
    }
}

impl Eq for Bimodule {}

impl Hash for Bimodule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.fingerprint.hash(state);
    }
}

impl fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bimodule(dim {}, {:?}-{:?}", self.dim, self.left, self.right)?;
        if let Some(t) = &self.tensor {
            write!(f, ", tensor of {} factors", t.leaves.len())?;
        }
        write!(f, ")")
    }
}

impl Bimodule {
    /// Builds a bimodule from action matrices, checking only shapes and field;
    /// the axioms are checked by [`Bimodule::validate`].
    pub fn new(left: Arc<Algebra>, right: Arc<Algebra>, left_action: Vec<Matrix>, right_action: Vec<Matrix>) -> Result<Self> {
        let dim = left_action.first().or(right_action.first()).map_or(0, Matrix::rows);
        if left_action.len() != left.dim() || right_action.len() != right.dim() {
            return Err(Error::Shape("one action matrix per algebra basis element required".into()));
        }
        let field = left.field();
        if right.field() != field {
            return Err(Error::FieldMismatch(field, right.field()));
        }
        for m in left_action.iter().chain(&right_action) {
            if m.shape() != (dim, dim) {
                return Err(Error::Shape(format!("action matrix must be {dim}x{dim}")));
            }
            if m.field() != field {
                return Err(Error::MixedFields);
            }
        }
        Ok(Self::assemble(left, right, dim, left_action, right_action, None))
    }

    pub(crate) fn assemble(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        dim: usize,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
        tensor: Option<Arc<TensorData>>,
    ) -> Self {
        let mut h = DefaultHasher::new();
        left.hash(&mut h);
        right.hash(&mut h);
        dim.hash(&mut h);
        left_action.hash(&mut h);
        right_action.hash(&mut h);
        if let Some(t) = &tensor {
            for l in &t.leaves {
                l.fingerprint.hash(&mut h);
            }
        }
        Bimodule { left, right, dim, left_action, right_action, tensor, fingerprint: h.finish() }
    }

    /// The algebra as a bimodule over itself: the identity 1-cell.
    pub fn regular(a: &Arc<Algebra>) -> Self {
        let left = (0..a.dim()).map(|i| a.left_mult(i)).collect();
        let right = (0..a.dim()).map(|j| a.right_mult(j)).collect();
        Self::assemble(a.clone(), a.clone(), a.dim(), left, right, None)
    }

    /// An (A, B)-bimodule restricted along algebra maps into the acting algebras.
    /// `phi` is `A'.dim` columns of `A` coordinates (a unital algebra map A' -> A).
    pub fn restrict(
        &self,
        new_left: &Arc<Algebra>,
        phi_left: &Matrix,
        new_right: &Arc<Algebra>,
        phi_right: &Matrix,
    ) -> Result<Self> {
        let left = (0..new_left.dim()).map(|i| self.left_of(phi_left.col(i).entries())).collect();
        let right = (0..new_right.dim()).map(|i| self.right_of(phi_right.col(i).entries())).collect();
        Bimodule::new(new_left.clone(), new_right.clone(), left, right)
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn left(&self) -> &Arc<Algebra> {
        &self.left
    }
    pub fn right(&self) -> &Arc<Algebra> {
        &self.right
    }
    pub fn left_action(&self) -> &[Matrix] {
        &self.left_action
    }
    pub fn right_action(&self) -> &[Matrix] {
        &self.right_action
    }
    pub fn tensor(&self) -> Option<&TensorData> {
        self.tensor.as_deref()
    }
    pub fn is_tensor(&self) -> bool {
        self.tensor.is_some()
    }

    /// Whether this is the regular bimodule of its (single) algebra.
    pub fn is_identity_of(&self, a: &Arc<Algebra>) -> bool {
        *self == Bimodule::regular(a)
    }

    /// Left action of an algebra element given in coordinates.
    pub fn left_of(&self, a: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim, &self.left_action, a)
    }

    /// Right action of an algebra element given in coordinates.
    pub fn right_of(&self, b: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim, &self.right_action, b)
    }

    /// Checks the bimodule axioms on basis elements.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let id = Matrix::identity(self.field(), self.dim);
        report.check_eq("left unit acts as identity", &self.left_of(self.left.unit()), &id);
        report.check_eq("right unit acts as identity", &self.right_of(self.right.unit()), &id);
        report.record("left action multiplicative", Ok(action_defect(&self.left, &self.left_action, false, "left")));
        report.record("right action reverses products", Ok(action_defect(&self.right, &self.right_action, true, "right")));
        let mut commute = None;
        'outer: for (i, l) in self.left_action.iter().enumerate() {
            for (j, r) in self.right_action.iter().enumerate() {
                if let Some(w) = Witness::compare(format!("L(a{i}) R(b{j}) vs R(b{j}) L(a{i})"), &l.mul(r), &r.mul(l)) {
                    commute = Some(w);
                    break 'outer;
                }
            }
        }
        report.record("actions commute", Ok(commute));
        report
    }
}

fn combine(field: Field, dim: usize, mats: &[Matrix], coeffs: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, dim, dim);
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

fn action_defect(alg: &Algebra, mats: &[Matrix], reversed: bool, side: &str) -> Option<Witness> {
    let n = alg.dim();
    let dim = mats.first().map_or(0, Matrix::rows);
    for i in 0..n {
        for j in 0..n {
            let prod = alg.multiply(&alg.basis(i), &alg.basis(j)).expect("basis length");
            let lhs = combine(alg.field(), dim, mats, &prod);
            let rhs = if reversed { mats[j].mul(&mats[i]) } else { mats[i].mul(&mats[j]) };
            if let Some(w) = Witness::compare(format!("{side} action of e{i} e{j}"), &lhs, &rhs) {
                return Some(w);
            }
        }
    }
    None
}

/// A bimodule map, stored as a matrix from source to target coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BimoduleMap {
    source: Arc<Bimodule>,
    target: Arc<Bimodule>,
    matrix: Matrix,
}

impl fmt::Debug for BimoduleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BimoduleMap({:?} -> {:?}, {:?})", self.source, self.target, self.matrix)
    }
}

impl BimoduleMap {
    /// Checked constructor: shape, field, and commuting with both actions.
    pub fn new(source: Arc<Bimodule>, target: Arc<Bimodule>, matrix: Matrix) -> Result<Self> {
        let map = Self::new_unchecked(source, target, matrix)?;
        if let Some(w) = map.linearity_defect() {
            return Err(Error::Invalid(format!("not a bimodule map: {w}")));
        }
        Ok(map)
    }

    /// Checks shapes only; used by constructions that are bilinear by design.
    pub fn new_unchecked(source: Arc<Bimodule>, target: Arc<Bimodule>, matrix: Matrix) -> Result<Self> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::Shape(format!(
                "map matrix {}x{} between dims {} and {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        if source.left() != target.left() || source.right() != target.right() {
            return Err(Error::AlgebraMismatch("source and target act through different algebras".into()));
        }
        if matrix.field() != source.field() {
            return Err(Error::FieldMismatch(source.field(), matrix.field()));
        }
        Ok(BimoduleMap { source, target, matrix })
    }

    pub(crate) fn raw(source: Arc<Bimodule>, target: Arc<Bimodule>, matrix: Matrix) -> Self {
        debug_assert_eq!(matrix.shape(), (target.dim(), source.dim()));
        BimoduleMap { source, target, matrix }
    }

    pub fn identity(m: &Arc<Bimodule>) -> Self {
        BimoduleMap::raw(m.clone(), m.clone(), Matrix::identity(m.field(), m.dim()))
    }

    pub fn zero(source: &Arc<Bimodule>, target: &Arc<Bimodule>) -> Self {
        BimoduleMap::raw(source.clone(), target.clone(), Matrix::zeros(source.field(), target.dim(), source.dim()))
    }

    pub fn source(&self) -> &Arc<Bimodule> {
        &self.source
    }
    pub fn target(&self) -> &Arc<Bimodule> {
        &self.target
    }
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// First failure of `f L(a) = L(a) f` or `f R(b) = R(b) f`.
    pub fn linearity_defect(&self) -> Option<Witness> {
        let (s, t) = (&self.source, &self.target);
        for (i, (ls, lt)) in s.left_action.iter().zip(&t.left_action).enumerate() {
            if let Some(w) = Witness::compare(format!("map vs left action of a{i}"), &self.matrix.mul(ls), &lt.mul(&self.matrix))
            {
                return Some(w);
            }
        }
        for (j, (rs, rt)) in s.right_action.iter().zip(&t.right_action).enumerate() {
            if let Some(w) = Witness::compare(format!("map vs right action of b{j}"), &self.matrix.mul(rs), &rt.mul(&self.matrix))
            {
                return Some(w);
            }
        }
        None
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &BimoduleMap) -> Result<BimoduleMap> {
        if *first.target != *self.source {
            return Err(Error::NotComposable(format!("{:?} does not match {:?}", first.target, self.source)));
        }
        Ok(BimoduleMap::raw(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix)))
    }

    fn same_type(&self, other: &BimoduleMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::NotComposable("maps have different source or target".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &BimoduleMap) -> Result<BimoduleMap> {
        self.same_type(other)?;
        Ok(BimoduleMap::raw(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix)))
    }

    pub fn sub(&self, other: &BimoduleMap) -> Result<BimoduleMap> {
        self.same_type(other)?;
        Ok(BimoduleMap::raw(self.source.clone(), self.target.clone(), self.matrix.sub(&other.matrix)))
    }

    pub fn scale(&self, s: &Scalar) -> BimoduleMap {
        BimoduleMap::raw(self.source.clone(), self.target.clone(), self.matrix.scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank().expect("single-field matrix")
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn inverse(&self) -> Result<BimoduleMap> {
        let inv = self.matrix.inverse()?;
        Ok(BimoduleMap::raw(self.target.clone(), self.source.clone(), inv))
    }

    /// Same matrix, reinterpreted between structurally equal modules.
    pub fn retype(&self, source: &Arc<Bimodule>, target: &Arc<Bimodule>) -> Result<BimoduleMap> {
        BimoduleMap::new_unchecked(source.clone(), target.clone(), self.matrix.clone())
    }

    /// Witness for the first difference between two maps of the same type.
    pub fn diff(&self, other: &BimoduleMap, label: &str) -> Option<Witness> {
        if self.source != other.source || self.target != other.target {
            return Some(Witness::new(label, format!("{:?}", self.source), format!("{:?}", other.source)));
        }
        Witness::compare(label, &self.matrix, &other.matrix)
    }
}
