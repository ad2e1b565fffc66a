use super::matrix::{Matrix, RowReducer};
use super::scalar::Field;
use crate::error::{Error, Result};

/// A quotient `k^n / span(relations)` with a fixed basis.
///
/// The basis is the image of the standard basis vectors at the non-pivot
/// columns of the reduced relation span, so equal inputs always give equal
/// matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientSpace {
    ambient_dim: usize,
    quotient_dim: usize,
    /// quotient_dim x ambient_dim
    projection: Matrix,
    /// ambient_dim x quotient_dim
    section: Matrix,
}

impl QuotientSpace {
    pub fn trivial(field: Field, n: usize) -> Self {
        QuotientSpace {
            ambient_dim: n,
            quotient_dim: n,
            projection: Matrix::identity(field, n),
            section: Matrix::identity(field, n),
        }
    }

    /// Quotient by the span of `relations`, each a vector of length `ambient_dim`.
    pub fn new<I>(field: Field, ambient_dim: usize, relations: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<super::Scalar>>,
    {
        let mut reducer = RowReducer::new(field, ambient_dim);
        for rel in relations {
            if rel.len() != ambient_dim {
                return Err(Error::Shape(format!("relation of length {} in ambient dimension {ambient_dim}", rel.len())));
            }
            if rel.iter().any(|s| s.field() != field) {
                return Err(Error::MixedFields);
            }
            if reducer.is_full() {
                continue;
            }
            reducer.push(rel);
        }
        Ok(Self::from_reducer(field, ambient_dim, &reducer))
    }

    pub(crate) fn from_reducer(field: Field, ambient_dim: usize, reducer: &RowReducer) -> Self {
        let ech = reducer.echelon();
        let free: Vec<usize> = (0..ambient_dim).filter(|c| !ech.pivots.contains(c)).collect();
        let q = free.len();
        let mut projection = Matrix::zeros(field, q, ambient_dim);
        let mut section = Matrix::zeros(field, ambient_dim, q);
        for (t, &c) in free.iter().enumerate() {
            projection.set(t, c, field.one());
            section.set(c, t, field.one());
        }
        // A pivot coordinate is rewritten as minus the rest of its relation row.
        for (i, &p) in ech.pivots.iter().enumerate() {
            for (t, &c) in free.iter().enumerate() {
                let v = ech.reduced.get(i, c);
                if !v.is_zero() {
                    projection.set(t, p, -v);
                }
            }
        }
        QuotientSpace { ambient_dim, quotient_dim: q, projection, section }
    }

    /// Builds a quotient from explicit matrices (already known to be consistent).
    pub fn from_parts(projection: Matrix, section: Matrix) -> Self {
        QuotientSpace { ambient_dim: projection.cols(), quotient_dim: projection.rows(), projection, section }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn quotient_dim(&self) -> usize {
        self.quotient_dim
    }
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }
    pub fn section(&self) -> &Matrix {
        &self.section
    }
    pub fn into_parts(self) -> (Matrix, Matrix) {
        (self.projection, self.section)
    }

    /// `I - section * projection`, whose image is exactly the relation span.
    pub fn relation_projector(&self) -> Matrix {
        let f = self.projection.field();
        Matrix::identity(f, self.ambient_dim).sub(&self.section.mul(&self.projection))
    }
}
