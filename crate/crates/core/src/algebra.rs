//! Finite-dimensional unital associative algebras given by structure constants.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};
use crate::report::{Report, Witness};

/// `e_i * e_j = sum_k c[i][j][k] e_k`, with the unit given in coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    field: Field,
    dim: usize,
    /// Flattened `c[i][j][k]` at index `(i * dim + j) * dim + k`.
    structure: Vec<Scalar>,
    unit: Vec<Scalar>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {} over {})", self.dim, self.field)
    }
}

impl Algebra {
    /// Builds an algebra without checking the axioms; see [`Algebra::validate`].
    pub fn new(field: Field, dim: usize, structure: Vec<Scalar>, unit: Vec<Scalar>) -> Result<Self> {
        if structure.len() != dim * dim * dim || unit.len() != dim {
            return Err(Error::Shape(format!(
                "algebra of dim {dim} needs {} structure constants and a unit of length {dim}",
                dim * dim * dim
            )));
        }
        if structure.iter().chain(&unit).any(|s| s.field() != field) {
            return Err(Error::MixedFields);
        }
        Ok(Algebra { field, dim, structure, unit })
    }

    /// Builds from a product rule on basis indices returning sparse coefficients.
    pub fn from_rule(field: Field, dim: usize, unit: Vec<Scalar>, rule: impl Fn(usize, usize) -> Vec<(usize, Scalar)>) -> Self {
        let mut structure = vec![field.zero(); dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                for (k, s) in rule(i, j) {
                    let idx = (i * dim + j) * dim + k;
                    structure[idx] = &structure[idx] + &s;
                }
            }
        }
        Algebra { field, dim, structure, unit }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }
    pub fn unit_vector(&self) -> Matrix {
        Matrix::column(self.field, self.unit.clone())
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    /// Nested `c[i][j][k]` form for serialization.
    pub fn structure_nested(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| (0..self.dim).map(|k| self.constant(i, j, k).clone()).collect()).collect())
            .collect()
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        (0..self.dim).map(|k| if k == i { self.field.one() } else { self.field.zero() }).collect()
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::Shape(format!("vectors of length {} and {} in an algebra of dim {}", x.len(), y.len(), self.dim)));
        }
        let mut out = vec![self.field.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o = &*o + &(&w * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `y -> e_i * y`.
    pub fn left_mult(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.field, self.dim, self.dim, |k, j| self.constant(i, j, k).clone())
    }

    /// Matrix of `y -> y * e_j`.
    pub fn right_mult(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.field, self.dim, self.dim, |k, i| self.constant(i, j, k).clone())
    }

    /// Matrix of `x (x) y -> x y` on the ambient tensor `k^dim (x) k^dim`.
    pub fn multiplication_matrix(&self) -> Matrix {
        Matrix::from_fn(self.field, self.dim, self.dim * self.dim, |k, col| {
            self.constant(col / self.dim, col % self.dim, k).clone()
        })
    }

    pub fn is_idempotent(&self, e: &[Scalar]) -> Result<bool> {
        Ok(self.multiply(e, e)? == e)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| (0..self.dim).all(|k| self.constant(i, j, k) == self.constant(j, i, k))))
    }

    /// Associativity on basis triples and the two unit laws.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let n = self.dim;
        let mut assoc_witness = None;
        'outer: for i in 0..n {
            let ei = self.basis(i);
            for j in 0..n {
                let ej = self.basis(j);
                let eij = self.multiply(&ei, &ej).expect("basis length");
                for l in 0..n {
                    let el = self.basis(l);
                    let lhs = self.multiply(&eij, &el).expect("basis length");
                    let rhs = self.multiply(&ei, &self.multiply(&ej, &el).expect("basis length")).expect("basis length");
                    if lhs != rhs {
                        assoc_witness =
                            Some(Witness::new(format!("(e{i} e{j}) e{l} vs e{i} (e{j} e{l})"), fmt_vec(&lhs), fmt_vec(&rhs)));
                        break 'outer;
                    }
                }
            }
        }
        match assoc_witness {
            None => report.pass("associativity"),
            Some(w) => report.fail("associativity", w),
        }
        for (name, left) in [("left unit", true), ("right unit", false)] {
            let bad = (0..n).find_map(|i| {
                let ei = self.basis(i);
                let prod =
                    if left { self.multiply(&self.unit, &ei) } else { self.multiply(&ei, &self.unit) }.expect("basis length");
                (prod != ei).then(|| Witness::new(format!("unit times e{i}"), fmt_vec(&prod), fmt_vec(&ei)))
            });
            match bad {
                None => report.pass(name),
                Some(w) => report.fail(name, w),
            }
        }
        report
    }
}

pub(crate) fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_field_valid() {
        let f = Field::Rational;
        let k = Algebra::new(f, 1, vec![f.one()], vec![f.one()]).unwrap();
        assert!(k.validate().ok());
    }

    #[test]
    fn corrupted_unit_reported() {
        // k x k with idempotent basis, then c[0][0][0] = 2.
        let f = Field::Rational;
        let mut s = vec![f.zero(); 8];
        s[0] = f.from_i64(2);
        s[7] = f.one();
        let a = Algebra::new(f, 2, s, vec![f.one(), f.one()]).unwrap();
        let report = a.validate();
        assert!(!report.ok());
        assert!(report.failing_names().contains(&"left unit"));
    }

    #[test]
    fn shape_errors() {
        let f = Field::Rational;
        assert!(Algebra::new(f, 2, vec![f.one()], vec![f.one()]).is_err());
        let k = Algebra::new(f, 1, vec![f.one()], vec![f.one()]).unwrap();
        assert!(k.multiply(&[f.one(), f.one()], &[f.one()]).is_err());
    }
}
