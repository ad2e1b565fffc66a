//! Dense matrices over a [`Field`] with exact row reduction.

use std::fmt;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix. Vectors are column matrices throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}](", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            write!(f, "[{}]", row.join(" "))?;
        }
        write!(f, ")")
    }
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Outcome of [`Matrix::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// One solution plus the dimension of the kernel of the coefficient matrix.
    Solved {
        x: Matrix,
        kernel_dim: usize,
    },
    NoSolution,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix from rows, rejecting ragged input and scalars from other fields.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::Shape("ragged rows".into()));
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::MixedFields);
                }
                data.push(s);
            }
        }
        Ok(Matrix { field, rows: nrows, cols: ncols, data })
    }

    /// Convenience for tests and generators: integer entries.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(field, rows.len(), ncols, |r, c| field.from_i64(rows[r][c]))
    }

    /// Column vector from scalars.
    pub fn column(field: Field, entries: Vec<Scalar>) -> Self {
        let rows = entries.len();
        Matrix { field, rows, cols: 1, data: entries }
    }

    /// Unchecked constructor used when mixing is deliberate (tests of the
    /// mixed-mode error path) or already excluded.
    pub fn from_raw(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Matrix { field, rows, cols, data }
    }

    pub fn basis_vector(field: Field, n: usize, i: usize) -> Self {
        let mut v = Matrix::zeros(field, n, 1);
        v.data[i] = field.one();
        v
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Matrix {
        Matrix::from_fn(self.field, self.rows, 1, |r, _| self.get(r, c).clone())
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    fn check_mode(&self) -> Result<()> {
        if self.data.iter().any(|s| s.field() != self.field) {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Matrix product. Panics on shape mismatch.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        assert_eq!(self.field, rhs.field, "matrix product field mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + c];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * rhs.cols + c;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    /// Fallible product: shape and field are checked.
    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field, rhs.field));
        }
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        Ok(self.mul(rhs))
    }

    fn zip(&self, rhs: &Matrix, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "elementwise shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// Kronecker product; index `(i, j)` of the product space is `i * rhs_dim + j`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Matrix::zeros(self.field, rows, cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..rhs.rows {
                    for c2 in 0..rhs.cols {
                        let b = rhs.get(r2, c2);
                        if !b.is_zero() {
                            out.set(r1 * rhs.rows + r2, c1 * rhs.cols + c2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(blocks: &[&Matrix]) -> Matrix {
        let field = blocks[0].field;
        let rows = blocks[0].rows;
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for r in 0..rows {
                for c in 0..b.cols {
                    out.set(r, off + c, b.get(r, c).clone());
                }
            }
            off += b.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
        }
        Matrix { field, rows, cols, data }
    }

    /// Sub-matrix from selected rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    /// First entry where the two matrices differ, if any.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((0, 0));
        }
        (0..self.data.len()).find(|&i| self.data[i] != other.data[i]).map(|i| (i / self.cols, i % self.cols))
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> Result<Echelon> {
        self.check_mode()?;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv()?;
            m.scale_row(row, &inv);
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.axpy_row(r, row, &factor, col);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Ok(Echelon { reduced: m, pivots })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for c in 0..self.cols {
            let i = r * self.cols + c;
            if !self.data[i].is_zero() {
                self.data[i] = &self.data[i] * s;
            }
        }
    }

    /// row[target] -= factor * row[source], starting at column `from`.
    fn axpy_row(&mut self, target: usize, source: usize, factor: &Scalar, from: usize) {
        for c in from..self.cols {
            let s = &self.data[source * self.cols + c];
            if s.is_zero() {
                continue;
            }
            let d = factor * s;
            let i = target * self.cols + c;
            self.data[i] = &self.data[i] - &d;
        }
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.rank())
    }

    /// Columns form a basis of the right null space.
    pub fn kernel_basis(&self) -> Result<Matrix> {
        let ech = self.rref()?;
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, self.field.one());
            for (i, &pc) in ech.pivots.iter().enumerate() {
                k.set(pc, j, -ech.reduced.get(i, fc));
            }
        }
        Ok(k)
    }

    /// Solves `self * x = b` for a block of right-hand sides.
    pub fn solve(&self, b: &Matrix) -> Result<Solution> {
        if b.rows != self.rows {
            return Err(Error::Shape(format!("coefficient matrix has {} rows, right-hand side {}", self.rows, b.rows)));
        }
        if b.field != self.field {
            return Err(Error::FieldMismatch(self.field, b.field));
        }
        let aug = Matrix::hstack(&[self, b]);
        let ech = aug.rref()?;
        if ech.pivots.iter().any(|&p| p >= self.cols) {
            return Ok(Solution::NoSolution);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (i, &pc) in ech.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, ech.reduced.get(i, self.cols + j).clone());
            }
        }
        Ok(Solution::Solved { x, kernel_dim: self.cols - ech.rank() })
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotInvertible(format!("{}x{} matrix", self.rows, self.cols)));
        }
        match self.solve(&Matrix::identity(self.field, self.rows))? {
            Solution::Solved { x, kernel_dim: 0 } => Ok(x),
            _ => Err(Error::NotInvertible("singular matrix".into())),
        }
    }

    /// Basis of the column space, as the pivot columns of `self`.
    pub fn column_space(&self) -> Result<Matrix> {
        let ech = self.rref()?;
        let rows: Vec<usize> = (0..self.rows).collect();
        Ok(self.select(&rows, &ech.pivots))
    }
}

/// Incremental row-echelon accumulator: rows are added one at a time and kept
/// fully reduced, so memory stays bounded by the rank.
#[derive(Clone, Debug)]
pub struct RowReducer {
    field: Field,
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(field: Field, width: usize) -> Self {
        RowReducer { field, width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn push(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.width);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for c in 0..self.width {
                if !row[c].is_zero() {
                    v[c] = &v[c] - &(&f * &row[c]);
                }
            }
        }
        let Some(p) = v.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for s in v.iter_mut() {
            if !s.is_zero() {
                *s = &*s * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for c in 0..self.width {
                if !v[c].is_zero() {
                    row[c] = &row[c] - &(&f * &v[c]);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns spanning the vectors orthogonal to every pushed row.
    pub fn kernel_basis(&self) -> Matrix {
        let free: Vec<usize> = (0..self.width).filter(|c| self.pivots.binary_search(c).is_err()).collect();
        let mut k = Matrix::zeros(self.field, self.width, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, self.field.one());
            for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                if !row[fc].is_zero() {
                    k.set(pc, j, -&row[fc]);
                }
            }
        }
        k
    }

    /// The reduced rows as a matrix (rank x width), sorted by pivot.
    pub fn echelon(&self) -> Echelon {
        let data = self.rows.iter().flatten().cloned().collect();
        Echelon { reduced: Matrix::from_raw(self.field, self.rows.len(), self.width, data), pivots: self.pivots.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rref_identity() {
        let i = Matrix::identity(q(), 2);
        let e = i.rref().unwrap();
        assert_eq!(e.reduced, i);
        assert_eq!(e.pivots, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one() {
        let m = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        let e = m.rref().unwrap();
        assert_eq!(e.reduced, Matrix::from_i64(q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(e.pivots, vec![0]);
    }

    #[test]
    fn rref_mixed_modes_rejected() {
        let m = Matrix::from_raw(q(), 1, 2, vec![q().one(), Field::Prime(5).one()]);
        assert_eq!(m.rref().unwrap_err(), Error::MixedFields);
        assert!(Matrix::from_rows(q(), vec![vec![Field::Prime(5).one()]]).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(q(), 3).kernel_basis().unwrap().cols(), 0);
        let k = Matrix::from_i64(q(), &[&[1, 1]]).kernel_basis().unwrap();
        assert_eq!(k, Matrix::from_i64(q(), &[&[-1], &[1]]));
    }

    #[test]
    fn solve_examples() {
        let a = Matrix::identity(q(), 2);
        let b = Matrix::from_i64(q(), &[&[3], &[-5]]);
        assert_eq!(a.solve(&b).unwrap(), Solution::Solved { x: b.clone(), kernel_dim: 0 });
        let a = Matrix::from_i64(q(), &[&[1, 1], &[1, 1]]);
        let b = Matrix::from_i64(q(), &[&[1], &[2]]);
        assert_eq!(a.solve(&b).unwrap(), Solution::NoSolution);
        assert!(matches!(a.solve(&Matrix::zeros(q(), 3, 1)), Err(Error::Shape(_))));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Matrix::from_i64(q(), &[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(q(), 2));
        assert!(Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn reducer_matches_rref() {
        let f = Field::Prime(101);
        let m = Matrix::from_i64(f, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 3, 4]]);
        let mut red = RowReducer::new(f, 3);
        for r in 0..m.rows() {
            red.push(m.row(r).to_vec());
        }
        let e = m.rref().unwrap();
        assert_eq!(red.pivots(), &e.pivots[..]);
        assert_eq!(red.echelon().reduced, e.reduced.select(&[0, 1], &[0, 1, 2]));
    }

    #[test]
    fn kron_indexing() {
        let a = Matrix::from_i64(q(), &[&[1, 2]]);
        let b = Matrix::from_i64(q(), &[&[3], &[4]]);
        assert_eq!(a.kron(&b), Matrix::from_i64(q(), &[&[3, 6], &[4, 8]]));
    }
}
