//! Dense and sparse exact linear algebra over the cyclotomic field.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::AlgebraError;
use crate::scalar::CycloScalar;

/// Dense row-major matrix of [`CycloScalar`]s over a fixed `N`.
///
/// Arithmetic panics if it would add entries with incommensurable powers of `N`;
/// every matrix built by this crate has homogeneous entries.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    n: u32,
    rows: usize,
    cols: usize,
    data: Vec<CycloScalar>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} (N={})", self.rows, self.cols, self.n)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(n: u32, rows: usize, cols: usize) -> Self {
        Matrix { n, rows, cols, data: vec![CycloScalar::zero(n); rows * cols] }
    }

    pub fn identity(n: u32, dim: usize) -> Self {
        Self::from_fn(n, dim, dim, |r, c| if r == c { CycloScalar::one(n) } else { CycloScalar::zero(n) })
    }

    pub fn from_fn(n: u32, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycloScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { n, rows, cols, data }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycloScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: CycloScalar) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[CycloScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[CycloScalar] {
        &self.data
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.n, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, s: &CycloScalar) -> Matrix {
        Matrix { data: self.data.iter().map(|a| a * s).collect(), ..*self }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.n, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycloScalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.get(r, c);
                    if r == c {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Number of entries in which `self` and `other` differ.
    pub fn count_mismatches(&self, other: &Matrix) -> usize {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).filter(|(a, b)| a != b).count()
    }

    pub fn rank(&self) -> usize {
        let mut space = RowSpace::new(self.n, self.cols);
        for r in 0..self.rows {
            space.insert(self.row(r).iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect());
        }
        space.rank()
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let dim = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(self.n, dim);
        for col in 0..dim {
            let pivot = (col..dim).find(|&r| !a.get(r, col).is_zero()).ok_or(AlgebraError::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.get(col, col).try_inv()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..dim {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                a.sub_row_multiple(r, col, &factor);
                inv.sub_row_multiple(r, col, &factor);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &CycloScalar) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            self.data[idx] = &self.data[idx] * s;
        }
    }

    /// `row[target] -= factor * row[source]`
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &CycloScalar) {
        for c in 0..self.cols {
            let s = self.get(source, c);
            if s.is_zero() {
                continue;
            }
            let delta = factor * s;
            let idx = target * self.cols + c;
            self.data[idx] = &self.data[idx] - &delta;
        }
    }

    /// Position of the first nonzero entry in column-major order.
    fn first_nonzero(&self) -> Option<(usize, usize)> {
        (0..self.cols).flat_map(|c| (0..self.rows).map(move |r| (r, c))).find(|&(r, c)| !self.get(r, c).is_zero())
    }

    /// Canonical representative of the projective class: the matrix divided by its
    /// first nonzero entry in column-major order, which becomes `1 = t^0`.
    pub fn projective_normal_form(&self) -> Matrix {
        match self.first_nonzero() {
            None => self.clone(),
            Some((r, c)) => {
                let inv = self.get(r, c).try_inv().expect("nonzero entry");
                self.scale(&inv)
            }
        }
    }

    /// `other = λ · self` for some nonzero scalar λ. Equivalent to equality of all
    /// cross-ratios `self_ij · other_kl = self_kl · other_ij`.
    pub fn projectively_equal(&self, other: &Matrix) -> bool {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return false;
        }
        let Some((r0, c0)) = self.first_nonzero() else {
            return other.is_zero();
        };
        let a0 = self.get(r0, c0);
        let b0 = other.get(r0, c0);
        if b0.is_zero() {
            return false;
        }
        self.data.iter().zip(&other.data).all(|(a, b)| {
            if a.is_zero() || b.is_zero() {
                return a.is_zero() && b.is_zero();
            }
            let lhs = a * b0;
            let rhs = b * a0;
            // the two sides may differ in the N^{-1/2} factor only when unequal
            lhs == rhs
        })
    }

    /// Row-major complex approximation.
    pub fn to_complex(&self) -> Vec<Vec<Complex64>> {
        (0..self.rows).map(|r| self.row(r).iter().map(CycloScalar::to_complex).collect()).collect()
    }
}

/// Sparse row, column index to nonzero entry.
pub type SparseRow = BTreeMap<usize, CycloScalar>;

/// Incrementally maintained reduced row echelon form of a row space.
///
/// Every stored row has a pivot entry equal to one, and no stored row has a
/// nonzero entry in another row's pivot column.
#[derive(Clone, Debug)]
pub struct RowSpace {
    n: u32,
    cols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl RowSpace {
    pub fn new(n: u32, cols: usize) -> Self {
        RowSpace { n, cols, rows: BTreeMap::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the stored pivots.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let hits: Vec<usize> = row.keys().copied().filter(|c| self.rows.contains_key(c)).collect();
        for p in hits {
            let Some(factor) = row.get(&p).cloned() else { continue };
            for (c, v) in &self.rows[&p] {
                let delta = &factor * v;
                let entry = row.entry(*c).or_insert_with(|| CycloScalar::zero(self.n));
                *entry = &*entry - &delta;
                if entry.is_zero() {
                    row.remove(c);
                }
            }
        }
        row
    }

    /// Add a row to the space; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        let Some((&pivot, lead)) = row.iter().next() else {
            return false;
        };
        let inv = lead.try_inv().expect("nonzero pivot");
        for v in row.values_mut() {
            *v = &*v * &inv;
        }
        for other in self.rows.values_mut() {
            if let Some(factor) = other.remove(&pivot) {
                for (c, v) in &row {
                    if *c == pivot {
                        continue;
                    }
                    let delta = &factor * v;
                    let entry = other.entry(*c).or_insert_with(|| CycloScalar::zero(self.n));
                    *entry = &*entry - &delta;
                    if entry.is_zero() {
                        other.remove(c);
                    }
                }
            }
        }
        self.rows.insert(pivot, row);
        true
    }

    pub fn pivot_cols(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn free_cols(&self) -> Vec<usize> {
        (0..self.cols).filter(|c| !self.rows.contains_key(c)).collect()
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseRow> {
        self.rows.get(&col)
    }
}
