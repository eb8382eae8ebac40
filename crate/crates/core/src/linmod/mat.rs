use std::fmt;

use crate::error::{Error, Result};
use crate::linmod::field::PrimeField;

/// Dense row-major matrix over `F_p`, entries stored as least nonnegative residues.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p();
        }
        m
    }

    /// Builds a matrix from signed row-major entries, reducing each modulo `p`.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Usage(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let data = entries.iter().map(|&x| field.reduce(x)).collect();
        Ok(Self { field, rows, cols, data })
    }

    pub fn from_rows(field: PrimeField, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend_from_slice(r);
        }
        Self::from_vec(field, rows.len(), cols, &entries).expect("shape checked")
    }

    pub fn column_vector(field: PrimeField, entries: &[i64]) -> Self {
        Self::from_vec(field, entries.len(), 1, entries).expect("shape checked")
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows, 1);
        for r in 0..self.rows {
            out.data[r] = self.get(r, c);
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.field, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(self.row(r));
        }
        out
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_range(&self, start: usize, end: usize) -> Mat {
        let idx: Vec<usize> = (start..end).collect();
        self.select_rows(&idx)
    }

    pub fn column_range(&self, start: usize, end: usize) -> Mat {
        let idx: Vec<usize> = (start..end).collect();
        self.select_columns(&idx)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.field, self.rows)
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product {:?} * {:?}", self.shape(), rhs.shape());
        let p = self.field.p() as u64;
        let mut out = Mat::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let brow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = ((*o as u64 + a * b as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sum");
        let f = self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in difference");
        let f = self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat {
        self.scale(self.field.p() - 1)
    }

    pub fn scale(&self, s: u32) -> Mat {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    /// `self += s * rhs`
    pub fn add_scaled_assign(&mut self, rhs: &Mat, s: u32) {
        assert_eq!(self.shape(), rhs.shape());
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&rhs.data) {
            *a = f.add(*a, f.mul(b, s));
        }
    }

    pub fn pow(&self, mut e: u32) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut acc = Mat::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn hstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let cols = self.cols + rhs.cols;
        let mut out = Mat::zeros(self.field, self.rows, cols);
        for r in 0..self.rows {
            out.data[r * cols..r * cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * cols + self.cols..(r + 1) * cols].copy_from_slice(rhs.row(r));
        }
        out
    }

    pub fn vstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Mat { field: self.field, rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    pub fn block_diag(&self, rhs: &Mat) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, rhs);
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Mat) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c);
            }
        }
    }

    /// Reduces `self` to reduced row-echelon form in place, applying the same
    /// row operations to `aug`. Pivots are taken in ascending column order.
    fn reduce_with(&mut self, mut aug: Option<&mut Mat>) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.swap_rows(pr, row);
            if let Some(a) = aug.as_deref_mut() {
                a.swap_rows(pr, row);
            }
            let inv = f.inv(self.get(row, col));
            self.scale_row(row, inv);
            if let Some(a) = aug.as_deref_mut() {
                a.scale_row(row, inv);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor != 0 {
                    let s = f.neg(factor);
                    self.axpy_row(r, row, s);
                    if let Some(a) = aug.as_deref_mut() {
                        a.axpy_row(r, row, s);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: u32) {
        let f = self.field;
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = f.mul(*x, s);
        }
    }

    /// row[dst] += s * row[src]
    fn axpy_row(&mut self, dst: usize, src: usize, s: u32) {
        let f = self.field;
        for c in 0..self.cols {
            let v = self.data[src * self.cols + c];
            if v != 0 {
                let d = &mut self.data[dst * self.cols + c];
                *d = f.add(*d, f.mul(v, s));
            }
        }
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.reduce_with(None);
        (m, piv)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null-space basis as the columns of an `cols x nullity` matrix. One basis
    /// vector per free column, in ascending order.
    pub fn kernel_matrix(&self) -> Mat {
        let (r, piv) = self.rref();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut k = Mat::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (i, &pc) in piv.iter().enumerate() {
                k.set(pc, j, f.neg(r.get(i, fc)));
            }
        }
        k
    }

    pub fn kernel_basis(&self) -> Vec<Mat> {
        let k = self.kernel_matrix();
        (0..k.cols()).map(|j| k.column(j)).collect()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Rows `y` with `y * self = 0`, stacked as a `nullity x rows` matrix.
    pub fn left_kernel_matrix(&self) -> Mat {
        self.transpose().kernel_matrix().transpose()
    }

    /// Solves `self * x = b` for a block right-hand side, returning the
    /// solution with every free variable set to zero.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let mut a = self.clone();
        let mut rhs = b.clone();
        let piv = a.reduce_with(Some(&mut rhs));
        for r in piv.len()..self.rows {
            if rhs.row(r).iter().any(|&x| x != 0) {
                return None;
            }
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (i, &c) in piv.iter().enumerate() {
            for j in 0..b.cols {
                x.set(c, j, rhs.get(i, j));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let mut a = self.clone();
        let mut inv = Mat::identity(self.field, self.rows);
        let piv = a.reduce_with(Some(&mut inv));
        (piv.len() == self.rows).then_some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Original columns at the pivot positions: a basis of the column space.
    pub fn column_space(&self) -> Mat {
        let (_, piv) = self.rref();
        self.select_columns(&piv)
    }
}

/// Solves `a * x = b` for a single column `b`.
pub fn linear_solve(a: &Mat, b: &Mat) -> Result<Option<Mat>> {
    if a.rows() != b.rows() || b.cols() != 1 {
        return Err(Error::Usage(format!(
            "linear_solve: matrix is {}x{}, right-hand side is {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if a.field() != b.field() {
        return Err(Error::Usage("linear_solve: mixed fields".into()));
    }
    Ok(a.solve(b))
}
