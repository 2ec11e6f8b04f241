use std::fmt;

use super::scalar::{Prime, Scalar};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense row-major matrix over GF(p). Vectors are rows; `x·M` is the action.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row-echelon form of a matrix with its zero rows dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        Mat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p.get();
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows(p: Prime, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: row.len() });
            }
            data.extend(row.iter().map(|&v| p.reduce(v)));
        }
        Ok(Mat { p, rows: rows.len(), cols, data })
    }

    /// Builds a matrix from rows whose entries are already residues in `[0, p)`.
    pub fn from_residue_rows<I>(p: Prime, cols: usize, rows: I) -> Self
    where
        I: IntoIterator,
        I::Item: AsRef<[u32]>,
    {
        let mut data = Vec::new();
        let mut n = 0;
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "row length must equal column count");
            data.extend_from_slice(row);
            n += 1;
        }
        Mat { p, rows: n, cols, data }
    }

    pub fn from_scalars(rows: usize, cols: usize, entries: &[Scalar]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: entries.len() });
        }
        let p = match entries.first() {
            Some(s) => s.modulus(),
            None => return Err(Error::InvalidInput("empty matrix has no modulus".into())),
        };
        let mut data = Vec::with_capacity(entries.len());
        for s in entries {
            if s.modulus() != p {
                return Err(Error::ModulusMismatch(p.get(), s.modulus().get()));
            }
            data.push(s.value());
        }
        Ok(Mat { p, rows, cols, data })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(v < self.p.get());
        self.data[i * self.cols + j] = v;
    }

    pub fn scalar(&self, i: usize, j: usize) -> Scalar {
        Scalar::new(self.get(i, j) as i64, self.p)
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    fn check_prime(&self, other: &Mat) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p.get(), other.p.get()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.check_prime(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let p = self.p;
        let mut out = Mat::zeros(p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        let q = p.get() as u64;
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(other.row(k)) {
                    *slot = (*slot + a * b as u64) % q;
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = v as u32;
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.rows, "vector length must equal row count");
        let q = self.p.get() as u64;
        let mut acc = vec![0u64; self.cols];
        for (k, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (slot, &b) in acc.iter_mut().zip(self.row(k)) {
                *slot = (*slot + a as u64 * b as u64) % q;
            }
        }
        acc.into_iter().map(|v| v as u32).collect()
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |p, a, b| p.add(a, b))
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |p, a, b| p.sub(a, b))
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(Prime, u32, u32) -> u32) -> Result<Mat> {
        self.check_prime(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(self.p, a, b)).collect();
        Ok(Mat { p: self.p, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: u32) -> Mat {
        let data = self.data.iter().map(|&a| self.p.mul(a, c)).collect();
        Mat { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, mut exp: u64) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let mut acc = Mat::identity(self.p, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        self.check_prime(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.cols });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat { p: self.p, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        self.check_prime(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: other.rows });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Mat { p: self.p, rows: self.rows, cols, data })
    }

    pub fn rref(&self) -> Rref {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(found) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if found != r {
                for j in 0..m.cols {
                    m.data.swap(found * m.cols + j, r * m.cols + j);
                }
            }
            let inv = p.inv(m.get(r, c)).expect("pivot is nonzero");
            for v in m.row_mut(r) {
                *v = p.mul(*v, inv);
            }
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for (v, &pr) in m.row_mut(i).iter_mut().zip(&pivot_row) {
                    *v = p.sub(*v, p.mul(f, pr));
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// `{x : x·M = 0}` as a canonical subspace of GF(p)^rows.
    pub fn kernel(&self) -> Subspace {
        let a = self.transpose();
        let Rref { matrix, pivots, .. } = a.rref();
        let n = self.rows;
        let p = self.p;
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; n];
            v[free] = 1;
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = p.neg(matrix.get(k, free));
            }
            basis.push(v);
        }
        Subspace::from_rows(p, n, basis)
    }

    /// Some `x` with `x·M = b`, if one exists.
    pub fn solve_left(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.cols, "right-hand side length must equal column count");
        let mut aug = Mat::zeros(self.p, self.cols, self.rows + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(j, i, self.get(i, j));
            }
        }
        for (j, &v) in b.iter().enumerate() {
            aug.set(j, self.rows, v);
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.rows) {
            return None;
        }
        let mut x = vec![0u32; self.rows];
        for (k, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(k, self.rows);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(self.p, n)).ok()?;
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, matrix.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat(mod {}) [", self.p)?;
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{row:?}")?;
        }
        write!(f, "]")
    }
}
