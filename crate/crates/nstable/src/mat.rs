//! Dense exact linear algebra over a prime field.
//!
//! Matrices are stored row-major.  Pivoting is deterministic (first nonzero
//! entry), so every result is bit-reproducible across runs and platforms.
//!
//! Column-space operations (`kernel_basis`, `image_basis`, `solve`) treat a
//! matrix as a map on column vectors; the `row_*` variants are the transposed
//! counterparts used by the module layer, which works with row vectors.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldSpec;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over F_{} [", self.rows, self.cols, self.field.p())?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.entries[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: FieldSpec, data: &[Vec<u64>]) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows * cols);
        for r in data {
            if r.len() != cols {
                return Err(Error::Shape("ragged rows".into()));
            }
            for &x in r {
                entries.push(field.reduce(x));
            }
        }
        Ok(Mat { field, rows, cols, entries })
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u64,
    ) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = self.field.reduce(v);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.at(i, j) == u64::from(i == j)))
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.at(j, i))
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add: shape mismatch");
        let mut out = self.clone();
        for (a, &b) in out.entries.iter_mut().zip(&other.entries) {
            *a = self.field.add(*a, b);
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub: shape mismatch");
        let mut out = self.clone();
        for (a, &b) in out.entries.iter_mut().zip(&other.entries) {
            *a = self.field.sub(*a, b);
        }
        out
    }

    pub fn neg(&self) -> Mat {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = self.field.neg(*a);
        }
        out
    }

    pub fn scale(&self, c: u64) -> Mat {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = self.field.mul(*a, c);
        }
        out
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "mul: inner dimension mismatch");
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.at(i, j), f.mul(a, other.at(k, j)));
                    out.entries[i * other.cols + j] = v;
                }
            }
        }
        out
    }

    /// Matrix power (square matrices).
    pub fn pow(&self, mut e: usize) -> Mat {
        assert_eq!(self.rows, self.cols, "pow: non-square");
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

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack: row mismatch");
        Mat::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j)
            } else {
                other.at(i, j - self.cols)
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack: col mismatch");
        Mat::from_fn(self.field, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j)
            } else {
                other.at(i - self.rows, j)
            }
        })
    }

    pub fn block_diag(field: FieldSpec, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.at(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        Mat::from_fn(self.field, r1 - r0, c1 - c0, |i, j| self.at(r0 + i, c0 + j))
    }

    /// Reduced row echelon form with the list of pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // first nonzero entry in column c at or below row r
            let Some(pr) = (r..m.rows).find(|&i| m.at(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let (a, b) = (m.at(r, j), m.at(pr, j));
                    m.entries[r * m.cols + j] = b;
                    m.entries[pr * m.cols + j] = a;
                }
            }
            let inv = f.inv(m.at(r, c));
            for j in 0..m.cols {
                let v = f.mul(m.at(r, j), inv);
                m.entries[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i != r && m.at(i, c) != 0 {
                    let factor = m.at(i, c);
                    for j in 0..m.cols {
                        let v = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
                        m.entries[i * m.cols + j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{x : self * x = 0}`, as matrix columns.
    pub fn kernel_basis(&self) -> Mat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(self.field, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (pi, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, self.field.neg(r.at(pi, fc)));
            }
        }
        out
    }

    /// Basis of the column space, as matrix columns (pivot columns of `self`).
    pub fn image_basis(&self) -> Mat {
        let (_, pivots) = self.rref();
        Mat::from_fn(self.field, self.rows, pivots.len(), |i, j| self.at(i, pivots[j]))
    }

    /// A particular solution `x` of `self * x = b` (columnwise), if consistent.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        // any pivot in the b-block means inconsistency
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (pi, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.at(pi, self.cols + j));
            }
        }
        Some(x)
    }

    /// Inverse of a square invertible matrix; `None` when non-square or singular.
    pub fn invert(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let aug = self.hstack(&Mat::identity(self.field, self.rows));
        let (r, pivots) = aug.rref();
        if pivots.len() != self.rows || pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        Some(r.submatrix(0, self.rows, self.cols, 2 * self.cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Column-space quotient.  `ambient` and `sub` hold basis vectors of
    /// nested spans as columns.  Returns `(section, proj)` where the columns
    /// of `section` extend `sub` to a basis of `span(ambient)` and `proj`
    /// maps any vector of `span(ambient)` to its quotient coordinates:
    /// `proj * sub = 0` and `proj * section = identity`.
    pub fn quotient(ambient: &Mat, sub: &Mat) -> Result<(Mat, Mat)> {
        assert_eq!(ambient.rows, sub.rows, "quotient: ambient/sub row mismatch");
        let f = ambient.field;
        let n = ambient.rows;
        if ambient.solve(sub).is_none() {
            return Err(Error::Precondition("sub basis not contained in ambient span".into()));
        }
        // pivots of [sub | ambient]: the ambient pivots past the sub block
        // pick out a complement of span(sub) inside span(ambient)
        let (_, pivots) = sub.hstack(ambient).rref();
        let sub_rank = pivots.iter().filter(|&&c| c < sub.cols).count();
        let section_cols: Vec<usize> =
            pivots.iter().filter(|&&c| c >= sub.cols).map(|&c| c - sub.cols).collect();
        let section = Mat::from_fn(f, n, section_cols.len(), |i, j| ambient.at(i, section_cols[j]));
        // complete [sub-basis | section | filler] to a basis of F^n, invert,
        // and read off the section coordinates
        let sub_basis = sub.image_basis();
        let mut full = sub_basis.hstack(&section);
        let mut extra = Vec::new();
        for e in 0..n {
            if full.cols == n {
                break;
            }
            let mut cand = Mat::zeros(f, n, 1);
            cand.set(e, 0, 1);
            let test = full.hstack(&cand);
            if test.rank() > full.rank() {
                extra.push(e);
                full = test;
            }
        }
        let inv = full
            .invert()
            .ok_or_else(|| Error::Solve("quotient: could not complete basis".into()))?;
        let proj = inv.submatrix(sub_rank, sub_rank + section.cols, 0, n);
        Ok((section, proj))
    }

    // ---- row-space variants (the module layer works with row vectors) ----

    /// Rows spanning `{x : x * self = 0}`.
    pub fn row_kernel_basis(&self) -> Mat {
        self.transpose().kernel_basis().transpose()
    }

    /// Independent rows spanning the row space.
    pub fn row_basis(&self) -> Mat {
        self.transpose().image_basis().transpose()
    }

    /// A particular solution `x` of `x * a = b` (rowwise), if consistent.
    pub fn solve_left(a: &Mat, b: &Mat) -> Option<Mat> {
        a.transpose().solve(&b.transpose()).map(|x| x.transpose())
    }

    /// Row-space quotient; see [`Mat::quotient`].  Returns `(section, proj)`
    /// with `sub * proj = 0`, `section * proj = identity`, rows as vectors.
    pub fn row_quotient(ambient: &Mat, sub: &Mat) -> Result<(Mat, Mat)> {
        let (s, p) = Mat::quotient(&ambient.transpose(), &sub.transpose())?;
        Ok((s.transpose(), p.transpose()))
    }
}
