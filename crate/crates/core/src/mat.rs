//! Dense matrices over F_p with row reduction, solving and nullspaces.
//!
//! Everything downstream (equivariant structure maps, hom solvers, idempotent
//! splitting) runs through this module. Empty matrices (0×n, n×0) are legal:
//! they appear whenever a simple has multiplicity zero.

use crate::error::{Error, Result};
use crate::fp::Fp;
use crate::rng::Rng;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    fp: Fp,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(fp: Fp, rows: usize, cols: usize) -> Self {
        Matrix {
            fp,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(fp: Fp, n: usize) -> Self {
        let mut m = Matrix::zero(fp, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn scalar(fp: Fp, n: usize, c: u64) -> Self {
        let mut m = Matrix::zero(fp, n, n);
        let c = fp.reduce(c);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_rows(fp: Fp, rows: &[Vec<u64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zero(fp, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, fp.reduce(x));
            }
        }
        m
    }

    pub fn random(fp: Fp, rows: usize, cols: usize, rng: &mut Rng) -> Self {
        let mut m = Matrix::zero(fp, rows, cols);
        for e in m.entries.iter_mut() {
            *e = fp.reduce(rng.next_u64());
        }
        m
    }

    #[inline]
    pub fn fp(&self) -> Fp {
        self.fp
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u64 {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c] = v % self.fp.p();
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self.at(r, c) == u64::from(r == c)))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, &b) in m.entries.iter_mut().zip(&other.entries) {
            *a = self.fp.add(*a, b);
        }
        m
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, &b) in m.entries.iter_mut().zip(&other.entries) {
            *a = self.fp.sub(*a, b);
        }
        m
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let c = self.fp.reduce(c);
        let mut m = self.clone();
        for a in m.entries.iter_mut() {
            *a = self.fp.mul(*a, c);
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let fp = self.fp;
        let p = fp.p();
        let mut out = Matrix::zero(fp, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.entries[idx] = (out.entries[idx] + a * other.at(k, j)) % p;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.fp, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c));
            }
        }
        out
    }

    /// Kronecker product with row-major flattening:
    /// entry ((u·r2+v),(w·c2+z)) = self(u,w)·other(v,z).
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.fp, self.rows * other.rows, self.cols * other.cols);
        for u in 0..self.rows {
            for w in 0..self.cols {
                let a = self.at(u, w);
                if a == 0 {
                    continue;
                }
                for v in 0..other.rows {
                    for z in 0..other.cols {
                        out.set(
                            u * other.rows + v,
                            w * other.cols + z,
                            self.fp.mul(a, other.at(v, z)),
                        );
                    }
                }
            }
        }
        out
    }

    /// Copy `src` into `self` with its top-left corner at (r0, c0).
    pub fn paste(&mut self, r0: usize, c0: usize, src: &Matrix) {
        assert!(r0 + src.rows <= self.rows && c0 + src.cols <= self.cols);
        for r in 0..src.rows {
            for c in 0..src.cols {
                self.set(r0 + r, c0 + c, src.at(r, c));
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut out = Matrix::zero(self.fp, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.at(r0 + r, c0 + c));
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zero(self.fp, self.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(0, self.cols, other);
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let fp = self.fp;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.at(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    let tmp = self.at(row, c);
                    let v = self.at(pr, c);
                    self.set(row, c, v);
                    self.set(pr, c, tmp);
                }
            }
            let inv = fp.inv(self.at(row, col)).expect("pivot nonzero");
            for c in col..self.cols {
                let v = fp.mul(self.at(row, c), inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.at(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let v = fp.sub(self.at(r, c), fp.mul(factor, self.at(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Inverse if the matrix is square and nonsingular, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(self.fp, n));
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(aug.submatrix(0, n, n, n))
    }

    /// Basis of the right nullspace {x : self·x = 0}, one column vector per
    /// basis element, in the canonical free-variable order of the RREF.
    pub fn nullspace(&self) -> Vec<Matrix> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = Matrix::zero(self.fp, self.cols, 1);
            v.set(free, 0, 1);
            for (prow, &pcol) in pivots.iter().enumerate() {
                v.set(pcol, 0, self.fp.neg(m.at(prow, free)));
            }
            basis.push(v);
        }
        basis
    }

    /// Flatten row-major into a 1×(rows·cols) row vector.
    pub fn flatten_row(&self) -> Vec<u64> {
        self.entries.clone()
    }
}

/// Outcome of solving A·x = b.
#[derive(Clone, Debug)]
pub enum Solve {
    Inconsistent,
    Solution {
        /// One particular solution per column of b.
        particular: Matrix,
        /// Basis of the nullspace of A (column vectors).
        nullspace: Vec<Matrix>,
    },
}

/// Exact solution set of A·x = b over F_p.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Solve> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "solve: A has {} rows, b has {}",
            a.rows(),
            b.rows()
        )));
    }
    let fp = a.fp();
    let mut aug = a.hstack(b);
    let pivots = aug.rref();
    if pivots.iter().any(|&c| c >= a.cols()) {
        return Ok(Solve::Inconsistent);
    }
    let mut particular = Matrix::zero(fp, a.cols(), b.cols());
    for (prow, &pcol) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            particular.set(pcol, j, aug.at(prow, a.cols() + j));
        }
    }
    Ok(Solve::Solution {
        particular,
        nullspace: a.nullspace(),
    })
}
