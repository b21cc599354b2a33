use std::fmt;
use std::ops::Mul;

use super::{BaseRing, Scalar};

/// Dense row-major matrix over a single base ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: BaseRing,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(ring: &BaseRing, rows: usize, cols: usize) -> Self {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &BaseRing, n: usize) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(ring: &BaseRing, rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r);
        }
        Matrix {
            ring: ring.clone(),
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_columns(ring: &BaseRing, columns: &[Vec<Scalar>], rows: usize) -> Self {
        let mut m = Matrix::zeros(ring, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64(ring: &BaseRing, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            ring,
            rows.iter()
                .map(|r| r.iter().map(|v| ring.from_i64(*v)).collect())
                .collect(),
            cols,
        )
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![self.ring.zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o = &*o + &(a * x);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a - b)
    }

    /// Entrywise map into another ring.
    pub fn try_map(&self, ring: &BaseRing, f: impl Fn(&Scalar) -> crate::Result<Scalar>) -> crate::Result<Matrix> {
        Ok(Matrix {
            ring: ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<crate::Result<_>>()?,
        })
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Kronecker product; index `(i*rb + k, j*cb + l)` holds `a_ij * b_kl`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (rb, cb) = (other.rows, other.cols);
        let mut m = Matrix::zeros(&self.ring, self.rows * rb, self.cols * cb);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rb {
                    for l in 0..cb {
                        m.set(i * rb + k, j * cb + l, a * other.get(k, l));
                    }
                }
            }
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row mismatch");
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(other.row(i));
                r
            })
            .collect();
        Matrix::from_rows(&self.ring, rows, self.cols + other.cols)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows(
            &self.ring,
            idx.iter().map(|&i| self.row(i).to_vec()).collect(),
            self.cols,
        )
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let rows = (0..self.rows)
            .map(|i| idx.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        Matrix::from_rows(&self.ring, rows, idx.len())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = Matrix::zeros(&self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
