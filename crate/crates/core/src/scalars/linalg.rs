//! Row modules over the base rings: echelon/Howell forms, solving, kernels,
//! intersections.
//!
//! Over `Z/n` the echelon routine produces the Howell form: pivots are
//! divisors of `n`, entries above a pivot `d` lie in `[0, d)`, and every
//! module element vanishing on the first `j` columns is a combination of the
//! rows whose pivot is at column `j` or later. That last property is what
//! makes greedy reduction a membership test.

use num_bigint::BigInt;

use super::{factor_prime_powers, BaseRing, Matrix, Scalar};
use crate::error::{Error, Result};

fn is_zero_row(r: &[Scalar]) -> bool {
    r.iter().all(Scalar::is_zero)
}

fn combine(a: &Scalar, x: &[Scalar], b: &Scalar, y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(p, q)| &(a * p) + &(b * q)).collect()
}

fn scale_row(a: &Scalar, x: &[Scalar]) -> Vec<Scalar> {
    x.iter().map(|p| a * p).collect()
}

fn sub_multiple(target: &mut [Scalar], q: &Scalar, row: &[Scalar]) {
    if q.is_zero() {
        return;
    }
    for (t, r) in target.iter_mut().zip(row) {
        if !r.is_zero() {
            *t = &*t - &(q * r);
        }
    }
}

/// Echelon (RREF or Howell) rows of the module generated by `rows`, each
/// paired with its pivot column. Zero rows are dropped.
fn echelon_with_pivots(ring: &BaseRing, rows: Vec<Vec<Scalar>>, ncols: usize) -> Vec<(usize, Vec<Scalar>)> {
    let mut pending: Vec<Vec<Scalar>> = rows.into_iter().filter(|r| !is_zero_row(r)).collect();
    let mut out: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for c in 0..ncols {
        if pending.is_empty() {
            break;
        }
        let (active, mut rest): (Vec<_>, Vec<_>) = pending.into_iter().partition(|r| !r[c].is_zero());
        let mut iter = active.into_iter();
        let Some(mut pivot) = iter.next() else {
            pending = rest;
            continue;
        };
        for r in iter {
            let (_, s, t, u, v) = ring.gcdex(&pivot[c], &r[c]);
            let other = combine(&u, &pivot, &v, &r);
            pivot = combine(&s, &pivot, &t, &r);
            if !is_zero_row(&other) {
                rest.push(other);
            }
        }
        let u = ring.unit_normalizer(&pivot[c]);
        pivot = scale_row(&u, &pivot);
        let ann = ring.annihilator(&pivot[c]);
        if !ann.is_zero() {
            let extra = scale_row(&ann, &pivot);
            if !is_zero_row(&extra) {
                rest.push(extra);
            }
        }
        out.push((c, pivot));
        pending = rest;
    }
    debug_assert!(pending.iter().all(|r| is_zero_row(r)));
    for i in 0..out.len() {
        let (c, d) = (out[i].0, out[i].1[out[i].0].clone());
        let (before, after) = out.split_at_mut(i);
        let row_i = &after[0].1;
        for (_, row_k) in before.iter_mut() {
            let q = ring.reduction_quotient(&row_k[c], &d);
            sub_multiple(row_k, &q, row_i);
        }
    }
    out
}

pub fn echelon_rows(ring: &BaseRing, rows: Vec<Vec<Scalar>>, ncols: usize) -> Vec<Vec<Scalar>> {
    echelon_with_pivots(ring, rows, ncols)
        .into_iter()
        .map(|(_, r)| r)
        .collect()
}

/// Canonical generating rows of the row module: reduced row echelon form over
/// fields, Howell form over `Z/n`. Zero rows are removed.
pub fn canonical_row_form(m: &Matrix) -> Matrix {
    let rows = echelon_rows(m.ring(), m.to_rows(), m.cols());
    Matrix::from_rows(m.ring(), rows, m.cols())
}

pub fn same_row_module(a: &Matrix, b: &Matrix) -> bool {
    a.cols() == b.cols() && canonical_row_form(a) == canonical_row_form(b)
}

/// Expresses vectors as combinations of a fixed list of generators.
#[derive(Clone, Debug)]
pub struct RowSolver {
    ring: BaseRing,
    width: usize,
    generators: usize,
    // echelon rows of [generators | identity] with pivot inside the first `width` columns
    reducers: Vec<(usize, Vec<Scalar>)>,
    relations: Vec<Vec<Scalar>>,
}

impl RowSolver {
    pub fn new(ring: &BaseRing, generators: &[Vec<Scalar>], width: usize) -> Self {
        let k = generators.len();
        let rows = generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                assert_eq!(g.len(), width, "generator width mismatch");
                let mut r = g.clone();
                r.extend((0..k).map(|j| if i == j { ring.one() } else { ring.zero() }));
                r
            })
            .collect();
        let mut reducers = Vec::new();
        let mut relations = Vec::new();
        for (c, r) in echelon_with_pivots(ring, rows, width + k) {
            if c < width {
                reducers.push((c, r));
            } else {
                relations.push(r[width..].to_vec());
            }
        }
        RowSolver {
            ring: ring.clone(),
            width,
            generators: k,
            reducers,
            relations,
        }
    }

    pub fn from_matrix_rows(m: &Matrix) -> Self {
        RowSolver::new(m.ring(), &m.to_rows(), m.cols())
    }

    /// Coefficients `y` with `sum y_i * generator_i = v`, if any exist.
    pub fn express(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.width, "vector width mismatch");
        let mut w: Vec<Scalar> = v.to_vec();
        w.extend((0..self.generators).map(|_| self.ring.zero()));
        for (c, row) in &self.reducers {
            if w[*c].is_zero() {
                continue;
            }
            let q = self.ring.exact_quotient(&w[*c], &row[*c])?;
            sub_multiple(&mut w, &q, row);
        }
        if !is_zero_row(&w[..self.width]) {
            return None;
        }
        Some(w[self.width..].iter().map(|x| -x).collect())
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.express(v).is_some()
    }

    /// Canonical generators of the relation module among the generators.
    pub fn relations(&self) -> Matrix {
        Matrix::from_rows(&self.ring, self.relations.clone(), self.generators)
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Option<Vec<Scalar>>,
    /// Rows generate the homogeneous solutions.
    pub kernel: Matrix,
}

/// Solves `A x = b`.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Solution> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has length {} but the matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let solver = RowSolver::new(a.ring(), &a.transpose().to_rows(), a.rows());
    Ok(Solution {
        particular: solver.express(b),
        kernel: solver.relations(),
    })
}

/// Rows generating `{x : A x = 0}`.
pub fn kernel(a: &Matrix) -> Matrix {
    RowSolver::new(a.ring(), &a.transpose().to_rows(), a.rows()).relations()
}

pub fn row_module_contains(m: &Matrix, v: &[Scalar]) -> bool {
    RowSolver::from_matrix_rows(m).contains(v)
}

/// Canonical generators of the intersection of two row modules.
pub fn intersect_modules(u: &Matrix, v: &Matrix) -> Result<Matrix> {
    if u.cols() != v.cols() {
        return Err(Error::Dimension(format!(
            "cannot intersect modules in ambient ranks {} and {}",
            u.cols(),
            v.cols()
        )));
    }
    if u.ring() != v.ring() {
        return Err(Error::RingMismatch(u.ring().to_string(), v.ring().to_string()));
    }
    let ring = u.ring();
    let c = u.cols();
    let mut rows = Vec::new();
    for r in u.to_rows() {
        let mut x = r.clone();
        x.extend(r);
        rows.push(x);
    }
    for r in v.to_rows() {
        let mut x = r;
        x.extend((0..c).map(|_| ring.zero()));
        rows.push(x);
    }
    let meet: Vec<Vec<Scalar>> = echelon_with_pivots(ring, rows, 2 * c)
        .into_iter()
        .filter(|(p, _)| *p >= c)
        .map(|(_, r)| r[c..].to_vec())
        .collect();
    Ok(canonical_row_form(&Matrix::from_rows(ring, meet, c)))
}

/// Idempotents of a finite base ring, ascending.
pub fn ring_idempotents(r: &BaseRing) -> Result<Vec<Scalar>> {
    let n = match r {
        BaseRing::Rationals => return Err(Error::InfiniteRing),
        BaseRing::Modular(n) => *n,
    };
    // one idempotent per subset of the prime-power factors (CRT)
    let factors: Vec<u64> = factor_prime_powers(n)
        .into_iter()
        .map(|(p, e)| p.pow(e))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << factors.len()) {
        let mut x = BigInt::from(0);
        let mut modulus = BigInt::from(1);
        for (i, q) in factors.iter().enumerate() {
            let target = BigInt::from(u64::from(mask >> i & 1 == 1));
            // solve x' = x (mod modulus), x' = target (mod q)
            let qb = BigInt::from(*q);
            let step = (&target - &x).modpow(&BigInt::from(1), &qb);
            let inv = super::mod_inverse(
                (&modulus % &qb).try_into().expect("fits"),
                *q,
            )
            .expect("coprime factors");
            let k = (step * BigInt::from(inv)) % &qb;
            x += &modulus * k;
            modulus *= qb;
        }
        out.push(r.from_bigint(&x));
    }
    out.sort();
    Ok(out)
}

/// A free basis of the row module, or an error when none is found among
/// the candidate generators.
pub fn free_basis(m: &Matrix) -> Result<Matrix> {
    let ring = m.ring();
    let canon = canonical_row_form(m);
    if ring.is_field() {
        return Ok(canon);
    }
    for candidates in [canon.to_rows(), m.to_rows()] {
        let mut rows: Vec<Vec<Scalar>> = candidates.into_iter().filter(|r| !is_zero_row(r)).collect();
        let mut i = rows.len();
        while i > 0 {
            i -= 1;
            let others: Vec<Vec<Scalar>> = rows
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, r)| r.clone())
                .collect();
            if RowSolver::new(ring, &others, m.cols()).contains(&rows[i]) {
                rows.remove(i);
            }
        }
        let solver = RowSolver::new(ring, &rows, m.cols());
        if solver.relations().rows() == 0 {
            return Ok(Matrix::from_rows(ring, rows, m.cols()));
        }
    }
    Err(Error::NotFree(format!(
        "row module over {ring} with canonical generators\n{canon}has no basis among its generators"
    )))
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if m.rows() != m.cols() {
        return None;
    }
    let n = m.rows();
    let ring = m.ring();
    let aug = m.hstack(&Matrix::identity(ring, n));
    let rows = echelon_with_pivots(ring, aug.to_rows(), 2 * n);
    if rows.len() < n || rows.iter().take(n).enumerate().any(|(i, (p, r))| *p != i || !r[i].is_one()) {
        return None;
    }
    let inv: Vec<Vec<Scalar>> = rows.iter().take(n).map(|(_, r)| r[n..].to_vec()).collect();
    Some(Matrix::from_rows(ring, inv, n))
}
