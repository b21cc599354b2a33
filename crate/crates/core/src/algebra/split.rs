//! Detection of split presentations: a basis of orthogonal idempotents
//! `e_1, ..., e_r` with `e_i * A = R * e_i`.
//!
//! Over a field the idempotents are found by simultaneously splitting the
//! multiplication operators of the basis elements (eigen-idempotents via
//! Lagrange interpolation). Over `Z/n` the algebra is split modulo each
//! prime, the idempotents are lifted to prime powers, and the pieces are glued
//! back together with the Chinese remainder theorem.

use super::poly::split_roots;
use super::Algebra;
use crate::scalars::{factor_prime_powers, mod_inverse, vec, BaseRing, RowSolver, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPresentation {
    /// Primitive idempotents in ascending lexicographic order of coordinates.
    pub prims: Vec<Vec<Scalar>>,
}

impl SplitPresentation {
    pub fn len(&self) -> usize {
        self.prims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prims.is_empty()
    }

    /// Coordinates of `x` in the idempotent basis: `x = sum c_i e_i`.
    pub fn coefficients(&self, a: &Algebra, x: &[Scalar]) -> Vec<Scalar> {
        self.prims
            .iter()
            .map(|e| scalar_multiple(&a.mul(x, e), e).expect("split basis"))
            .collect()
    }
}

pub fn find_split_presentation(a: &Algebra) -> Option<SplitPresentation> {
    let mut prims = match a.base() {
        BaseRing::Rationals => split_over_field(a)?,
        BaseRing::Modular(_) if a.base().is_field() => split_over_field(a)?,
        BaseRing::Modular(n) => split_over_residues(a, *n)?,
    };
    prims.sort();
    let p = SplitPresentation { prims };
    is_split_basis(a, &p.prims).then_some(p)
}

fn is_split_basis(a: &Algebra, prims: &[Vec<Scalar>]) -> bool {
    let mut sum = a.zero();
    for (i, e) in prims.iter().enumerate() {
        if !a.is_idempotent(e) || vec::is_zero(e) {
            return false;
        }
        for f in &prims[i + 1..] {
            if !vec::is_zero(&a.mul(e, f)) {
                return false;
            }
        }
        for k in 0..a.rank() {
            if scalar_multiple(&a.mul(&a.basis_vector(k), e), e).is_none() {
                return false;
            }
        }
        // e generates a free rank-1 module: some coordinate is a unit
        if !e.iter().any(Scalar::is_unit) {
            return false;
        }
        sum = vec::add(&sum, e);
    }
    sum == a.unit()
}

/// `Some(c)` when `x = c * e`, where `e` has a unit coordinate.
fn scalar_multiple(x: &[Scalar], e: &[Scalar]) -> Option<Scalar> {
    let i = e.iter().position(Scalar::is_unit)?;
    let c = &x[i] * &e[i].inverse()?;
    (vec::scale(&c, e) == x).then_some(c)
}

fn split_over_field(a: &Algebra) -> Option<Vec<Vec<Scalar>>> {
    let mut idems = vec![a.unit().to_vec()];
    loop {
        let mut changed = false;
        let mut next = Vec::with_capacity(idems.len());
        for e in idems {
            let parts = split_one(a, &e)?;
            changed |= parts.len() > 1;
            next.extend(parts);
        }
        idems = next;
        if !changed {
            return Some(idems);
        }
    }
}

/// Splits `e` along the first basis element acting non-scalarly on `eA`.
fn split_one(a: &Algebra, e: &[Scalar]) -> Option<Vec<Vec<Scalar>>> {
    let ring = a.base();
    for k in 0..a.rank() {
        let x = a.mul(&a.basis_vector(k), e);
        // minimal polynomial of x inside eA (whose unit is e)
        let mut powers = vec![e.to_vec()];
        let coeffs = loop {
            let next = a.mul(&x, powers.last().expect("nonempty"));
            let solver = RowSolver::new(ring, &powers, a.rank());
            if let Some(c) = solver.express(&next) {
                break c;
            }
            powers.push(next);
        };
        if coeffs.len() == 1 {
            continue;
        }
        let mut poly: Vec<Scalar> = coeffs.iter().map(|c| -c).collect();
        poly.push(ring.one());
        let roots = split_roots(ring, &poly)?;
        let parts = roots
            .iter()
            .map(|lambda| {
                roots.iter().filter(|mu| *mu != lambda).fold(e.to_vec(), |acc, mu| {
                    let factor = vec::sub(&x, &vec::scale(mu, e));
                    let denom = (lambda - mu).inverse().expect("distinct roots");
                    vec::scale(&denom, &a.mul(&acc, &factor))
                })
            })
            .collect();
        return Some(parts);
    }
    Some(vec![e.to_vec()])
}

fn split_over_residues(a: &Algebra, n: u64) -> Option<Vec<Vec<Scalar>>> {
    let mut local: Vec<(u64, Vec<Vec<u64>>)> = Vec::new();
    for (p, e) in factor_prime_powers(n) {
        let q = p.pow(e);
        let fp = BaseRing::Modular(p);
        let reduce_p = |s: &Scalar| fp.from_i64((residue(s) % p) as i64);
        let ap = a.change_base(&fp, reduce_p);
        let mut prims = split_over_field(&ap)?;
        prims.sort();
        let zq = BaseRing::Modular(q);
        let aq = a.change_base(&zq, |s| zq.from_i64((residue(s) % q) as i64));
        let mut lifted = Vec::with_capacity(prims.len());
        for prim in prims {
            let mut x: Vec<Scalar> = prim.iter().map(|s| zq.from_i64(residue(s) as i64)).collect();
            // Hensel lifting of idempotents: x <- 3x^2 - 2x^3
            for _ in 0..=e {
                let x2 = aq.mul(&x, &x);
                let x3 = aq.mul(&x2, &x);
                x = vec::sub(&vec::scale(&zq.from_i64(3), &x2), &vec::scale(&zq.from_i64(2), &x3));
            }
            lifted.push(x.iter().map(residue).collect());
        }
        local.push((q, lifted));
    }
    let count = local[0].1.len();
    if local.iter().any(|(_, l)| l.len() != count) {
        return None;
    }
    let ring = BaseRing::Modular(n);
    let prims = (0..count)
        .map(|i| {
            (0..a.rank())
                .map(|k| {
                    let parts: Vec<(u64, u64)> = local.iter().map(|(q, l)| (l[i][k], *q)).collect();
                    ring.from_bigint(&crt(&parts, n).into())
                })
                .collect()
        })
        .collect();
    Some(prims)
}

fn residue(s: &Scalar) -> u64 {
    match s {
        Scalar::Residue { value, .. } => *value,
        Scalar::Rational(_) => unreachable!("residue ring expected"),
    }
}

fn crt(parts: &[(u64, u64)], n: u64) -> u64 {
    let mut x: u128 = 0;
    for (r, q) in parts {
        let m = n / q;
        let inv = mod_inverse(m % q, *q).expect("coprime moduli");
        let coeff = (m as u128 * inv as u128) % n as u128;
        x = (x + coeff * (*r as u128 % n as u128)) % n as u128;
    }
    x as u64
}
