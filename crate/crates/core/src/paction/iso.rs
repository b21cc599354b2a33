//! Deciding partial G-isomorphism between actions on split algebras.
//!
//! A unital algebra map between split algebras is determined by where it
//! sends primitive idempotents. A homomorphism satisfying the two
//! compatibility conditions is automatically an isomorphism, so only
//! bijections between the primitive idempotents need to be searched. The
//! search backtracks over target idempotents in order and tries source
//! idempotents in ascending order, so the first hit is the canonical witness.

use super::PartialAction;
use crate::algebra::{find_split_presentation, SplitPresentation};
use crate::error::{Error, Result};
use crate::scalars::{inverse, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    /// Matrix of `f: S -> S'` in the carriers' bases.
    Isomorphic(Matrix),
    NotIsomorphic,
    /// At least one carrier has no split presentation.
    Undecided(String),
}

impl IsoOutcome {
    pub fn witness(&self) -> Option<&Matrix> {
        match self {
            IsoOutcome::Isomorphic(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }
}

struct Tables {
    // coeffs[g][i]: coefficient of 1_g on prim i
    idem: Vec<Vec<Scalar>>,
    // act[g][i][i']: coefficient of M_g(p_i) on prim i'
    act: Vec<Vec<Vec<Scalar>>>,
}

fn tables(a: &PartialAction, split: &SplitPresentation) -> Tables {
    let s = a.carrier();
    let idem = a.group().elements().map(|g| split.coefficients(s, a.idem(g))).collect();
    let act = a
        .group()
        .elements()
        .map(|g| split.prims.iter().map(|p| split.coefficients(s, &a.act(g, p))).collect())
        .collect();
    Tables { idem, act }
}

pub fn iso_check(a: &PartialAction, b: &PartialAction) -> Result<IsoOutcome> {
    if a.group().table() != b.group().table() {
        return Err(Error::GroupMismatch(format!(
            "groups of orders {} and {} differ",
            a.group().order(),
            b.group().order()
        )));
    }
    if a.carrier().base() != b.carrier().base() {
        return Err(Error::RingMismatch(a.carrier().base().to_string(), b.carrier().base().to_string()));
    }
    if a.carrier().rank() != b.carrier().rank() {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    let Some(sa) = find_split_presentation(a.carrier()) else {
        return Ok(IsoOutcome::Undecided("the first carrier has no split presentation".into()));
    };
    let Some(sb) = find_split_presentation(b.carrier()) else {
        return Ok(IsoOutcome::Undecided("the second carrier has no split presentation".into()));
    };
    let (ta, tb) = (tables(a, &sa), tables(b, &sb));
    let r = sa.len();
    let group = a.group();
    let mut sigma: Vec<usize> = Vec::with_capacity(r);
    let mut used = vec![false; r];

    // condition (i) at target prim j, and (ii) on every assigned pair
    let consistent = |sigma: &[usize], j: usize| -> bool {
        let i = sigma[j];
        for g in group.elements() {
            let c = &ta.idem[g][i];
            if &(c * &tb.idem[g][j]) != c {
                return false;
            }
            let cg_inv = &ta.idem[group.inv(g)][i];
            for (j2, &i2) in sigma.iter().enumerate() {
                if ta.act[g][i][i2] != cg_inv * &tb.act[g][j][j2] {
                    return false;
                }
                let ci2 = &ta.idem[group.inv(g)][i2];
                if ta.act[g][i2][i] != ci2 * &tb.act[g][j2][j] {
                    return false;
                }
            }
        }
        true
    };

    fn search(
        r: usize,
        sigma: &mut Vec<usize>,
        used: &mut [bool],
        ok: &dyn Fn(&[usize], usize) -> bool,
        done: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let j = sigma.len();
        if j == r {
            return done(sigma);
        }
        for i in 0..r {
            if used[i] {
                continue;
            }
            sigma.push(i);
            if ok(sigma, j) {
                used[i] = true;
                if search(r, sigma, used, ok, done) {
                    return true;
                }
                used[i] = false;
            }
            sigma.pop();
        }
        false
    }

    let base = a.carrier().base().clone();
    let mut found = None;
    let mut finish = |sigma: &[usize]| -> bool {
        let p_cols: Vec<Vec<Scalar>> = sigma.iter().map(|&i| sa.prims[i].clone()).collect();
        let p = Matrix::from_columns(&base, &p_cols, r);
        let q = Matrix::from_columns(&base, &sb.prims, r);
        let Some(p_inv) = inverse(&p) else { return false };
        let f = &q * &p_inv;
        if check_morphism(a, b, &f) {
            found = Some(f);
            true
        } else {
            false
        }
    };
    search(r, &mut sigma, &mut used, &consistent, &mut finish);
    Ok(match found {
        Some(f) => IsoOutcome::Isomorphic(f),
        None => IsoOutcome::NotIsomorphic,
    })
}

/// Re-verifies a witness: a unital, multiplicative, invertible map with
/// `f(S_g) in S'_g` and `f(alpha_g(x)) = alpha'_g(f(x))` on `S_{g^-1}`.
pub fn check_morphism(a: &PartialAction, b: &PartialAction, f: &Matrix) -> bool {
    let (s, t) = (a.carrier(), b.carrier());
    if f.rows() != t.rank() || f.cols() != s.rank() {
        return false;
    }
    if f.apply(s.unit()) != t.unit() || s.multiplicative_failure(t, f).is_some() || inverse(f).is_none() {
        return false;
    }
    let g = a.group();
    g.elements().all(|x| {
        let fe = f.apply(a.idem(x));
        if t.mul(&fe, b.idem(x)) != fe {
            return false;
        }
        let dom = s.mult_matrix(a.idem(g.inv(x)));
        let lhs = f * a.map(x);
        let rhs = &(b.map(x) * f) * &dom;
        lhs == rhs
    })
}
