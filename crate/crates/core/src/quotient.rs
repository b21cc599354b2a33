//! The induced partial action of `G/H` on `S^{alpha_H}` for a normal
//! subgroup `H = {h_1 = 1, ..., h_m}`.
//!
//! [`quotient_action`] evaluates the closed forms
//!
//! ```text
//! 1~_{gH}     = 1_g + sum_{i>=2} prod_{j=2..i} (1_S - 1_{g h_{j-1}}) 1_{g h_i}
//! alpha_{gH}(x) = alpha_g(x 1_{g^-1}) + sum_{i>=2} prod_{j<i} (1_S - 1_{g h_j}) alpha_{g h_i}(x 1_{(g h_i)^-1})
//! ```
//!
//! directly in `S`. [`quotient_via_globalization`] instead goes through the
//! globalization: `1~_{gH} = e_H beta_g(e_H) 1_S` and
//! `alpha_{gH} = m_{1_S} o beta_g o psi_H`. The two must agree exactly.

use crate::algebra::Subalgebra;
use crate::envelope::{certify_globalization, fixed_ring, globalize, psi_matrix, subgroup_idempotents, Certificate};
use crate::error::{Error, Result};
use crate::groups::{quotient, quotient_with_transversal, QuotientData, Subgroup};
use crate::paction::{GaloisCoordinates, PartialAction};
use crate::scalars::{same_row_module, vec, Matrix, RowSolver, Scalar};

#[derive(Clone, Debug)]
pub struct QuotientAction {
    pub subgroup: Subgroup,
    pub cosets: QuotientData,
    /// `S^{alpha_H}` inside `S`; the carrier of `result`.
    pub fixed: Subalgebra,
    /// `1~_{gH}` per coset, in the coordinates of `S`.
    pub tilde: Vec<Vec<Scalar>>,
    pub result: PartialAction,
    pub certificate: Certificate,
}

/// `1~_{gH}` in the coordinates of `S`.
pub fn quotient_idempotent(alpha: &PartialAction, h: &Subgroup, g: usize) -> Vec<Scalar> {
    let s = alpha.carrier();
    let group = alpha.group();
    let members = h.members();
    let mut out = alpha.idem(group.mul(g, members[0])).to_vec();
    let mut prefix = s.unit().to_vec();
    for i in 1..members.len() {
        prefix = s.mul(&prefix, &s.complement(alpha.idem(group.mul(g, members[i - 1]))));
        out = vec::add(&out, &s.mul(&prefix, alpha.idem(group.mul(g, members[i]))));
    }
    out
}

/// `alpha_{gH}(x)` by the closed form, for `x` in the domain `D~_{g^-1 H}`.
pub fn quotient_map_value(alpha: &PartialAction, h: &Subgroup, g: usize, x: &[Scalar]) -> Vec<Scalar> {
    let s = alpha.carrier();
    let group = alpha.group();
    let mut out = s.zero();
    let mut prefix = s.unit().to_vec();
    for &m in h.members() {
        let gh = group.mul(g, m);
        out = vec::add(&out, &s.mul(&prefix, &alpha.act(gh, x)));
        prefix = s.mul(&prefix, &s.complement(alpha.idem(gh)));
    }
    out
}

fn cosets_for(alpha: &PartialAction, h: &Subgroup, reps: Option<&[usize]>) -> Result<QuotientData> {
    match reps {
        Some(r) => quotient_with_transversal(alpha.group(), h, r),
        None => quotient(alpha.group(), h),
    }
}

fn coordinates(s: &crate::algebra::Algebra, solver: &RowSolver, x: &[Scalar], what: &str) -> Result<Vec<Scalar>> {
    solver
        .express(x)
        .ok_or_else(|| Error::Internal(format!("{what} {} lies outside S^alpha_H", s.format_element(x))))
}

/// Assembles the quotient from per-coset idempotents and map values (both in
/// `S` coordinates) and certifies it.
fn assemble(
    alpha: &PartialAction,
    h: &Subgroup,
    cosets: QuotientData,
    fixed: Subalgebra,
    tilde: Vec<Vec<Scalar>>,
    value: impl Fn(usize, &[Scalar]) -> Result<Vec<Scalar>>,
    mut certificate: Certificate,
) -> Result<QuotientAction> {
    let s = alpha.carrier();
    let group = alpha.group();
    let solver = fixed.solver();
    let k = fixed.rank();
    let base = s.base();
    let mut idems = Vec::with_capacity(tilde.len());
    for t in &tilde {
        idems.push(coordinates(s, &solver, t, "idempotent")?);
    }
    let mut maps = Vec::with_capacity(tilde.len());
    for &g in &cosets.transversal {
        let back = cosets.coset_of[group.inv(g)];
        let mut cols = Vec::with_capacity(k);
        for j in 0..k {
            let x = s.mul(&fixed.inclusion.column(j), &tilde[back]);
            cols.push(coordinates(s, &solver, &value(g, &x)?, "image")?);
        }
        maps.push(Matrix::from_columns(base, &cols, k));
    }
    let result = PartialAction::new(cosets.quotient.clone(), fixed.algebra.clone(), idems, maps)?;
    let report = result.verify();
    certificate.record(
        "quotient satisfies the axioms",
        report.summary(),
    );
    let top = result.invariants()?;
    let pushed = (&fixed.inclusion * &top.inclusion).transpose();
    let whole = alpha.invariants()?.inclusion.transpose();
    certificate.record(
        "invariants of the quotient equal S^alpha",
        (!same_row_module(&pushed, &whole)).then(|| "modules differ".into()),
    );
    let certificate = certificate.into_result("quotient action")?;
    Ok(QuotientAction {
        subgroup: h.clone(),
        cosets,
        fixed,
        tilde,
        result,
        certificate,
    })
}

pub fn quotient_action(alpha: &PartialAction, h: &Subgroup) -> Result<QuotientAction> {
    quotient_action_with(alpha, h, None)
}

/// [`quotient_action`] with chosen coset representatives (identity first).
pub fn quotient_action_with(alpha: &PartialAction, h: &Subgroup, reps: Option<&[usize]>) -> Result<QuotientAction> {
    let cosets = cosets_for(alpha, h, reps)?;
    let s = alpha.carrier();
    let group = alpha.group();
    let fixed = alpha.restrict(h)?.invariants()?;
    let mut cert = Certificate::default();

    // representative independence of both closed forms
    let mut fail = None;
    'reps: for (c, &g) in cosets.transversal.iter().enumerate() {
        let reference = quotient_idempotent(alpha, h, g);
        let back = quotient_idempotent(alpha, h, group.inv(g));
        for x in group.elements().filter(|&x| cosets.coset_of[x] == c && x != g) {
            if quotient_idempotent(alpha, h, x) != reference {
                fail = Some(format!("1~ differs for {} and {}", group.label(g), group.label(x)));
                break 'reps;
            }
            for j in 0..fixed.rank() {
                let y = s.mul(&fixed.inclusion.column(j), &back);
                if quotient_map_value(alpha, h, x, &y) != quotient_map_value(alpha, h, g, &y) {
                    fail = Some(format!("alpha_gH differs for {} and {}", group.label(g), group.label(x)));
                    break 'reps;
                }
            }
        }
    }
    cert.record("closed forms depend only on the coset", fail);

    let tilde = cosets.transversal.iter().map(|&g| quotient_idempotent(alpha, h, g)).collect();
    assemble(
        alpha,
        h,
        cosets,
        fixed,
        tilde,
        |g, x| Ok(quotient_map_value(alpha, h, g, x)),
        cert,
    )
}

pub fn quotient_via_globalization(alpha: &PartialAction, h: &Subgroup) -> Result<QuotientAction> {
    quotient_via_globalization_with(alpha, h, None)
}

pub fn quotient_via_globalization_with(
    alpha: &PartialAction,
    h: &Subgroup,
    reps: Option<&[usize]>,
) -> Result<QuotientAction> {
    let cosets = cosets_for(alpha, h, reps)?;
    let glob = globalize(alpha)?;
    let t = glob.algebra();
    let e_h = subgroup_idempotents(&glob, h)?.e_h;
    let psi = psi_matrix(&glob, h)?;
    let fixed = alpha.restrict(h)?.invariants()?;
    let pull = |x: &[Scalar]| {
        glob.pull_back(x)
            .ok_or_else(|| Error::Internal("element outside the embedded copy of S".into()))
    };
    let tilde = cosets
        .transversal
        .iter()
        .map(|&g| {
            let e_gh = t.mul(&e_h, &glob.beta[g].apply(&e_h));
            pull(&t.mul(&e_gh, &glob.one_s))
        })
        .collect::<Result<Vec<_>>>()?;
    let value = |g: usize, x: &[Scalar]| {
        let moved = glob.beta[g].apply(&psi.apply(&glob.embed.apply(x)));
        pull(&t.mul(&moved, &glob.one_s))
    };
    let mut q = assemble(alpha, h, cosets, fixed, tilde, value, Certificate::default())?;

    // (T^H, beta_{G/H}) globalizes the quotient, with S^{alpha_H} embedded by psi_H
    let th = fixed_ring(&glob, h)?;
    let solver = th.solver();
    let r = th.rank();
    let base = t.base();
    let restrict = |m: &Matrix| -> Result<Matrix> {
        let cols = (0..r)
            .map(|j| {
                solver
                    .express(&m.apply(&th.inclusion.column(j)))
                    .ok_or_else(|| Error::Internal("beta_g leaves T^H".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(base, &cols, r))
    };
    let betas = q
        .cosets
        .transversal
        .iter()
        .map(|&g| restrict(&glob.beta[g]))
        .collect::<Result<Vec<_>>>()?;
    let embed_cols = (0..q.fixed.rank())
        .map(|j| {
            let x = glob.embed.apply(&q.fixed.inclusion.column(j));
            solver
                .express(&psi.apply(&x))
                .ok_or_else(|| Error::Internal("psi_H(S^alpha_H) leaves T^H".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let embed = Matrix::from_columns(base, &embed_cols, r);
    let envelope = certify_globalization(&q.result, &th.algebra, &betas, &embed);
    for c in envelope.checks {
        q.certificate.checks.push(crate::envelope::Check {
            name: format!("T^H: {}", c.name),
            ..c
        });
    }
    q.certificate = q.certificate.into_result("quotient via globalization")?;
    Ok(q)
}

/// Galois coordinates of the quotient; they exist whenever `alpha` is partial
/// Galois, so their absence is reported as an internal error.
pub fn quotient_galois_check(alpha: &PartialAction, h: &Subgroup) -> Result<(QuotientAction, GaloisCoordinates)> {
    if alpha.galois_coordinates().is_none() {
        return Err(Error::NotGalois("the action has no Galois coordinates".into()));
    }
    let q = quotient_action(alpha, h)?;
    let coords = q
        .result
        .galois_coordinates()
        .ok_or_else(|| Error::Internal("the quotient of a partial Galois action is not partial Galois".into()))?;
    Ok((q, coords))
}
