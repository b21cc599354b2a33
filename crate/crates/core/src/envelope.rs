//! Globalizations `(T, beta)` of unital partial actions and the maps `psi_H`.
//!
//! The model lives in the function algebra `S^G` (one copy of `S` per group
//! element). With [`Model::Right`], `s` embeds as `g -> alpha_g(s 1_{g^-1})`
//! and `(beta_h f)(g) = f(gh)`; with [`Model::Left`], `s` embeds as
//! `g -> alpha_{g^-1}(s 1_g)` and `(beta_h f)(g) = f(h^-1 g)`. In both cases
//! `T` is the span of the translates of the image of `S`, re-based with its
//! own structure constants. The contract is the certificate, not the model.

use crate::algebra::{subalgebra_from_constraints, Algebra, Subalgebra};
use crate::error::{Error, Result};
use crate::groups::Subgroup;
use crate::paction::PartialAction;
use crate::scalars::{free_basis, intersect_modules, inverse, kernel, same_row_module, vec, Matrix, RowSolver, Scalar};

/// A named list of pass/fail checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// First counterexample when the check fails.
    pub detail: Option<String>,
}

impl Certificate {
    pub fn record(&mut self, name: impl Into<String>, failure: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: failure.is_none(),
            detail: failure,
        });
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// `Error::Internal` naming the first failed check.
    pub fn into_result(self, what: &str) -> Result<Self> {
        let failure = self.failures().next().map(|c| {
            format!(
                "{what}: {} fails{}",
                c.name,
                c.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default()
            )
        });
        match failure {
            None => Ok(self),
            Some(msg) => Err(Error::Internal(msg)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Right,
    Left,
}

#[derive(Clone, Debug)]
pub struct GlobalizationData {
    /// `T` as a subalgebra of `S^G`.
    pub t: Subalgebra,
    /// `beta_g` on `T` coordinates, indexed by group element.
    pub beta: Vec<Matrix>,
    /// Columns are the `T` coordinates of the embedded basis of `S`.
    pub embed: Matrix,
    /// Image of `1_S`.
    pub one_s: Vec<Scalar>,
    pub certificate: Certificate,
}

impl GlobalizationData {
    pub fn algebra(&self) -> &Algebra {
        &self.t.algebra
    }

    pub fn rank(&self) -> usize {
        self.t.rank()
    }

    /// The global action `(T, beta)`.
    pub fn global_action(&self, alpha: &PartialAction) -> Result<PartialAction> {
        PartialAction::global(alpha.group().clone(), self.t.algebra.clone(), self.beta.clone())
    }

    /// `S`-coordinates of an element of the embedded copy of `S`.
    pub fn pull_back(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        RowSolver::new(self.t.algebra.base(), &self.embed.transpose().to_rows(), self.rank()).express(x)
    }
}

/// `S^G`: one block of `S` per group element, block `g` at `g * rank(S)`.
fn function_algebra(alpha: &PartialAction) -> Result<Algebra> {
    let s = alpha.carrier();
    let g = alpha.group();
    let n = s.rank();
    let mut labels = Vec::with_capacity(n * g.order());
    let mut constants = Vec::new();
    let mut unit = Vec::with_capacity(n * g.order());
    let base_constants = s.structure_constants();
    for x in g.elements() {
        labels.extend(s.labels().iter().map(|l| format!("{l}@{}", g.label(x))));
        let off = x * n;
        constants.extend(base_constants.iter().map(|(i, j, k, c)| (off + i, off + j, off + k, c.clone())));
        unit.extend_from_slice(s.unit());
    }
    Algebra::new(s.base(), labels, &constants, unit)
}

/// Block permutation realizing `beta_h` on `S^G`.
fn ambient_beta(alpha: &PartialAction, model: Model, h: usize) -> Matrix {
    let g = alpha.group();
    let n = alpha.carrier().rank();
    let base = alpha.carrier().base();
    let mut m = Matrix::zeros(base, n * g.order(), n * g.order());
    for out in g.elements() {
        let src = match model {
            Model::Right => g.mul(out, h),
            Model::Left => g.mul(g.inv(h), out),
        };
        for k in 0..n {
            m.set(out * n + k, src * n + k, base.one());
        }
    }
    m
}

fn ambient_embed(alpha: &PartialAction, model: Model, s: &[Scalar]) -> Vec<Scalar> {
    let g = alpha.group();
    g.elements()
        .flat_map(|x| match model {
            Model::Right => alpha.act(x, s),
            Model::Left => alpha.act(g.inv(x), s),
        })
        .collect()
}

pub fn globalize(alpha: &PartialAction) -> Result<GlobalizationData> {
    globalize_with(alpha, Model::Right)
}

pub fn globalize_with(alpha: &PartialAction, model: Model) -> Result<GlobalizationData> {
    let s = alpha.carrier();
    let group = alpha.group();
    let base = s.base();
    let ambient = function_algebra(alpha)?;
    let betas: Vec<Matrix> = group.elements().map(|h| ambient_beta(alpha, model, h)).collect();
    let images: Vec<Vec<Scalar>> = (0..s.rank())
        .map(|j| ambient_embed(alpha, model, &s.basis_vector(j)))
        .collect();
    let mut span = Vec::new();
    for b in &betas {
        span.extend(images.iter().map(|v| b.apply(v)));
    }
    let basis = free_basis(&Matrix::from_rows(base, span, ambient.rank()))?;
    // T is a finite sum of unital ideals beta_h(iota(S)) with units beta_h(iota(1_S))
    let one = ambient_embed(alpha, model, s.unit());
    let unit = betas.iter().fold(ambient.zero(), |acc, b| {
        let e = b.apply(&one);
        vec::sub(&vec::add(&acc, &e), &ambient.mul(&acc, &e))
    });
    let t = Subalgebra::from_basis(&ambient, &basis, &unit)?;
    let solver = t.solver();
    let coords = |v: &[Scalar]| solver.express(v).ok_or_else(|| Error::Internal("element outside T".into()));
    let r = t.rank();
    let beta = betas
        .iter()
        .map(|b| {
            let cols = (0..r)
                .map(|j| coords(&b.apply(&t.inclusion.column(j))))
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(base, &cols, r))
        })
        .collect::<Result<Vec<_>>>()?;
    let embed_cols = images.iter().map(|v| coords(v)).collect::<Result<Vec<_>>>()?;
    let embed = Matrix::from_columns(base, &embed_cols, r);
    let one_s = embed.apply(s.unit());
    let certificate = certify_globalization(alpha, &t.algebra, &beta, &embed).into_result("globalization")?;
    Ok(GlobalizationData {
        t,
        beta,
        embed,
        one_s,
        certificate,
    })
}

fn columns_module(m: &Matrix) -> Matrix {
    m.transpose()
}

/// Checks that `(t, beta)` with the embedding `embed: S -> T` is a
/// globalization of `alpha`.
pub fn certify_globalization(alpha: &PartialAction, t: &Algebra, beta: &[Matrix], embed: &Matrix) -> Certificate {
    let s = alpha.carrier();
    let g = alpha.group();
    let base = s.base();
    let r = t.rank();
    let mut cert = Certificate::default();
    let id = Matrix::identity(base, r);

    let mut fail = None;
    for x in g.elements() {
        let b = &beta[x];
        if b.apply(t.unit()) != t.unit() {
            fail = Some(format!("beta_{} is not unital", g.label(x)));
        } else if let Some((i, j)) = t.multiplicative_failure(t, b) {
            fail = Some(format!("beta_{} fails on {} * {}", g.label(x), t.labels()[i], t.labels()[j]));
        } else if inverse(b).is_none() {
            fail = Some(format!("beta_{} is not invertible", g.label(x)));
        }
        if fail.is_some() {
            break;
        }
    }
    cert.record("beta_g are automorphisms", fail);
    let mut fail = (beta[g.identity()] != id).then(|| "beta_1 is not the identity".to_string());
    'outer: for x in g.elements() {
        for y in g.elements() {
            if &beta[x] * &beta[y] != beta[g.mul(x, y)] {
                fail = Some(format!("beta_{} beta_{} != beta_{}", g.label(x), g.label(y), g.label(g.mul(x, y))));
                break 'outer;
            }
        }
    }
    cert.record("beta is a group action", fail);

    let injective = kernel(embed).to_rows().iter().all(|v| vec::is_zero(v));
    let fail = if !injective {
        Some("embedding has a kernel".to_string())
    } else {
        s.multiplicative_failure(t, embed)
            .map(|(i, j)| format!("embedding fails on {} * {}", s.labels()[i], s.labels()[j]))
    };
    cert.record("embedding is an injective algebra map", fail);

    let image = columns_module(embed);
    let image_solver = RowSolver::from_matrix_rows(&image);
    let mut fail = None;
    'g1: for i in 0..r {
        for j in 0..s.rank() {
            let p = t.mul(&t.basis_vector(i), &embed.column(j));
            if !image_solver.contains(&p) {
                fail = Some(format!("{} * {} leaves the image of S", t.labels()[i], s.labels()[j]));
                break 'g1;
            }
        }
    }
    cert.record("(G1)", fail);

    let mut fail = None;
    for x in g.elements() {
        let ideal = &(embed * &s.mult_matrix(alpha.idem(x))).transpose();
        let translate = (&beta[x] * embed).transpose();
        match intersect_modules(&image, &translate) {
            Ok(meet) if same_row_module(ideal, &meet) => {}
            _ => {
                fail = Some(format!("at {}", g.label(x)));
                break;
            }
        }
    }
    cert.record("(G2)", fail);

    let mut fail = None;
    for x in g.elements() {
        let lhs = &(&beta[x] * embed) * &s.mult_matrix(alpha.idem(g.inv(x)));
        if lhs != embed * alpha.map(x) {
            fail = Some(format!("at {}", g.label(x)));
            break;
        }
    }
    cert.record("(G3)", fail);

    let mut span = Matrix::zeros(base, 0, r);
    for b in beta {
        span = span.vstack(&(b * embed).transpose());
    }
    let fail = (!same_row_module(&span, &id)).then(|| "translates of S do not span T".to_string());
    cert.record("(G4)", fail);

    let one_s = embed.apply(s.unit());
    let fail = g
        .elements()
        .find(|&x| embed.apply(alpha.idem(x)) != t.mul(&beta[x].apply(&one_s), &one_s))
        .map(|x| format!("at {}", g.label(x)));
    cert.record("1_g = beta_g(1_S) 1_S", fail);
    cert
}

/// The idempotents `e_1 = 1_S`, `e_i = prod_{j<i} (1_T - beta_{h_j}(1_S)) beta_{h_i}(1_S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupIdempotents {
    pub members: Vec<usize>,
    pub eis: Vec<Vec<Scalar>>,
    pub e_h: Vec<Scalar>,
}

pub fn subgroup_idempotents(glob: &GlobalizationData, h: &Subgroup) -> Result<SubgroupIdempotents> {
    let t = glob.algebra();
    let mut prefix = t.unit().to_vec();
    let mut eis = Vec::with_capacity(h.order());
    for &m in h.members() {
        let b = glob.beta[m].apply(&glob.one_s);
        eis.push(t.mul(&prefix, &b));
        prefix = t.mul(&prefix, &t.complement(&b));
    }
    let e_h = eis.iter().fold(t.zero(), |acc, e| vec::add(&acc, e));
    for (i, e) in eis.iter().enumerate() {
        let orthogonal = eis[i + 1..].iter().all(|f| vec::is_zero(&t.mul(e, f)));
        let under = t.mul(&glob.beta[h.members()[i]].apply(&glob.one_s), e) == *e;
        if !t.is_idempotent(e) || !orthogonal || !under {
            return Err(Error::Internal(format!("subgroup idempotent e_{} is malformed", i + 1)));
        }
    }
    Ok(SubgroupIdempotents {
        members: h.members().to_vec(),
        eis,
        e_h,
    })
}

/// Matrix of `psi_H(t) = sum_i beta_{h_i}(t) e_i` on `T`.
///
/// For `|H| <= 12` the inclusion-exclusion form
/// `sum_{i_1 < ... < i_l} (-1)^{l+1} beta_{h_{i_1}}(1_S) ... beta_{h_{i_l}}(1_S) beta_{h_{i_l}}(t)`
/// is evaluated as well and must agree.
pub fn psi_matrix(glob: &GlobalizationData, h: &Subgroup) -> Result<Matrix> {
    let t = glob.algebra();
    let idems = subgroup_idempotents(glob, h)?;
    let base = t.base();
    let r = t.rank();
    let mut psi = Matrix::zeros(base, r, r);
    for (e, &m) in idems.eis.iter().zip(h.members()) {
        psi = psi.add(&(&t.mult_matrix(e) * &glob.beta[m]));
    }
    let m = h.order();
    if m <= 12 {
        let translates: Vec<Vec<Scalar>> = h.members().iter().map(|&x| glob.beta[x].apply(&glob.one_s)).collect();
        let mut alt = Matrix::zeros(base, r, r);
        for mask in 1u32..(1 << m) {
            let chosen: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
            let last = *chosen.last().expect("nonempty subset");
            let prod = chosen.iter().fold(t.unit().to_vec(), |acc, &i| t.mul(&acc, &translates[i]));
            let term = &t.mult_matrix(&prod) * &glob.beta[h.members()[last]];
            alt = if chosen.len() % 2 == 1 { alt.add(&term) } else { alt.sub(&term) };
        }
        if alt != psi {
            return Err(Error::Internal(format!(
                "the two expressions for psi_H disagree for H with members {:?}",
                h.members()
            )));
        }
    }
    Ok(psi)
}

/// `T^H`, as a subalgebra of `T`.
pub fn fixed_ring(glob: &GlobalizationData, h: &Subgroup) -> Result<Subalgebra> {
    let t = glob.algebra();
    let id = Matrix::identity(t.base(), t.rank());
    let mut constraints = Matrix::zeros(t.base(), 0, t.rank());
    for &m in h.members() {
        constraints = constraints.vstack(&glob.beta[m].sub(&id));
    }
    subalgebra_from_constraints(t, &constraints)
}

/// The properties of `psi_H` for one subgroup.
pub fn psi_certificate(alpha: &PartialAction, glob: &GlobalizationData, h: &Subgroup) -> Result<Certificate> {
    let t = glob.algebra();
    let g = alpha.group();
    let base = t.base();
    let mut cert = Certificate::default();
    let psi = psi_matrix(glob, h)?;
    let idems = subgroup_idempotents(glob, h)?;
    let fixed = fixed_ring(glob, h)?;

    cert.record(
        "psi_H is multiplicative",
        t.multiplicative_failure(t, &psi)
            .map(|(i, j)| format!("on {} * {}", t.labels()[i], t.labels()[j])),
    );
    let restricted = &psi * &glob.embed;
    let injective = kernel(&restricted).to_rows().iter().all(|v| vec::is_zero(v));
    cert.record("psi_H restricted to S is injective", (!injective).then(|| "nonzero kernel".into()));
    let e_h = psi.apply(&glob.one_s);
    let fail = if e_h != idems.e_h {
        Some("psi_H(1_S) differs from the sum of the e_i".into())
    } else if !t.is_idempotent(&e_h) {
        Some("e_H is not idempotent".into())
    } else {
        (0..t.rank())
            .find(|&i| t.mul(&e_h, &t.basis_vector(i)) != t.mul(&t.basis_vector(i), &e_h))
            .map(|i| format!("e_H does not commute with {}", t.labels()[i]))
    };
    cert.record("e_H is a central idempotent", fail);

    // psi_H(1_S) = 1_T exactly when the H-translates of S already span T
    let mut span = Matrix::zeros(base, 0, t.rank());
    for &m in h.members() {
        span = span.vstack(&(&glob.beta[m] * &glob.embed).transpose());
    }
    let covers = same_row_module(&span, &Matrix::identity(base, t.rank()));
    let is_unit = e_h == t.unit();
    cert.record(
        "psi_H(1_S) = 1_T iff the H-translates of S span T",
        (covers != is_unit).then(|| format!("psi_H(1_S) = 1_T is {is_unit}, spanning is {covers}")),
    );
    if h.order() == g.order() {
        cert.record("psi_G(1_S) = 1_T", (!is_unit).then(|| "psi_G(1_S) is not the unit".into()));
    }

    let fixed_basis: Vec<Vec<Scalar>> = fixed.inclusion.transpose().to_rows();
    let mut fail = None;
    'lin: for a in &fixed_basis {
        for i in 0..t.rank() {
            let x = t.basis_vector(i);
            if psi.apply(&t.mul(a, &x)) != t.mul(a, &psi.apply(&x)) {
                fail = Some(format!("at {}", t.labels()[i]));
                break 'lin;
            }
        }
    }
    cert.record("psi_H is T^H-linear", fail);

    let sub_inv = alpha.restrict(h)?.invariants()?;
    let sub_inv_rows: Vec<Vec<Scalar>> = sub_inv.inclusion.transpose().to_rows();
    let embedded: Vec<Vec<Scalar>> = sub_inv_rows.iter().map(|x| glob.embed.apply(x)).collect();
    let cut: Vec<Vec<Scalar>> = fixed_basis.iter().map(|a| t.mul(a, &glob.one_s)).collect();
    let r = t.rank();
    cert.record(
        "T^H 1_S = S^{alpha_H}",
        (!same_row_module(&Matrix::from_rows(base, cut, r), &Matrix::from_rows(base, embedded.clone(), r)))
            .then(|| "modules differ".into()),
    );
    let fixed_solver = RowSolver::new(base, &fixed_basis, r);
    let images: Vec<Vec<Scalar>> = embedded.iter().map(|x| psi.apply(x)).collect();
    cert.record(
        "psi_H(S^{alpha_H}) lies in T^H",
        images.iter().position(|y| !fixed_solver.contains(y)).map(|i| format!("image of basis element {}", i + 1)),
    );
    let cut_e: Vec<Vec<Scalar>> = fixed_basis.iter().map(|a| t.mul(a, &e_h)).collect();
    let onto = same_row_module(&Matrix::from_rows(base, images.clone(), r), &Matrix::from_rows(base, cut_e, r));
    let inverse_ok = images.iter().zip(&embedded).all(|(y, x)| &t.mul(y, &glob.one_s) == x);
    cert.record(
        "psi_H: S^{alpha_H} -> T^H e_H is inverted by multiplication by 1_S",
        if !onto {
            Some("image differs from T^H e_H".into())
        } else {
            (!inverse_ok).then(|| "multiplication by 1_S does not invert psi_H".into())
        },
    );
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::groups::all_subgroups;
    use crate::paction::iso_check;
    use crate::scalars::BaseRing;

    #[test]
    fn global_action_is_its_own_globalization() {
        let q = BaseRing::Rationals;
        let a = corpus::global_z2_swap(&q);
        let glob = globalize(&a).unwrap();
        assert_eq!(glob.rank(), 2);
        assert_eq!(glob.one_s, glob.algebra().unit());
        assert!(iso_check(&a, &glob.global_action(&a).unwrap()).unwrap().is_isomorphic());
    }

    #[test]
    fn example_two_is_certified() {
        let q = BaseRing::Rationals;
        let a = corpus::example_two(&q);
        let glob = globalize(&a).unwrap();
        assert!(glob.certificate.ok());
        // S_g2 = 0 while every other translate is nonzero
        assert!(glob.rank() > 2);
    }

    #[test]
    fn first_idempotent_translates_to_one_g() {
        let q = BaseRing::Rationals;
        for a in [corpus::example_one(&q), corpus::example_two(&q)] {
            let glob = globalize(&a).unwrap();
            let t = glob.algebra();
            for h in all_subgroups(a.group()) {
                let idems = subgroup_idempotents(&glob, &h).unwrap();
                assert_eq!(idems.eis[0], glob.one_s);
                for g in a.group().elements() {
                    let lhs = t.mul(&glob.beta[g].apply(&idems.eis[0]), &glob.one_s);
                    assert_eq!(lhs, glob.embed.apply(a.idem(g)));
                }
            }
        }
    }

    #[test]
    fn trivial_subgroup_gives_multiplication_by_one_s() {
        let q = BaseRing::Rationals;
        let a = corpus::example_one(&q);
        let glob = globalize(&a).unwrap();
        let psi = psi_matrix(&glob, &Subgroup::trivial()).unwrap();
        assert_eq!(psi, glob.algebra().mult_matrix(&glob.one_s));
        let fixed = fixed_ring(&glob, &Subgroup::trivial()).unwrap();
        assert_eq!(fixed.rank(), glob.rank());
    }

    #[test]
    fn psi_properties_hold_on_every_subgroup() {
        for base in [BaseRing::Rationals, BaseRing::Modular(2)] {
            for (name, a) in corpus::fixtures(&base) {
                let glob = globalize(&a).unwrap();
                for h in all_subgroups(a.group()) {
                    let cert = psi_certificate(&a, &glob, &h).unwrap();
                    assert!(cert.ok(), "{name}: {:?}", cert.failures().collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn models_are_globally_isomorphic() {
        let q = BaseRing::Rationals;
        for (name, a) in corpus::fixtures(&q) {
            let right = globalize_with(&a, Model::Right).unwrap();
            let left = globalize_with(&a, Model::Left).unwrap();
            let out = iso_check(&right.global_action(&a).unwrap(), &left.global_action(&a).unwrap()).unwrap();
            assert!(out.is_isomorphic(), "{name}");
        }
    }
}
