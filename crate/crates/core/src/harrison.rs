//! Tensor actions, the Harrison product of partial Galois classes and the
//! inverse-semigroup structure it carries.
//!
//! Classes are represented by a partial Galois action whose invariants are
//! the base ring. The product of `[S, alpha]` and `[S', alpha']` is the action
//! of `(G x G)/dG ~ G` on the `dG`-invariants of `S (x) S'`, where
//! `dG = {(g, g^-1)}` and the cosets are represented by `(g, 1)`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::algebra::{find_split_presentation, tensor, tensor_vectors, Algebra, ProductAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::groups::{delta_subgroup, make_product, pair_index, quotient_with_transversal, FiniteGroup, Subgroup};
use crate::paction::{check_morphism, iso_check, GaloisCoordinates, IsoOutcome, PartialAction};
use crate::quotient::{quotient_action_with, QuotientAction};
use crate::scalars::{same_row_module, vec, BaseRing, Matrix, Scalar};

/// A partial Galois action over the base ring, standing for its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionClass {
    rep: PartialAction,
    coordinates: GaloisCoordinates,
}

impl ExtensionClass {
    /// Certifies the axioms, that the invariants are the base ring, and the
    /// Galois coordinates.
    pub fn new(rep: PartialAction) -> Result<Self> {
        if let Some(v) = rep.verify().summary() {
            return Err(Error::InvalidAction(v));
        }
        let fixed = rep.invariants()?;
        if fixed.rank() != 1 {
            return Err(Error::NotGalois(format!(
                "the invariants have rank {}, not the base ring",
                fixed.rank()
            )));
        }
        let coordinates = rep
            .galois_coordinates()
            .ok_or_else(|| Error::NotGalois("no Galois coordinates exist".into()))?;
        Ok(ExtensionClass { rep, coordinates })
    }

    pub fn rep(&self) -> &PartialAction {
        &self.rep
    }

    pub fn coordinates(&self) -> &GaloisCoordinates {
        &self.coordinates
    }

    pub fn group(&self) -> &FiniteGroup {
        self.rep.group()
    }

    /// `[S, alpha]*`, acting through `alpha_{g^-1}`.
    pub fn inverse(&self) -> ExtensionClass {
        let rep = self.rep.inverse_action();
        let coordinates = rep.galois_coordinates().expect("the inverse action is partial Galois");
        ExtensionClass { rep, coordinates }
    }
}

/// The regular action of `G` on `E_G(R) = prod_g R e_g`: `g . e_h = e_{gh}`.
pub fn regular_action(group: &FiniteGroup, base: &BaseRing) -> PartialAction {
    let labels = group.labels().iter().map(|l| format!("e{l}")).collect();
    let carrier = Algebra::split(base, labels);
    let n = group.order();
    let maps = group
        .elements()
        .map(|g| {
            let mut m = Matrix::zeros(base, n, n);
            for h in group.elements() {
                m.set(group.mul(g, h), h, base.one());
            }
            m
        })
        .collect();
    PartialAction::global(group.clone(), carrier, maps).expect("square maps")
}

/// The trivial extension `(E_G(R), rho)`.
pub fn trivial_extension(group: &FiniteGroup, base: &BaseRing) -> Result<ExtensionClass> {
    ExtensionClass::new(regular_action(group, base))
}

/// `alpha_1 (x) ... (x) alpha_n`, an action of `G_1 x ... x G_n` on
/// `S_1 (x) ... (x) S_n`.
pub fn tensor_many(actions: &[PartialAction]) -> Result<PartialAction> {
    let (first, rest) = actions
        .split_first()
        .ok_or_else(|| Error::InvalidAction("tensor product of no actions".into()))?;
    if rest.is_empty() {
        return Ok(first.clone());
    }
    let base = first.carrier().base();
    if let Some(a) = rest.iter().find(|a| a.carrier().base() != base) {
        return Err(Error::RingMismatch(base.to_string(), a.carrier().base().to_string()));
    }
    let groups: Vec<FiniteGroup> = actions.iter().map(|a| a.group().clone()).collect();
    let group = make_product(&groups)?;
    let mut carrier = first.carrier().clone();
    for a in rest {
        carrier = tensor(&carrier, a.carrier())?;
    }
    let mut idems = Vec::with_capacity(group.order());
    let mut maps = Vec::with_capacity(group.order());
    for x in group.elements() {
        let parts = split_index(x, &groups);
        let mut e = actions[0].idem(parts[0]).to_vec();
        let mut m = actions[0].map(parts[0]).clone();
        for (a, &p) in actions.iter().zip(&parts).skip(1) {
            e = tensor_vectors(&e, a.idem(p));
            m = m.kron(a.map(p));
        }
        idems.push(e);
        maps.push(m);
    }
    PartialAction::new(group, carrier, idems, maps)
}

/// Coordinates of an element of `make_product(groups)`.
fn split_index(mut x: usize, groups: &[FiniteGroup]) -> Vec<usize> {
    let mut parts = vec![0; groups.len()];
    for (i, g) in groups.iter().enumerate().rev() {
        parts[i] = x % g.order();
        x /= g.order();
    }
    parts
}

fn join_index(parts: &[usize], groups: &[FiniteGroup]) -> usize {
    parts.iter().zip(groups).fold(0, |acc, (x, g)| acc * g.order() + x)
}

fn same_setting(a: &PartialAction, b: &PartialAction) -> Result<()> {
    if a.group().table() != b.group().table() {
        return Err(Error::GroupMismatch("the actions use different groups".into()));
    }
    if a.carrier().base() != b.carrier().base() {
        return Err(Error::RingMismatch(a.carrier().base().to_string(), b.carrier().base().to_string()));
    }
    Ok(())
}

/// `alpha (x) alpha'` on `S (x) S'`: ideal `S_l (x) S'_t` and map
/// `alpha_l (x) alpha'_t` at `(l, t)`.
pub fn tensor_action(a: &PartialAction, b: &PartialAction) -> Result<PartialAction> {
    same_setting(a, b)?;
    tensor_many(&[a.clone(), b.clone()])
}

/// The `dG`-invariants of an action of `G x G`.
pub fn delta_fixed_ring(action: &PartialAction, group: &FiniteGroup) -> Result<Subalgebra> {
    let (gg, delta) = delta_subgroup(group)?;
    if action.group().table() != gg.table() {
        return Err(Error::GroupMismatch("expected an action of G x G".into()));
    }
    action.restrict(&delta)?.invariants()
}

/// Quotient of an action of `G x G` by `dG` with representatives `(g, 1)`,
/// relabeled as an action of `G`.
fn delta_quotient(action: &PartialAction, group: &FiniteGroup) -> Result<QuotientAction> {
    let (gg, delta) = delta_subgroup(group)?;
    if action.group().table() != gg.table() {
        return Err(Error::GroupMismatch("expected an action of G x G".into()));
    }
    let reps: Vec<usize> = group.elements().map(|g| pair_index(group, g, group.identity())).collect();
    let mut q = quotient_action_with(action, &delta, Some(&reps))?;
    q.result = q.result.with_group(group.clone())?;
    Ok(q)
}

#[derive(Clone, Debug)]
pub struct HarrisonProduct {
    pub tensor: PartialAction,
    pub quotient: QuotientAction,
    pub class: ExtensionClass,
}

pub fn harrison_product(a: &ExtensionClass, b: &ExtensionClass) -> Result<ExtensionClass> {
    Ok(harrison_product_detail(a, b)?.class)
}

pub fn harrison_product_detail(a: &ExtensionClass, b: &ExtensionClass) -> Result<HarrisonProduct> {
    let tensor = tensor_action(a.rep(), b.rep())?;
    let quotient = delta_quotient(&tensor, a.group())?;
    let class = ExtensionClass::new(quotient.result.clone())
        .map_err(|e| Error::Internal(format!("the product is not a class: {e}")))?;
    Ok(HarrisonProduct {
        tensor,
        quotient,
        class,
    })
}

/// `alpha^` on `prod_g S_g`: the ideal at `(l, t)` has components
/// `S_g 1_l 1_{t^-1 g}` and the map sends component `g` to component `ltg`
/// through `alpha_l`.
#[derive(Clone, Debug)]
pub struct HatAction {
    pub product: ProductAlgebra,
    pub action: PartialAction,
}

impl HatAction {
    /// Per-component elements of `S`.
    pub fn parts(&self, x: &[Scalar]) -> Vec<Vec<Scalar>> {
        (0..self.product.components()).map(|c| self.product.component(x, c)).collect()
    }

    pub fn assemble(&self, parts: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
        self.product
            .assemble(parts)
            .ok_or_else(|| Error::Internal("component outside its ideal".into()))
    }
}

pub fn hat_action(alpha: &PartialAction) -> Result<HatAction> {
    let s = alpha.carrier();
    let g = alpha.group();
    let phi = alpha.phi_map()?;
    let product = phi.product;
    let gg = make_product(&[g.clone(), g.clone()])?;
    let rank = product.algebra.rank();
    let base = s.base();
    let mut idems = Vec::with_capacity(gg.order());
    let mut maps = Vec::with_capacity(gg.order());
    for lt in gg.elements() {
        let (l, t) = (lt / g.order(), lt % g.order());
        let parts: Vec<Vec<Scalar>> = g
            .elements()
            .map(|c| s.product_of(&[alpha.idem(c), alpha.idem(l), alpha.idem(g.mul(g.inv(t), c))]))
            .collect();
        idems.push(product.assemble(&parts).ok_or_else(|| Error::Internal("hat idempotent".into()))?);
        let mut cols = Vec::with_capacity(rank);
        for j in 0..rank {
            let x = product.algebra.basis_vector(j);
            let mut out = vec![s.zero(); g.order()];
            for k in g.elements() {
                let d = product.component(&x, k);
                let target = g.mul(g.mul(l, t), k);
                let y = alpha.act(l, &s.mul(&d, alpha.idem(g.mul(t, k))));
                out[target] = vec::add(&out[target], &s.mul(&y, alpha.idem(target)));
            }
            cols.push(product.assemble(&out).ok_or_else(|| Error::Internal("hat map".into()))?);
        }
        maps.push(Matrix::from_columns(base, &cols, rank));
    }
    let action = PartialAction::new(gg, product.algebra.clone(), idems, maps)?;
    if let Some(v) = action.verify().summary() {
        return Err(Error::Internal(format!("hat action: {v}")));
    }
    Ok(HatAction { product, action })
}

/// The isomorphism `phi(x (x) y) = (x alpha_g(y 1_{g^-1}))_g` from
/// `alpha (x) alpha*` to `alpha^`, certified.
pub fn hat_iso(alpha: &PartialAction, hat: &HatAction) -> Result<Matrix> {
    let phi = alpha.phi_map()?;
    let tensor = tensor_action(alpha, &alpha.inverse_action())?;
    if !check_morphism(&tensor, &hat.action, &phi.matrix) {
        return Err(Error::Internal("phi does not intertwine alpha (x) alpha* with the hat action".into()));
    }
    Ok(phi.matrix)
}

/// `E(S, alpha)` as the solutions of
/// `alpha_l(d_g 1_{l^-1}) 1_g = d_g 1_l 1_{lg}` for all `l, g`.
pub fn idempotent_ring(alpha: &PartialAction, hat: &HatAction) -> Result<Subalgebra> {
    let s = alpha.carrier();
    let g = alpha.group();
    let p = &hat.product;
    let mut constraints = Matrix::zeros(s.base(), 0, p.algebra.rank());
    for l in g.elements() {
        for c in g.elements() {
            let lhs = &s.mult_matrix(alpha.idem(c)) * alpha.map(l);
            let rhs = s.mult_matrix(&s.mul(alpha.idem(l), alpha.idem(g.mul(l, c))));
            constraints = constraints.vstack(&(&lhs.sub(&rhs) * &p.projection(c)));
        }
    }
    crate::algebra::subalgebra_from_constraints(&p.algebra, &constraints)
}

#[derive(Clone, Debug)]
pub struct IdempotentClass {
    pub hat: HatAction,
    /// `E(S, alpha)` inside `prod_g S_g`.
    pub ring: Subalgebra,
    pub quotient: QuotientAction,
    pub class: ExtensionClass,
}

/// `[E(S, alpha), alpha^_{(G x G)/dG}]`. The linear description of `E` is
/// checked against the `dG`-invariants of the hat action.
pub fn idempotent_class(alpha: &PartialAction) -> Result<IdempotentClass> {
    let hat = hat_action(alpha)?;
    hat_iso(alpha, &hat)?;
    let ring = idempotent_ring(alpha, &hat)?;
    let quotient = delta_quotient(&hat.action, alpha.group())?;
    let same = same_row_module(&ring.inclusion.transpose(), &quotient.fixed.inclusion.transpose());
    if !same {
        return Err(Error::Internal("E(S, alpha) differs from the dG-invariants of the hat action".into()));
    }
    let class = ExtensionClass::new(quotient.result.clone())
        .map_err(|e| Error::Internal(format!("E(S, alpha) is not a class: {e}")))?;
    Ok(IdempotentClass {
        hat,
        ring,
        quotient,
        class,
    })
}

/// The action of the coset `(1, l) dG` on `d` in `E(S, alpha)`, restricted to
/// its domain, by the specialized formula: component `lk` of the output is
///
/// ```text
/// d_k 1_{lk} + sum_{i>=2} prod_{j<i} (1_{lk} - 1_{lk} 1_{h_j} 1_{h_j k}) alpha_{h_i}(d_k 1_{h_i^-1}) 1_{lk}
/// ```
///
/// with `h_1 = 1, h_2, ...` the elements of `G` in order.
pub fn coset_action(alpha: &PartialAction, hat: &HatAction, l: usize, d: &[Scalar]) -> Result<Vec<Scalar>> {
    let s = alpha.carrier();
    let g = alpha.group();
    let parts = hat.parts(d);
    let mut out = vec![s.zero(); g.order()];
    for k in g.elements() {
        let c = g.mul(l, k);
        let one_c = alpha.idem(c);
        let mut acc = s.mul(&parts[k], one_c);
        let mut prefix = one_c.to_vec();
        for h in g.elements().skip(1) {
            let prev = h - 1;
            let cut = s.product_of(&[one_c, alpha.idem(prev), alpha.idem(g.mul(prev, k))]);
            prefix = s.mul(&prefix, &vec::sub(one_c, &cut));
            let term = s.mul(&alpha.act(h, &parts[k]), one_c);
            acc = vec::add(&acc, &s.mul(&prefix, &term));
        }
        out[c] = vec::add(&out[c], &acc);
    }
    hat.assemble(&out)
}

/// The formula as printed, which keeps every component in place:
/// `(d_g 1_{lg})_g + sum_{i>=2} prod_{j<i} (1_g - 1_{l h_j} 1_{h_j g})_g (d_g 1_{h_i} 1_{h_i g} 1_{lg})_g`.
/// Kept for comparison only; see [`coset_action`].
pub fn coset_action_as_printed(alpha: &PartialAction, hat: &HatAction, l: usize, d: &[Scalar]) -> Result<Vec<Scalar>> {
    let s = alpha.carrier();
    let g = alpha.group();
    let parts = hat.parts(d);
    let mut out = Vec::with_capacity(g.order());
    for c in g.elements() {
        let one_c = alpha.idem(c);
        let one_lc = alpha.idem(g.mul(l, c));
        let mut acc = s.mul(&parts[c], one_lc);
        let mut prefix = one_c.to_vec();
        for h in g.elements().skip(1) {
            let prev = h - 1;
            let cut = s.mul(alpha.idem(g.mul(l, prev)), alpha.idem(g.mul(prev, c)));
            prefix = s.mul(&prefix, &vec::sub(one_c, &cut));
            let term = s.product_of(&[&parts[c], alpha.idem(h), alpha.idem(g.mul(h, c)), one_lc]);
            acc = vec::add(&acc, &s.mul(&prefix, &term));
        }
        out.push(acc);
    }
    hat.assemble(&out)
}

/// `[S_1, alpha_1] x ... x [S_n, alpha_n] -> [S_1 (x) ... (x) S_n, alpha_1 (x) ... (x) alpha_n]`.
pub fn cyclic_compose(classes: &[ExtensionClass]) -> Result<ExtensionClass> {
    let reps: Vec<PartialAction> = classes.iter().map(|c| c.rep().clone()).collect();
    ExtensionClass::new(tensor_many(&reps)?)
}

/// The components `S^{alpha_{H_i}}` with `H_i` the product of all factors but
/// the `i`-th, as classes of `G_i`.
pub fn cyclic_decompose(class: &ExtensionClass, factors: &[FiniteGroup]) -> Result<Vec<ExtensionClass>> {
    if let Some(f) = factors.iter().find(|f| f.cyclic_factors().is_none_or(|c| c.len() != 1)) {
        return Err(Error::NotAProduct(format!("factor of order {} is not presented as cyclic", f.order())));
    }
    let group = class.group();
    let product = make_product(factors)?;
    if product.table() != group.table() {
        return Err(Error::NotAProduct(format!(
            "the group of order {} is not the product of the given factors",
            group.order()
        )));
    }
    let mut out = Vec::with_capacity(factors.len());
    for (i, factor) in factors.iter().enumerate() {
        let members: Vec<usize> = group.elements().filter(|&x| split_index(x, factors)[i] == 0).collect();
        let h = Subgroup::new(group, &members)?;
        let reps: Vec<usize> = factor
            .elements()
            .map(|x| {
                let mut parts = vec![0; factors.len()];
                parts[i] = x;
                join_index(&parts, factors)
            })
            .collect();
        quotient_with_transversal(group, &h, &reps)?;
        let q = quotient_action_with(class.rep(), &h, Some(&reps))?;
        out.push(ExtensionClass::new(q.result.with_group(factor.clone())?)?);
    }
    Ok(out)
}

/// Evidence for `[S', alpha']` lying in the component of `[E(S, alpha)]`.
#[derive(Clone, Debug)]
pub struct Membership {
    /// `[E(S', alpha')] = [E(S, alpha)]`, the defining condition.
    pub member: Status,
    pub detail: String,
    /// A unital algebra map `E(S, alpha) -> E(S', alpha')`, i.e. one sending
    /// `(1_g)_g` to `(1'_g)_g`, when both carriers are split.
    pub unital_map: Option<Matrix>,
}

/// Decides membership by comparing idempotent classes, and separately
/// searches for the algebra map of the homomorphism criterion. On split
/// carriers that map always exists: project onto the first primitive
/// idempotent and send it to `1`.
pub fn idempotent_membership(alpha: &ExtensionClass, beta: &ExtensionClass) -> Result<Membership> {
    same_setting(alpha.rep(), beta.rep())?;
    let e = idempotent_class(alpha.rep())?.class;
    let e_prime = idempotent_class(beta.rep())?.class;
    let (member, detail) = compare_classes(&e_prime, &e)?;
    let (src, dst) = (e.rep().carrier(), e_prime.rep().carrier());
    let unital_map = match find_split_presentation(src) {
        Some(split) if find_split_presentation(dst).is_some() => {
            let cols: Vec<Vec<Scalar>> = (0..src.rank())
                .map(|k| vec::scale(&split.coefficients(src, &src.basis_vector(k))[0], dst.unit()))
                .collect();
            let f = Matrix::from_columns(src.base(), &cols, dst.rank());
            if src.multiplicative_failure(dst, &f).is_some() || f.apply(src.unit()) != dst.unit() {
                return Err(Error::Internal("projection onto a primitive idempotent is not a unital map".into()));
            }
            Some(f)
        }
        _ => None,
    };
    Ok(Membership {
        member,
        detail,
        unital_map,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

#[derive(Clone, Debug)]
pub struct SuiteCheck {
    pub name: String,
    pub status: Status,
    /// Iso witness (as a matrix) or the reason for failure.
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }
}

/// A deferred pair of classes to compare.
type Job<'a> = Box<dyn Fn() -> Result<(ExtensionClass, ExtensionClass)> + Send + Sync + 'a>;

/// Decides `[a] = [b]` by an isomorphism search; a witness is re-verified.
pub fn compare_classes(a: &ExtensionClass, b: &ExtensionClass) -> Result<(Status, String)> {
    Ok(match iso_check(a.rep(), b.rep())? {
        IsoOutcome::Isomorphic(f) => {
            if check_morphism(a.rep(), b.rep(), &f) {
                (Status::Pass, format!("{:?}", f.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>()))
            } else {
                (Status::Fail, "witness failed re-verification".into())
            }
        }
        IsoOutcome::NotIsomorphic => (Status::Fail, "no isomorphism".into()),
        IsoOutcome::Undecided(why) => (Status::Undecided, why),
    })
}

/// Commutativity, associativity, regularity and the idempotent checks on
/// every pair and triple of `classes`.
pub fn star_product_suite(classes: &[(String, ExtensionClass)]) -> Result<SuiteReport> {
    let Some((_, first)) = classes.first() else {
        return Ok(SuiteReport::default());
    };
    let group = first.group().clone();
    let base = first.rep().carrier().base().clone();
    for (name, c) in classes {
        same_setting(first.rep(), c.rep()).map_err(|e| Error::GroupMismatch(format!("{name}: {e}")))?;
    }
    let n = classes.len();
    let x = |i: usize| &classes[i].1;
    let name = |i: usize| classes[i].0.as_str();

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let products: HashMap<(usize, usize), ExtensionClass> = pairs
        .par_iter()
        .map(|&(i, j)| Ok(((i, j), harrison_product(x(i), x(j))?)))
        .collect::<Result<_>>()?;
    let xy = |i: usize, j: usize| &products[&(i, j)];

    let idempotents: Vec<ExtensionClass> = (0..n)
        .into_par_iter()
        .map(|i| Ok(idempotent_class(x(i).rep())?.class))
        .collect::<Result<_>>()?;
    let eps = |i: usize| &idempotents[i];
    let unit_class = trivial_extension(&group, &base)?;
    let unit = &unit_class;
    let mut jobs: Vec<(String, Job<'_>)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            jobs.push((
                format!("{} * {} = {} * {}", name(i), name(j), name(j), name(i)),
                Box::new(move || Ok((xy(i, j).clone(), xy(j, i).clone()))),
            ));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                jobs.push((
                    format!("({} * {}) * {} = {} * ({} * {})", name(i), name(j), name(k), name(i), name(j), name(k)),
                    Box::new(move || Ok((harrison_product(xy(i, j), x(k))?, harrison_product(x(i), xy(j, k))?))),
                ));
            }
        }
    }
    for i in 0..n {
        jobs.push((
            format!("{0} * {0}* * {0} = {0}", name(i)),
            Box::new(move || {
                let star = x(i).inverse();
                Ok((harrison_product(&harrison_product(x(i), &star)?, x(i))?, x(i).clone()))
            }),
        ));
        jobs.push((
            format!("{0}* * {0} * {0}* = {0}*", name(i)),
            Box::new(move || {
                let star = x(i).inverse();
                Ok((harrison_product(&harrison_product(&star, x(i))?, &star)?, star))
            }),
        ));
    }
    for i in 0..n {
        jobs.push((
            format!("E({0}) * E({0}) = E({0})", name(i)),
            Box::new(move || Ok((harrison_product(eps(i), eps(i))?, eps(i).clone()))),
        ));
        jobs.push((
            format!("E({0}) = {0} * {0}*", name(i)),
            Box::new(move || Ok((eps(i).clone(), harrison_product(x(i), &x(i).inverse())?))),
        ));
        for j in i + 1..n {
            jobs.push((
                format!("E({}) * E({}) = E({}) * E({})", name(i), name(j), name(j), name(i)),
                Box::new(move || Ok((harrison_product(eps(i), eps(j))?, harrison_product(eps(j), eps(i))?))),
            ));
        }
    }
    for i in (0..n).filter(|&i| x(i).rep().is_global()) {
        jobs.push((
            format!("E_G * {0} = {0}", name(i)),
            Box::new(move || Ok((harrison_product(unit, x(i))?, x(i).clone()))),
        ));
        jobs.push((
            format!("{0} * E_G = {0}", name(i)),
            Box::new(move || Ok((harrison_product(x(i), unit)?, x(i).clone()))),
        ));
    }

    let checks = jobs
        .par_iter()
        .map(|(label, job)| {
            let (a, b) = job()?;
            let (status, detail) = compare_classes(&a, &b)?;
            Ok(SuiteCheck {
                name: label.clone(),
                status,
                detail,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::groups::make_cyclic;

    fn q() -> BaseRing {
        BaseRing::Rationals
    }

    #[test]
    fn regular_action_of_z2_is_the_swap() {
        let g = make_cyclic(2).unwrap();
        let c = trivial_extension(&g, &q()).unwrap();
        assert_eq!(c.rep().map(1), &Matrix::from_i64(&q(), &[&[0, 1], &[1, 0]]));
        assert_eq!(c.coordinates().pairs.len(), 2);
    }

    #[test]
    fn tensor_with_trivial_group_is_the_action() {
        let a = corpus::example_one(&q());
        let one = PartialAction::trivial(make_cyclic(1).unwrap(), Algebra::base_algebra(&q()));
        let t = tensor_many(&[a.clone(), one]).unwrap();
        assert_eq!(t.maps(), a.maps());
        assert_eq!(t.idems(), a.idems());
    }

    #[test]
    fn tensor_ideals_are_tensors_of_generators() {
        let a = corpus::example_two(&q());
        let b = a.inverse_action();
        let t = tensor_action(&a, &b).unwrap();
        assert!(t.verify().ok());
        let g = a.group();
        for l in g.elements() {
            for u in g.elements() {
                assert_eq!(t.idem(pair_index(g, l, u)), tensor_vectors(a.idem(l), b.idem(u)).as_slice());
            }
        }
        // S'_g (x) S'*_g = Re'2 (x) Re'1
        let e21 = tensor_vectors(&[q().zero(), q().one()], &[q().one(), q().zero()]);
        assert_eq!(t.idem(pair_index(g, 1, 1)), e21.as_slice());
    }

    #[test]
    fn unit_is_always_delta_fixed() {
        for (_, a) in corpus::fixtures(&q()) {
            if !a.group().is_abelian() {
                continue;
            }
            let t = tensor_action(&a, &a).unwrap();
            let fixed = delta_fixed_ring(&t, a.group()).unwrap();
            assert!(fixed.coordinates(t.carrier().unit()).is_some());
        }
        let one = PartialAction::trivial(make_cyclic(1).unwrap(), corpus::example_one(&q()).carrier().clone());
        let t = tensor_action(&one, &one).unwrap();
        assert_eq!(delta_fixed_ring(&t, one.group()).unwrap().rank(), 9);
    }

    #[test]
    fn hat_ideals_at_the_diagonal() {
        let a = corpus::example_two(&q());
        let hat = hat_action(&a).unwrap();
        let g = a.group();
        let e = hat.parts(hat.action.idem(pair_index(g, 1, 1)));
        // only the g-component survives, equal to Re'2
        assert!(vec::is_zero(&e[0]) && vec::is_zero(&e[2]) && vec::is_zero(&e[3]));
        assert_eq!(e[1], vec![q().zero(), q().one()]);
        assert_eq!(hat.action.idem(0), hat.product.algebra.unit());
    }

    #[test]
    fn hat_iso_is_certified() {
        for c in corpus::suite_classes(&q()).unwrap() {
            let hat = hat_action(c.1.rep()).unwrap();
            hat_iso(c.1.rep(), &hat).unwrap();
        }
    }

    #[test]
    fn idempotent_ring_of_global_swap_has_rank_two() {
        let a = corpus::global_z2_swap(&q());
        let hat = hat_action(&a).unwrap();
        assert_eq!(idempotent_ring(&a, &hat).unwrap().rank(), 2);
    }

    #[test]
    fn idempotent_ring_contains_the_idempotents() {
        for (_, c) in corpus::suite_classes(&q()).unwrap() {
            let a = c.rep();
            let hat = hat_action(a).unwrap();
            let ring = idempotent_ring(a, &hat).unwrap();
            let ones = hat.assemble(a.idems()).unwrap();
            assert!(ring.coordinates(&ones).is_some());
            let unit_only: Vec<Vec<Scalar>> = a
                .group()
                .elements()
                .map(|g| if g == 0 { a.carrier().unit().to_vec() } else { a.carrier().zero() })
                .collect();
            assert!(ring.coordinates(&hat.assemble(&unit_only).unwrap()).is_some());
        }
    }

    #[test]
    fn coset_action_matches_the_quotient() {
        for base in [q(), BaseRing::Modular(2)] {
            for (name, c) in corpus::suite_classes(&base).unwrap() {
                let a = c.rep();
                let e = idempotent_class(a).unwrap();
                let g = a.group();
                let rep_map = |l: usize| e.quotient.result.map(l);
                for l in g.elements() {
                    for j in 0..e.quotient.fixed.rank() {
                        let d_coords = e.quotient.fixed.algebra.basis_vector(j);
                        let generic = e.quotient.fixed.include(&rep_map(l).apply(&d_coords));
                        // restrict the input to the domain of the coset of (l, 1)
                        let dom = e.quotient.fixed.include(e.quotient.result.idem(g.inv(l)));
                        let d = hat_mul(&e.hat, &e.quotient.fixed.inclusion.column(j), &dom);
                        let special = coset_action(a, &e.hat, l, &d).unwrap();
                        assert_eq!(generic, special, "{name} l={l}");
                    }
                }
            }
        }
    }

    fn hat_mul(hat: &HatAction, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        hat.product.algebra.mul(x, y)
    }

    #[test]
    fn printed_coset_formula_differs_on_example_one() {
        let a = corpus::example_one(&q());
        let e = idempotent_class(&a).unwrap();
        let g = a.group();
        let mut differs = false;
        for l in g.elements() {
            let dom = e.quotient.fixed.include(e.quotient.result.idem(g.inv(l)));
            for j in 0..e.quotient.fixed.rank() {
                let d = hat_mul(&e.hat, &e.quotient.fixed.inclusion.column(j), &dom);
                differs |= coset_action(&a, &e.hat, l, &d).unwrap() != coset_action_as_printed(&a, &e.hat, l, &d).unwrap();
            }
        }
        assert!(differs);
    }

    #[test]
    fn decompose_trivial_klein_extension() {
        let z2 = make_cyclic(2).unwrap();
        let klein = make_product(&[z2.clone(), z2.clone()]).unwrap();
        let c = trivial_extension(&klein, &q()).unwrap();
        let parts = cyclic_decompose(&c, &[z2.clone(), z2.clone()]).unwrap();
        let t = trivial_extension(&z2, &q()).unwrap();
        for p in &parts {
            assert_eq!(compare_classes(p, &t).unwrap().0, Status::Pass);
        }
        let back = cyclic_compose(&[t.clone(), t]).unwrap();
        assert_eq!(compare_classes(&back, &c).unwrap().0, Status::Pass);
    }

    #[test]
    fn single_factor_round_trip() {
        let z4 = make_cyclic(4).unwrap();
        let c = ExtensionClass::new(corpus::example_one(&q())).unwrap();
        let parts = cyclic_decompose(&c, &[z4]).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(compare_classes(&parts[0], &c).unwrap().0, Status::Pass);
        assert_eq!(cyclic_compose(&parts).unwrap(), parts[0]);
    }

    #[test]
    fn non_product_group_is_rejected() {
        let c = ExtensionClass::new(corpus::example_one(&q())).unwrap();
        let z2 = make_cyclic(2).unwrap();
        assert!(matches!(cyclic_decompose(&c, &[z2.clone(), z2]), Err(Error::NotAProduct(_))));
    }

    #[test]
    fn homomorphism_criterion_is_weaker_than_membership() {
        let q = BaseRing::Rationals;
        let ex2 = ExtensionClass::new(corpus::example_two(&q)).unwrap();
        let unit = trivial_extension(&make_cyclic(4).unwrap(), &q).unwrap();
        let own = idempotent_membership(&ex2, &ex2.inverse()).unwrap();
        assert_eq!(own.member, Status::Pass);
        // E(ex2) has rank 3 and E_G rank 4, yet a unital map exists
        let other = idempotent_membership(&ex2, &unit).unwrap();
        assert_eq!(other.member, Status::Fail);
        let f = other.unital_map.expect("split carriers");
        assert_eq!((f.rows(), f.cols()), (4, 3));
    }

    #[test]
    fn suite_on_the_trivial_extension() {
        let c = trivial_extension(&make_cyclic(2).unwrap(), &q()).unwrap();
        let report = star_product_suite(&[("E".into(), c)]).unwrap();
        assert!(report.passed(), "{:?}", report.checks);
    }
}
