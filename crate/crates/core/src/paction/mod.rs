//! Unital partial actions `alpha = (S_g, alpha_g)` of a finite group on a
//! commutative algebra.
//!
//! Each `alpha_g` is stored as the total matrix `M_g` of
//! `x -> alpha_g(x * 1_{g^-1})`, acting on column vectors of coordinates.

mod iso;

pub use iso::{check_morphism, iso_check, IsoOutcome};

use std::fmt;

use crate::algebra::{
    product_over_ideals, subalgebra_from_constraints, tensor, tensor_vectors, Algebra, ProductAlgebra, Subalgebra,
};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Subgroup};
use crate::scalars::{canonical_row_form, kernel, solve, vec, BaseRing, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAction {
    group: FiniteGroup,
    carrier: Algebra,
    idems: Vec<Vec<Scalar>>,
    maps: Vec<Matrix>,
}

impl PartialAction {
    /// Shape-checked construction; the axioms are checked by [`verify`](Self::verify).
    pub fn new(group: FiniteGroup, carrier: Algebra, idems: Vec<Vec<Scalar>>, maps: Vec<Matrix>) -> Result<Self> {
        let n = carrier.rank();
        if idems.len() != group.order() || maps.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "expected data for {} group elements, got {} idempotents and {} maps",
                group.order(),
                idems.len(),
                maps.len()
            )));
        }
        for g in group.elements() {
            if idems[g].len() != n {
                return Err(Error::InvalidAction(format!(
                    "idempotent of {} has {} coordinates, expected {n}",
                    group.label(g),
                    idems[g].len()
                )));
            }
            if maps[g].rows() != n || maps[g].cols() != n {
                return Err(Error::InvalidAction(format!(
                    "map of {} is {}x{}, expected {n}x{n}",
                    group.label(g),
                    maps[g].rows(),
                    maps[g].cols()
                )));
            }
            if maps[g].ring() != carrier.base() || idems[g].iter().any(|s| !carrier.base().contains(s)) {
                return Err(Error::RingMismatch(maps[g].ring().to_string(), carrier.base().to_string()));
            }
        }
        Ok(PartialAction {
            group,
            carrier,
            idems,
            maps,
        })
    }

    /// Construction that must satisfy every axiom.
    pub fn verified(group: FiniteGroup, carrier: Algebra, idems: Vec<Vec<Scalar>>, maps: Vec<Matrix>) -> Result<Self> {
        let a = PartialAction::new(group, carrier, idems, maps)?;
        let report = a.verify();
        if let Some(v) = report.summary() {
            return Err(Error::InvalidAction(v));
        }
        Ok(a)
    }

    /// A global action by automorphisms.
    pub fn global(group: FiniteGroup, carrier: Algebra, maps: Vec<Matrix>) -> Result<Self> {
        let idems = vec![carrier.unit().to_vec(); group.order()];
        PartialAction::new(group, carrier, idems, maps)
    }

    /// The trivial action of a group on the base ring.
    pub fn trivial(group: FiniteGroup, carrier: Algebra) -> Self {
        let id = Matrix::identity(carrier.base(), carrier.rank());
        let n = group.order();
        PartialAction {
            idems: vec![carrier.unit().to_vec(); n],
            maps: vec![id; n],
            group,
            carrier,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn carrier(&self) -> &Algebra {
        &self.carrier
    }

    pub fn idem(&self, g: usize) -> &[Scalar] {
        &self.idems[g]
    }

    pub fn idems(&self) -> &[Vec<Scalar>] {
        &self.idems
    }

    pub fn map(&self, g: usize) -> &Matrix {
        &self.maps[g]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// `alpha_g(x * 1_{g^-1})`.
    pub fn act(&self, g: usize, x: &[Scalar]) -> Vec<Scalar> {
        self.maps[g].apply(x)
    }

    pub fn is_global(&self) -> bool {
        self.idems.iter().all(|e| e == self.carrier.unit())
    }

    /// Same data over another group with the same table, e.g. after relabeling.
    pub fn with_group(&self, group: FiniteGroup) -> Result<Self> {
        if group.table() != self.group.table() {
            return Err(Error::GroupMismatch("replacement group has a different table".into()));
        }
        Ok(PartialAction {
            group,
            ..self.clone()
        })
    }

    /// Same action transported along an algebra isomorphism `f: S -> S'`.
    pub fn transport(&self, target: Algebra, f: &Matrix) -> Result<Self> {
        let inv = crate::scalars::inverse(f)
            .ok_or_else(|| Error::InvalidAction("transport map is not invertible".into()))?;
        let idems = self.idems.iter().map(|e| f.apply(e)).collect();
        let maps = self.maps.iter().map(|m| &(f * m) * &inv).collect();
        PartialAction::new(self.group.clone(), target, idems, maps)
    }

    /// The same data read over `base` through [`BaseRing::reduce`]. The
    /// axioms are not rechecked.
    pub fn change_base(&self, base: &BaseRing) -> Result<Self> {
        let red = |s: &Scalar| base.reduce(s);
        for (_, _, _, c) in self.carrier.structure_constants() {
            red(&c)?;
        }
        let unit = self.carrier.unit().iter().map(red).collect::<Result<Vec<_>>>()?;
        let carrier = self.carrier.change_base(base, |s| base.reduce(s).unwrap_or_else(|_| base.zero()));
        debug_assert_eq!(carrier.unit(), unit.as_slice());
        let idems = self
            .idems
            .iter()
            .map(|e| e.iter().map(red).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let maps = self.maps.iter().map(|m| m.try_map(base, red)).collect::<Result<_>>()?;
        PartialAction::new(self.group.clone(), carrier, idems, maps)
    }

    pub fn verify(&self) -> VerifyReport {
        verify_partial_action(self)
    }

    /// Restriction to a subgroup, presented as an action of `H` itself.
    pub fn restrict(&self, h: &Subgroup) -> Result<Self> {
        let members = h.members();
        if members.iter().copied().eq(self.group.elements()) {
            return Ok(self.clone());
        }
        let labels = members.iter().map(|&m| self.group.label(m).to_string()).collect();
        let table = members
            .iter()
            .map(|&a| {
                members
                    .iter()
                    .map(|&b| {
                        let p = self.group.mul(a, b);
                        members.iter().position(|&m| m == p).expect("closed subgroup")
                    })
                    .collect()
            })
            .collect();
        let group = FiniteGroup::from_table(labels, table)?;
        Ok(PartialAction {
            group,
            carrier: self.carrier.clone(),
            idems: members.iter().map(|&m| self.idems[m].clone()).collect(),
            maps: members.iter().map(|&m| self.maps[m].clone()).collect(),
        })
    }

    /// `tr(s) = sum_g alpha_g(s * 1_{g^-1})`.
    pub fn trace(&self, s: &[Scalar]) -> Vec<Scalar> {
        self.group
            .elements()
            .fold(self.carrier.zero(), |acc, g| vec::add(&acc, &self.act(g, s)))
    }

    /// Stacked rows of `M_g - L_{1_g}` for all `g`: their kernel is `S^alpha`.
    pub fn invariance_constraints(&self) -> Matrix {
        let n = self.carrier.rank();
        let mut m = Matrix::zeros(self.carrier.base(), 0, n);
        for g in self.group.elements() {
            m = m.vstack(&self.maps[g].sub(&self.carrier.mult_matrix(&self.idems[g])));
        }
        m
    }

    pub fn is_invariant(&self, s: &[Scalar]) -> bool {
        self.group
            .elements()
            .all(|g| self.act(g, s) == self.carrier.mul(s, &self.idems[g]))
    }

    /// `S^alpha = {s : alpha_g(s 1_{g^-1}) = s 1_g for all g}`.
    pub fn invariants(&self) -> Result<Subalgebra> {
        subalgebra_from_constraints(&self.carrier, &self.invariance_constraints())
    }

    /// The star action: `S*_g = S_{g^-1}`, `alpha*_g = alpha_{g^-1}`.
    pub fn inverse_action(&self) -> Self {
        let g = &self.group;
        PartialAction {
            group: g.clone(),
            carrier: self.carrier.clone(),
            idems: g.elements().map(|x| self.idems[g.inv(x)].clone()).collect(),
            maps: g.elements().map(|x| self.maps[g.inv(x)].clone()).collect(),
        }
    }

    /// Matrix of `x (x) y -> (x * alpha_g(y 1_{g^-1}))_g` into the total
    /// coordinates of `S^G` (component `g` occupies rows `g*n .. (g+1)*n`).
    pub fn phi_total(&self) -> Matrix {
        let n = self.carrier.rank();
        let base = self.carrier.base();
        let mut m = Matrix::zeros(base, self.group.order() * n, n * n);
        for i in 0..n {
            let bi = self.carrier.basis_vector(i);
            for j in 0..n {
                for g in self.group.elements() {
                    let col = self.carrier.mul(&bi, self.maps[g].column(j).as_slice());
                    for (k, v) in col.into_iter().enumerate() {
                        m.set(g * n + k, i * n + j, v);
                    }
                }
            }
        }
        m
    }

    /// Solves `phi(w) = (delta_{1,g} 1_S)_g` and decodes `w` as pairs.
    pub fn galois_coordinates(&self) -> Option<GaloisCoordinates> {
        let n = self.carrier.rank();
        let mut target = vec::zero(self.carrier.base(), self.group.order() * n);
        target[..n].clone_from_slice(self.carrier.unit());
        let sol = solve(&self.phi_total(), &target).expect("consistent shapes");
        let w = sol.particular?;
        let pairs = (0..n)
            .filter_map(|i| {
                let y = w[i * n..(i + 1) * n].to_vec();
                (!vec::is_zero(&y)).then(|| (self.carrier.basis_vector(i), y))
            })
            .collect();
        let coords = GaloisCoordinates { pairs };
        debug_assert!(coords.verify(self));
        Some(coords)
    }

    /// The map `phi` into `prod_g S_g` with its bijectivity over `S^alpha`.
    pub fn phi_map(&self) -> Result<PhiMap> {
        let names: Vec<String> = self.group.labels().to_vec();
        let ideals = self
            .idems
            .iter()
            .map(|e| self.carrier.ideal(e))
            .collect::<Result<Vec<_>>>()?;
        let product = product_over_ideals(&self.carrier, &ideals, &names)?;
        let domain = tensor(&self.carrier, &self.carrier)?;
        let total = self.phi_total();
        let n = self.carrier.rank();
        let cols: Vec<Vec<Scalar>> = (0..n * n)
            .map(|c| {
                let t = total.column(c);
                let parts: Vec<Vec<Scalar>> = (0..self.group.order()).map(|g| t[g * n..(g + 1) * n].to_vec()).collect();
                product.assemble(&parts).expect("phi lands in the ideals")
            })
            .collect();
        let matrix = Matrix::from_columns(self.carrier.base(), &cols, product.algebra.rank());
        let bijective = self.phi_is_bijective(&matrix)?;
        Ok(PhiMap {
            domain,
            product,
            matrix,
            bijective,
        })
    }

    /// Surjective, with kernel spanned by `a s (x) t - s (x) a t` for `a` in
    /// `S^alpha`: that is, bijective as a map out of `S (x)_{S^alpha} S`.
    fn phi_is_bijective(&self, matrix: &Matrix) -> Result<bool> {
        let rank = matrix.rows();
        let image = canonical_row_form(&matrix.transpose());
        if image != Matrix::identity(matrix.ring(), rank) {
            return Ok(false);
        }
        let fixed = self.invariants()?;
        let n = self.carrier.rank();
        let mut relations = Vec::new();
        for a in fixed.inclusion.transpose().to_rows() {
            for i in 0..n {
                let s = self.carrier.basis_vector(i);
                let as_ = self.carrier.mul(&a, &s);
                for j in 0..n {
                    let t = self.carrier.basis_vector(j);
                    let at = self.carrier.mul(&a, &t);
                    relations.push(vec::sub(&tensor_vectors(&as_, &t), &tensor_vectors(&s, &at)));
                }
            }
        }
        let rel = Matrix::from_rows(matrix.ring(), relations, n * n);
        Ok(canonical_row_form(&kernel(matrix)) == canonical_row_form(&rel))
    }
}

#[derive(Clone, Debug)]
pub struct PhiMap {
    pub domain: Algebra,
    pub product: ProductAlgebra,
    /// Columns indexed by `b_i (x) b_j`, rows by the coordinates of `prod_g S_g`.
    pub matrix: Matrix,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisCoordinates {
    pub pairs: Vec<(Vec<Scalar>, Vec<Scalar>)>,
}

impl GaloisCoordinates {
    /// `sum_i x_i alpha_g(y_i 1_{g^-1}) = delta_{1,g}` for every `g`.
    pub fn verify(&self, a: &PartialAction) -> bool {
        let s = a.carrier();
        a.group().elements().all(|g| {
            let sum = self
                .pairs
                .iter()
                .fold(s.zero(), |acc, (x, y)| vec::add(&acc, &s.mul(x, &a.act(g, y))));
            if g == 0 {
                sum == s.unit()
            } else {
                vec::is_zero(&sum)
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// Each `1_g` is idempotent.
    Unitality,
    P1,
    P2,
    P3,
    P4,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [Axiom::Unitality, Axiom::P1, Axiom::P2, Axiom::P3, Axiom::P4];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Unitality => "(P1)/unitality",
            Axiom::P1 => "(P1)",
            Axiom::P2 => "(P2)",
            Axiom::P3 => "(P3)",
            Axiom::P4 => "(P4)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    /// Labels of the witness: group elements first, then a basis element.
    pub witness: Vec<String>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ({}): {}", self.axiom.name(), self.witness.join(", "), self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn passed(&self, axiom: Axiom) -> bool {
        self.violations.iter().all(|v| v.axiom != axiom)
    }

    /// The first violation of each failing axiom, or `None` if all hold.
    pub fn summary(&self) -> Option<String> {
        let firsts: Vec<String> = Axiom::ALL
            .iter()
            .filter_map(|&ax| self.violations.iter().find(|v| v.axiom == ax))
            .map(ToString::to_string)
            .collect();
        (!firsts.is_empty()).then(|| firsts.join("; "))
    }

    pub fn witnesses(&self, axiom: Axiom) -> Vec<&[String]> {
        self.violations
            .iter()
            .filter(|v| v.axiom == axiom)
            .map(|v| v.witness.as_slice())
            .collect()
    }
}

/// Checks every axiom and collects every witness.
pub fn verify_partial_action(a: &PartialAction) -> VerifyReport {
    let s = &a.carrier;
    let g = &a.group;
    let n = s.rank();
    let lab = |x: usize| g.label(x).to_string();
    let blab = |k: usize| s.labels()[k].clone();
    let fmt = |x: &[Scalar]| s.format_element(x);
    let mut out = Vec::new();
    let mut push = |axiom, witness: Vec<String>, detail: String| out.push(Violation { axiom, witness, detail });

    for x in g.elements() {
        let e = &a.idems[x];
        if !s.is_idempotent(e) {
            push(Axiom::Unitality, vec![lab(x)], format!("1_{} = {} is not idempotent", lab(x), fmt(e)));
        }
    }

    if a.idems[0] != s.unit() {
        push(Axiom::P2, vec![lab(0)], format!("1_{} = {} is not 1_S", lab(0), fmt(&a.idems[0])));
    }
    if a.maps[0] != Matrix::identity(s.base(), n) {
        let k = (0..n).find(|&k| a.maps[0].column(k) != s.basis_vector(k)).unwrap_or(0);
        push(Axiom::P2, vec![lab(0), blab(k)], "the identity does not act as the identity".into());
    }

    for x in g.elements() {
        let m = &a.maps[x];
        let xi = g.inv(x);
        let dom = s.mult_matrix(&a.idems[xi]);
        let cod = s.mult_matrix(&a.idems[x]);
        let mut p1 = |k: Option<usize>, detail: String| {
            let mut w = vec![lab(x)];
            w.extend(k.map(blab));
            push(Axiom::P1, w, detail);
        };
        if let Some(k) = (0..n).find(|&k| m.apply(&dom.column(k)) != m.column(k)) {
            p1(Some(k), format!("alpha_{} does not factor through multiplication by 1_{}", lab(x), lab(xi)));
        }
        if let Some(k) = (0..n).find(|&k| cod.apply(&m.column(k)) != m.column(k)) {
            p1(Some(k), format!("alpha_{} leaves the ideal S_{}", lab(x), lab(x)));
        }
        'mult: for i in 0..n {
            for j in i..n {
                let lhs = m.apply(s.basis_product(i, j));
                let rhs = s.mul(&m.column(i), &m.column(j));
                if lhs != rhs {
                    p1(
                        Some(i),
                        format!("alpha_{} is not multiplicative on ({}, {})", lab(x), blab(i), blab(j)),
                    );
                    break 'mult;
                }
            }
        }
        let one_image = m.apply(s.unit());
        if one_image != a.idems[x] {
            p1(None, format!("alpha_{}(1_{}) = {} is not 1_{}", lab(x), lab(xi), fmt(&one_image), lab(x)));
        }
        let image = canonical_row_form(&m.transpose());
        let ideal = canonical_row_form(&cod.transpose());
        let injective = canonical_row_form(&kernel(m)) == canonical_row_form(&kernel(&dom));
        if image != ideal || !injective {
            p1(None, format!("alpha_{} is not a bijection S_{} -> S_{}", lab(x), lab(xi), lab(x)));
        }
    }

    for x in g.elements() {
        for h in g.elements() {
            let lhs = a.act(x, &s.mul(&a.idems[g.inv(x)], &a.idems[h]));
            let rhs = s.mul(&a.idems[x], &a.idems[g.mul(x, h)]);
            if lhs != rhs {
                push(
                    Axiom::P3,
                    vec![lab(x), lab(h)],
                    format!(
                        "alpha_{}(1_{} 1_{}) = {} but 1_{} 1_{} = {}",
                        lab(x),
                        lab(g.inv(x)),
                        lab(h),
                        fmt(&lhs),
                        lab(x),
                        lab(g.mul(x, h)),
                        fmt(&rhs)
                    ),
                );
            }
        }
    }

    for x in g.elements() {
        for h in g.elements() {
            let xh = g.mul(x, h);
            for k in 0..n {
                let b = s.basis_vector(k);
                let lhs = a.act(x, &a.act(h, &b));
                let rhs = s.mul(&a.act(xh, &b), &a.idems[x]);
                if lhs != rhs {
                    push(
                        Axiom::P4,
                        vec![lab(x), lab(h), blab(k)],
                        format!(
                            "alpha_{}(alpha_{}({})) = {} but alpha_{}({}) 1_{} = {}",
                            lab(x),
                            lab(h),
                            blab(k),
                            fmt(&lhs),
                            lab(xh),
                            blab(k),
                            lab(x),
                            fmt(&rhs)
                        ),
                    );
                }
            }
        }
    }
    VerifyReport { violations: out }
}
