//! Finite-rank commutative unital algebras given by structure constants.
//!
//! Elements are plain coordinate vectors (`Vec<Scalar>`) in the algebra's
//! basis; the algebra itself carries the multiplication.

mod poly;
mod split;

pub use split::{find_split_presentation, SplitPresentation};

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalars::{free_basis, kernel, vec, BaseRing, Matrix, RowSolver, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    base: BaseRing,
    labels: Vec<String>,
    // products[i * rank + j] = coordinates of b_i * b_j
    products: Vec<Vec<Scalar>>,
    unit: Vec<Scalar>,
}

impl Algebra {
    /// Validated construction from sparse structure constants `(i, j, k, c)`
    /// meaning `b_i * b_j` has coefficient `c` on `b_k`. Repeated entries add.
    pub fn new(
        base: &BaseRing,
        labels: Vec<String>,
        constants: &[(usize, usize, usize, Scalar)],
        unit: Vec<Scalar>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra("rank must be positive".into()));
        }
        if unit.len() != n {
            return Err(Error::InvalidAlgebra(format!(
                "unit has {} coordinates, expected {n}",
                unit.len()
            )));
        }
        let mut products = vec![vec::zero(base, n); n * n];
        for (i, j, k, c) in constants {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::InvalidAlgebra(format!(
                    "structure constant index ({i}, {j}, {k}) out of range for rank {n}"
                )));
            }
            if !base.contains(c) {
                return Err(Error::RingMismatch(c.ring().to_string(), base.to_string()));
            }
            let slot = &mut products[i * n + j][*k];
            *slot = &*slot + c;
        }
        let a = Algebra {
            base: base.clone(),
            labels,
            products,
            unit,
        };
        a.validate()?;
        Ok(a)
    }

    /// Construction from a dense product table, validated.
    pub(crate) fn from_products(
        base: &BaseRing,
        labels: Vec<String>,
        products: Vec<Vec<Scalar>>,
        unit: Vec<Scalar>,
    ) -> Result<Self> {
        let a = Algebra {
            base: base.clone(),
            labels,
            products,
            unit,
        };
        a.validate()?;
        Ok(a)
    }

    /// The base ring as a rank-1 algebra.
    pub fn base_algebra(base: &BaseRing) -> Self {
        Algebra {
            base: base.clone(),
            labels: vec!["1".into()],
            products: vec![vec![base.one()]],
            unit: vec![base.one()],
        }
    }

    /// `R^n` with orthogonal idempotent basis `labels`.
    pub fn split(base: &BaseRing, labels: Vec<String>) -> Self {
        let n = labels.len();
        let mut products = vec![vec::zero(base, n); n * n];
        for i in 0..n {
            products[i * n + i][i] = base.one();
        }
        Algebra {
            base: base.clone(),
            labels,
            products,
            unit: vec![base.one(); n],
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                if self.products[i * n + j] != self.products[j * n + i] {
                    return Err(Error::InvalidAlgebra(format!(
                        "not commutative: {} * {} != {} * {}",
                        self.labels[i], self.labels[j], self.labels[j], self.labels[i]
                    )));
                }
            }
        }
        for i in 0..n {
            let bi = vec::unit(&self.base, n, i);
            if self.mul(&self.unit, &bi) != bi {
                return Err(Error::InvalidAlgebra(format!(
                    "not unital: 1 * {} != {}",
                    self.labels[i], self.labels[i]
                )));
            }
        }
        for i in 0..n {
            for j in i..n {
                let ij = &self.products[i * n + j];
                for l in 0..n {
                    let left = self.mul_basis_right(ij, l);
                    let jl = &self.products[j * n + l];
                    let right = self.mul_basis_right(jl, i);
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "not associative: ({} * {}) * {} != {} * ({} * {})",
                            self.labels[i],
                            self.labels[j],
                            self.labels[l],
                            self.labels[i],
                            self.labels[j],
                            self.labels[l]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn mul_basis_right(&self, x: &[Scalar], l: usize) -> Vec<Scalar> {
        let n = self.rank();
        let mut out = vec::zero(&self.base, n);
        for (k, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&self.products[k * n + l]) {
                if !p.is_zero() {
                    *o = &*o + &(c * p);
                }
            }
        }
        out
    }

    pub fn base(&self) -> &BaseRing {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec::zero(&self.base, self.rank())
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        vec::unit(&self.base, self.rank(), i)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.products[i * self.rank() + j]
    }

    /// Sparse structure constants, sorted by `(i, j, k)`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.products[i * n + j].iter().enumerate() {
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.rank();
        assert!(x.len() == n && y.len() == n, "element does not belong to this algebra");
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (o, p) in out.iter_mut().zip(&self.products[i * n + j]) {
                    if !p.is_zero() {
                        *o = &*o + &(&ab * p);
                    }
                }
            }
        }
        out
    }

    pub fn product_of(&self, xs: &[&[Scalar]]) -> Vec<Scalar> {
        xs.iter()
            .fold(self.unit.clone(), |acc, x| self.mul(&acc, x))
    }

    /// Matrix of `y -> x * y`.
    pub fn mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.rank())
            .map(|j| self.mul(x, &self.basis_vector(j)))
            .collect();
        Matrix::from_columns(&self.base, &cols, self.rank())
    }

    pub fn is_idempotent(&self, x: &[Scalar]) -> bool {
        self.mul(x, x) == x
    }

    /// `1 - x`.
    pub fn complement(&self, x: &[Scalar]) -> Vec<Scalar> {
        vec::sub(&self.unit, x)
    }

    pub fn format_element(&self, x: &[Scalar]) -> String {
        format_combination(&self.labels, x)
    }

    /// The unital ideal `e * A` for an idempotent `e`.
    pub fn ideal(&self, e: &[Scalar]) -> Result<UnitalIdeal> {
        if !self.is_idempotent(e) {
            return Err(Error::InvalidAlgebra(format!(
                "{} is not idempotent",
                self.format_element(e)
            )));
        }
        let m = self.mult_matrix(e).transpose();
        let basis = free_basis(&m)?;
        Ok(UnitalIdeal {
            generator: e.to_vec(),
            basis,
        })
    }

    /// Algebra map check on basis pairs; returns the first failing pair.
    pub fn multiplicative_failure(&self, target: &Algebra, f: &Matrix) -> Option<(usize, usize)> {
        let n = self.rank();
        let images: Vec<Vec<Scalar>> = (0..n).map(|j| f.column(j)).collect();
        for i in 0..n {
            for j in i..n {
                let lhs = f.apply(self.basis_product(i, j));
                let rhs = target.mul(&images[i], &images[j]);
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Coordinates of a fresh algebra obtained by reducing all constants into
    /// another base ring (used for `Z/n -> Z/q` with `q | n`).
    pub(crate) fn change_base(&self, base: &BaseRing, map: impl Fn(&Scalar) -> Scalar) -> Algebra {
        Algebra {
            base: base.clone(),
            labels: self.labels.clone(),
            products: self
                .products
                .iter()
                .map(|v| v.iter().map(&map).collect())
                .collect(),
            unit: self.unit.iter().map(&map).collect(),
        }
    }
}

pub fn format_combination(labels: &[String], x: &[Scalar]) -> String {
    let mut out = String::new();
    for (c, label) in x.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let needs_parens = label.contains(' ');
        let label = if needs_parens {
            format!("({label})")
        } else {
            label.clone()
        };
        if mag.is_one() {
            out.push_str(&label);
        } else {
            let _ = write!(out, "{mag}*{label}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `e * A` for a central idempotent `e`, with a free basis of the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitalIdeal {
    pub generator: Vec<Scalar>,
    /// Rows are ambient coordinates of a basis of the ideal.
    pub basis: Matrix,
}

impl UnitalIdeal {
    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        RowSolver::from_matrix_rows(&self.basis).contains(x)
    }
}

/// A subalgebra (or a unital ideal seen as an algebra with its own unit)
/// together with its inclusion into the ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    pub algebra: Algebra,
    /// Columns are ambient coordinates of the subalgebra's basis.
    pub inclusion: Matrix,
}

impl Subalgebra {
    /// Builds the algebra on the row module `basis` of `ambient`, whose unit is
    /// `unit` (an ambient element). The module must be closed under products.
    pub fn from_basis(ambient: &Algebra, basis: &Matrix, unit: &[Scalar]) -> Result<Self> {
        let base = ambient.base();
        let rows = basis.to_rows();
        let solver = RowSolver::new(base, &rows, ambient.rank());
        if solver.relations().rows() != 0 {
            return Err(Error::NotFree("subalgebra generators are dependent".into()));
        }
        let k = rows.len();
        if k == 0 {
            return Err(Error::InvalidSubalgebra("the zero module has no unit".into()));
        }
        let unit_coords = solver.express(unit).ok_or_else(|| {
            Error::InvalidSubalgebra(format!(
                "unit {} is absent from the solution module",
                ambient.format_element(unit)
            ))
        })?;
        let mut products = vec![vec::zero(base, k); k * k];
        for i in 0..k {
            for j in i..k {
                let p = ambient.mul(&rows[i], &rows[j]);
                let c = solver.express(&p).ok_or_else(|| {
                    Error::InvalidSubalgebra(format!(
                        "not closed under multiplication: ({}) * ({}) leaves the module",
                        ambient.format_element(&rows[i]),
                        ambient.format_element(&rows[j])
                    ))
                })?;
                products[i * k + j] = c.clone();
                products[j * k + i] = c;
            }
        }
        let labels = rows.iter().map(|r| ambient.format_element(r)).collect();
        let algebra = Algebra::from_products(base, labels, products, unit_coords)?;
        Ok(Subalgebra {
            algebra,
            inclusion: basis.transpose(),
        })
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn include(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.inclusion.apply(x)
    }

    /// Coordinates of an ambient element in the subalgebra basis.
    pub fn coordinates(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        self.solver().express(x)
    }

    pub fn solver(&self) -> RowSolver {
        RowSolver::new(
            self.algebra.base(),
            &self.inclusion.transpose().to_rows(),
            self.inclusion.rows(),
        )
    }
}

/// The elements `x` with `constraints * x = 0`, as a subalgebra.
pub fn subalgebra_from_constraints(a: &Algebra, constraints: &Matrix) -> Result<Subalgebra> {
    if constraints.cols() != a.rank() {
        return Err(Error::Dimension(format!(
            "constraints have {} columns for an algebra of rank {}",
            constraints.cols(),
            a.rank()
        )));
    }
    let basis = free_basis(&kernel(constraints))?;
    Subalgebra::from_basis(a, &basis, a.unit())
}

/// Tensor product `A (x) B`; basis `a_i (x) b_j` sits at index `i * rank(B) + j`.
pub fn tensor(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.base() != b.base() {
        return Err(Error::RingMismatch(a.base().to_string(), b.base().to_string()));
    }
    let (na, nb) = (a.rank(), b.rank());
    let base = a.base();
    let mut labels = Vec::with_capacity(na * nb);
    for la in a.labels() {
        for lb in b.labels() {
            labels.push(format!("{}⊗{}", wrap(la), wrap(lb)));
        }
    }
    let mut products = Vec::with_capacity(na * na * nb * nb);
    for i in 0..na {
        for j in 0..nb {
            for k in 0..na {
                for l in 0..nb {
                    products.push(tensor_vectors(a.basis_product(i, k), b.basis_product(j, l)));
                }
            }
        }
    }
    let unit = tensor_vectors(a.unit(), b.unit());
    Algebra::from_products(base, labels, products, unit)
}

fn wrap(label: &str) -> String {
    if label.contains(' ') {
        format!("({label})")
    } else {
        label.to_string()
    }
}

/// Coordinates of `x (x) y`.
pub fn tensor_vectors(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push(a * b);
        }
    }
    out
}

/// Direct product of unital ideals of one algebra, one component per ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductAlgebra {
    pub algebra: Algebra,
    pub parent_rank: usize,
    pub ideals: Vec<UnitalIdeal>,
    offsets: Vec<usize>,
}

/// `prod_k I_k` with componentwise operations. Zero ideals occupy no
/// coordinates but keep their component index.
pub fn product_over_ideals(parent: &Algebra, ideals: &[UnitalIdeal], names: &[String]) -> Result<ProductAlgebra> {
    if ideals.is_empty() {
        return Err(Error::InvalidAlgebra("product over an empty list of ideals".into()));
    }
    assert_eq!(ideals.len(), names.len(), "one name per component");
    let base = parent.base();
    let mut offsets = Vec::with_capacity(ideals.len());
    let mut total = 0;
    for id in ideals {
        offsets.push(total);
        total += id.rank();
    }
    if total == 0 {
        return Err(Error::InvalidAlgebra("every component of the product is zero".into()));
    }
    let mut labels = Vec::with_capacity(total);
    let mut products = vec![vec::zero(base, total); total * total];
    let mut unit = vec::zero(base, total);
    for (c, id) in ideals.iter().enumerate() {
        let rows = id.basis.to_rows();
        let solver = RowSolver::new(base, &rows, parent.rank());
        for r in &rows {
            labels.push(format!("{}@{}", wrap(&parent.format_element(r)), names[c]));
        }
        let off = offsets[c];
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                let p = parent.mul(&rows[i], &rows[j]);
                let coords = solver.express(&p).ok_or_else(|| {
                    Error::InvalidAlgebra("ideal basis not closed under multiplication".into())
                })?;
                for (k, v) in coords.into_iter().enumerate() {
                    products[(off + i) * total + off + j][off + k] = v;
                }
            }
        }
        if id.rank() > 0 {
            let u = solver
                .express(&id.generator)
                .ok_or_else(|| Error::InvalidAlgebra("ideal generator outside its ideal".into()))?;
            for (k, v) in u.into_iter().enumerate() {
                unit[off + k] = v;
            }
        }
    }
    let algebra = Algebra::from_products(base, labels, products, unit)?;
    Ok(ProductAlgebra {
        algebra,
        parent_rank: parent.rank(),
        ideals: ideals.to_vec(),
        offsets,
    })
}

impl ProductAlgebra {
    pub fn components(&self) -> usize {
        self.ideals.len()
    }

    pub fn offset(&self, c: usize) -> usize {
        self.offsets[c]
    }

    /// Projection onto component `c`, as a matrix into the parent algebra.
    pub fn projection(&self, c: usize) -> Matrix {
        let base = self.algebra.base();
        let mut m = Matrix::zeros(base, self.parent_rank, self.algebra.rank());
        let id = &self.ideals[c];
        for r in 0..id.rank() {
            for (i, v) in id.basis.row(r).iter().enumerate() {
                m.set(i, self.offsets[c] + r, v.clone());
            }
        }
        m
    }

    pub fn component(&self, x: &[Scalar], c: usize) -> Vec<Scalar> {
        self.projection(c).apply(x)
    }

    /// Assembles an element from per-component parent elements; each must lie
    /// in its ideal.
    pub fn assemble(&self, parts: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
        let base = self.algebra.base();
        let mut out = vec::zero(base, self.algebra.rank());
        for (c, p) in parts.iter().enumerate() {
            let id = &self.ideals[c];
            if id.rank() == 0 {
                if !vec::is_zero(p) {
                    return None;
                }
                continue;
            }
            let coords = RowSolver::from_matrix_rows(&id.basis).express(p)?;
            for (k, v) in coords.into_iter().enumerate() {
                out[self.offsets[c] + k] = v;
            }
        }
        Some(out)
    }
}
