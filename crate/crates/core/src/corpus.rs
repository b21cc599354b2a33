//! The built-in example actions. Each builder takes the base ring so the same
//! data can be read over `Q` and over residue rings.
//!
//! The JSON fixtures under `corpus/` are canonical serializations of these
//! builders over `Q`.

use crate::algebra::Algebra;
use crate::groups::make_cyclic;
use crate::harrison::{regular_action, tensor_many, ExtensionClass};
use crate::paction::PartialAction;
use crate::scalars::{BaseRing, Matrix, Scalar};

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn indicator(base: &BaseRing, n: usize, support: &[usize]) -> Vec<Scalar> {
    (0..n)
        .map(|i| if support.contains(&i) { base.one() } else { base.zero() })
        .collect()
}

/// Matrix sending basis element `src` to `dst` for each listed pair and every
/// other basis element to zero.
fn transfer(base: &BaseRing, n: usize, pairs: &[(usize, usize)]) -> Matrix {
    let mut m = Matrix::zeros(base, n, n);
    for &(src, dst) in pairs {
        m.set(dst, src, base.one());
    }
    m
}

fn build(base: &BaseRing, names: &[&str], supports: [&[usize]; 4], maps: [&[(usize, usize)]; 4]) -> PartialAction {
    let n = names.len();
    let group = make_cyclic(4).expect("cyclic group");
    let carrier = Algebra::split(base, labels(names));
    let idems = supports.iter().map(|s| indicator(base, n, s)).collect();
    let maps = maps.iter().map(|p| transfer(base, n, p)).collect();
    PartialAction::new(group, carrier, idems, maps).expect("well-shaped fixture")
}

/// `Z4` on `R^3 = Re1 + Re2 + Re3` with `S_g = Re1 + Re2`,
/// `S_g2 = Re1 + Re3`, `S_g3 = Re2 + Re3`.
pub fn example_one(base: &BaseRing) -> PartialAction {
    build(
        base,
        &["e1", "e2", "e3"],
        [&[0, 1, 2], &[0, 1], &[0, 2], &[1, 2]],
        [
            &[(0, 0), (1, 1), (2, 2)],
            &[(1, 0), (2, 1)],
            &[(0, 2), (2, 0)],
            &[(0, 1), (1, 2)],
        ],
    )
}

/// [`example_one`] with `alpha_g2` replaced by multiplication by `1_g2`; (P4)
/// fails at `(g, g, e3)`.
pub fn corrupted_example_one(base: &BaseRing) -> PartialAction {
    build(
        base,
        &["e1", "e2", "e3"],
        [&[0, 1, 2], &[0, 1], &[0, 2], &[1, 2]],
        [
            &[(0, 0), (1, 1), (2, 2)],
            &[(1, 0), (2, 1)],
            &[(0, 0), (2, 2)],
            &[(0, 1), (1, 2)],
        ],
    )
}

/// `Z4` on `R^2 = Re'1 + Re'2` with `S_g = Re'2`, `S_g2 = 0`, `S_g3 = Re'1`.
pub fn example_two(base: &BaseRing) -> PartialAction {
    build(
        base,
        &["e'1", "e'2"],
        [&[0, 1], &[1], &[], &[0]],
        [&[(0, 0), (1, 1)], &[(0, 1)], &[], &[(1, 0)]],
    )
}

pub fn example_two_star(base: &BaseRing) -> PartialAction {
    example_two(base).inverse_action()
}

pub fn trivial_z2(base: &BaseRing) -> PartialAction {
    regular_action(&make_cyclic(2).expect("cyclic group"), base)
}

pub fn trivial_z4(base: &BaseRing) -> PartialAction {
    regular_action(&make_cyclic(4).expect("cyclic group"), base)
}

/// `Z2` acting globally on `R[u]/(u^2 - 1)` by `u -> -u`.
pub fn global_z2_swap(base: &BaseRing) -> PartialAction {
    let one = base.one();
    let carrier = Algebra::new(
        base,
        labels(&["1", "u"]),
        &[
            (0, 0, 0, one.clone()),
            (0, 1, 1, one.clone()),
            (1, 0, 1, one.clone()),
            (1, 1, 0, one.clone()),
        ],
        vec![one.clone(), base.zero()],
    )
    .expect("valid algebra");
    let flip = Matrix::from_i64(base, &[&[1, 0], &[0, -1]]);
    let group = make_cyclic(2).expect("cyclic group");
    PartialAction::global(group, carrier, vec![Matrix::identity(base, 2), flip]).expect("well-shaped fixture")
}

/// The tensor of the regular `Z2` action with [`global_z2_swap`], an action
/// of `Z2 x Z2`.
pub fn klein_product(base: &BaseRing) -> PartialAction {
    tensor_many(&[trivial_z2(base), global_z2_swap(base)]).expect("tensor of fixtures")
}

/// The shipped fixtures, by file stem. All of them satisfy the axioms.
pub fn fixtures(base: &BaseRing) -> Vec<(&'static str, PartialAction)> {
    vec![
        ("ex1", example_one(base)),
        ("ex2", example_two(base)),
        ("ex2-star", example_two_star(base)),
        ("trivial-Z2", trivial_z2(base)),
        ("trivial-Z4", trivial_z4(base)),
        ("global-Z2-swap", global_z2_swap(base)),
        ("klein-product", klein_product(base)),
    ]
}

/// The five `Z4` classes used by the semigroup suite: both examples, their
/// inverses and the trivial extension.
pub fn suite_classes(base: &BaseRing) -> crate::Result<Vec<(String, ExtensionClass)>> {
    let one = example_one(base);
    let two = example_two(base);
    let items = [
        ("ex1", one.clone()),
        ("ex1*", one.inverse_action()),
        ("ex2", two.clone()),
        ("ex2*", two.inverse_action()),
        ("E(Z4)", trivial_z4(base)),
    ];
    items
        .into_iter()
        .map(|(name, a)| Ok((name.to_string(), ExtensionClass::new(a)?)))
        .collect()
}
