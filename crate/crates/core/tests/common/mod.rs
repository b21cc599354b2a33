#![allow(dead_code)]

pub mod perm;

use pargal_core::algebra::Algebra;
use pargal_core::groups::make_cyclic;
use pargal_core::paction::PartialAction;
use pargal_core::scalars::{BaseRing, Matrix};

/// The regular action of `Z_n` restricted to the ideal spanned by the points
/// in `subset`: `1_g` marks `subset` and its translate by `g`.
pub fn restricted_regular(n: usize, subset: &[usize], base: &BaseRing) -> PartialAction {
    let g = make_cyclic(n).unwrap();
    let k = subset.len();
    let labels = subset.iter().map(|p| format!("p{p}")).collect();
    let carrier = Algebra::split(base, labels);
    let pos = |p: usize| subset.iter().position(|&q| q == p);
    let mut idems = Vec::new();
    let mut maps = Vec::new();
    for x in g.elements() {
        let mut e = vec![base.zero(); k];
        let mut m = Matrix::zeros(base, k, k);
        for (i, &p) in subset.iter().enumerate() {
            if pos((p + n - x) % n).is_some() {
                e[i] = base.one();
            }
            if let Some(j) = pos((p + x) % n) {
                m.set(j, i, base.one());
            }
        }
        idems.push(e);
        maps.push(m);
    }
    PartialAction::new(g, carrier, idems, maps).unwrap()
}
