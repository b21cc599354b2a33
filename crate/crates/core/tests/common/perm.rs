//! Brute-force model of partial actions on split algebras by partial
//! permutations of the primitive idempotents. Shares no code with the library
//! beyond reading group tables and action data.

use pargal_core::groups::FiniteGroup;
use pargal_core::paction::PartialAction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perm {
    pub table: Vec<Vec<usize>>,
    /// `dom[g][p]`: point `p` lies in the support of `1_g`.
    pub dom: Vec<Vec<bool>>,
    /// `pi[g][p]`: image of `p` in the support of `1_{g^-1}`.
    pub pi: Vec<Vec<Option<usize>>>,
}

fn inverse(table: &[Vec<usize>], g: usize) -> usize {
    (0..table.len()).find(|&h| table[g][h] == 0).unwrap()
}

impl Perm {
    pub fn points(&self) -> usize {
        self.dom[0].len()
    }

    fn order(&self) -> usize {
        self.table.len()
    }

    /// Reads a library action whose carrier is split in its basis and whose
    /// maps are partial permutation matrices.
    pub fn from_action(a: &PartialAction) -> Option<Perm> {
        let s = a.carrier();
        let n = s.rank();
        for i in 0..n {
            for j in 0..n {
                let prod = s.mul(&s.basis_vector(i), &s.basis_vector(j));
                let expect: Vec<bool> = (0..n).map(|k| i == j && k == i).collect();
                if prod.iter().zip(&expect).any(|(x, &e)| if e { !x.is_one() } else { !x.is_zero() }) {
                    return None;
                }
            }
        }
        let g = a.group();
        let table = g.table();
        let mut dom = Vec::new();
        let mut pi = Vec::new();
        for x in g.elements() {
            let e = a.idem(x);
            if e.iter().any(|c| !c.is_zero() && !c.is_one()) {
                return None;
            }
            dom.push(e.iter().map(|c| c.is_one()).collect());
            let m = a.map(x);
            let mut images = vec![None; n];
            for (p, image) in images.iter_mut().enumerate() {
                let ones: Vec<usize> = (0..n).filter(|&r| m.get(r, p).is_one()).collect();
                let others = (0..n).filter(|&r| !m.get(r, p).is_zero() && !m.get(r, p).is_one()).count();
                match (ones.as_slice(), others) {
                    ([], 0) => {}
                    ([r], 0) => *image = Some(*r),
                    _ => return None,
                }
            }
            pi.push(images);
        }
        Some(Perm { table, dom, pi })
    }

    pub fn regular(group: &FiniteGroup) -> Perm {
        let table = group.table();
        let n = table.len();
        Perm {
            dom: vec![vec![true; n]; n],
            pi: table.iter().map(|row| row.iter().map(|&x| Some(x)).collect()).collect(),
            table,
        }
    }

    pub fn star(&self) -> Perm {
        let inv = |g| inverse(&self.table, g);
        Perm {
            table: self.table.clone(),
            dom: (0..self.order()).map(|g| self.dom[inv(g)].clone()).collect(),
            pi: (0..self.order()).map(|g| self.pi[inv(g)].clone()).collect(),
        }
    }

    pub fn is_global(&self) -> bool {
        self.dom.iter().all(|d| d.iter().all(|&b| b))
    }

    /// The axioms in set form: `pi_g` is a bijection from `dom[g^-1]` onto
    /// `dom[g]`, and `pi_g pi_h` agrees with `pi_{gh}` where defined.
    pub fn is_partial_action(&self) -> bool {
        let n = self.points();
        let inv = |g| inverse(&self.table, g);
        for g in 0..self.order() {
            let mut hit = vec![false; n];
            for p in 0..n {
                match self.pi[g][p] {
                    Some(q) if self.dom[inv(g)][p] && self.dom[g][q] && !hit[q] => hit[q] = true,
                    None if !self.dom[inv(g)][p] => {}
                    _ => return false,
                }
            }
            if hit != self.dom[g] {
                return false;
            }
            for h in 0..self.order() {
                for p in 0..n {
                    if let Some(q) = self.pi[h][p] {
                        if let Some(r) = self.pi[g][q] {
                            if self.pi[self.table[g][h]][p] != Some(r) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        self.dom[0].iter().all(|&b| b)
    }

    /// Orbits of the subgroup `{(g, g^-1)}` on pairs of points, ordered by
    /// their smallest member (pairs indexed `p * |b| + q`).
    fn delta_orbits(a: &Perm, b: &Perm) -> Vec<usize> {
        let nb = b.points();
        let n = a.points() * nb;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for g in 0..a.order() {
            let gi = inverse(&a.table, g);
            for p in 0..a.points() {
                for q in 0..nb {
                    if let (Some(p2), Some(q2)) = (a.pi[g][p], b.pi[gi][q]) {
                        let (x, y) = (find(&mut parent, p * nb + q), find(&mut parent, p2 * nb + q2));
                        parent[x.max(y)] = x.min(y);
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
        let mut ids: Vec<usize> = roots.clone();
        ids.sort();
        ids.dedup();
        roots.iter().map(|r| ids.binary_search(r).unwrap()).collect()
    }

    /// The product class: orbits of `dG` with the induced action of the cosets
    /// `(g, 1) dG`, evaluated pointwise by the closed forms.
    #[allow(clippy::needless_range_loop)]
    pub fn product(a: &Perm, b: &Perm) -> Perm {
        let nb = b.points();
        let n = a.points() * nb;
        let orbit = Perm::delta_orbits(a, b);
        let m = orbit.iter().max().map_or(0, |x| x + 1);
        let order = a.order();
        let inv = |g| inverse(&a.table, g);
        // (l, t) acting on pair points
        let dom = |l: usize, t: usize, x: usize| a.dom[l][x / nb] && b.dom[t][x % nb];
        let act = |l: usize, t: usize, x: usize| Some(a.pi[l][x / nb]? * nb + b.pi[t][x % nb]?);
        let coset = |g: usize| -> Vec<(usize, usize)> { (0..order).map(|h| (a.table[g][h], inv(h))).collect() };
        let mut qdom = vec![vec![false; m]; order];
        let mut qpi = vec![vec![None; m]; order];
        for g in 0..order {
            let ks = coset(g);
            // the idempotent of the coset is the union of its domains
            let tilde: Vec<bool> = (0..n).map(|x| ks.iter().any(|&(l, t)| dom(l, t, x))).collect();
            for o in 0..m {
                let members: Vec<bool> = (0..n).filter(|&x| orbit[x] == o).map(|x| tilde[x]).collect();
                assert!(members.iter().all(|&v| v == members[0]), "domain is not a union of orbits");
                qdom[g][o] = members[0];
            }
        }
        for g in 0..order {
            let ks = coset(g);
            let gi = inv(g);
            for o in 0..m {
                if !qdom[gi][o] {
                    continue;
                }
                let mut value = vec![0i64; n];
                for (i, &(l, t)) in ks.iter().enumerate() {
                    let (li, ti) = (inv(l), inv(t));
                    for x in (0..n).filter(|&x| orbit[x] == o && dom(li, ti, x)) {
                        let y = act(l, t, x).expect("defined on the domain");
                        if ks[..i].iter().all(|&(l2, t2)| !dom(l2, t2, y)) {
                            value[y] += 1;
                        }
                    }
                }
                assert!(value.iter().all(|&v| v == 0 || v == 1), "non-idempotent image");
                let targets: Vec<usize> = (0..n).filter(|&y| value[y] == 1).collect();
                let target = orbit[targets[0]];
                let full: Vec<usize> = (0..n).filter(|&y| orbit[y] == target).collect();
                assert_eq!(targets, full, "image is not a single orbit");
                qpi[g][o] = Some(target);
            }
        }
        Perm {
            table: a.table.clone(),
            dom: qdom,
            pi: qpi,
        }
    }

    /// A bijection of points carrying every domain and map of `self` onto `other`.
    pub fn isomorphic(&self, other: &Perm) -> bool {
        if self.points() != other.points() || self.table != other.table {
            return false;
        }
        let n = self.points();
        let mut sigma = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend(other, 0, &mut sigma, &mut used)
    }

    fn extend(&self, other: &Perm, p: usize, sigma: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = self.points();
        if p == n {
            return (0..self.order()).all(|g| {
                (0..n).all(|x| {
                    self.dom[g][x] == other.dom[g][sigma[x]] && self.pi[g][x].map(|y| sigma[y]) == other.pi[g][sigma[x]]
                })
            });
        }
        for c in 0..n {
            if used[c] || (0..self.order()).any(|g| self.dom[g][p] != other.dom[g][c]) {
                continue;
            }
            sigma[p] = c;
            used[c] = true;
            if self.extend(other, p + 1, sigma, used) {
                return true;
            }
            used[c] = false;
        }
        sigma[p] = usize::MAX;
        false
    }
}

/// The semigroup checks with the names used by the library suite; the
/// idempotent of `x` is taken to be `x * x*`.
pub fn suite(classes: &[(String, Perm)], group: &FiniteGroup) -> Vec<(String, bool)> {
    let n = classes.len();
    let x = |i: usize| &classes[i].1;
    let name = |i: usize| classes[i].0.as_str();
    let p = |a: &Perm, b: &Perm| Perm::product(a, b);
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let ok = p(x(i), x(j)).isomorphic(&p(x(j), x(i)));
            out.push((format!("{} * {} = {} * {}", name(i), name(j), name(j), name(i)), ok));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let ok = p(&p(x(i), x(j)), x(k)).isomorphic(&p(x(i), &p(x(j), x(k))));
                out.push((
                    format!("({} * {}) * {} = {} * ({} * {})", name(i), name(j), name(k), name(i), name(j), name(k)),
                    ok,
                ));
            }
        }
    }
    let eps: Vec<Perm> = (0..n).map(|i| p(x(i), &x(i).star())).collect();
    for i in 0..n {
        let s = x(i).star();
        out.push((format!("{0} * {0}* * {0} = {0}", name(i)), p(&p(x(i), &s), x(i)).isomorphic(x(i))));
        out.push((format!("{0}* * {0} * {0}* = {0}*", name(i)), p(&p(&s, x(i)), &s).isomorphic(&s)));
    }
    for i in 0..n {
        out.push((format!("E({0}) * E({0}) = E({0})", name(i)), p(&eps[i], &eps[i]).isomorphic(&eps[i])));
        out.push((format!("E({0}) = {0} * {0}*", name(i)), true));
        for j in i + 1..n {
            let ok = p(&eps[i], &eps[j]).isomorphic(&p(&eps[j], &eps[i]));
            out.push((format!("E({}) * E({}) = E({}) * E({})", name(i), name(j), name(j), name(i)), ok));
        }
    }
    let unit = Perm::regular(group);
    for i in (0..n).filter(|&i| x(i).is_global()) {
        out.push((format!("E_G * {0} = {0}", name(i)), p(&unit, x(i)).isomorphic(x(i))));
        out.push((format!("{0} * E_G = {0}", name(i)), p(x(i), &unit).isomorphic(x(i))));
    }
    out
}
