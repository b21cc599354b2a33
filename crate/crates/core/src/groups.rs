//! Finite groups by Cayley table. The identity is always element 0.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<usize>,
    inverses: Vec<usize>,
    /// Orders of the cyclic factors when the group was built as a product of
    /// cyclic groups; elements are then ordered lexicographically by exponent.
    cyclic_factors: Option<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates a Cayley table (`table[a][b] = a*b`) with identity at index 0.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidGroup("a group needs at least one element".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup(format!("table must be {n} x {n}")));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidGroup("element labels must be distinct".into()));
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::InvalidGroup(format!(
                    "element 0 ({}) is not the identity: fails against {}",
                    labels[0], labels[a]
                )));
            }
        }
        let mut inverses = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
                Some(b) => inverses[a] = b,
                None => {
                    return Err(Error::InvalidGroup(format!("{} has no inverse", labels[a])));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            labels,
            table: table.into_iter().flatten().collect(),
            inverses,
            cyclic_factors: None,
        })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order()).map(<[usize]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn cyclic_factors(&self) -> Option<&[usize]> {
        self.cyclic_factors.as_deref()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Same table, new labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order());
        FiniteGroup {
            labels,
            ..self.clone()
        }
    }

    /// Exponent tuple of an element of a product of cyclic groups.
    pub fn exponents(&self, a: usize) -> Option<Vec<usize>> {
        let f = self.cyclic_factors.as_ref()?;
        let mut rest = a;
        let mut out = vec![0; f.len()];
        for (i, n) in f.iter().enumerate().rev() {
            out[i] = rest % n;
            rest /= n;
        }
        Some(out)
    }

    pub fn from_exponents(&self, e: &[usize]) -> Option<usize> {
        let f = self.cyclic_factors.as_ref()?;
        Some(e.iter().zip(f).fold(0, |acc, (x, n)| acc * n + x % n))
    }
}

/// `<g | g^n = 1>` with elements `1, g, g2, ..., g{n-1}`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    make_cyclic_named(n, "g")
}

pub fn make_cyclic_named(n: usize, generator: &str) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidGroup("cyclic group of order 0".into()));
    }
    let labels = (0..n).map(|i| power_label(generator, i)).collect();
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let mut g = FiniteGroup::from_table(labels, table)?;
    g.cyclic_factors = Some(vec![n]);
    Ok(g)
}

fn power_label(generator: &str, i: usize) -> String {
    match i {
        0 => "1".into(),
        1 => generator.into(),
        _ => format!("{generator}{i}"),
    }
}

/// Direct product with lexicographically ordered tuples, labels `(a,b,...)`.
pub fn make_product(groups: &[FiniteGroup]) -> Result<FiniteGroup> {
    if groups.is_empty() {
        return Err(Error::InvalidGroup("product of no groups".into()));
    }
    let tuples = tuples_of(groups);
    let labels = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().zip(groups).map(|(x, g)| g.label(*x)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    product_with_labels(groups, &tuples, labels)
}

/// Abelian group `Z_{n1} x ... x Z_{nk}`. A single factor is the cyclic group
/// on `g`; several factors use generators `a, b, c, ...` and labels such as
/// `ab2`.
pub fn make_abelian(orders: &[usize]) -> Result<FiniteGroup> {
    match orders {
        [] => Err(Error::InvalidGroup("no cyclic factors given".into())),
        [n] => make_cyclic(*n),
        _ => {
            if orders.len() > 26 {
                return Err(Error::InvalidGroup("too many cyclic factors".into()));
            }
            let gens: Vec<String> = (0..orders.len())
                .map(|i| ((b'a' + i as u8) as char).to_string())
                .collect();
            let groups = orders
                .iter()
                .zip(&gens)
                .map(|(n, g)| make_cyclic_named(*n, g))
                .collect::<Result<Vec<_>>>()?;
            let tuples = tuples_of(&groups);
            let labels = tuples
                .iter()
                .map(|t| {
                    let s: String = t
                        .iter()
                        .zip(&gens)
                        .filter(|(x, _)| **x > 0)
                        .map(|(x, g)| power_label(g, *x))
                        .collect();
                    if s.is_empty() {
                        "1".into()
                    } else {
                        s
                    }
                })
                .collect();
            product_with_labels(&groups, &tuples, labels)
        }
    }
}

fn tuples_of(groups: &[FiniteGroup]) -> Vec<Vec<usize>> {
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for g in groups {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                g.elements().map(move |x| {
                    let mut u = t.clone();
                    u.push(x);
                    u
                })
            })
            .collect();
    }
    tuples
}

fn product_with_labels(groups: &[FiniteGroup], tuples: &[Vec<usize>], labels: Vec<String>) -> Result<FiniteGroup> {
    let index = |t: &[usize]| t.iter().zip(groups).fold(0, |acc, (x, g)| acc * g.order() + x);
    let table = tuples
        .iter()
        .map(|a| {
            tuples
                .iter()
                .map(|b| {
                    let c: Vec<usize> = a.iter().zip(b).zip(groups).map(|((x, y), g)| g.mul(*x, *y)).collect();
                    index(&c)
                })
                .collect()
        })
        .collect();
    let mut g = FiniteGroup::from_table(labels, table)?;
    // products of cyclic groups keep their factorization
    let mut factors = Vec::new();
    for f in groups {
        match &f.cyclic_factors {
            Some(fs) => factors.extend(fs.iter().copied()),
            None => return Ok(g),
        }
    }
    g.cyclic_factors = Some(factors);
    Ok(g)
}

/// Index of the pair `(a, b)` in `make_product(&[g, h])`.
pub fn pair_index(h: &FiniteGroup, a: usize, b: usize) -> usize {
    a * h.order() + b
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    /// Identity first, then ascending.
    members: Vec<usize>,
}

impl Subgroup {
    pub fn new(g: &FiniteGroup, members: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        if set.iter().any(|&x| x >= g.order()) {
            return Err(Error::InvalidGroup("subgroup member out of range".into()));
        }
        if !set.contains(&0) {
            return Err(Error::InvalidGroup("subgroup must contain the identity".into()));
        }
        for &a in &set {
            if !set.contains(&g.inv(a)) {
                return Err(Error::InvalidGroup(format!("not closed under inverses at {}", g.label(a))));
            }
            for &b in &set {
                if !set.contains(&g.mul(a, b)) {
                    return Err(Error::InvalidGroup(format!(
                        "not closed under products at ({}, {})",
                        g.label(a),
                        g.label(b)
                    )));
                }
            }
        }
        Ok(Subgroup {
            members: set.into_iter().collect(),
        })
    }

    pub fn trivial() -> Self {
        Subgroup { members: vec![0] }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            members: g.elements().collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn describe(&self, g: &FiniteGroup) -> String {
        let parts: Vec<&str> = self.members.iter().map(|&x| g.label(x)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

pub fn subgroup_closure(g: &FiniteGroup, seeds: &[usize]) -> Result<Subgroup> {
    if let Some(bad) = seeds.iter().find(|&&s| s >= g.order()) {
        return Err(Error::InvalidGroup(format!("no element with index {bad}")));
    }
    let mut set: BTreeSet<usize> = [0].into_iter().chain(seeds.iter().copied()).collect();
    loop {
        let mut grown = set.clone();
        for &a in &set {
            for &b in &set {
                grown.insert(g.mul(a, b));
            }
        }
        if grown.len() == set.len() {
            break;
        }
        set = grown;
    }
    Ok(Subgroup {
        members: set.into_iter().collect(),
    })
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    g.elements().all(|x| {
        h.members()
            .iter()
            .all(|&m| h.contains(g.mul(g.mul(x, m), g.inv(x))))
    })
}

/// Every subgroup, ordered by size then members.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
    found.insert(vec![0]);
    while let Some(h) = frontier.pop() {
        for x in g.elements() {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut seeds = h.clone();
            seeds.push(x);
            let s = subgroup_closure(g, &seeds).expect("valid seeds").members;
            if found.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out.into_iter().map(|members| Subgroup { members }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientData {
    pub sub: Subgroup,
    /// Coset representatives, identity first; coset `i` is `transversal[i] * H`.
    pub transversal: Vec<usize>,
    /// For each element of the parent, the index of its coset.
    pub coset_of: Vec<usize>,
    pub quotient: FiniteGroup,
}

/// `G/H` with the greedy transversal in element order.
pub fn quotient(g: &FiniteGroup, h: &Subgroup) -> Result<QuotientData> {
    if !is_normal(g, h) {
        return Err(Error::NotNormal(h.describe(g)));
    }
    let mut reps = Vec::new();
    let mut seen = vec![false; g.order()];
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for &m in h.members() {
            seen[g.mul(x, m)] = true;
        }
    }
    quotient_with_transversal(g, h, &reps)
}

/// `G/H` with explicitly chosen coset representatives.
pub fn quotient_with_transversal(g: &FiniteGroup, h: &Subgroup, reps: &[usize]) -> Result<QuotientData> {
    if !is_normal(g, h) {
        return Err(Error::NotNormal(h.describe(g)));
    }
    if reps.first() != Some(&0) {
        return Err(Error::InvalidGroup("the transversal must start with the identity".into()));
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    for (i, &r) in reps.iter().enumerate() {
        for &m in h.members() {
            let x = g.mul(r, m);
            if coset_of[x] != usize::MAX {
                return Err(Error::InvalidGroup(format!(
                    "{} and {} lie in the same coset",
                    g.label(reps[coset_of[x]]),
                    g.label(r)
                )));
            }
            coset_of[x] = i;
        }
    }
    if coset_of.contains(&usize::MAX) {
        return Err(Error::InvalidGroup("the transversal misses a coset".into()));
    }
    let labels = reps.iter().map(|&r| g.label(r).to_string()).collect();
    let table = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| coset_of[g.mul(a, b)]).collect())
        .collect();
    let quotient = FiniteGroup::from_table(labels, table)?;
    Ok(QuotientData {
        sub: h.clone(),
        transversal: reps.to_vec(),
        coset_of,
        quotient,
    })
}

/// `{(g, g^-1)}` inside `make_product(&[g, g])`.
pub fn delta_subgroup(g: &FiniteGroup) -> Result<(FiniteGroup, Subgroup)> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let gg = make_product(&[g.clone(), g.clone()])?;
    let members: Vec<usize> = g.elements().map(|x| pair_index(g, x, g.inv(x))).collect();
    let sub = Subgroup::new(&gg, &members)?;
    Ok((gg, sub))
}

/// Parses a comma separated list of element labels.
pub fn parse_elements(g: &FiniteGroup, text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            g.index_of(s).ok_or_else(|| {
                Error::InvalidGroup(format!(
                    "unknown element \"{s}\" (elements: {})",
                    g.labels().join(", ")
                ))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_four() {
        let g = make_cyclic(4).unwrap();
        assert_eq!(g.labels(), &["1", "g", "g2", "g3"]);
        assert_eq!(g.mul(1, 3), 0);
        assert_eq!(g.inv(1), 3);
        assert!(g.is_abelian());
        assert_eq!(make_cyclic(1).unwrap().order(), 1);
        assert!(make_cyclic(0).is_err());
    }

    #[test]
    fn klein_four() {
        let z2 = make_cyclic(2).unwrap();
        let k = make_product(&[z2.clone(), z2]).unwrap();
        assert_eq!(k.order(), 4);
        assert!(k.elements().all(|x| k.mul(x, x) == 0));
        assert_eq!(k.labels(), &["(1,1)", "(1,g)", "(g,1)", "(g,g)"]);
        assert_eq!(k.cyclic_factors(), Some(&[2, 2][..]));
        let k2 = make_abelian(&[2, 2]).unwrap();
        assert_eq!(k2.labels(), &["1", "b", "a", "ab"]);
        assert_eq!(k2.table(), k.table());
    }

    #[test]
    fn product_is_associative_up_to_reindexing() {
        let (a, b, c) = (make_cyclic(2).unwrap(), make_cyclic(3).unwrap(), make_cyclic(2).unwrap());
        let left = make_product(&[make_product(&[a.clone(), b.clone()]).unwrap(), c.clone()]).unwrap();
        let right = make_product(&[a, make_product(&[b, c]).unwrap()]).unwrap();
        // lexicographic tuple order makes the canonical reindexing the identity
        assert_eq!(left.table(), right.table());
    }

    #[test]
    fn subgroup_and_quotient() {
        let g = make_cyclic(4).unwrap();
        let h = subgroup_closure(&g, &[2]).unwrap();
        assert_eq!(h.members(), &[0, 2]);
        let q = quotient(&g, &h).unwrap();
        assert_eq!(q.quotient.order(), 2);
        assert_eq!(q.transversal, vec![0, 1]);
        assert_eq!(q.transversal.len() * h.order(), g.order());
        assert_eq!(all_subgroups(&g).len(), 3);
    }

    #[test]
    fn non_normal_quotient_is_rejected() {
        // S3 as permutations of {0,1,2}
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] { [p[q[0]], p[q[1]], p[q[2]]] };
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| perms.iter().position(|r| *r == compose(p, q)).unwrap()).collect())
            .collect();
        let labels = ["1", "s01", "s02", "s12", "r", "r2"].iter().map(|s| s.to_string()).collect();
        let s3 = FiniteGroup::from_table(labels, table).unwrap();
        let h = subgroup_closure(&s3, &[1]).unwrap();
        assert!(!is_normal(&s3, &h));
        assert!(matches!(quotient(&s3, &h), Err(Error::NotNormal(_))));
        assert!(delta_subgroup(&s3).is_err());
        let rot = subgroup_closure(&s3, &[4]).unwrap();
        assert!(is_normal(&s3, &rot));
    }

    #[test]
    fn delta_of_z4() {
        let g = make_cyclic(4).unwrap();
        let (gg, d) = delta_subgroup(&g).unwrap();
        let labels: Vec<&str> = d.members().iter().map(|&x| gg.label(x)).collect();
        assert_eq!(labels, vec!["(1,1)", "(g,g3)", "(g2,g2)", "(g3,g)"]);
        let reps: Vec<usize> = g.elements().map(|x| pair_index(&g, x, 0)).collect();
        let q = quotient_with_transversal(&gg, &d, &reps).unwrap();
        assert_eq!(q.quotient.order(), 4);
        let z2 = make_cyclic(2).unwrap();
        let (z2z2, d2) = delta_subgroup(&z2).unwrap();
        assert_eq!(d2.describe(&z2z2), "{(1,1), (g,g)}");
    }

    #[test]
    fn identity_must_be_first() {
        let labels = vec!["g".to_string(), "1".to_string()];
        let table = vec![vec![1, 0], vec![0, 1]];
        assert!(FiniteGroup::from_table(labels, table).is_err());
    }
}
