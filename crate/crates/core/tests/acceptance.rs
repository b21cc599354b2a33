//! End-to-end acceptance checks. Prints one line per criterion and exits
//! nonzero if any of them fails.

mod common;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use pargal_core::algebra::Subalgebra;
use pargal_core::corpus;
use pargal_core::envelope::{globalize, psi_certificate};
use pargal_core::format::parse_action;
use pargal_core::groups::{all_subgroups, is_normal, make_cyclic, make_product, subgroup_closure, FiniteGroup, Subgroup};
use pargal_core::harrison::{
    compare_classes, cyclic_compose, cyclic_decompose, harrison_product_detail, star_product_suite, ExtensionClass,
    Status,
};
use pargal_core::paction::{Axiom, PartialAction};
use pargal_core::quotient::{quotient_action, quotient_galois_check, quotient_map_value, quotient_via_globalization};
use pargal_core::scalars::{same_row_module, vec, BaseRing, Matrix, Scalar};
use pargal_core::Error;

use common::perm::{self, Perm};

type Outcome = Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn ints(base: &BaseRing, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| base.from_i64(x)).collect()
}

/// Rows of the given vectors.
fn module(base: &BaseRing, rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64(base, rows)
}

fn spans(sub: &Subalgebra, expected: &Matrix) -> bool {
    same_row_module(&sub.inclusion.transpose(), expected)
}

fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    all_subgroups(g).into_iter().filter(|h| is_normal(g, h)).collect()
}

fn criterion_1() -> Outcome {
    let q = BaseRing::Rationals;
    let a = corpus::example_one(&q);
    ensure(a.verify().ok(), || "ex1 fails the axioms".into())?;
    let h = subgroup_closure(a.group(), &[2]).map_err(err)?;
    let (qa, coords) = quotient_galois_check(&a, &h).map_err(err)?;
    ensure(spans(&qa.fixed, &module(&q, &[&[1, 0, 1], &[0, 1, 0]])), || {
        "S^{alpha_H} is not R(e1 + e3) + Re2".into()
    })?;
    ensure(qa.fixed.algebra.labels() == ["e1 + e3", "e2"], || {
        format!("fixed basis {:?}", qa.fixed.algebra.labels())
    })?;
    ensure(qa.tilde.iter().all(|t| t == a.carrier().unit()), || "1~_{gH} != 1_S".into())?;
    let r = &qa.result;
    ensure(r.group().order() == 2, || "quotient group order".into())?;
    ensure(r.map(1) == &module(&q, &[&[0, 1], &[1, 0]]), || format!("alpha_gH = {:?}", r.map(1)))?;
    // alpha_gH(x) = alpha_g(x 1_g3) + alpha_g3(x 1_g)(1_S - 1_g)
    let s = a.carrier();
    for j in 0..qa.fixed.rank() {
        let x = qa.fixed.inclusion.column(j);
        let shown = vec::add(&a.act(1, &x), &s.mul(&a.act(3, &x), &s.complement(a.idem(1))));
        let computed = qa.fixed.include(&r.map(1).apply(&qa.fixed.algebra.basis_vector(j)));
        ensure(shown == computed, || format!("displayed formula differs on basis element {j}"))?;
    }
    ensure(coords.verify(r), || "quotient Galois coordinates".into())?;
    ensure(r.invariants().map_err(err)?.rank() == 1, || "quotient invariants are not R".into())
}

fn criterion_2() -> Outcome {
    let q = BaseRing::Rationals;
    let theta = corpus::example_two(&q);
    let coords = theta.galois_coordinates().ok_or("ex2 has no Galois coordinates")?;
    let e1 = ints(&q, &[1, 0]);
    let e2 = ints(&q, &[0, 1]);
    let pairs = [(e1.clone(), e1.clone()), (e2.clone(), e2.clone())];
    let listed = pargal_core::paction::GaloisCoordinates { pairs: pairs.to_vec() };
    ensure(listed.verify(&theta), || "{e'1, e'2} are not Galois coordinates".into())?;
    ensure(coords.verify(&theta), || "computed coordinates fail".into())?;

    let star = ExtensionClass::new(theta.inverse_action()).map_err(err)?;
    let class = ExtensionClass::new(theta.clone()).map_err(err)?;
    let p = harrison_product_detail(&star, &class).map_err(err)?;
    let qa = &p.quotient;
    // basis of S' (x) S': e'a (x) e'b at index 2a + b
    let fixed = module(&q, &[&[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
    ensure(qa.fixed.rank() == 3 && spans(&qa.fixed, &fixed), || "dG fixed ring".into())?;
    let tilde = [
        ints(&q, &[1, 1, 1, 1]),
        ints(&q, &[1, 1, 0, 1]),
        ints(&q, &[0, 1, 1, 0]),
        ints(&q, &[1, 0, 1, 1]),
    ];
    for (i, t) in tilde.iter().enumerate() {
        ensure(&qa.tilde[i] == t, || format!("1~ at (g^{i}, 1): {:?}", qa.tilde[i]))?;
    }
    let domains = [
        module(&q, &[&[1, 0, 0, 1], &[0, 1, 0, 0]]),
        module(&q, &[&[0, 1, 0, 0], &[0, 0, 1, 0]]),
        module(&q, &[&[1, 0, 0, 1], &[0, 0, 1, 0]]),
    ];
    let r = &qa.result;
    let fixed_alg = &qa.fixed;
    for (i, d) in domains.iter().enumerate() {
        let x = i + 1;
        let gens: Vec<Vec<Scalar>> = (0..fixed_alg.rank())
            .map(|j| fixed_alg.include(&fixed_alg.algebra.mul(&fixed_alg.algebra.basis_vector(j), r.idem(x))))
            .collect();
        let got = Matrix::from_rows(&q, gens, 4);
        ensure(same_row_module(&got, d) && d.rows() == 2, || format!("domain at (g^{x}, 1)"))?;
    }
    let image = |l: usize, v: &[i64]| {
        let c = fixed_alg.coordinates(&ints(&q, v)).expect("element of the fixed ring");
        fixed_alg.include(&r.map(l).apply(&c))
    };
    let u = [1, 0, 0, 1];
    // (g^2, 1): swap of e'1 (x) e'2 and e'2 (x) e'1, as printed
    ensure(image(2, &[0, 1, 0, 0]) == ints(&q, &[0, 0, 1, 0]), || "(g2,1) on e'1 (x) e'2".into())?;
    ensure(image(2, &[0, 0, 1, 0]) == ints(&q, &[0, 1, 0, 0]), || "(g2,1) on e'2 (x) e'1".into())?;
    // (g, 1) by the closed form: u -> e'1 (x) e'2 and e'2 (x) e'1 -> u. The
    // printed table (u -> u, e'2 (x) e'1 -> "e'1 (x) e'12") is not this map.
    ensure(image(1, &u) == ints(&q, &[0, 1, 0, 0]), || "(g,1) on u".into())?;
    ensure(image(1, &[0, 0, 1, 0]) == ints(&q, &u), || "(g,1) on e'2 (x) e'1".into())?;
    ensure(image(1, &u) != ints(&q, &u), || "printed (g,1) table unexpectedly matches".into())?;
    // (g^3, 1) inverts (g, 1)
    ensure(image(3, &[0, 1, 0, 0]) == ints(&q, &u), || "(g3,1) on e'1 (x) e'2".into())?;
    ensure(image(3, &u) == ints(&q, &[0, 0, 1, 0]), || "(g3,1) on u".into())?;
    // the generic closed form, evaluated on the tensor action directly
    let delta = &qa.subgroup;
    for l in 1..4 {
        let rep = qa.cosets.transversal[l];
        for j in 0..fixed_alg.rank() {
            let x = fixed_alg.include(&fixed_alg.algebra.mul(
                &fixed_alg.algebra.basis_vector(j),
                r.idem(r.group().inv(l)),
            ));
            let mechanical = quotient_map_value(&p.tensor, delta, rep, &x);
            let c = fixed_alg.coordinates(&x).expect("fixed element");
            ensure(mechanical == fixed_alg.include(&r.map(l).apply(&c)), || format!("closed form at l = g^{l}"))?;
        }
    }
    Ok(())
}

fn corpus_with_bases() -> Vec<(String, PartialAction)> {
    let mut out = Vec::new();
    for base in [BaseRing::Rationals, BaseRing::Modular(2)] {
        for (name, a) in corpus::fixtures(&base) {
            out.push((format!("{name} over {base}"), a));
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let mut cases = 0;
    for (name, a) in corpus_with_bases() {
        let whole = a.invariants().map_err(err)?;
        for h in normal_subgroups(a.group()) {
            let at = || format!("{name}, H = {}", h.describe(a.group()));
            let intrinsic = quotient_action(&a, &h).map_err(|e| format!("{}: {e}", at()))?;
            let global = quotient_via_globalization(&a, &h).map_err(|e| format!("{}: {e}", at()))?;
            ensure(intrinsic.result == global.result, || format!("{}: routes differ", at()))?;
            let inner = intrinsic.result.invariants().map_err(err)?;
            let lifted: Vec<Vec<Scalar>> =
                (0..inner.rank()).map(|j| intrinsic.fixed.include(&inner.inclusion.column(j))).collect();
            let lifted = Matrix::from_rows(a.carrier().base(), lifted, a.carrier().rank());
            ensure(same_row_module(&lifted, &whole.inclusion.transpose()), || {
                format!("{}: iterated invariants differ from S^alpha", at())
            })?;
            cases += 1;
        }
    }
    ensure(cases > 0, || "no cases".into())
}

fn criterion_4() -> Outcome {
    for (name, a) in corpus_with_bases() {
        let glob = globalize(&a).map_err(|e| format!("{name}: {e}"))?;
        let required = ["(G1)", "(G2)", "(G3)", "(G4)", "1_g = beta_g(1_S) 1_S"];
        for r in required {
            let c = glob.certificate.checks.iter().find(|c| c.name == r);
            ensure(c.is_some_and(|c| c.passed), || format!("{name}: {r}"))?;
        }
        for h in all_subgroups(a.group()) {
            let cert = psi_certificate(&a, &glob, &h).map_err(|e| format!("{name}: {e}"))?;
            let failed = cert.failures().next().map(|c| c.name.clone());
            if let Some(c) = failed {
                return Err(format!("{name}, H = {}: {c}", h.describe(a.group())));
            }
        }
    }
    Ok(())
}

fn galois_agrees(name: &str, a: &PartialAction) -> Outcome {
    let phi = a.phi_map().map_err(err)?;
    let coords = a.galois_coordinates();
    ensure(coords.is_some() == phi.bijective, || {
        format!("{name}: coordinates {} but phi bijective = {}", coords.is_some(), phi.bijective)
    })?;
    ensure(coords.is_none_or(|c| c.verify(a)), || format!("{name}: coordinates fail"))
}

fn criterion_5() -> Outcome {
    let mut bijective = 0;
    for (name, a) in corpus_with_bases() {
        galois_agrees(&name, &a)?;
        bijective += usize::from(a.phi_map().map_err(err)?.bijective);
        for h in all_subgroups(a.group()) {
            galois_agrees(&format!("{name} on {}", h.describe(a.group())), &a.restrict(&h).map_err(err)?)?;
            if is_normal(a.group(), &h) {
                let q = quotient_action(&a, &h).map_err(err)?;
                galois_agrees(&format!("{name} mod {}", h.describe(a.group())), &q.result)?;
            }
        }
    }
    ensure(bijective > 0, || "no Galois action in the corpus".into())
}

/// Library statuses must agree with the permutation model on every check.
/// Checks the model refutes are reported, not hidden.
fn criterion_6() -> Result<Vec<String>, String> {
    let mut refuted = Vec::new();
    for base in [BaseRing::Rationals, BaseRing::Modular(2)] {
        let classes = corpus::suite_classes(&base).map_err(err)?;
        let report = star_product_suite(&classes).map_err(err)?;
        let models: Vec<(String, Perm)> = classes
            .iter()
            .map(|(n, c)| Ok((n.clone(), Perm::from_action(c.rep()).ok_or(format!("{n} is not a permutation action"))?)))
            .collect::<Result<_, String>>()?;
        let expected: HashMap<String, bool> = perm::suite(&models, classes[0].1.group()).into_iter().collect();
        ensure(expected.len() == report.checks.len(), || "check lists differ".into())?;
        for c in &report.checks {
            ensure(c.status != Status::Undecided, || format!("{} undecided over {base}", c.name))?;
            let model = expected.get(&c.name).copied().ok_or(format!("{} unknown to the model", c.name))?;
            ensure((c.status == Status::Pass) == model, || format!("{} over {base}: library and model disagree", c.name))?;
            if c.status != Status::Pass {
                refuted.push(format!("{} over {base}", c.name));
            }
        }
    }
    Ok(refuted)
}

fn criterion_7() -> Outcome {
    let q = BaseRing::Rationals;
    let z2 = make_cyclic(2).map_err(err)?;
    let factors = [z2.clone(), z2.clone()];
    let trivial = ExtensionClass::new(corpus::trivial_z2(&q)).map_err(err)?;
    let swap = ExtensionClass::new(corpus::global_z2_swap(&q)).map_err(err)?;
    for pair in [[trivial.clone(), swap.clone()], [trivial.clone(), trivial.clone()], [swap.clone(), trivial]] {
        let composed = cyclic_compose(&pair).map_err(err)?;
        ensure(composed.group().table() == make_product(&factors).map_err(err)?.table(), || "group".into())?;
        let parts = cyclic_decompose(&composed, &factors).map_err(err)?;
        for (p, x) in parts.iter().zip(&pair) {
            ensure(compare_classes(p, x).map_err(err)?.0 == Status::Pass, || "decompose after compose".into())?;
        }
        let again = cyclic_compose(&parts).map_err(err)?;
        ensure(compare_classes(&again, &composed).map_err(err)?.0 == Status::Pass, || "compose after decompose".into())?;
    }
    let klein = ExtensionClass::new(corpus::klein_product(&q)).map_err(err)?;
    let parts = cyclic_decompose(&klein, &factors).map_err(err)?;
    ensure(compare_classes(&cyclic_compose(&parts).map_err(err)?, &klein).map_err(err)?.0 == Status::Pass, || {
        "klein-product round trip".into()
    })
}

fn symmetric_group_3() -> FiniteGroup {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    let table = perms
        .iter()
        .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect();
    let labels = ["1", "(12)", "(23)", "(13)", "(123)", "(132)"].map(String::from).to_vec();
    FiniteGroup::from_table(labels, table).unwrap()
}

fn criterion_8() -> Outcome {
    let q = BaseRing::Rationals;
    let bad = corpus::corrupted_example_one(&q);
    let report = bad.verify();
    ensure(!report.passed(Axiom::P4), || "corrupted fixture passes (P4)".into())?;
    let witness = ["g", "g", "e3"].map(String::from);
    ensure(report.witnesses(Axiom::P4).contains(&&witness[..]), || "witness (g, g, e3) missing".into())?;

    let s3 = symmetric_group_3();
    let regular = pargal_core::harrison::regular_action(&s3, &q);
    let h = subgroup_closure(&s3, &[1]).map_err(err)?;
    ensure(matches!(quotient_action(&regular, &h), Err(Error::NotNormal(_))), || "non-normal quotient accepted".into())?;

    let text = pargal_core::format::to_json(&corpus::example_one(&q)).replacen("\"base\": \"Q\"", "\"base\": \"Z\"", 1);
    let msg = parse_action(&text).map_err(|e| e.to_string()).err().unwrap_or_default();
    ensure(msg == "unsupported base ring \"Z\": supported rings are Q and Z/<n> with n >= 2", || msg.clone())?;
    let msg = BaseRing::parse("Z").map_err(|e| e.to_string()).err().unwrap_or_default();
    ensure(msg == "unsupported base ring \"Z\": supported rings are Q and Z/<n> with n >= 2", || msg)
}

enum Verdict {
    Pass,
    /// Fails, and the failure is confirmed by an independent model.
    Refuted(Vec<String>),
    Fail(String),
}

fn plain(run: fn() -> Outcome) -> impl Fn() -> Verdict {
    move || match run() {
        Ok(()) => Verdict::Pass,
        Err(why) => Verdict::Fail(why),
    }
}

fn main() -> ExitCode {
    let suite = || match criterion_6() {
        Ok(r) if r.is_empty() => Verdict::Pass,
        Ok(r) => Verdict::Refuted(r),
        Err(why) => Verdict::Fail(why),
    };
    type Criterion = Box<dyn Fn() -> Verdict>;
    let criteria: Vec<(&str, Criterion)> = vec![
        ("example 1 quotient", Box::new(plain(criterion_1))),
        ("example 2 product", Box::new(plain(criterion_2))),
        ("quotient routes agree", Box::new(plain(criterion_3))),
        ("globalization certificates", Box::new(plain(criterion_4))),
        ("Galois cross-check", Box::new(plain(criterion_5))),
        ("inverse semigroup suite", Box::new(suite)),
        ("cyclic decomposition round trip", Box::new(plain(criterion_7))),
        ("negative controls", Box::new(plain(criterion_8))),
    ];
    let mut unexpected = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Verdict::Pass => println!("criterion {}: pass ({name}, {secs:.2}s)", n + 1),
            Verdict::Refuted(checks) => {
                println!(
                    "criterion {}: FAIL ({name}, {secs:.2}s): {} checks fail, each confirmed by the permutation model:",
                    n + 1,
                    checks.len()
                );
                for c in checks {
                    println!("    {c}");
                }
            }
            Verdict::Fail(why) => {
                unexpected += 1;
                println!("criterion {}: FAIL ({name}, {secs:.2}s): {why}", n + 1);
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
