use std::path::{Path, PathBuf};

use pargal_core::algebra::{format_combination, Subalgebra};
use pargal_core::envelope::{fixed_ring, globalize, psi_certificate, psi_matrix, subgroup_idempotents};
use pargal_core::format;
use pargal_core::groups::{make_cyclic, parse_elements, subgroup_closure, Subgroup};
use pargal_core::harrison::{
    compare_classes, cyclic_compose, cyclic_decompose, harrison_product, harrison_product_detail, idempotent_class,
    star_product_suite, tensor_action, ExtensionClass,
};
use pargal_core::paction::{Axiom, IsoOutcome, PartialAction};
use pargal_core::quotient::{quotient_action, quotient_galois_check, quotient_via_globalization, QuotientAction};
use pargal_core::scalars::{same_row_module, vec, BaseRing, Matrix, Scalar};
use pargal_core::{Error, Result};

use crate::report::{Report, Status};
use crate::Command;

fn name_of(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn stem_of(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

/// Reads an action, optionally reduced to `base`; with `checked` the axioms
/// must hold.
fn load(path: &Path, base: Option<&BaseRing>, checked: bool) -> Result<PartialAction> {
    let mut a = format::load_unchecked(path)?;
    if let Some(b) = base {
        a = a.change_base(b)?;
    }
    if checked {
        if let Some(v) = a.verify().summary() {
            return Err(Error::InvalidAction(format!("{}: {v}", name_of(path))));
        }
    }
    Ok(a)
}

fn load_class(path: &Path, base: Option<&BaseRing>) -> Result<ExtensionClass> {
    ExtensionClass::new(load(path, base, true)?).map_err(|e| match e {
        Error::NotGalois(m) => Error::NotGalois(format!("{}: {m}", name_of(path))),
        other => other,
    })
}

fn subgroup(a: &PartialAction, labels: &str) -> Result<Subgroup> {
    subgroup_closure(a.group(), &parse_elements(a.group(), labels)?)
}

fn save(report: &mut Report, action: &PartialAction, out: Option<&PathBuf>) -> Result<()> {
    if let Some(path) = out {
        format::save(action, path)?;
        report.written.push(path.display().to_string());
    }
    Ok(())
}

fn summarize(report: &mut Report, title: &str, a: &PartialAction) {
    let s = a.carrier();
    let g = a.group();
    let sec = report.section(title);
    sec.item("base ring", s.base())
        .item("group", format!("order {}: {}", g.order(), g.labels().join(", ")))
        .item("algebra", format!("rank {}: {}", s.rank(), s.labels().join(", ")))
        .item("global", a.is_global());
    for x in g.elements() {
        sec.item(format!("1_{}", g.label(x)), s.format_element(a.idem(x)));
    }
}

fn basis_of(sub: &Subalgebra, ambient: &pargal_core::algebra::Algebra) -> String {
    let parts: Vec<String> = (0..sub.rank()).map(|j| ambient.format_element(&sub.inclusion.column(j))).collect();
    format!("{{{}}}", parts.join(", "))
}

fn matrix_rows(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// The fixed ring, the coset idempotents and the evaluation table of a
/// quotient, written in the coordinates of the original carrier.
fn describe_quotient(report: &mut Report, title: &str, alpha: &PartialAction, q: &QuotientAction) {
    let s = alpha.carrier();
    let r = &q.result;
    let qg = r.group();
    let fixed = &q.fixed;
    let sec = report.section(title);
    sec.item("subgroup", q.subgroup.describe(alpha.group()))
        .item("quotient group", qg.labels().join(", "))
        .item("fixed ring", format!("rank {}", fixed.rank()))
        .item("basis", basis_of(fixed, s));
    for c in qg.elements() {
        sec.item(format!("1~ at {}", qg.label(c)), s.format_element(&q.tilde[c]));
    }
    for c in qg.elements() {
        let back = r.idem(qg.inv(c));
        for j in 0..fixed.rank() {
            let x = fixed.algebra.mul(&fixed.algebra.basis_vector(j), back);
            if vec::is_zero(&x) {
                continue;
            }
            let value = fixed.include(&r.act(c, &x));
            sec.item(
                format!("{}: {}", qg.label(c), s.format_element(&fixed.include(&x))),
                s.format_element(&value),
            );
        }
    }
}

fn verify_check(report: &mut Report, name: &str, a: &PartialAction) {
    report.expect(name, a.verify().summary());
}

pub fn run(command: &Command, base: Option<&BaseRing>) -> Result<Report> {
    let mut report = match command {
        Command::Verify { file } => verify(file, base)?,
        Command::Galois { file } => galois(file, base)?,
        Command::Trace { file } => trace(file, base)?,
        Command::Invariants { file, subgroup } => invariants(file, subgroup.as_deref(), base)?,
        Command::Restrict { file, subgroup, out } => restrict(file, &subgroup.subgroup, out.out.as_ref(), base)?,
        Command::Globalize { file, out } => globalize_cmd(file, out.out.as_ref(), base)?,
        Command::Psi { file, subgroup } => psi(file, &subgroup.subgroup, base)?,
        Command::Quotient { file, subgroup, out } => quotient(file, &subgroup.subgroup, out.out.as_ref(), base)?,
        Command::QuotientCheck { file, subgroup } => quotient_check(file, &subgroup.subgroup, base)?,
        Command::Tensor { first, second, out } => tensor(first, second, out.out.as_ref(), base)?,
        Command::Product { first, second, out } => product(first, second, out.out.as_ref(), base)?,
        Command::Inverse { file, out } => inverse(file, out.out.as_ref(), base)?,
        Command::Idempotent { file, out } => idempotent(file, out.out.as_ref(), base)?,
        Command::Iso { first, second } => iso(first, second, base)?,
        Command::Suite { files } => suite(files, base)?,
        Command::Decompose { file, out } => decompose(file, out.as_ref(), base)?,
        Command::Compose { files, out } => compose(files, out.out.as_ref(), base)?,
    };
    report.finish();
    Ok(report)
}

fn verify(file: &Path, base: Option<&BaseRing>) -> Result<Report> {
    let a = load(file, base, false)?;
    let mut report = Report::new("verify", vec![name_of(file)]);
    summarize(&mut report, "action", &a);
    let v = a.verify();
    for ax in Axiom::ALL {
        let found: Vec<String> = v
            .violations
            .iter()
            .filter(|x| x.axiom == ax)
            .map(|x| format!("({}) {}", x.witness.join(", "), x.detail))
            .collect();
        let detail = (!found.is_empty()).then(|| format!("{} witnesses: {}", found.len(), found.join("; ")));
        report.expect(ax.name(), detail);
    }
    Ok(report)
}

fn galois(file: &Path, base: Option<&BaseRing>) -> Result<Report> {
    let a = load(file, base, true)?;
    let mut report = Report::new("galois", vec![name_of(file)]);
    summarize(&mut report, "action", &a);
    let s = a.carrier();
    let phi = a.phi_map()?;
    let coords = a.galois_coordinates();
    let fixed = a.invariants()?;
    let sec = report.section("galois");
    sec.item("invariants", format!("rank {}: {}", fixed.rank(), basis_of(&fixed, s)))
        .item("phi", format!("{}x{}, bijective: {}", phi.matrix.rows(), phi.matrix.cols(), phi.bijective));
    if let Some(c) = &coords {
        for (i, (x, y)) in c.pairs.iter().enumerate() {
            sec.item(format!("x{}", i + 1), s.format_element(x))
                .item(format!("y{}", i + 1), s.format_element(y));
        }
    }
    report.expect(
        "coordinates exist iff phi is bijective",
        (coords.is_some() != phi.bijective).then(|| format!("coordinates {}, phi bijective {}", coords.is_some(), phi.bijective)),
    );
    report.expect(
        "Galois coordinates exist",
        coords.is_none().then(|| "phi is not bijective".to_string()),
    );
    if let Some(c) = &coords {
        report.expect(
            "sum x_i alpha_g(y_i 1_g^-1) = delta_1,g",
            (!c.verify(&a)).then(|| "identity fails".to_string()),
        );
    }
    Ok(report)
}

fn trace(file: &Path, base: Option<&BaseRing>) -> Result<Report> {
    let a = load(file, base, true)?;
    let s = a.carrier();
    let mut report = Report::new("trace", vec![name_of(file)]);
    summarize(&mut report, "action", &a);
    let sec = report.section("trace");
    let mut outside = None;
    let mut inputs: Vec<(String, Vec<Scalar>)> = vec![("1".into(), s.unit().to_vec())];
    inputs.extend(s.labels().iter().enumerate().map(|(i, l)| (l.clone(), s.basis_vector(i))));
    for (label, x) in inputs {
        let t = a.trace(&x);
        if outside.is_none() && !a.is_invariant(&t) {
            outside = Some(format!("tr({label}) is not invariant"));
        }
        sec.item(format!("tr({label})"), s.format_element(&t));
    }
    report.expect("traces are invariant", outside);
    Ok(report)
}

fn invariants(file: &Path, labels: Option<&str>, base: Option<&BaseRing>) -> Result<Report> {
    let a = load(file, base, true)?;
    let s = a.carrier();
    let mut report = Report::new("invariants", vec![name_of(file)]);
    let (acting, h) = match labels {
        Some(l) => {
            let h = subgroup(&a, l)?;
            (a.restrict(&h)?, h)
        }
        None => (a.clone(), Subgroup::whole(a.group())),
    };
    let fixed = acting.invariants()?;
    report
        .section("invariants")
        .item("subgroup", h.describe(a.group()))
        .item("rank", fixed.rank())
        .item("basis", basis_of(&fixed, s));
    let bad = (0..fixed.rank()).find(|&j| !acting.is_invariant(&fixed.inclusion.column(j)));
    report.expect("basis elements are invariant", bad.map(|j| format!("basis element {}", j + 1)));
    report.expect(
        "1_S is invariant",
        fixed.coordinates(s.unit()).is_none().then(|| "1_S is outside the span".to_string()),
    );
    Ok(report)
}

fn restrict(file: &Path, labels: &str, out: Option<&PathBuf>, base: Option<&BaseRing>) -> Result<Report> {
    let a = load(file, base, true)?;
    let h = subgroup(&a, labels)?;
    let r = a.restrict(&h)?;
    let mut report = Report::new("restrict", vec![name_of(file)]);
    summarize(&mut report, "restriction", &r);
    verify_check(&mut report, "restriction is a partial action", &r);
    save(&mut report, &r, out)?;
    Ok(report)
}

fn globalize_cmd(file: &Path, out: Option<&PathBuf>, base: Option<&BaseRing>) -> Result<Report> {
    let a = load(file, base, true)?;
    let glob = globalize(&a)?;
    let t = glob.algebra();
    let mut report = Report::new("globalize", vec![name_of(file)]);
    summarize(&mut report, "action", &a);
    report
        .section("globalization")
        .item("rank of T", glob.rank())
        .item("T basis", {
            let (g, s) = (a.group(), a.carrier());
            let labels: Vec<String> = g
                .elements()
                .flat_map(|x| s.labels().iter().map(move |l| format!("{l}@{}", g.label(x))))
                .collect();
            let parts: Vec<String> =
                (0..glob.rank()).map(|j| format_combination(&labels, &glob.t.inclusion.column(j))).collect();
            format!("{{{}}}", parts.join(", "))
        })
        .item("1_S", t.format_element(&glob.one_s));
    report.certificate("", &glob.certificate);
    let global = glob.global_action(&a)?;
    verify_check(&mut report, "(T, beta) is a global action", &global);
    save(&mut report, &global, out)?;
    Ok(report)
}

fn psi(file: &Path, labels: &str, base: Option<&BaseRing>) -> Result<Report> {
    let a = load(file, base, true)?;
    let h = subgroup(&a, labels)?;
    let glob = globalize(&a)?;
    let t = glob.algebra();
    let idems = subgroup_idempotents(&glob, &h)?;
    let psi = psi_matrix(&glob, &h)?;
    let th = fixed_ring(&glob, &h)?;
    let mut report = Report::new("psi", vec![name_of(file)]);
    let sec = report.section("psi_H");
    sec.item("subgroup", h.describe(a.group()))
        .item("rank of T", glob.rank())
        .item("rank of T^H", th.rank())
        .item("e_H", t.format_element(&idems.e_h))
        .item("psi_H(1_S) = 1_T", psi.apply(&glob.one_s) == t.unit());
    report.certificate("", &psi_certificate(&a, &glob, &h)?);
    Ok(report)
}

fn quotient(file: &Path, labels: &str, out: Option<&PathBuf>, base: Option<&BaseRing>) -> Result<Report> {
    let a = load(file, base, true)?;
    let h = subgroup(&a, labels)?;
    let q = quotient_action(&a, &h)?;
    let mut report = Report::new("quotient", vec![name_of(file)]);
    describe_quotient(&mut report, "quotient", &a, &q);
    report.certificate("", &q.certificate);
    verify_check(&mut report, "quotient is a partial action", &q.result);
    save(&mut report, &q.result, out)?;
    Ok(report)
}

fn quotient_check(file: &Path, labels: &str, base: Option<&BaseRing>) -> Result<Report> {
    let a = load(file, base, true)?;
    let h = subgroup(&a, labels)?;
    let intrinsic = quotient_action(&a, &h)?;
    let global = quotient_via_globalization(&a, &h)?;
    let mut report = Report::new("quotient-check", vec![name_of(file)]);
    describe_quotient(&mut report, "quotient", &a, &intrinsic);
    report.certificate("closed form: ", &intrinsic.certificate);
    report.certificate("globalization: ", &global.certificate);
    report.expect(
        "closed form and globalization agree",
        (intrinsic.result != global.result).then(|| "the two quotient actions differ".to_string()),
    );
    let whole = a.invariants()?;
    let inner = intrinsic.result.invariants()?;
    let lifted: Vec<Vec<Scalar>> =
        (0..inner.rank()).map(|j| intrinsic.fixed.include(&inner.inclusion.column(j))).collect();
    let lifted = Matrix::from_rows(a.carrier().base(), lifted, a.carrier().rank());
    report.expect(
        "(S^H)^(G/H) = S^G",
        (!same_row_module(&lifted, &whole.inclusion.transpose())).then(|| "iterated invariants differ".to_string()),
    );
    if a.galois_coordinates().is_some() {
        let found = quotient_galois_check(&a, &h).map(|(_, c)| c.verify(&intrinsic.result));
        report.expect(
            "the quotient of a partial Galois action is partial Galois",
            match found {
                Ok(true) => None,
                Ok(false) => Some("coordinates fail".into()),
                Err(e) => Some(e.to_string()),
            },
        );
    }
    Ok(report)
}

fn tensor(first: &Path, second: &Path, out: Option<&PathBuf>, base: Option<&BaseRing>) -> Result<Report> {
    let a = load(first, base, true)?;
    let b = load(second, base, true)?;
    let t = tensor_action(&a, &b)?;
    let mut report = Report::new("tensor", vec![name_of(first), name_of(second)]);
    summarize(&mut report, "tensor product", &t);
    verify_check(&mut report, "tensor product is a partial action", &t);
    save(&mut report, &t, out)?;
    Ok(report)
}

fn product(first: &Path, second: &Path, out: Option<&PathBuf>, base: Option<&BaseRing>) -> Result<Report> {
    let a = load_class(first, base)?;
    let b = load_class(second, base)?;
    let p = harrison_product_detail(&a, &b)?;
    let mut report = Report::new("product", vec![name_of(first), name_of(second)]);
    describe_quotient(&mut report, "product", &p.tensor, &p.quotient);
    report.certificate("", &p.quotient.certificate);
    report.expect("the product is a class", None);
    save(&mut report, p.class.rep(), out)?;
    Ok(report)
}

fn inverse(file: &Path, out: Option<&PathBuf>, base: Option<&BaseRing>) -> Result<Report> {
    let a = load_class(file, base)?;
    let inv = a.inverse();
    let mut report = Report::new("inverse", vec![name_of(file)]);
    summarize(&mut report, "inverse", inv.rep());
    verify_check(&mut report, "inverse is a partial action", inv.rep());
    report.expect(
        "Galois coordinates verify",
        (!inv.coordinates().verify(inv.rep())).then(|| "identity fails".to_string()),
    );
    save(&mut report, inv.rep(), out)?;
    Ok(report)
}

fn idempotent(file: &Path, out: Option<&PathBuf>, base: Option<&BaseRing>) -> Result<Report> {
    let a = load_class(file, base)?;
    let e = idempotent_class(a.rep())?;
    let hat = &e.hat.action;
    let mut report = Report::new("idempotent", vec![name_of(file)]);
    report
        .section("hat action")
        .item("components", e.hat.product.components())
        .item("rank", hat.carrier().rank())
        .item("E(S, alpha)", format!("rank {}: {}", e.ring.rank(), basis_of(&e.ring, hat.carrier())));
    describe_quotient(&mut report, "idempotent class", hat, &e.quotient);
    report.certificate("", &e.quotient.certificate);
    let square = harrison_product(&a, &a.inverse())?;
    let (status, detail) = compare_classes(&e.class, &square)?;
    report.check("E(X) = X * X*", status.into(), (status != pargal_core::harrison::Status::Pass).then_some(detail));
    save(&mut report, e.class.rep(), out)?;
    Ok(report)
}

fn iso(first: &Path, second: &Path, base: Option<&BaseRing>) -> Result<Report> {
    let a = load(first, base, true)?;
    let b = load(second, base, true)?;
    let mut report = Report::new("iso", vec![name_of(first), name_of(second)]);
    let outcome = pargal_core::paction::iso_check(&a, &b)?;
    let sec = report.section("isomorphism");
    match &outcome {
        IsoOutcome::Isomorphic(f) => {
            sec.item("witness", matrix_rows(f));
            let ok = pargal_core::paction::check_morphism(&a, &b, f);
            report.expect("witness is a G-isomorphism", (!ok).then(|| "re-verification failed".to_string()));
        }
        IsoOutcome::NotIsomorphic => report.expect("isomorphic", Some("no isomorphism exists".into())),
        IsoOutcome::Undecided(why) => report.check("isomorphic", Status::Undecided, Some(why.clone())),
    }
    Ok(report)
}

fn suite(files: &[PathBuf], base: Option<&BaseRing>) -> Result<Report> {
    let classes = files
        .iter()
        .map(|f| Ok((stem_of(f), load_class(f, base)?)))
        .collect::<Result<Vec<_>>>()?;
    let result = star_product_suite(&classes)?;
    let mut report = Report::new("suite", files.iter().map(|f| name_of(f)).collect());
    use pargal_core::harrison::Status as S;
    report
        .section("suite")
        .item("classes", classes.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join(", "))
        .item("checks", result.checks.len())
        .item("passed", result.count(S::Pass))
        .item("failed", result.count(S::Fail))
        .item("undecided", result.count(S::Undecided));
    for c in result.checks {
        let detail = (c.status != S::Pass).then_some(c.detail);
        report.check(c.name, c.status.into(), detail);
    }
    Ok(report)
}

fn cyclic_factors(class: &ExtensionClass) -> Result<Vec<pargal_core::groups::FiniteGroup>> {
    let orders = class.group().cyclic_factors().ok_or_else(|| {
        Error::NotAProduct(format!("the group of order {} carries no cyclic factorization", class.group().order()))
    })?;
    orders.iter().map(|&n| make_cyclic(n)).collect()
}

fn decompose(file: &Path, out: Option<&PathBuf>, base: Option<&BaseRing>) -> Result<Report> {
    let class = load_class(file, base)?;
    let factors = cyclic_factors(&class)?;
    let parts = cyclic_decompose(&class, &factors)?;
    let mut report = Report::new("decompose", vec![name_of(file)]);
    for (i, p) in parts.iter().enumerate() {
        summarize(&mut report, &format!("factor {} (Z{})", i + 1, factors[i].order()), p.rep());
    }
    let back = cyclic_compose(&parts)?.rep().with_group(class.group().clone())?;
    let back = ExtensionClass::new(back)?;
    let (status, detail) = compare_classes(&back, &class)?;
    report.check(
        "the factors compose back to the class",
        status.into(),
        (status != pargal_core::harrison::Status::Pass).then_some(detail),
    );
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        for (i, p) in parts.iter().enumerate() {
            save(&mut report, p.rep(), Some(&dir.join(format!("{}-{}.json", stem_of(file), i + 1))))?;
        }
    }
    Ok(report)
}

fn compose(files: &[PathBuf], out: Option<&PathBuf>, base: Option<&BaseRing>) -> Result<Report> {
    let classes = files.iter().map(|f| load_class(f, base)).collect::<Result<Vec<_>>>()?;
    let composed = cyclic_compose(&classes)?;
    let mut report = Report::new("compose", files.iter().map(|f| name_of(f)).collect());
    summarize(&mut report, "composite", composed.rep());
    let all_cyclic = classes.iter().all(|c| c.group().cyclic_factors().is_some_and(|f| f.len() == 1));
    if all_cyclic {
        let factors: Vec<_> = classes.iter().map(|c| c.group().clone()).collect();
        let parts = cyclic_decompose(&composed, &factors)?;
        for (i, (p, c)) in parts.iter().zip(&classes).enumerate() {
            let (status, detail) = compare_classes(p, c)?;
            report.check(
                format!("factor {} is recovered", i + 1),
                status.into(),
                (status != pargal_core::harrison::Status::Pass).then_some(detail),
            );
        }
    }
    save(&mut report, composed.rep(), out)?;
    Ok(report)
}
