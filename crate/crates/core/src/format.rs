//! The JSON interchange format for partial actions.
//!
//! ```json
//! {
//!   "format": 1,
//!   "base": "Q",
//!   "algebra": {
//!     "labels": ["e1", "e2"],
//!     "structure": [[0, 0, 0, "1"], [1, 1, 1, "1"]],
//!     "unit": ["1", "1"]
//!   },
//!   "group": {"cyclic": [2]},
//!   "action": [
//!     {"element": "1", "idempotent": ["1", "1"], "matrix": [["1", "0"], ["0", "1"]]},
//!     {"element": "g", "idempotent": ["1", "1"], "matrix": [["0", "1"], ["1", "0"]]}
//!   ]
//! }
//! ```
//!
//! `matrix` holds the rows of the total map `x -> alpha_g(x 1_{g^-1})` in the
//! algebra basis (column `j` is the image of basis element `j`). A group is
//! either `{"cyclic": [n1, ...]}`, optionally with `"labels"` replacing the
//! default element names, or `{"labels": [...], "table": [[...]]}` with the
//! identity first. Scalars are strings such as `"-3/4"`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::groups::{make_abelian, FiniteGroup};
use crate::paction::PartialAction;
use crate::scalars::{BaseRing, Matrix, Scalar};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionFile {
    format: u32,
    base: String,
    algebra: AlgebraSpec,
    group: GroupSpec,
    action: Vec<ActionEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraSpec {
    labels: Vec<String>,
    structure: Vec<(usize, usize, usize, String)>,
    unit: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum GroupSpec {
    Cyclic {
        cyclic: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Table { labels: Vec<String>, table: Vec<Vec<usize>> },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionEntry {
    element: String,
    idempotent: Vec<String>,
    matrix: Vec<Vec<String>>,
}

fn scalars(base: &BaseRing, items: &[String], location: &str) -> Result<Vec<Scalar>> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| {
            base.parse_scalar(s)
                .map_err(|e| Error::parse(format!("{location}[{i}]"), e.to_string()))
        })
        .collect()
}

fn relabel(g: FiniteGroup, labels: Option<&Vec<String>>) -> Result<FiniteGroup> {
    let Some(labels) = labels else {
        return Ok(g);
    };
    if labels.len() != g.order() {
        return Err(Error::InvalidGroup(format!("expected {} labels", g.order())));
    }
    let mut sorted = labels.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != labels.len() {
        return Err(Error::InvalidGroup("group labels must be distinct".into()));
    }
    Ok(g.relabeled(labels.clone()))
}

/// Parses an action without checking the axioms.
pub fn parse_action(text: &str) -> Result<PartialAction> {
    let file: ActionFile = serde_json::from_str(text).map_err(|e| {
        Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())
    })?;
    if file.format != FORMAT_VERSION {
        return Err(Error::parse("format", format!("unsupported format version {}", file.format)));
    }
    let base = BaseRing::parse(&file.base)?;
    let spec = &file.algebra;
    let rank = spec.labels.len();
    let mut constants = Vec::with_capacity(spec.structure.len());
    for (n, (i, j, k, v)) in spec.structure.iter().enumerate() {
        let c = base
            .parse_scalar(v)
            .map_err(|e| Error::parse(format!("algebra.structure[{n}]"), e.to_string()))?;
        constants.push((*i, *j, *k, c));
    }
    let unit = scalars(&base, &spec.unit, "algebra.unit")?;
    let algebra = Algebra::new(&base, spec.labels.clone(), &constants, unit)
        .map_err(|e| Error::parse("algebra", e.to_string()))?;
    let group = match &file.group {
        GroupSpec::Cyclic { cyclic, labels } => make_abelian(cyclic).and_then(|g| relabel(g, labels.as_ref())),
        GroupSpec::Table { labels, table } => FiniteGroup::from_table(labels.clone(), table.clone()),
    }
    .map_err(|e| Error::parse("group", e.to_string()))?;
    let mut idems: Vec<Option<Vec<Scalar>>> = vec![None; group.order()];
    let mut maps: Vec<Option<Matrix>> = vec![None; group.order()];
    for (n, entry) in file.action.iter().enumerate() {
        let loc = format!("action[{n}]");
        let g = group
            .index_of(&entry.element)
            .ok_or_else(|| Error::parse(format!("{loc}.element"), format!("unknown group element \"{}\"", entry.element)))?;
        if idems[g].is_some() {
            return Err(Error::parse(format!("{loc}.element"), format!("element \"{}\" listed twice", entry.element)));
        }
        if entry.idempotent.len() != rank {
            return Err(Error::parse(format!("{loc}.idempotent"), format!("expected {rank} coordinates")));
        }
        idems[g] = Some(scalars(&base, &entry.idempotent, &format!("{loc}.idempotent"))?);
        if entry.matrix.len() != rank {
            return Err(Error::parse(format!("{loc}.matrix"), format!("expected {rank} rows")));
        }
        let mut rows = Vec::with_capacity(rank);
        for (r, row) in entry.matrix.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::parse(format!("{loc}.matrix[{r}]"), format!("expected {rank} entries")));
            }
            rows.push(scalars(&base, row, &format!("{loc}.matrix[{r}]"))?);
        }
        maps[g] = Some(Matrix::from_rows(&base, rows, rank));
    }
    if let Some(g) = idems.iter().position(Option::is_none) {
        return Err(Error::parse("action", format!("no entry for group element \"{}\"", group.label(g))));
    }
    PartialAction::new(
        group,
        algebra,
        idems.into_iter().map(Option::unwrap).collect(),
        maps.into_iter().map(Option::unwrap).collect(),
    )
}

/// Parses an action and checks every axiom.
pub fn read_action(text: &str) -> Result<PartialAction> {
    let a = parse_action(text)?;
    if let Some(v) = a.verify().summary() {
        return Err(Error::InvalidAction(v));
    }
    Ok(a)
}

pub fn load(path: &Path) -> Result<PartialAction> {
    read_action(&read_file(path)?)
}

pub fn load_unchecked(path: &Path) -> Result<PartialAction> {
    parse_action(&read_file(path)?)
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn save(action: &PartialAction, path: &Path) -> Result<()> {
    std::fs::write(path, to_json(action)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

fn string_list(items: impl IntoIterator<Item = String>) -> String {
    let parts: Vec<String> = items.into_iter().map(|s| quote(&s)).collect();
    format!("[{}]", parts.join(", "))
}

fn scalar_list(items: &[Scalar]) -> String {
    string_list(items.iter().map(ToString::to_string))
}

/// Canonical serialization: fixed key order, one structure constant or matrix
/// row per line.
pub fn to_json(action: &PartialAction) -> String {
    let s = action.carrier();
    let g = action.group();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"format\": {FORMAT_VERSION},");
    let _ = writeln!(out, "  \"base\": {},", quote(&s.base().to_string()));
    out.push_str("  \"algebra\": {\n");
    let _ = writeln!(out, "    \"labels\": {},", string_list(s.labels().iter().cloned()));
    out.push_str("    \"structure\": [\n");
    let consts = s.structure_constants();
    for (n, (i, j, k, c)) in consts.iter().enumerate() {
        let sep = if n + 1 < consts.len() { "," } else { "" };
        let _ = writeln!(out, "      [{i}, {j}, {k}, {}]{sep}", quote(&c.to_string()));
    }
    out.push_str("    ],\n");
    let _ = writeln!(out, "    \"unit\": {}", scalar_list(s.unit()));
    out.push_str("  },\n");
    let cyclic = g
        .cyclic_factors()
        .and_then(|f| make_abelian(f).ok().filter(|h| h.table() == g.table()).map(|h| (f, h)));
    match cyclic {
        Some((f, h)) => {
            let parts: Vec<String> = f.iter().map(ToString::to_string).collect();
            if h.labels() == g.labels() {
                let _ = writeln!(out, "  \"group\": {{\"cyclic\": [{}]}},", parts.join(", "));
            } else {
                let _ = writeln!(
                    out,
                    "  \"group\": {{\"cyclic\": [{}], \"labels\": {}}},",
                    parts.join(", "),
                    string_list(g.labels().iter().cloned())
                );
            }
        }
        None => {
            out.push_str("  \"group\": {\n");
            let _ = writeln!(out, "    \"labels\": {},", string_list(g.labels().iter().cloned()));
            out.push_str("    \"table\": [\n");
            let table = g.table();
            for (n, row) in table.iter().enumerate() {
                let sep = if n + 1 < table.len() { "," } else { "" };
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "      [{}]{sep}", cells.join(", "));
            }
            out.push_str("    ]\n  },\n");
        }
    }
    out.push_str("  \"action\": [\n");
    for x in g.elements() {
        out.push_str("    {\n");
        let _ = writeln!(out, "      \"element\": {},", quote(g.label(x)));
        let _ = writeln!(out, "      \"idempotent\": {},", scalar_list(action.idem(x)));
        out.push_str("      \"matrix\": [\n");
        let m = action.map(x);
        for r in 0..m.rows() {
            let sep = if r + 1 < m.rows() { "," } else { "" };
            let _ = writeln!(out, "        {}{sep}", scalar_list(m.row(r)));
        }
        out.push_str("      ]\n");
        let sep = if x + 1 < g.order() { "," } else { "" };
        let _ = writeln!(out, "    }}{sep}");
    }
    out.push_str("  ]\n}\n");
    out
}
