//! Reading trees and writing labelings as JSON or DOT.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{vertex_sums, Arc, OrientedLabeling, Tree};
use crate::path::lemma1_label;
use crate::verify::{verify_antimagic, verify_lemma1, AntimagicReport};

/// A tree together with the names its vertices had in the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedTree {
    pub tree: Tree,
    /// `names[i]` is the input name of vertex `i`.
    pub names: Vec<String>,
}

impl NamedTree {
    /// Names a tree by its vertex indices.
    pub fn from_indices(tree: Tree) -> Self {
        let names = (0..tree.vertex_count()).map(|i| i.to_string()).collect();
        NamedTree { tree, names }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum NameRepr {
    Text(String),
    Number(i64),
}

impl NameRepr {
    fn into_string(self) -> String {
        match self {
            NameRepr::Text(s) => s,
            NameRepr::Number(n) => n.to_string(),
        }
    }
}

/// Structured tree input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDocument {
    #[serde(default)]
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

#[derive(Deserialize)]
struct RawTreeDocument {
    #[serde(default)]
    vertices: Vec<NameRepr>,
    edges: Vec<(NameRepr, NameRepr)>,
}

/// Maps names to dense indices in first-appearance order.
#[derive(Default)]
struct SymbolTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl SymbolTable {
    fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
}

/// Edges with the line they came from, or `None` for structured input.
type SourcedEdge = (usize, usize, Option<usize>);

fn build_tree(table: SymbolTable, edges: Vec<SourcedEdge>) -> Result<NamedTree> {
    let names = table.names;
    let n = names.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    let at = |line: Option<usize>| line.map(|l| format!(" on line {l}")).unwrap_or_default();
    let mut uf = UnionFind((0..n).collect());
    let mut seen = std::collections::HashSet::new();
    for &(u, v, line) in &edges {
        if u == v {
            return Err(Error::Structure(format!("loop at vertex '{}'{}", names[u], at(line))));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::Structure(format!(
                "duplicate edge '{}' '{}'{}",
                names[u],
                names[v],
                at(line)
            )));
        }
        let (a, b) = (uf.find(u), uf.find(v));
        if a == b {
            return Err(Error::Structure(format!(
                "edge '{}' '{}'{} closes a cycle",
                names[u],
                names[v],
                at(line)
            )));
        }
        uf.0[a] = b;
    }
    let root = uf.find(0);
    if let Some(v) = (1..n).find(|&v| uf.find(v) != root) {
        return Err(Error::Structure(format!(
            "disconnected: the component containing '{}' does not reach '{}'",
            names[v], names[0]
        )));
    }
    let tree = Tree::new(n, edges.into_iter().map(|(u, v, _)| (u, v)).collect())?;
    Ok(NamedTree { tree, names })
}

/// Parses a text edge list or a JSON tree document.
///
/// Text input has one `u v` pair per line; a single name on its own line
/// declares an isolated vertex, and `#` starts a comment.
pub fn parse_tree(input: &str) -> Result<NamedTree> {
    if input.trim_start().starts_with('{') {
        return parse_tree_json(input);
    }
    let mut table = SymbolTable::default();
    let mut edges = Vec::new();
    for (k, raw) in input.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            [name] => {
                table.intern(name);
            }
            [u, v] => {
                let (u, v) = (table.intern(u), table.intern(v));
                edges.push((u, v, Some(line)));
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected 'u v', found {} tokens", tokens.len()),
                })
            }
        }
    }
    build_tree(table, edges)
}

fn json_error(e: serde_json::Error) -> Error {
    if e.line() > 0 {
        Error::Parse {
            line: e.line(),
            message: e.to_string(),
        }
    } else {
        Error::Json(e.to_string())
    }
}

fn parse_tree_json(input: &str) -> Result<NamedTree> {
    let raw: RawTreeDocument = serde_json::from_str(input).map_err(json_error)?;
    let mut table = SymbolTable::default();
    for v in raw.vertices {
        table.intern(&v.into_string());
    }
    let edges = raw
        .edges
        .into_iter()
        .map(|(u, v)| {
            let u = table.intern(&u.into_string());
            let v = table.intern(&v.into_string());
            (u, v, None)
        })
        .collect();
    build_tree(table, edges)
}

/// Serialises a tree as a text edge list.
pub fn emit_edge_list(t: &NamedTree) -> String {
    let mut out = String::new();
    if t.tree.edge_count() == 0 {
        for name in &t.names {
            out.push_str(name);
            out.push('\n');
        }
    }
    for &(u, v) in t.tree.edges() {
        let _ = writeln!(out, "{} {}", t.names[u], t.names[v]);
    }
    out
}

/// The structured form of a named tree.
pub fn tree_document(t: &NamedTree) -> TreeDocument {
    TreeDocument {
        vertices: t.names.clone(),
        edges: t
            .tree
            .edges()
            .iter()
            .map(|&(u, v)| (t.names[u].clone(), t.names[v].clone()))
            .collect(),
    }
}

/// One arc of a [`LabelingDocument`], with endpoints by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcRecord {
    pub tail: String,
    pub head: String,
    pub label: usize,
}

/// A labeled orientation with its vertex-sums and verifier verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingDocument {
    #[serde(default)]
    pub vertices: Vec<String>,
    pub arcs: Vec<ArcRecord>,
    #[serde(default)]
    pub vertex_sums: BTreeMap<String, i64>,
    #[serde(default)]
    pub verdicts: BTreeMap<String, bool>,
}

impl LabelingDocument {
    pub fn with_verdict(mut self, name: &str, value: bool) -> Self {
        self.verdicts.insert(name.to_string(), value);
        self
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serialises");
        s.push('\n');
        s
    }
}

/// Builds the document for `d`, naming vertices by `names`.
pub fn emit_labeling(
    d: &OrientedLabeling,
    names: &[String],
    report: &AntimagicReport,
) -> Result<LabelingDocument> {
    if names.len() != d.vertex_count() {
        return Err(Error::Domain(format!(
            "{} names for {} vertices",
            names.len(),
            d.vertex_count()
        )));
    }
    let sums = vertex_sums(d)?;
    let arcs = d
        .arcs()
        .iter()
        .map(|a| ArcRecord {
            tail: names[a.tail].clone(),
            head: names[a.head].clone(),
            label: a.label,
        })
        .collect();
    let vertex_sums = names.iter().cloned().zip(sums.into_vec()).collect();
    let verdicts = BTreeMap::from([
        ("antimagic".to_string(), report.is_antimagic()),
        ("bijective".to_string(), report.bijective),
        ("well_formed".to_string(), report.well_formed),
    ]);
    Ok(LabelingDocument {
        vertices: names.to_vec(),
        arcs,
        vertex_sums,
        verdicts,
    })
}

/// Parses a labeling document and returns the labeling with vertex names.
///
/// Vertices come from `vertices` when present, then from arcs in
/// first-appearance order.
pub fn parse_labeling(input: &str) -> Result<(OrientedLabeling, Vec<String>, LabelingDocument)> {
    let doc: LabelingDocument = serde_json::from_str(input).map_err(json_error)?;
    let mut table = SymbolTable::default();
    for v in &doc.vertices {
        if table.index.contains_key(v) {
            return Err(Error::Structure(format!("vertex '{v}' is listed twice")));
        }
        table.intern(v);
    }
    let arcs = doc
        .arcs
        .iter()
        .map(|a| Arc::new(table.intern(&a.tail), table.intern(&a.head), a.label))
        .collect();
    let names = table.names;
    Ok((OrientedLabeling::new(names.len(), arcs), names, doc))
}

/// Document for the marked path `0 - 1 - ... - m` labeled for the marked
/// positions, with the three marked-path verdicts.
pub fn marked_path_document(m: usize, marked: &[usize]) -> Result<LabelingDocument> {
    let d = lemma1_label(m, marked)?;
    let names: Vec<String> = (0..=m).map(|i| i.to_string()).collect();
    let report = verify_lemma1(&d, marked);
    let mut doc = emit_labeling(&d, &names, &verify_antimagic(&d))?;
    doc.verdicts = BTreeMap::from([
        ("bijective".to_string(), report.bijective),
        ("condition_i".to_string(), report.condition_i()),
        ("condition_ii".to_string(), report.condition_ii()),
        ("condition_iii".to_string(), report.condition_iii()),
    ]);
    Ok(doc)
}

fn dot_id(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph with labeled arcs and each node annotated with its sum.
pub fn emit_dot(d: &OrientedLabeling, names: &[String]) -> Result<String> {
    if names.len() != d.vertex_count() {
        return Err(Error::Domain(format!(
            "{} names for {} vertices",
            names.len(),
            d.vertex_count()
        )));
    }
    let sums = vertex_sums(d)?;
    let mut out = String::from("digraph antimagic {\n");
    for (v, name) in names.iter().enumerate() {
        let label = format!("{name}\ns={}", sums.get(v));
        let _ = writeln!(
            out,
            "  {} [label={}];",
            dot_id(name),
            dot_id(&label).replace('\n', "\\n")
        );
    }
    for a in d.arcs() {
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"{}\"];",
            dot_id(&names[a.tail]),
            dot_id(&names[a.head]),
            a.label
        );
    }
    out.push_str("}\n");
    Ok(out)
}
