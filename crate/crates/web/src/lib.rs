//! Browser bindings. Each export returns a JSON scene: the labeling
//! document plus a position for every vertex.

use std::collections::BTreeMap;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use antimagic::generator::{random_lobster, LegProfile};
use antimagic::io::{emit_labeling, marked_path_document, parse_tree, LabelingDocument, NamedTree};
use antimagic::lobster::orient_lobster;
use antimagic::taxonomy::{classify, find_spine};
use antimagic::verify::verify_antimagic;
use antimagic::Tree;

/// Largest input the page accepts, to keep the browser responsive.
pub const MAX_EDGES: usize = 2000;

/// Everything the page needs to draw one labeling.
#[derive(Debug, Serialize)]
pub struct Scene {
    pub title: String,
    pub labeling: LabelingDocument,
    /// Names of vertices drawn highlighted.
    pub marked: Vec<String>,
    /// `(column, depth)` per vertex name; depth 0 is the spine.
    pub positions: BTreeMap<String, (f64, u32)>,
}

/// Spine along the top row, everything else hung below its spine vertex
/// with leaves in consecutive columns.
pub fn layout(tree: &Tree, names: &[String]) -> BTreeMap<String, (f64, u32)> {
    let spine = find_spine(tree);
    let mut on_spine = vec![false; tree.vertex_count()];
    for &v in &spine {
        on_spine[v] = true;
    }
    let mut pos = vec![(0.0, 0u32); tree.vertex_count()];
    let mut next_column = 0.0f64;

    // post-order placement of off-spine subtrees
    fn place(
        tree: &Tree,
        v: usize,
        parent: usize,
        depth: u32,
        next: &mut f64,
        pos: &mut [(f64, u32)],
    ) -> f64 {
        let children: Vec<usize> =
            tree.neighbors(v).iter().copied().filter(|&w| w != parent).collect();
        let x = if children.is_empty() {
            let x = *next;
            *next += 1.0;
            x
        } else {
            let xs: Vec<f64> = children
                .iter()
                .map(|&c| place(tree, c, v, depth + 1, next, pos))
                .collect();
            (xs[0] + xs[xs.len() - 1]) / 2.0
        };
        pos[v] = (x, depth);
        x
    }

    for (i, &s) in spine.iter().enumerate() {
        let hanging: Vec<usize> =
            tree.neighbors(s).iter().copied().filter(|&w| !on_spine[w]).collect();
        let start = next_column;
        let xs: Vec<f64> = hanging
            .iter()
            .map(|&c| place(tree, c, s, 1, &mut next_column, &mut pos))
            .collect();
        let x = match (xs.first(), xs.last()) {
            (Some(a), Some(b)) => (a + b) / 2.0,
            _ => {
                next_column += 1.0;
                start
            }
        };
        pos[s] = (x, 0);
        if i + 1 < spine.len() && next_column < x + 1.0 {
            next_column = x + 1.0;
        }
    }
    names.iter().cloned().zip(pos).collect()
}

fn parse_marked(marked: &str) -> Result<Vec<usize>, String> {
    marked
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| format!("'{s}' is not a vertex position")))
        .collect()
}

fn to_json(scene: &Scene) -> String {
    serde_json::to_string(scene).expect("scene serialises")
}

/// Marked path `0 - ... - m` with the marked positions given as a
/// comma or space separated list.
pub fn marked_path_scene(m: usize, marked: &str) -> Result<String, String> {
    if m > MAX_EDGES {
        return Err(format!("at most {MAX_EDGES} edges"));
    }
    let mut h = parse_marked(marked)?;
    h.sort_unstable();
    h.dedup();
    let labeling = marked_path_document(m, &h).map_err(|e| e.to_string())?;
    let names: Vec<String> = (0..=m).map(|i| i.to_string()).collect();
    let positions = names.iter().enumerate().map(|(i, n)| (n.clone(), (i as f64, 0))).collect();
    Ok(to_json(&Scene {
        title: format!("marked path, m = {m}"),
        labeling,
        marked: h.iter().map(|v| v.to_string()).collect(),
        positions,
    }))
}

fn tree_scene(named: &NamedTree, title: String) -> Result<String, String> {
    let tree = &named.tree;
    if tree.edge_count() > MAX_EDGES {
        return Err(format!("at most {MAX_EDGES} edges"));
    }
    let d = orient_lobster(tree).map_err(|e| e.to_string())?;
    let labeling = emit_labeling(&d, &named.names, &verify_antimagic(&d)).map_err(|e| e.to_string())?;
    let marked = (0..tree.vertex_count())
        .filter(|&v| tree.degree(v).unwrap_or(0) >= 3)
        .map(|v| named.names[v].clone())
        .collect();
    Ok(to_json(&Scene {
        title: format!("{title} ({})", classify(tree)),
        labeling,
        marked,
        positions: layout(tree, &named.names),
    }))
}

/// Seeded random lobster with the given spine length.
pub fn random_lobster_scene(spine: usize, seed: u32, attach_probability: f64) -> Result<String, String> {
    if spine > MAX_EDGES / 4 {
        return Err(format!("spine at most {}", MAX_EDGES / 4));
    }
    let profile = LegProfile {
        attach_probability,
        ..LegProfile::default()
    };
    let tree = random_lobster(spine, profile, u64::from(seed)).map_err(|e| e.to_string())?;
    tree_scene(&NamedTree::from_indices(tree), format!("random lobster, seed {seed}"))
}

/// Orients a pasted edge list.
pub fn edge_list_scene(text: &str) -> Result<String, String> {
    let named = parse_tree(text).map_err(|e| e.to_string())?;
    tree_scene(&named, "input tree".into())
}

#[wasm_bindgen(js_name = labelMarkedPath)]
pub fn label_marked_path(m: usize, marked: &str) -> Result<String, JsError> {
    marked_path_scene(m, marked).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = orientRandomLobster)]
pub fn orient_random_lobster(spine: usize, seed: u32, attach_probability: f64) -> Result<String, JsError> {
    random_lobster_scene(spine, seed, attach_probability).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = orientEdgeList)]
pub fn orient_edge_list(text: &str) -> Result<String, JsError> {
    edge_list_scene(text).map_err(|e| JsError::new(&e))
}
