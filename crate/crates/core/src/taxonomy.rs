//! Lobster-family recognition and the spine decomposition.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Tree;

/// Most specific family a tree belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TreeClass {
    SingleVertex,
    SingleEdge,
    Path,
    Caterpillar,
    Lobster,
    Other,
}

impl TreeClass {
    /// Trees the lobster construction accepts.
    pub fn is_lobster_family(self) -> bool {
        !matches!(self, TreeClass::Other)
    }
}

impl fmt::Display for TreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TreeClass::SingleVertex => "single-vertex",
            TreeClass::SingleEdge => "single-edge",
            TreeClass::Path => "path",
            TreeClass::Caterpillar => "caterpillar",
            TreeClass::Lobster => "lobster",
            TreeClass::Other => "other",
        };
        f.write_str(s)
    }
}

/// Removes every leaf of the subtree induced by `alive`.
fn strip_leaves(tree: &Tree, alive: &[bool]) -> Vec<bool> {
    (0..tree.vertex_count())
        .map(|v| alive[v] && induced_degree(tree, alive, v) >= 2)
        .collect()
}

fn induced_degree(tree: &Tree, alive: &[bool], v: usize) -> usize {
    tree.neighbors(v).iter().filter(|&&w| alive[w]).count()
}

/// A tree induced by `alive` is a path iff no vertex has three live neighbours.
fn induced_is_path(tree: &Tree, alive: &[bool]) -> bool {
    (0..tree.vertex_count()).all(|v| !alive[v] || induced_degree(tree, alive, v) <= 2)
}

/// Classifies by iterated leaf removal.
pub fn classify(tree: &Tree) -> TreeClass {
    let all = vec![true; tree.vertex_count()];
    match tree.vertex_count() {
        1 => TreeClass::SingleVertex,
        2 => TreeClass::SingleEdge,
        _ if induced_is_path(tree, &all) => TreeClass::Path,
        _ => {
            let once = strip_leaves(tree, &all);
            if induced_is_path(tree, &once) {
                return TreeClass::Caterpillar;
            }
            let twice = strip_leaves(tree, &once);
            if induced_is_path(tree, &twice) {
                TreeClass::Lobster
            } else {
                TreeClass::Other
            }
        }
    }
}

/// Farthest vertex from `source`, smallest index on ties, plus BFS parents.
fn farthest(tree: &Tree, source: usize) -> (usize, Vec<usize>) {
    let dist = tree.distances_from(source);
    let far = (0..tree.vertex_count())
        .max_by(|&a, &b| dist[a].cmp(&dist[b]).then(b.cmp(&a)))
        .expect("non-empty tree");
    (far, dist)
}

/// A longest path via two breadth-first sweeps, oriented so that the
/// endpoint with the smaller index comes first.
pub fn find_spine(tree: &Tree) -> Vec<usize> {
    let (a, _) = farthest(tree, 0);
    let (b, dist) = farthest(tree, a);
    // walk back from b to a along strictly decreasing distance
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        cur = *tree
            .neighbors(cur)
            .iter()
            .find(|&&w| dist[w] + 1 == dist[cur])
            .expect("BFS predecessor");
        path.push(cur);
    }
    if path[0] > path[path.len() - 1] {
        path.reverse();
    }
    path
}

/// The spine `v_0 ... v_p` of a lobster with the vertex classes hanging off it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpineDecomposition {
    /// `v_0, ..., v_p`.
    pub spine: Vec<usize>,
    /// Spine positions of the vertices of degree at least three, increasing.
    pub u_positions: Vec<usize>,
    /// Off-spine neighbours of spine vertices, sorted.
    pub x: Vec<usize>,
    /// Members of `x` that are leaves.
    pub x1: Vec<usize>,
    /// Everything else: leaves hanging off `x`.
    pub y: Vec<usize>,
    /// Spine neighbour of each `x`.
    pub anchor: BTreeMap<usize, usize>,
    /// `Y`-children of each `x` (empty for members of `x1`).
    pub legs: BTreeMap<usize, Vec<usize>>,
}

impl SpineDecomposition {
    /// Number of spine edges.
    pub fn p(&self) -> usize {
        self.spine.len() - 1
    }

    pub fn u_vertices(&self) -> Vec<usize> {
        self.u_positions.iter().map(|&i| self.spine[i]).collect()
    }

    /// Members of `X` that are not leaves, i.e. carry at least one `Y` child.
    pub fn x_inner(&self) -> Vec<usize> {
        self.x
            .iter()
            .copied()
            .filter(|v| self.x1.binary_search(v).is_err())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.u_positions.is_empty()
    }
}

/// Splits a lobster around `spine`.
///
/// Fails when `spine` is not a path of the tree, when a spine endpoint has
/// an off-spine neighbour (so `spine` is not a longest path), or when some
/// vertex sits more than two steps away from the spine.
pub fn decompose(tree: &Tree, spine: &[usize]) -> Result<SpineDecomposition> {
    let n = tree.vertex_count();
    if spine.is_empty() {
        return Err(Error::Domain("empty spine".into()));
    }
    let mut position = vec![None; n];
    for (i, &v) in spine.iter().enumerate() {
        if v >= n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: n,
            });
        }
        if position[v].replace(i).is_some() {
            return Err(Error::Domain(format!("vertex {v} repeats on the spine")));
        }
        if i > 0 && !tree.has_edge(spine[i - 1], v) {
            return Err(Error::Domain(format!(
                "spine step {}-{v} is not an edge",
                spine[i - 1]
            )));
        }
    }
    let p = spine.len() - 1;

    let mut u_positions = Vec::new();
    let mut anchor = BTreeMap::new();
    for (i, &v) in spine.iter().enumerate() {
        let off: Vec<usize> = tree
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| position[w].is_none())
            .collect();
        if off.is_empty() {
            continue;
        }
        if i == 0 || i == p {
            return Err(Error::Domain(format!(
                "spine endpoint {v} has off-spine neighbours; not a longest path"
            )));
        }
        u_positions.push(i);
        for w in off {
            anchor.insert(w, v);
        }
    }

    let mut legs = BTreeMap::new();
    let mut x1 = Vec::new();
    let mut y = Vec::new();
    for (&xv, &a) in &anchor {
        let children: Vec<usize> = tree
            .neighbors(xv)
            .iter()
            .copied()
            .filter(|&w| w != a)
            .collect();
        for &c in &children {
            if tree.neighbors(c).len() != 1 {
                return Err(Error::NotLobster(format!(
                    "vertex {c} lies more than two steps from the spine"
                )));
            }
        }
        if children.is_empty() {
            x1.push(xv);
        }
        y.extend_from_slice(&children);
        legs.insert(xv, children);
    }
    y.sort_unstable();
    let x: Vec<usize> = anchor.keys().copied().collect();

    if spine.len() + x.len() + y.len() != n {
        return Err(Error::NotLobster(
            "some vertices are not within two steps of the spine".into(),
        ));
    }
    Ok(SpineDecomposition {
        spine: spine.to_vec(),
        u_positions,
        x,
        x1,
        y,
        anchor,
        legs,
    })
}
