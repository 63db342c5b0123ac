//! Trees and oriented labelings with their vertex-sums.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected simple tree on the vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Tree {
    /// Validates the edge list: indices in range, no loops or duplicate
    /// edges, exactly `vertex_count - 1` edges and connected.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Empty);
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(u, v));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        if edges.len() != vertex_count - 1 {
            return Err(Error::EdgeCount {
                vertex_count,
                expected: vertex_count - 1,
                found: edges.len(),
            });
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let tree = Tree {
            vertex_count,
            edges,
            adjacency,
        };
        let dist = tree.distances_from(0);
        if let Some(v) = dist.iter().position(|&d| d == usize::MAX) {
            return Err(Error::Disconnected(v));
        }
        Ok(tree)
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|i| (i - 1, i)).collect();
        Tree::new(n.max(1), edges).expect("path is a tree")
    }

    /// `K_{1,leaves}` centred at vertex 0.
    pub fn star(leaves: usize) -> Self {
        let edges = (1..=leaves).map(|i| (0, i)).collect();
        Tree::new(leaves + 1, edges).expect("star is a tree")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbours of `u` in increasing index order.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> Result<usize> {
        self.adjacency
            .get(u)
            .map(Vec::len)
            .ok_or(Error::VertexOutOfRange {
                vertex: u,
                vertex_count: self.vertex_count,
            })
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Breadth-first distances from `source`; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count];
        let mut queue = VecDeque::from([source]);
        dist[source] = 0;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Sorted, normalised `(min, max)` edge set.
    pub fn edge_set(&self) -> Vec<(usize, usize)> {
        let mut set: Vec<_> = self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        set.sort_unstable();
        set
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Tree> {
        let edges = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Tree::new(self.vertex_count, edges)
    }
}

/// A directed, labeled arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub label: usize,
}

impl Arc {
    pub fn new(tail: usize, head: usize, label: usize) -> Self {
        Arc { tail, head, label }
    }
}

/// An orientation of a tree together with arc labels. The labels are
/// meant to be a bijection onto `1..=m`; use
/// [`is_bijective_labeling`] or the verifier to check that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedLabeling {
    vertex_count: usize,
    arcs: Vec<Arc>,
}

impl OrientedLabeling {
    pub fn new(vertex_count: usize, arcs: Vec<Arc>) -> Self {
        OrientedLabeling {
            vertex_count,
            arcs,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of arcs.
    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arcs_mut(&mut self) -> &mut [Arc] {
        &mut self.arcs
    }

    pub fn into_arcs(self) -> Vec<Arc> {
        self.arcs
    }

    /// Every arc flipped; labels unchanged.
    pub fn reversed(&self) -> Self {
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc::new(a.head, a.tail, a.label))
            .collect();
        OrientedLabeling::new(self.vertex_count, arcs)
    }

    /// True when the underlying undirected edges are exactly those of `tree`.
    pub fn orients(&self, tree: &Tree) -> bool {
        if self.vertex_count != tree.vertex_count() {
            return false;
        }
        let mut mine: Vec<_> = self
            .arcs
            .iter()
            .map(|a| (a.tail.min(a.head), a.tail.max(a.head)))
            .collect();
        mine.sort_unstable();
        mine == tree.edge_set()
    }

    /// Label of the arc joining `u` and `v` in either direction.
    pub fn label_between(&self, u: usize, v: usize) -> Option<usize> {
        self.arcs
            .iter()
            .find(|a| (a.tail == u && a.head == v) || (a.tail == v && a.head == u))
            .map(|a| a.label)
    }
}

/// `s(u)` for every vertex, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSums(Vec<i64>);

impl VertexSums {
    pub fn get(&self, u: usize) -> i64 {
        self.0[u]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }
}

/// Labels entering `u` minus labels leaving `u`, for every vertex.
pub fn vertex_sums(d: &OrientedLabeling) -> Result<VertexSums> {
    let n = d.vertex_count();
    let mut sums = vec![0i64; n];
    for a in d.arcs() {
        for w in [a.tail, a.head] {
            if w >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    vertex_count: n,
                });
            }
        }
        sums[a.head] += a.label as i64;
        sums[a.tail] -= a.label as i64;
    }
    Ok(VertexSums(sums))
}

/// True iff the labels are exactly `{1, ..., m}`.
pub fn is_bijective_labeling(d: &OrientedLabeling) -> bool {
    let m = d.m();
    let mut seen = vec![false; m + 1];
    for a in d.arcs() {
        if a.label == 0 || a.label > m || seen[a.label] {
            return false;
        }
        seen[a.label] = true;
    }
    true
}
