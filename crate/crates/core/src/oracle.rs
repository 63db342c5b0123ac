//! Brute-force ground truth for small trees.
//!
//! [`brute_force_antimagic_orientation`] searches orientations and label
//! permutations directly. [`enumerate_trees`] lists every tree on `n`
//! vertices up to isomorphism by decoding Prüfer sequences and
//! deduplicating on a canonical code.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Arc, OrientedLabeling, Tree};
use crate::taxonomy::classify;
use crate::verify::verify_antimagic;

/// Largest edge count searched exhaustively.
pub const EXHAUSTIVE_MAX_EDGES: usize = 9;

/// Largest vertex count [`enumerate_trees`] accepts.
pub const ENUMERATION_MAX_VERTICES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    /// Every orientation and every labeling (up to global reversal).
    Exhaustive,
    /// Uniformly random orientation/labeling pairs.
    Randomized { attempts: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A verified antimagic orientation.
    Found(OrientedLabeling),
    /// The exhaustive search space holds no witness.
    Exhausted,
    /// Randomized search gave up; says nothing about existence.
    Inconclusive { attempts: u64 },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&OrientedLabeling> {
        match self {
            SearchOutcome::Found(d) => Some(d),
            _ => None,
        }
    }
}

/// Looks for an antimagic orientation of `tree`.
///
/// Exhaustive mode needs at most [`EXHAUSTIVE_MAX_EDGES`] edges. Arc 0 keeps
/// a fixed direction: reversing every arc negates every sum, so the other
/// half of the orientations adds no witnesses.
pub fn brute_force_antimagic_orientation(tree: &Tree, budget: Budget) -> Result<SearchOutcome> {
    let outcome = match budget {
        Budget::Exhaustive => exhaustive(tree)?,
        Budget::Randomized { attempts, seed } => randomized(tree, attempts, seed),
    };
    if let SearchOutcome::Found(d) = &outcome {
        if !verify_antimagic(d).is_antimagic() {
            return Err(Error::Internal("search produced an invalid witness".into()));
        }
    }
    Ok(outcome)
}

/// Edges in post-order of their lower endpoint so vertices complete early.
fn completion_order(tree: &Tree) -> Vec<(usize, usize)> {
    let n = tree.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &v in tree.neighbors(u) {
            if parent[v] == usize::MAX {
                parent[v] = u;
                stack.push(v);
            }
        }
    }
    order
        .into_iter()
        .rev()
        .filter(|&v| v != 0)
        .map(|v| (parent[v], v))
        .collect()
}

struct Search<'a> {
    edges: &'a [(usize, usize)],
    forward: Vec<bool>,
    /// Number of arcs still unlabeled at each vertex.
    open: Vec<usize>,
    sums: Vec<i64>,
    labels: Vec<usize>,
    used: u32,
    finished: Vec<i64>,
}

impl Search<'_> {
    fn run(&mut self, k: usize) -> bool {
        let m = self.edges.len();
        if k == m {
            return true;
        }
        let (u, v) = self.edges[k];
        let (tail, head) = if self.forward[k] { (u, v) } else { (v, u) };
        for label in 1..=m {
            let bit = 1u32 << label;
            if self.used & bit != 0 {
                continue;
            }
            let l = label as i64;
            self.sums[head] += l;
            self.sums[tail] -= l;
            self.open[head] -= 1;
            self.open[tail] -= 1;
            let mark = self.finished.len();
            let mut ok = true;
            for w in [tail, head] {
                if self.open[w] == 0 {
                    if self.finished.contains(&self.sums[w]) {
                        ok = false;
                        break;
                    }
                    self.finished.push(self.sums[w]);
                }
            }
            if ok {
                self.used |= bit;
                self.labels[k] = label;
                if self.run(k + 1) {
                    return true;
                }
                self.used &= !bit;
            }
            self.finished.truncate(mark);
            self.sums[head] -= l;
            self.sums[tail] += l;
            self.open[head] += 1;
            self.open[tail] += 1;
        }
        false
    }
}

fn search_orientation(tree: &Tree, edges: &[(usize, usize)], mask: u64) -> Option<OrientedLabeling> {
    let m = edges.len();
    let mut s = Search {
        edges,
        forward: (0..m).map(|k| mask >> k & 1 == 0).collect(),
        open: (0..tree.vertex_count()).map(|v| tree.neighbors(v).len()).collect(),
        sums: vec![0; tree.vertex_count()],
        labels: vec![0; m],
        used: 0,
        finished: Vec::with_capacity(tree.vertex_count()),
    };
    s.run(0).then(|| {
        let arcs = (0..m)
            .map(|k| {
                let (u, v) = edges[k];
                if s.forward[k] {
                    Arc::new(u, v, s.labels[k])
                } else {
                    Arc::new(v, u, s.labels[k])
                }
            })
            .collect();
        OrientedLabeling::new(tree.vertex_count(), arcs)
    })
}

fn exhaustive(tree: &Tree) -> Result<SearchOutcome> {
    let m = tree.edge_count();
    if m > EXHAUSTIVE_MAX_EDGES {
        return Err(Error::Domain(format!(
            "exhaustive search is limited to {EXHAUSTIVE_MAX_EDGES} edges, tree has {m}"
        )));
    }
    if m == 0 {
        return Ok(SearchOutcome::Found(OrientedLabeling::new(1, Vec::new())));
    }
    let edges = completion_order(tree);
    // the last edge in completion order keeps its direction
    let masks = 0..1u64 << (m - 1);
    #[cfg(feature = "parallel")]
    let found = {
        use rayon::prelude::*;
        masks
            .into_par_iter()
            .find_map_first(|mask| search_orientation(tree, &edges, mask))
    };
    #[cfg(not(feature = "parallel"))]
    let found = masks
        .into_iter()
        .find_map(|mask| search_orientation(tree, &edges, mask));
    Ok(found.map_or(SearchOutcome::Exhausted, SearchOutcome::Found))
}

fn randomized(tree: &Tree, attempts: u64, seed: u64) -> SearchOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = tree.edge_count();
    let mut labels: Vec<usize> = (1..=m).collect();
    for _ in 0..attempts {
        labels.shuffle(&mut rng);
        let arcs = tree
            .edges()
            .iter()
            .zip(&labels)
            .map(|(&(u, v), &l)| if rng.gen() { Arc::new(u, v, l) } else { Arc::new(v, u, l) })
            .collect();
        let d = OrientedLabeling::new(tree.vertex_count(), arcs);
        if verify_antimagic(&d).is_antimagic() {
            return SearchOutcome::Found(d);
        }
    }
    SearchOutcome::Inconclusive { attempts }
}

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) into tree edges.
pub fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    decode_into(seq, n, |u, v| edges.push((u, v)));
    edges
}

/// Linear-time decoding; `emit` is called once per edge.
fn decode_into(seq: &[usize], n: usize, mut emit: impl FnMut(usize, usize)) {
    if n < 2 {
        return;
    }
    let mut degree = [1u8; 64];
    let mut degree_vec;
    let degree: &mut [u8] = if n <= 64 {
        &mut degree[..n]
    } else {
        degree_vec = vec![1u8; n];
        &mut degree_vec
    };
    for &x in seq {
        degree[x] += 1;
    }
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &v in seq {
        emit(leaf, v);
        degree[v] -= 1;
        if v < ptr && degree[v] == 1 {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    emit(leaf, n - 1);
}

/// Small fixed-capacity adjacency for the canonical-code hot path.
struct SmallTree {
    n: usize,
    adj: [[u8; ENUMERATION_MAX_VERTICES]; ENUMERATION_MAX_VERTICES],
    deg: [u8; ENUMERATION_MAX_VERTICES],
}

impl SmallTree {
    fn new(n: usize) -> Self {
        SmallTree {
            n,
            adj: [[0; ENUMERATION_MAX_VERTICES]; ENUMERATION_MAX_VERTICES],
            deg: [0; ENUMERATION_MAX_VERTICES],
        }
    }

    fn add(&mut self, u: usize, v: usize) {
        self.adj[u][self.deg[u] as usize] = v as u8;
        self.deg[u] += 1;
        self.adj[v][self.deg[v] as usize] = u as u8;
        self.deg[v] += 1;
    }

    /// One or two centre vertices, found by peeling leaves.
    fn centers(&self) -> (usize, Option<usize>) {
        let n = self.n;
        if n == 1 {
            return (0, None);
        }
        let mut deg = self.deg;
        let mut layer = [0u8; ENUMERATION_MAX_VERTICES];
        let mut len = 0;
        for v in 0..n {
            if deg[v] == 1 {
                layer[len] = v as u8;
                len += 1;
            }
        }
        let mut remaining = n;
        while remaining > 2 {
            remaining -= len;
            let mut next = [0u8; ENUMERATION_MAX_VERTICES];
            let mut next_len = 0;
            for &leaf in &layer[..len] {
                let leaf = leaf as usize;
                deg[leaf] = 0;
                for &w in &self.adj[leaf][..self.deg[leaf] as usize] {
                    let w = w as usize;
                    if deg[w] > 1 {
                        deg[w] -= 1;
                        if deg[w] == 1 {
                            next[next_len] = w as u8;
                            next_len += 1;
                        }
                    }
                }
            }
            layer = next;
            len = next_len;
        }
        if len == 2 {
            (layer[0] as usize, Some(layer[1] as usize))
        } else {
            (layer[0] as usize, None)
        }
    }

    /// Rooted code: bit string `1 children 0`, children ordered by
    /// `(length, bits)`. Packed as `length << 32 | bits`.
    fn rooted_code(&self, root: usize, blocked: usize) -> u64 {
        let mut child_codes = [0u64; ENUMERATION_MAX_VERTICES];
        let mut k = 0;
        for &w in &self.adj[root][..self.deg[root] as usize] {
            let w = w as usize;
            if w != blocked {
                child_codes[k] = self.rooted_code(w, root);
                k += 1;
            }
        }
        let children = &mut child_codes[..k];
        children.sort_unstable();
        let mut bits: u64 = 1;
        let mut len: u64 = 1;
        for &c in children.iter() {
            let (clen, cbits) = (c >> 32, c & 0xffff_ffff);
            bits = (bits << clen) | cbits;
            len += clen;
        }
        bits <<= 1;
        len += 1;
        (len << 32) | bits
    }

    fn canonical_key(&self) -> u128 {
        match self.centers() {
            (c, None) => self.rooted_code(c, usize::MAX) as u128,
            (a, Some(b)) => {
                let x = self.rooted_code(a, b);
                let y = self.rooted_code(b, a);
                let (lo, hi) = (x.min(y) as u128, x.max(y) as u128);
                1u128 << 127 | hi << 64 | lo
            }
        }
    }
}

/// Isomorphism-invariant key of a tree with at most
/// [`ENUMERATION_MAX_VERTICES`] vertices.
pub fn canonical_key(tree: &Tree) -> Result<u128> {
    let n = tree.vertex_count();
    if n > ENUMERATION_MAX_VERTICES {
        return Err(Error::Domain(format!(
            "canonical key supports at most {ENUMERATION_MAX_VERTICES} vertices"
        )));
    }
    let mut t = SmallTree::new(n);
    for &(u, v) in tree.edges() {
        t.add(u, v);
    }
    Ok(t.canonical_key())
}

/// Non-increasing positive parts summing to `total`, at most `max_parts` of them.
fn partitions(total: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Rearranges `seq` into the next permutation in lexicographic order.
fn next_permutation(seq: &mut [usize]) -> bool {
    let Some(i) = seq.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = seq.iter().rposition(|&x| x > seq[i]).expect("successor exists");
    seq.swap(i, j);
    seq[i + 1..].reverse();
    true
}

fn prufer_rank(seq: &[usize], n: usize) -> u64 {
    seq.iter().fold(0u64, |acc, &x| acc * n as u64 + x as u64)
}

/// Every tree on `n` vertices, one per isomorphism class, in order of the
/// first Prüfer sequence producing it.
///
/// Only sequences in which vertex `i` occurs at least as often as vertex
/// `i + 1` are decoded. Each class has such a labeling: number the vertices
/// by non-increasing degree.
pub fn enumerate_trees(n: usize) -> Result<Vec<Tree>> {
    if !(1..=ENUMERATION_MAX_VERTICES).contains(&n) {
        return Err(Error::Domain(format!(
            "tree enumeration needs 1 <= n <= {ENUMERATION_MAX_VERTICES}, got {n}"
        )));
    }
    if n <= 2 {
        return Ok(vec![Tree::path(n)]);
    }
    let len = n - 2;
    let scan = |counts: &Vec<usize>| -> HashMap<u128, u64> {
        let mut seen: HashMap<u128, u64> = HashMap::new();
        let mut seq: Vec<usize> = counts
            .iter()
            .enumerate()
            .flat_map(|(v, &c)| std::iter::repeat_n(v, c))
            .collect();
        loop {
            let mut t = SmallTree::new(n);
            decode_into(&seq, n, |u, v| t.add(u, v));
            let rank = prufer_rank(&seq, n);
            seen.entry(t.canonical_key())
                .and_modify(|r| *r = (*r).min(rank))
                .or_insert(rank);
            if !next_permutation(&mut seq) {
                break;
            }
        }
        seen
    };
    let shapes = partitions(len, n);
    #[cfg(feature = "parallel")]
    let parts: Vec<HashMap<u128, u64>> = {
        use rayon::prelude::*;
        shapes.par_iter().map(scan).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<HashMap<u128, u64>> = shapes.iter().map(scan).collect();

    let mut first_seen: HashMap<u128, u64> = HashMap::new();
    for part in parts {
        for (key, rank) in part {
            first_seen
                .entry(key)
                .and_modify(|r| *r = (*r).min(rank))
                .or_insert(rank);
        }
    }
    let mut ranks: Vec<u64> = first_seen.into_values().collect();
    ranks.sort_unstable();
    ranks
        .into_iter()
        .map(|rank| {
            let mut seq = vec![0usize; len];
            let mut rest = rank;
            for slot in seq.iter_mut().rev() {
                *slot = (rest % n as u64) as usize;
                rest /= n as u64;
            }
            Tree::new(n, prufer_decode(&seq, n))
        })
        .collect()
}

/// Trees on `n` vertices that are paths, caterpillars or lobsters.
pub fn enumerate_lobsters(n: usize) -> Result<Vec<Tree>> {
    Ok(enumerate_trees(n)?
        .into_iter()
        .filter(|t| classify(t).is_lobster_family())
        .collect())
}

/// Random tree via a uniform Prüfer sequence; used by the randomized
/// oracle tests and the generator.
pub(crate) fn random_prufer_tree(n: usize, rng: &mut impl Rng) -> Tree {
    if n <= 2 {
        return Tree::path(n.max(1));
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    Tree::new(n, prufer_decode(&seq, n)).expect("Prüfer sequences decode to trees")
}
