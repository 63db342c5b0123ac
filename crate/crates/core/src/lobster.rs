//! Antimagic orientations of lobsters.
//!
//! The spine gets a marked-path labeling from [`crate::path`] using labels
//! `1..=p`. Every remaining edge points away from its `X` endpoint. The
//! pendant arcs then receive labels from six consecutive intervals chosen so
//! that the vertex-sums of `Y`, `X`, the unmarked spine and `U` fall into
//! disjoint bands. Within a band, the two matchings `M1` (saturating `U`)
//! and `M2` (saturating the non-leaf part of `X`) are labeled last, in an
//! order that makes the sums in the band strictly increasing.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{vertex_sums, Arc, OrientedLabeling, Tree};
use crate::path::{label_path_antimagic, lemma1_construct_checked, orient_bipartite};
use crate::taxonomy::{classify, decompose, find_spine, SpineDecomposition, TreeClass};

/// The two matchings labeled in the last step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingPlan {
    /// `(x, u)` edges, one per vertex of `U`, in spine order of `u`.
    pub m1: Vec<(usize, usize)>,
    /// `(x, y)` edges, one per non-leaf `x`, in increasing `x`.
    pub m2: Vec<(usize, usize)>,
    /// Number of `M1` edges whose `X` endpoint is a leaf.
    pub r: usize,
    /// Number of non-leaf `X` vertices.
    pub q: usize,
}

/// Closed label range `lo..=hi`; empty when `hi < lo`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    fn sized(lo: usize, len: usize) -> Self {
        Interval {
            lo,
            hi: lo + len - 1,
        }
    }

    pub fn len(&self) -> usize {
        (self.hi + 1).saturating_sub(self.lo)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, label: usize) -> bool {
        (self.lo..=self.hi).contains(&label)
    }

    pub fn labels(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

/// Label ranges for each arc class, consecutive and covering `1..=m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LabelAllocation {
    pub spine: Interval,
    pub m2: Interval,
    /// `X -> Y` arcs outside `M2`.
    pub legs: Interval,
    /// Arcs from leaf `X` vertices outside `M1` to the spine.
    pub leaf_pendants: Interval,
    pub m1: Interval,
    /// Arcs from non-leaf `X` vertices outside `M1` to the spine.
    pub inner_pendants: Interval,
}

impl LabelAllocation {
    pub fn intervals(&self) -> [(&'static str, Interval); 6] {
        [
            ("spine", self.spine),
            ("m2", self.m2),
            ("legs", self.legs),
            ("leaf_pendants", self.leaf_pendants),
            ("m1", self.m1),
            ("inner_pendants", self.inner_pendants),
        ]
    }

    /// Name of the interval holding `label`.
    pub fn band_of(&self, label: usize) -> Option<&'static str> {
        self.intervals()
            .into_iter()
            .find(|(_, i)| i.contains(label))
            .map(|(name, _)| name)
    }
}

/// Arcs of every non-spine edge, directed away from `X`, unlabeled (label 0).
pub fn orient_pendants(decomp: &SpineDecomposition) -> Vec<Arc> {
    let mut arcs = Vec::new();
    for (&x, &anchor) in &decomp.anchor {
        arcs.push(Arc::new(x, anchor, 0));
        for &y in &decomp.legs[&x] {
            arcs.push(Arc::new(x, y, 0));
        }
    }
    arcs
}

/// `M1` pairs each `u` with its smallest `X` neighbour; `M2` pairs each
/// non-leaf `x` with its smallest `Y` child.
pub fn build_matchings(decomp: &SpineDecomposition) -> MatchingPlan {
    let mut by_anchor: BTreeMap<usize, usize> = BTreeMap::new();
    for (&x, &u) in &decomp.anchor {
        by_anchor.entry(u).or_insert(x);
    }
    let m1: Vec<(usize, usize)> = decomp
        .u_vertices()
        .into_iter()
        .map(|u| (by_anchor[&u], u))
        .collect();
    let r = m1
        .iter()
        .filter(|(x, _)| decomp.x1.binary_search(x).is_ok())
        .count();
    let m2: Vec<(usize, usize)> = decomp
        .legs
        .iter()
        .filter_map(|(&x, ys)| ys.first().map(|&y| (x, y)))
        .collect();
    MatchingPlan {
        q: m2.len(),
        m1,
        m2,
        r,
    }
}

/// Lays the six label intervals end to end and checks that they cover
/// exactly `1..=m`.
pub fn allocate_labels(decomp: &SpineDecomposition, plan: &MatchingPlan) -> Result<LabelAllocation> {
    let p = decomp.p();
    let ny = decomp.y.len();
    let nx = decomp.x.len();
    let nx1 = decomp.x1.len();
    let m = p + ny + nx;
    let (n1, n2, r) = (plan.m1.len(), plan.m2.len(), plan.r);
    if r > n1 || r > nx1 || n2 > ny || n1 - r > nx - nx1 {
        return Err(Error::Internal(format!(
            "matching sizes |M1|={n1}, |M2|={n2}, r={r} do not fit |X|={nx}, |X1|={nx1}, |Y|={ny}"
        )));
    }

    let spine = Interval::sized(1, p);
    let m2 = Interval::sized(p + 1, n2);
    let legs = Interval::sized(p + n2 + 1, ny - n2);
    let leaf_pendants = Interval::sized(p + ny + 1, nx1 - r);
    let m1 = Interval::sized(p + ny + nx1 - r + 1, n1);
    let inner_pendants = Interval::sized(p + ny + nx1 - r + n1 + 1, (nx - nx1) - (n1 - r));
    let alloc = LabelAllocation {
        spine,
        m2,
        legs,
        leaf_pendants,
        m1,
        inner_pendants,
    };

    let mut next = 1;
    for (name, i) in alloc.intervals() {
        if i.lo != next {
            return Err(Error::Internal(format!("interval {name} starts at {} not {next}", i.lo)));
        }
        next = i.hi + 1;
    }
    if next != m + 1 {
        return Err(Error::Internal(format!("intervals end at {} for m = {m}", next - 1)));
    }
    Ok(alloc)
}

/// Labels `M1` then `M2` on a labeling where every other arc already has
/// its label (unlabeled arcs carry 0).
///
/// `U` is sorted by current sum (ties by spine position) and receives the
/// `M1` labels in ascending order, so the final `U` sums strictly increase.
/// The non-leaf `X` vertices are then sorted by current sum (ties by vertex
/// index) and receive the `M2` labels in descending order. An `M2` arc
/// leaves its `X` endpoint, so the largest label must go to the smallest
/// sum for the final sums to stay strictly increasing.
pub fn assign_matching_labels(
    partial: &mut OrientedLabeling,
    decomp: &SpineDecomposition,
    plan: &MatchingPlan,
    alloc: &LabelAllocation,
) -> Result<()> {
    let arc_index: BTreeMap<(usize, usize), usize> = partial
        .arcs()
        .iter()
        .enumerate()
        .map(|(i, a)| ((a.tail, a.head), i))
        .collect();
    let position: BTreeMap<usize, usize> = decomp
        .spine
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();

    let s2 = vertex_sums(partial)?;
    let mut m1 = plan.m1.clone();
    m1.sort_by_key(|&(_, u)| (s2.get(u), position[&u]));
    for (&(x, u), label) in m1.iter().zip(alloc.m1.labels()) {
        let i = *arc_index
            .get(&(x, u))
            .ok_or_else(|| Error::Internal(format!("no arc {x}->{u}")))?;
        partial.arcs_mut()[i].label = label;
    }

    let s3 = vertex_sums(partial)?;
    let mut m2 = plan.m2.clone();
    m2.sort_by_key(|&(x, _)| (s3.get(x), x));
    for (&(x, y), label) in m2.iter().zip(alloc.m2.labels().rev()) {
        let i = *arc_index
            .get(&(x, y))
            .ok_or_else(|| Error::Internal(format!("no arc {x}->{y}")))?;
        partial.arcs_mut()[i].label = label;
    }
    Ok(())
}

/// Everything the lobster construction produced, for inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LobsterConstruction {
    pub decomposition: SpineDecomposition,
    pub plan: MatchingPlan,
    pub allocation: LabelAllocation,
    pub labeling: OrientedLabeling,
}

/// Builds the labeling of a lobster that is not a path.
pub fn construct_lobster(tree: &Tree) -> Result<LobsterConstruction> {
    let spine = find_spine(tree);
    let decomp = decompose(tree, &spine)?;
    if decomp.is_trivial() {
        return Err(Error::Domain("tree is a path; use orient_lobster".into()));
    }
    let p = decomp.p();

    // spine, labels 1..=p
    let path = lemma1_construct_checked(p, &decomp.u_positions)?;
    let mut arcs: Vec<Arc> = path
        .labeling
        .arcs()
        .iter()
        .map(|a| Arc::new(spine[a.tail], spine[a.head], a.label))
        .collect();

    // pendant orientation and matchings
    let pendants = orient_pendants(&decomp);
    let plan = build_matchings(&decomp);
    let alloc = allocate_labels(&decomp, &plan)?;

    // every pendant arc outside the matchings, in arc order
    let in_m1: Vec<(usize, usize)> = plan.m1.clone();
    let in_m2: Vec<(usize, usize)> = plan.m2.clone();
    let is_leaf_x = |x: usize| decomp.x1.binary_search(&x).is_ok();
    let mut legs = alloc.legs.labels();
    let mut leaf_pendants = alloc.leaf_pendants.labels();
    let mut inner_pendants = alloc.inner_pendants.labels();
    let matched_x: Vec<usize> = in_m1.iter().map(|&(x, _)| x).collect();
    let mut sorted = pendants;
    sorted.sort_by_key(|a| (a.tail, a.head));
    for mut a in sorted {
        let pair = (a.tail, a.head);
        let to_spine = decomp.anchor.get(&a.tail) == Some(&a.head);
        let next = if in_m1.contains(&pair) || in_m2.contains(&pair) {
            Some(0)
        } else if !to_spine {
            legs.next()
        } else if is_leaf_x(a.tail) {
            leaf_pendants.next()
        } else if !matched_x.contains(&a.tail) {
            inner_pendants.next()
        } else {
            None
        };
        a.label = next.ok_or_else(|| Error::Internal(format!("no label left for {pair:?}")))?;
        arcs.push(a);
    }
    if legs.next().is_some() || leaf_pendants.next().is_some() || inner_pendants.next().is_some() {
        return Err(Error::Internal("unused pendant labels".into()));
    }

    // matching arcs
    let mut labeling = OrientedLabeling::new(tree.vertex_count(), arcs);
    assign_matching_labels(&mut labeling, &decomp, &plan, &alloc)?;
    Ok(LobsterConstruction {
        decomposition: decomp,
        plan,
        allocation: alloc,
        labeling,
    })
}

/// Antimagic orientation of a path, caterpillar or lobster. Paths (and
/// `K_2`) get the bipartite orientation of the undirected path labeling.
pub fn orient_lobster(tree: &Tree) -> Result<OrientedLabeling> {
    match classify(tree) {
        TreeClass::Other => Err(Error::NotLobster(
            "some vertex lies more than two steps from every longest path".into(),
        )),
        TreeClass::SingleVertex => Ok(OrientedLabeling::new(1, Vec::new())),
        TreeClass::SingleEdge | TreeClass::Path => orient_path_tree(tree),
        TreeClass::Caterpillar | TreeClass::Lobster => {
            construct_lobster(tree).map(|c| c.labeling)
        }
    }
}

/// Bipartite orientation of the undirected path labeling along the spine.
fn orient_path_tree(tree: &Tree) -> Result<OrientedLabeling> {
    let spine = find_spine(tree);
    let m = spine.len() - 1;
    let along = if m == 1 { vec![1] } else { label_path_antimagic(m)? };
    let by_edge: BTreeMap<(usize, usize), usize> = spine
        .windows(2)
        .zip(along)
        .map(|(w, l)| ((w[0].min(w[1]), w[0].max(w[1])), l))
        .collect();
    let labels: Vec<usize> = tree
        .edges()
        .iter()
        .map(|&(u, v)| by_edge[&(u.min(v), u.max(v))])
        .collect();
    orient_bipartite(tree, &labels)
}
