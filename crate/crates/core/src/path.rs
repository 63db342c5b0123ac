//! Path labelings.
//!
//! Two constructions live here. [`label_path_antimagic`] is the undirected
//! antimagic labeling of a path, which [`orient_bipartite`] turns into an
//! antimagic orientation. [`lemma1_label`] orients and labels a path `v_0 ...
//! v_m` carrying a set `U` of marked internal vertices. Marked vertices get
//! positive sums; unmarked vertices get pairwise distinct sums of absolute
//! value in `1..=m`. The lobster construction uses this for its spine.
//!
//! Vertex `i` of a path is `v_i`; edge `e` joins `v_e` and `v_{e+1}`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Arc, OrientedLabeling, Tree};

/// Undirected antimagic labeling of the path with `m >= 2` edges, listed
/// from the edge at `v_0`.
pub fn label_path_antimagic(m: usize) -> Result<Vec<usize>> {
    if m < 2 {
        return Err(Error::Domain(format!(
            "undirected path labeling needs at least two edges, got {m}"
        )));
    }
    let mut labels: Vec<usize> = (1..=m).collect();
    if m % 2 == 1 {
        labels.swap(m - 2, m - 1);
    }
    Ok(labels)
}

/// Orients every edge from one colour class of the proper 2-colouring to
/// the other. `labels[i]` belongs to `tree.edges()[i]`. If the labels form
/// an antimagic labeling of the tree, the result is an antimagic
/// orientation: each sum is the undirected sum, negated on one side.
pub fn orient_bipartite(tree: &Tree, labels: &[usize]) -> Result<OrientedLabeling> {
    let m = tree.edge_count();
    if labels.len() != m {
        return Err(Error::NotBijective(m));
    }
    let mut seen = vec![false; m + 1];
    for &l in labels {
        if l == 0 || l > m || std::mem::replace(&mut seen[l], true) {
            return Err(Error::NotBijective(m));
        }
    }
    // colour 0 for even distance from vertex 0
    let mut colour = vec![u8::MAX; tree.vertex_count()];
    colour[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &v in tree.neighbors(u) {
            if colour[v] == u8::MAX {
                colour[v] = 1 - colour[u];
                queue.push_back(v);
            }
        }
    }
    let arcs = tree
        .edges()
        .iter()
        .zip(labels)
        .map(|(&(u, v), &l)| {
            if colour[u] == 0 {
                Arc::new(u, v, l)
            } else {
                Arc::new(v, u, l)
            }
        })
        .collect();
    Ok(OrientedLabeling::new(tree.vertex_count(), arcs))
}

/// Antimagic orientation of the path `0 - 1 - ... - m` for any `m >= 1`.
pub fn orient_path(m: usize) -> Result<OrientedLabeling> {
    if m == 0 {
        return Err(Error::Domain("a path needs at least one edge".into()));
    }
    let labels = if m == 1 {
        vec![1]
    } else {
        label_path_antimagic(m)?
    };
    orient_bipartite(&Tree::path(m + 1), &labels)
}

/// The thirteen ways the first segment `P_0` is labeled, keyed by the
/// parity of `ell` and the value of `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Step2Case {
    /// `ell` even, `s = 1`.
    EvenS1,
    /// `ell` even, `s` odd, `s >= 3`.
    EvenOddS3Plus,
    /// `ell = 2`, `s = 0`.
    Ell2S0,
    /// `ell >= 4` even, `s = 0`.
    Ell4PlusS0,
    /// `ell` even, `s = 2`.
    EvenS2,
    /// `ell` even, `s` even, `s >= 4`.
    EvenEvenS4Plus,
    /// `ell` odd, `s = 0`.
    OddS0,
    /// `ell` odd, `s = 2`.
    OddS2,
    /// `ell` odd, `s` even, `s >= 4`.
    OddEvenS4Plus,
    /// `ell = 1`, `s = 1`.
    Ell1S1,
    /// `ell >= 3` odd, `s = 1`.
    Ell3PlusS1,
    /// `ell` odd, `s = 3`.
    OddS3,
    /// `ell` odd, `s` odd, `s >= 5`.
    OddOddS5Plus,
}

impl Step2Case {
    pub const ALL: [Step2Case; 13] = [
        Step2Case::EvenS1,
        Step2Case::EvenOddS3Plus,
        Step2Case::Ell2S0,
        Step2Case::Ell4PlusS0,
        Step2Case::EvenS2,
        Step2Case::EvenEvenS4Plus,
        Step2Case::OddS0,
        Step2Case::OddS2,
        Step2Case::OddEvenS4Plus,
        Step2Case::Ell1S1,
        Step2Case::Ell3PlusS1,
        Step2Case::OddS3,
        Step2Case::OddOddS5Plus,
    ];

    pub fn of(ell: usize, s: usize) -> Step2Case {
        use Step2Case::*;
        if ell % 2 == 0 {
            match s {
                0 if ell == 2 => Ell2S0,
                0 => Ell4PlusS0,
                1 => EvenS1,
                2 => EvenS2,
                _ if s % 2 == 1 => EvenOddS3Plus,
                _ => EvenEvenS4Plus,
            }
        } else {
            match s {
                0 => OddS0,
                1 if ell == 1 => Ell1S1,
                1 => Ell3PlusS1,
                2 => OddS2,
                3 => OddS3,
                _ if s % 2 == 0 => OddEvenS4Plus,
                _ => OddOddS5Plus,
            }
        }
    }
}

impl fmt::Display for Step2Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// How the last middle segment `P_{t-1}` was filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Step4Rule {
    /// One edge: it takes the last free label.
    SingleEdge,
    /// Alternating fill from the `v_m` side, as for the other middle segments.
    FromEnd,
    /// `ell` even, `s >= 2` even, odd edge count: fill from the `v_0` side.
    ExceptionA,
    /// `ell` odd, `s >= 3` odd, odd edge count: fill from the `v_0` side.
    ExceptionB,
    /// `ell` even and `s = 0`, or `ell` odd and `s = 1`, with an even edge
    /// count of at least four: fill from the `v_0` side.
    ExceptionC,
}

/// Normalised parameters of a marked path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaOneParams {
    /// Edge count.
    pub m: usize,
    /// Marked positions after normalisation, strictly increasing.
    pub h: Vec<usize>,
    /// Edge count of the last segment, `m - h_t`.
    pub ell: usize,
    /// `h_1 - ell`.
    pub s: usize,
    /// Whether the path was mirrored to make `h_1 >= m - h_t`.
    pub reversed: bool,
    pub case: Step2Case,
}

impl LemmaOneParams {
    pub fn t(&self) -> usize {
        self.h.len()
    }

    pub fn h1(&self) -> usize {
        self.h[0]
    }

    pub fn ht(&self) -> usize {
        self.h[self.h.len() - 1]
    }
}

/// Mirror image of marked positions on a path with `m` edges.
pub fn mirror_positions(m: usize, h: &[usize]) -> Vec<usize> {
    h.iter().rev().map(|&x| m - x).collect()
}

/// Validates `h` and mirrors it when the first segment is shorter than the
/// last.
pub fn normalize(m: usize, h: &[usize]) -> Result<LemmaOneParams> {
    if m < 2 {
        return Err(Error::Domain(format!("need at least two edges, got {m}")));
    }
    if h.is_empty() {
        return Err(Error::Domain("no marked vertices".into()));
    }
    if h.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain(format!(
            "marked positions must increase strictly: {h:?}"
        )));
    }
    if h[0] == 0 || h[h.len() - 1] >= m {
        return Err(Error::Domain(format!(
            "marked positions must be internal to 0..={m}: {h:?}"
        )));
    }
    let (h, reversed) = if h[0] < m - h[h.len() - 1] {
        (mirror_positions(m, h), true)
    } else {
        (h.to_vec(), false)
    };
    let ell = m - h[h.len() - 1];
    let s = h[0] - ell;
    Ok(LemmaOneParams {
        m,
        h,
        ell,
        s,
        reversed,
        case: Step2Case::of(ell, s),
    })
}

/// Unused labels; the alternating fills draw from both ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelPool {
    remaining: BTreeSet<usize>,
}

impl LabelPool {
    /// `{1, ..., m}`.
    pub fn new(m: usize) -> Self {
        LabelPool {
            remaining: (1..=m).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.remaining.len()
    }

    pub fn is_empty(&self) -> bool {
        self.remaining.is_empty()
    }

    pub fn contains(&self, label: usize) -> bool {
        self.remaining.contains(&label)
    }

    pub fn take_largest(&mut self) -> Option<usize> {
        self.remaining.pop_last()
    }

    pub fn take_smallest(&mut self) -> Option<usize> {
        self.remaining.pop_first()
    }

    /// Removes a specific label; false if it was already used.
    pub fn take(&mut self, label: usize) -> bool {
        self.remaining.remove(&label)
    }
}

/// `m, 1, m-2, 3, m-4, 5, ...` truncated to `len` terms.
fn zigzag_from_top(m: usize, len: usize) -> impl Iterator<Item = usize> {
    (0..len).map(move |i| if i % 2 == 0 { m - i } else { i })
}

/// Labels of the last segment `P_t`, listed from the edge at `v_m`.
pub fn step1_sequence(params: &LemmaOneParams) -> Vec<usize> {
    let (m, ell) = (params.m, params.ell);
    let mut seq = Vec::with_capacity(ell);
    for k in 1..=ell / 2 {
        seq.push(m - (2 * k - 1));
        seq.push(2 * k);
    }
    if ell % 2 == 1 {
        seq.push(m - ell);
    }
    seq
}

/// Labels of the first segment `P_0`, listed from the edge at `v_0`.
pub fn step2_sequence(params: &LemmaOneParams) -> Vec<usize> {
    use Step2Case::*;
    let (m, ell, s) = (params.m, params.ell, params.s);
    let mut seq: Vec<usize> = Vec::with_capacity(ell + s);
    // pairs (lo + k, m - ell - k) for k in ks
    let pairs = |seq: &mut Vec<usize>, lo: usize, ks: std::ops::RangeInclusive<usize>| {
        for k in ks {
            seq.push(lo + k);
            seq.push(m - ell - k);
        }
    };
    match params.case {
        EvenS1 => seq.extend(zigzag_from_top(m, ell + 1)),
        EvenOddS3Plus => {
            seq.extend(zigzag_from_top(m, ell + 1));
            pairs(&mut seq, ell, 1..=s / 2);
        }
        Ell2S0 => seq.extend([m, m - 2]),
        Ell4PlusS0 => {
            seq.extend(zigzag_from_top(m, ell - 1));
            seq.push(m - ell);
        }
        EvenS2 => {
            seq.extend(zigzag_from_top(m, ell + 1));
            seq.push(m - ell - 1);
        }
        EvenEvenS4Plus => {
            seq.extend(zigzag_from_top(m, ell + 1));
            pairs(&mut seq, ell, 1..=s / 2 - 1);
            seq.push(m - ell - s / 2);
        }
        OddS0 => seq.extend(zigzag_from_top(m, ell)),
        OddS2 => {
            seq.extend(zigzag_from_top(m, ell));
            seq.extend([ell, m - ell - 1]);
        }
        OddEvenS4Plus => {
            seq.extend(zigzag_from_top(m, ell));
            pairs(&mut seq, ell - 1, 1..=s / 2);
        }
        Ell1S1 => seq.extend([m, m - 2]),
        Ell3PlusS1 => {
            seq.extend(zigzag_from_top(m, ell));
            seq.push(m - ell - 1);
        }
        OddS3 => {
            seq.extend(zigzag_from_top(m, ell));
            seq.extend([ell, m - ell - 1, m - ell - 2]);
        }
        OddOddS5Plus => {
            seq.extend(zigzag_from_top(m, ell));
            pairs(&mut seq, ell - 1, 1..=s / 2);
            seq.push(m - ell - s / 2 - 1);
        }
    }
    seq
}

/// Vertex-sums the first segment's vertices `v_0 ... v_{h_1 - 1}` are
/// expected to receive, as closed-form lists per case. Sorted ascending.
pub fn predicted_p0_sums(params: &LemmaOneParams) -> Vec<i64> {
    use Step2Case::*;
    let (m, ell, s) = (params.m as i64, params.ell as i64, params.s as i64);
    // -m, m-1, -(m-3), m-5, ... : index 0 is -m, odd indices positive
    let head = |last: i64| {
        (0..=last).map(move |j| {
            if j == 0 {
                -m
            } else if j % 2 == 1 {
                m - 2 * j + 1
            } else {
                -(m - 2 * j + 1)
            }
        })
    };
    // m-2ell-1, -(m-2ell-2), m-2ell-3, ... for k in 1..=last
    let even_tail = |last: i64| {
        (1..=last).map(move |k| {
            let v = m - 2 * ell - k;
            if k % 2 == 1 {
                v
            } else {
                -v
            }
        })
    };
    // m-2ell-2, -(m-2ell-3), m-2ell-4, ... for k in 1..=pairs
    let odd_tail = |pairs: i64| {
        (1..=pairs).flat_map(move |k| [m - 2 * ell - 2 * k, -(m - 2 * ell - 2 * k - 1)])
    };
    let mut sums: Vec<i64> = match params.case {
        EvenS1 => head(ell).collect(),
        EvenOddS3Plus => head(ell).chain(even_tail(s - 1)).collect(),
        Ell2S0 => vec![-m, 2],
        Ell4PlusS0 => head(ell - 2).chain([2]).collect(),
        EvenS2 => head(ell).chain([1]).collect(),
        EvenEvenS4Plus => head(ell).chain(even_tail(s - 2)).chain([1]).collect(),
        OddS0 => head(ell - 1).collect(),
        OddS2 => head(ell - 1)
            .chain([m - 2 * ell + 1, -(m - 2 * ell - 1)])
            .collect(),
        OddEvenS4Plus => head(ell - 1)
            .chain([m - 2 * ell + 1, -(m - 2 * ell - 1)])
            .chain(odd_tail((s - 2) / 2))
            .collect(),
        Ell1S1 => vec![-m, 2],
        Ell3PlusS1 => head(ell - 1).chain([2]).collect(),
        OddS3 => head(ell - 1)
            .chain([m - 2 * ell + 1, -(m - 2 * ell - 1), 1])
            .collect(),
        OddOddS5Plus => head(ell - 1)
            .chain([m - 2 * ell + 1, -(m - 2 * ell - 1)])
            .chain(odd_tail((s - 3) / 2))
            .chain([1])
            .collect(),
    };
    sums.sort_unstable();
    sums
}

/// Which rule fills `P_{t-1}` given its edge count.
pub fn step4_rule(params: &LemmaOneParams, edges: usize) -> Step4Rule {
    let (ell, s) = (params.ell, params.s);
    if edges == 1 {
        return Step4Rule::SingleEdge;
    }
    let odd_edges = edges % 2 == 1;
    if ell % 2 == 0 && s >= 2 && s % 2 == 0 && odd_edges {
        Step4Rule::ExceptionA
    } else if ell % 2 == 1 && s >= 3 && s % 2 == 1 && odd_edges {
        Step4Rule::ExceptionB
    } else if ((ell % 2 == 0 && s == 0) || (ell % 2 == 1 && s == 1)) && !odd_edges && edges >= 4
    {
        Step4Rule::ExceptionC
    } else {
        Step4Rule::FromEnd
    }
}

/// Fills `edges` in the given order, alternating largest and smallest free label.
fn alternate_fill(
    labels: &mut [usize],
    pool: &mut LabelPool,
    edges: impl Iterator<Item = usize>,
) -> Result<()> {
    for (k, e) in edges.enumerate() {
        let l = if k % 2 == 0 {
            pool.take_largest()
        } else {
            pool.take_smallest()
        };
        labels[e] = l.ok_or_else(|| Error::Internal("label pool ran dry".into()))?;
    }
    Ok(())
}

/// Middle segments `P_1 ... P_{t-2}`, each filled from its `v_m` end.
pub fn step3_middle(params: &LemmaOneParams, pool: &mut LabelPool, labels: &mut [usize]) -> Result<()> {
    let h = &params.h;
    for i in 1..params.t().saturating_sub(1) {
        alternate_fill(labels, pool, (h[i - 1]..h[i]).rev())?;
    }
    Ok(())
}

/// The last middle segment `P_{t-1}`; `None` when `t = 1`.
pub fn step4_last_middle(
    params: &LemmaOneParams,
    pool: &mut LabelPool,
    labels: &mut [usize],
) -> Result<Option<Step4Rule>> {
    let t = params.t();
    if t < 2 {
        return Ok(None);
    }
    let (lo, hi) = (params.h[t - 2], params.h[t - 1]);
    let rule = step4_rule(params, hi - lo);
    match rule {
        Step4Rule::SingleEdge => {
            if pool.len() != 1 {
                return Err(Error::Internal(format!(
                    "{} labels left for a single edge",
                    pool.len()
                )));
            }
            labels[lo] = pool.take_smallest().expect("one label");
        }
        Step4Rule::FromEnd => alternate_fill(labels, pool, (lo..hi).rev())?,
        _ => alternate_fill(labels, pool, lo..hi)?,
    }
    Ok(Some(rule))
}

/// A fallback applied when the plain four-step labeling misses a condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Repair {
    /// `P_{t-2}` and/or `P_{t-1}` filled from the opposite end.
    Directions { second_last: bool, last: bool },
    /// The last edge of `P_0` takes the one label left once `P_t` and `P_0`
    /// are labeled.
    FirstSegmentTail,
    /// A single-edge `P_{t-1}` swaps labels with the edge of `P_t` at `v_{h_t}`.
    LastSegmentSwap,
}

impl Repair {
    /// Candidates in the order they are tried.
    pub const ALL: [Repair; 5] = [
        Repair::Directions { second_last: false, last: true },
        Repair::Directions { second_last: true, last: false },
        Repair::Directions { second_last: true, last: true },
        Repair::FirstSegmentTail,
        Repair::LastSegmentSwap,
    ];
}

/// A labeled marked path together with how it was built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaOneConstruction {
    pub params: LemmaOneParams,
    pub step4: Option<Step4Rule>,
    /// `None` when the four steps alone already meet every condition.
    pub repair: Option<Repair>,
    /// Labels by edge in the caller's vertex order.
    pub labels: Vec<usize>,
    /// Arcs in edge order, in the caller's vertex order.
    pub labeling: OrientedLabeling,
}

fn place(pool: &mut LabelPool, labels: &mut [usize], edge: usize, label: usize) -> Result<()> {
    if !pool.take(label) {
        return Err(Error::Internal(format!(
            "label {label} for edge {edge} is out of range or already used"
        )));
    }
    labels[edge] = label;
    Ok(())
}

/// Labels of the normalised path, segment by segment, optionally with a
/// repair.
fn build_labels(
    params: &LemmaOneParams,
    repair: Option<Repair>,
) -> Result<(Vec<usize>, Option<Step4Rule>)> {
    let m = params.m;
    let h1 = params.h1();
    let t = params.t();
    let mut pool = LabelPool::new(m);
    let mut labels = vec![0usize; m];

    let last = step1_sequence(params);
    if last.len() != params.ell {
        return Err(Error::Internal(format!(
            "last segment has {} edges but {} labels",
            params.ell,
            last.len()
        )));
    }
    for (k, &l) in last.iter().enumerate() {
        place(&mut pool, &mut labels, m - 1 - k, l)?;
    }

    let first = step2_sequence(params);
    if first.len() != h1 {
        return Err(Error::Internal(format!(
            "first segment has {h1} edges but case {} produced {} labels",
            params.case,
            first.len()
        )));
    }
    let tail_fix = repair == Some(Repair::FirstSegmentTail);
    if tail_fix && (t != 1 || pool.contains(first[h1 - 1])) {
        return Err(Error::Internal("first-segment repair does not apply".into()));
    }
    for (k, &l) in first.iter().enumerate() {
        if tail_fix && k == h1 - 1 {
            let spare = pool.take_smallest().expect("one label left");
            labels[k] = spare;
        } else {
            place(&mut pool, &mut labels, k, l)?;
        }
    }
    let mut got = first_segment_sums(&first);
    got.sort_unstable();
    if got != predicted_p0_sums(params) {
        return Err(Error::Internal(format!(
            "case {} (m={m}, ell={}, s={}): first-segment sums {got:?} differ from the closed form",
            params.case, params.ell, params.s
        )));
    }

    let (flip_second_last, flip_last) = match repair {
        Some(Repair::Directions { second_last, last }) => (second_last, last),
        _ => (false, false),
    };
    if flip_second_last && t >= 3 {
        let mut pre = params.clone();
        pre.h.truncate(t - 1);
        step3_middle(&pre, &mut pool, &mut labels)?;
        alternate_fill(&mut labels, &mut pool, params.h[t - 3]..params.h[t - 2])?;
    } else if flip_second_last {
        return Err(Error::Internal("no segment before the last middle one".into()));
    } else {
        step3_middle(params, &mut pool, &mut labels)?;
    }
    let step4 = if flip_last {
        if t < 2 {
            return Err(Error::Internal("no middle segment".into()));
        }
        let (lo, hi) = (params.h[t - 2], params.h[t - 1]);
        let rule = step4_rule(params, hi - lo);
        match rule {
            Step4Rule::SingleEdge => {
                return Err(Error::Internal("a single edge has no direction".into()))
            }
            Step4Rule::FromEnd => alternate_fill(&mut labels, &mut pool, lo..hi)?,
            _ => alternate_fill(&mut labels, &mut pool, (lo..hi).rev())?,
        }
        Some(rule)
    } else {
        step4_last_middle(params, &mut pool, &mut labels)?
    };
    if !pool.is_empty() {
        return Err(Error::Internal(format!("{} labels left over", pool.len())));
    }
    if repair == Some(Repair::LastSegmentSwap) {
        if step4 != Some(Step4Rule::SingleEdge) {
            return Err(Error::Internal("last-segment repair does not apply".into()));
        }
        labels.swap(params.h[t - 2], params.ht());
    }
    Ok((labels, step4))
}

/// Sums of the normalised path, forward up to `v_{h_t}` and backward after.
fn normalized_sums(labels: &[usize], ht: usize) -> Vec<i64> {
    let mut sums = vec![0i64; labels.len() + 1];
    for (e, &l) in labels.iter().enumerate() {
        let (tail, head) = if e < ht { (e, e + 1) } else { (e + 1, e) };
        sums[head] += l as i64;
        sums[tail] -= l as i64;
    }
    sums
}

fn meets_conditions(params: &LemmaOneParams, labels: &[usize]) -> bool {
    let m = params.m as i64;
    let sums = normalized_sums(labels, params.ht());
    let mut seen = std::collections::HashSet::new();
    sums.iter().enumerate().all(|(v, &x)| {
        if params.h.binary_search(&v).is_ok() {
            x > 0
        } else {
            (1..=m).contains(&x.abs()) && seen.insert(x)
        }
    })
}

fn finish(
    params: LemmaOneParams,
    step4: Option<Step4Rule>,
    repair: Option<Repair>,
    mut labels: Vec<usize>,
) -> LemmaOneConstruction {
    let (m, ht) = (params.m, params.ht());
    let mut arcs: Vec<Arc> = (0..m)
        .map(|e| {
            if e < ht {
                Arc::new(e, e + 1, labels[e])
            } else {
                Arc::new(e + 1, e, labels[e])
            }
        })
        .collect();
    if params.reversed {
        labels.reverse();
        arcs = arcs
            .into_iter()
            .rev()
            .map(|a| Arc::new(m - a.tail, m - a.head, a.label))
            .collect();
    }
    LemmaOneConstruction {
        params,
        step4,
        repair,
        labels,
        labeling: OrientedLabeling::new(m + 1, arcs),
    }
}

/// Runs the four labeling steps as stated, without checking the result,
/// and maps it back when normalisation mirrored the path.
pub fn lemma1_construct(m: usize, h: &[usize]) -> Result<LemmaOneConstruction> {
    let params = normalize(m, h)?;
    let (labels, step4) = build_labels(&params, None)?;
    Ok(finish(params, step4, None, labels))
}

/// Like [`lemma1_construct`], but falls back to the first [`Repair`] that
/// meets every condition when the plain steps do not.
pub fn lemma1_construct_checked(m: usize, h: &[usize]) -> Result<LemmaOneConstruction> {
    let params = normalize(m, h)?;
    if let Ok((labels, step4)) = build_labels(&params, None) {
        if meets_conditions(&params, &labels) {
            return Ok(finish(params, step4, None, labels));
        }
    }
    let t = params.t();
    let step4 = (t >= 2).then(|| step4_rule(&params, params.h[t - 1] - params.h[t - 2]));
    for repair in Repair::ALL {
        if let Ok((labels, _)) = build_labels(&params, Some(repair)) {
            if meets_conditions(&params, &labels) {
                return Ok(finish(params, step4, Some(repair), labels));
            }
        }
    }
    Err(Error::Internal(format!("no labeling found for m={m}, h={h:?}")))
}

/// Orients and labels the path `0 - 1 - ... - m` so that the vertices at
/// positions `h` get positive sums and the others get distinct nonzero sums
/// of absolute value at most `m`.
pub fn lemma1_label(m: usize, h: &[usize]) -> Result<OrientedLabeling> {
    lemma1_construct_checked(m, h).map(|c| c.labeling)
}

/// Sums of `v_0 ... v_{len-1}` on a forward-oriented prefix with the given labels.
fn first_segment_sums(prefix: &[usize]) -> Vec<i64> {
    (0..prefix.len())
        .map(|i| {
            let inward = if i == 0 { 0 } else { prefix[i - 1] as i64 };
            inward - prefix[i] as i64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vertex_sums;
    use crate::verify::verify_lemma1;

    fn params(m: usize, h: &[usize]) -> LemmaOneParams {
        normalize(m, h).unwrap()
    }

    #[test]
    fn undirected_path_labels() {
        assert_eq!(label_path_antimagic(4).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(label_path_antimagic(5).unwrap(), vec![1, 2, 3, 5, 4]);
        assert_eq!(label_path_antimagic(2).unwrap(), vec![1, 2]);
        assert!(label_path_antimagic(1).is_err());
        assert!(label_path_antimagic(0).is_err());
    }

    #[test]
    fn bipartite_orientation() {
        let k2 = orient_bipartite(&Tree::path(2), &[1]).unwrap();
        assert_eq!(vertex_sums(&k2).unwrap().as_slice(), &[-1, 1]);

        // m = 5: undirected sums 1,3,5,8,9,4; ends have different colours
        let d = orient_path(5).unwrap();
        let sums = vertex_sums(&d).unwrap();
        assert_eq!(sums.as_slice(), &[-1, 3, -5, 8, -9, 4]);

        assert!(orient_bipartite(&Tree::path(3), &[1, 1]).is_err());
        assert!(orient_bipartite(&Tree::path(3), &[1]).is_err());
    }

    #[test]
    fn normalisation() {
        let p = params(13, &[3, 4, 7, 9, 10, 11]);
        assert_eq!((p.ell, p.s, p.reversed), (2, 1, false));
        assert_eq!(p.case, Step2Case::EvenS1);

        let p = params(13, &[2, 3, 4, 6, 9, 10]);
        assert_eq!((p.ell, p.s, p.reversed), (2, 1, true));
        assert_eq!(p.h, vec![3, 4, 7, 9, 10, 11]);

        let p = params(2, &[1]);
        assert_eq!((p.ell, p.s, p.reversed), (1, 0, false));

        assert!(normalize(13, &[]).is_err());
        assert!(normalize(13, &[0, 3]).is_err());
        assert!(normalize(13, &[3, 13]).is_err());
        assert!(normalize(13, &[4, 3]).is_err());
        assert!(normalize(1, &[1]).is_err());
    }

    #[test]
    fn step1_sequences() {
        assert_eq!(step1_sequence(&params(13, &[3, 4, 7, 9, 10, 11])), vec![12, 2]);
        assert_eq!(step1_sequence(&params(13, &[3, 5, 6, 7, 10])), vec![12, 2, 10]);
        assert_eq!(step1_sequence(&params(2, &[1])), vec![1]);
    }

    #[test]
    fn step2_sequences() {
        assert_eq!(step2_sequence(&params(13, &[3, 4, 7, 9, 10, 11])), vec![13, 1, 11]);
        assert_eq!(step2_sequence(&params(13, &[4, 5, 6, 7, 10])), vec![13, 1, 11, 9]);
        // ell = 2, s = 0
        let p = params(9, &[2, 7]);
        assert_eq!(p.case, Step2Case::Ell2S0);
        assert_eq!(step2_sequence(&p), vec![9, 7]);
        // ell = 2, s = 2 collapses to m, 1, m - ell, m - ell - 1
        let p = params(11, &[4, 9]);
        assert_eq!(p.case, Step2Case::EvenS2);
        assert_eq!(step2_sequence(&p), vec![11, 1, 9, 8]);
    }

    #[test]
    fn predicted_sums_examples() {
        assert_eq!(predicted_p0_sums(&params(13, &[3, 4, 7, 9, 10, 11])), vec![-13, -10, 12]);
        let p = params(9, &[2, 7]);
        assert_eq!(predicted_p0_sums(&p), vec![-9, 2]);
        let p = params(9, &[2, 8]);
        assert_eq!(p.case, Step2Case::Ell1S1);
        assert_eq!(predicted_p0_sums(&p), vec![-9, 2]);
    }

    #[test]
    fn middle_and_last_middle() {
        // m = 13, h = {3, 4, 7, 9, 10, 11}: P_2 = v_4 v_5 v_6 v_7 gets 8, 3, 9 and P_5 gets 5
        let c = lemma1_construct(13, &[3, 4, 7, 9, 10, 11]).unwrap();
        assert_eq!(&c.labels[4..7], &[8, 3, 9]);
        assert_eq!(c.labels[10], 5);
        assert_eq!(c.step4, Some(Step4Rule::SingleEdge));
        // h = {3, 5, 6, 7, 10}: P_1 = [3, 9], P_4 = [5, 4, 6] filled from the v_m side
        let c = lemma1_construct(13, &[3, 5, 6, 7, 10]).unwrap();
        assert_eq!(&c.labels[3..5], &[3, 9]);
        assert_eq!(&c.labels[7..10], &[5, 4, 6]);
        assert_eq!(c.step4, Some(Step4Rule::FromEnd));
    }

    #[test]
    fn step4_exception_a_reverses_fill() {
        // m = 15, h = {6, 10, 13}: ell = 2, s = 4, P_{t-1} has 3 edges.
        let p = params(15, &[6, 10, 13]);
        assert_eq!((p.ell, p.s), (2, 4));
        assert_eq!(step4_rule(&p, 3), Step4Rule::ExceptionA);
        let c = lemma1_construct(15, &[6, 10, 13]).unwrap();
        assert_eq!(c.step4, Some(Step4Rule::ExceptionA));
        // largest free label lands on the edge nearest v_0
        let seg = &c.labels[10..13];
        assert!(seg[0] > seg[1] && seg[2] > seg[1] && seg[0] > seg[2]);
    }

    #[test]
    fn pool_takes_from_both_ends() {
        let mut pool = LabelPool::new(4);
        assert_eq!(pool.take_largest(), Some(4));
        assert_eq!(pool.take_smallest(), Some(1));
        assert_eq!(pool.len(), 2);
        assert!(pool.take(3));
        assert!(!pool.take(3));
        assert_eq!(pool.take_largest(), Some(2));
        assert!(pool.is_empty());
        assert_eq!(pool.take_smallest(), None);
    }

    #[test]
    fn smallest_instance() {
        let d = lemma1_label(2, &[1]).unwrap();
        assert_eq!(vertex_sums(&d).unwrap().as_slice(), &[-2, 3, -1]);
    }

    #[test]
    fn plain_steps_can_collide() {
        let c = lemma1_construct(5, &[2, 3]).unwrap();
        let sums = vertex_sums(&c.labeling).unwrap();
        assert_eq!(sums.get(1), sums.get(4));
        let fixed = lemma1_construct_checked(5, &[2, 3]).unwrap();
        assert!(fixed.repair.is_some());
        assert!(verify_lemma1(&fixed.labeling, &[2, 3]).passes());
    }

    #[test]
    fn closed_form_repairs_scale() {
        for ell in (2..200).step_by(2) {
            let c = lemma1_construct_checked(2 * ell, &[ell]).unwrap();
            assert_eq!(c.repair, Some(Repair::FirstSegmentTail));
            assert!(verify_lemma1(&c.labeling, &[ell]).passes());
            let h = [ell, ell + 1];
            let c = lemma1_construct_checked(2 * ell + 1, &h).unwrap();
            assert_eq!(c.repair, Some(Repair::LastSegmentSwap));
            assert!(verify_lemma1(&c.labeling, &h).passes());
        }
    }

    #[test]
    fn checked_construction_meets_all_conditions_up_to_twelve() {
        for m in 2..=12usize {
            for mask in 1u32..(1 << (m - 1)) {
                let h: Vec<usize> = (1..m).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                let d = lemma1_label(m, &h).unwrap();
                assert!(verify_lemma1(&d, &h).passes(), "m={m} h={h:?}");
            }
        }
    }
}
