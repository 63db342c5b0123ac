//! Independent certification of labelings.
//!
//! Everything here is recomputed from the arc list; nothing calls into the
//! constructors. Checks return reports with the offending vertices rather
//! than bare booleans.

use std::collections::HashSet;

use serde::Serialize;

use crate::graph::OrientedLabeling;
use crate::lobster::MatchingPlan;
use crate::taxonomy::SpineDecomposition;

/// Entering minus leaving labels; `None` if an arc leaves the vertex range.
fn sums_from_arcs(d: &OrientedLabeling) -> Option<Vec<i64>> {
    let mut sums = vec![0i64; d.vertex_count()];
    for a in d.arcs() {
        *sums.get_mut(a.head)? += a.label as i64;
        *sums.get_mut(a.tail)? -= a.label as i64;
    }
    Some(sums)
}

fn labels_are_bijective(d: &OrientedLabeling) -> bool {
    let mut labels: Vec<usize> = d.arcs().iter().map(|a| a.label).collect();
    labels.sort_unstable();
    labels.iter().enumerate().all(|(i, &l)| l == i + 1)
}

/// Outcome of [`verify_antimagic`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntimagicReport {
    /// Every arc endpoint names an existing vertex.
    pub well_formed: bool,
    /// Labels are exactly `1..=m`.
    pub bijective: bool,
    /// Vertex-sums by vertex.
    pub sums: Vec<i64>,
    /// The same values in ascending order.
    pub sorted_sums: Vec<i64>,
    /// Vertex pairs `(u, v)`, `u < v`, with equal sums.
    pub collisions: Vec<(usize, usize)>,
}

impl AntimagicReport {
    pub fn is_antimagic(&self) -> bool {
        self.well_formed && self.bijective && self.collisions.is_empty()
    }
}

/// Checks that the labels are a bijection onto `1..=m` and that no two
/// vertices share a vertex-sum.
pub fn verify_antimagic(d: &OrientedLabeling) -> AntimagicReport {
    let Some(sums) = sums_from_arcs(d) else {
        return AntimagicReport {
            well_formed: false,
            bijective: labels_are_bijective(d),
            sums: Vec::new(),
            sorted_sums: Vec::new(),
            collisions: Vec::new(),
        };
    };
    let mut order: Vec<usize> = (0..sums.len()).collect();
    order.sort_by_key(|&v| (sums[v], v));
    let mut collisions = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && sums[order[end]] == sums[order[start]] {
            end += 1;
        }
        for i in start..end {
            for j in i + 1..end {
                collisions.push((order[i], order[j]));
            }
        }
        start = end;
    }
    collisions.sort_unstable();
    AntimagicReport {
        well_formed: true,
        bijective: labels_are_bijective(d),
        sorted_sums: order.iter().map(|&v| sums[v]).collect(),
        sums,
        collisions,
    }
}

/// Outcome of [`verify_lemma1`]; each condition reported separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Report {
    pub well_formed: bool,
    pub bijective: bool,
    /// Marked vertices whose sum is below 1, with the sum.
    pub marked_not_positive: Vec<(usize, i64)>,
    /// Unmarked vertices with `|s|` outside `1..=m`.
    pub unmarked_out_of_range: Vec<(usize, i64)>,
    /// Unmarked vertex pairs with equal sums.
    pub unmarked_collisions: Vec<(usize, usize)>,
    pub sums: Vec<i64>,
}

impl Lemma1Report {
    pub fn condition_i(&self) -> bool {
        self.well_formed && self.marked_not_positive.is_empty()
    }

    pub fn condition_ii(&self) -> bool {
        self.well_formed && self.unmarked_out_of_range.is_empty()
    }

    pub fn condition_iii(&self) -> bool {
        self.well_formed && self.unmarked_collisions.is_empty()
    }

    pub fn passes(&self) -> bool {
        self.bijective && self.condition_i() && self.condition_ii() && self.condition_iii()
    }
}

/// Checks a labeled oriented path against the three marked-path
/// conditions. Vertices are the path positions `0..=m`, `marked` lists
/// positions of marked vertices.
pub fn verify_lemma1(d: &OrientedLabeling, marked: &[usize]) -> Lemma1Report {
    let m = d.m() as i64;
    let path_shaped = d.vertex_count() == d.arcs().len() + 1
        && d
            .arcs()
            .iter()
            .all(|a| a.tail.abs_diff(a.head) == 1)
        && {
            let lows: HashSet<usize> = d.arcs().iter().map(|a| a.tail.min(a.head)).collect();
            lows.len() == d.arcs().len()
        };
    let sums = match sums_from_arcs(d) {
        Some(s) if path_shaped => s,
        _ => {
            return Lemma1Report {
                well_formed: false,
                bijective: labels_are_bijective(d),
                marked_not_positive: Vec::new(),
                unmarked_out_of_range: Vec::new(),
                unmarked_collisions: Vec::new(),
                sums: Vec::new(),
            }
        }
    };
    let is_marked = |v: usize| marked.contains(&v);
    let marked_not_positive = marked
        .iter()
        .filter(|&&v| v >= sums.len() || sums[v] < 1)
        .map(|&v| (v, sums.get(v).copied().unwrap_or(0)))
        .collect();
    let unmarked: Vec<usize> = (0..sums.len()).filter(|&v| !is_marked(v)).collect();
    let unmarked_out_of_range = unmarked
        .iter()
        .filter(|&&v| !(1..=m).contains(&sums[v].abs()))
        .map(|&v| (v, sums[v]))
        .collect();
    let mut unmarked_collisions = Vec::new();
    for (i, &u) in unmarked.iter().enumerate() {
        for &v in &unmarked[i + 1..] {
            if sums[u] == sums[v] {
                unmarked_collisions.push((u, v));
            }
        }
    }
    Lemma1Report {
        well_formed: true,
        bijective: labels_are_bijective(d),
        marked_not_positive,
        unmarked_out_of_range,
        unmarked_collisions,
        sums,
    }
}

/// Which numeric band a vertex-sum was supposed to land in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Band {
    /// `Y` leaves: `[p+1, p+|Y|]`.
    Leg,
    /// Every `X` vertex: negative with `|s| >= p+|Y|+1`.
    Pendant,
    /// Leaf members of `X`: `|s| <= p+|Y|+|X1|-r+|M1|`.
    PendantLeaf,
    /// Non-leaf members of `X`: `|s| >= 2p+|Y|+|X1|-r+2`.
    PendantInner,
    /// Spine vertices outside `U`: `1 <= |s| <= p`.
    Spine,
    /// `U`: `s >= p+|Y|+|X1|-r+2`.
    Branch,
    /// `U` sums strictly increase when `U` is ordered by the sum without
    /// its `M1` arc (ties by spine position).
    BranchOrder,
    /// Non-leaf `X` sums strictly increase when ordered by the sum without
    /// their `M2` arc (ties by vertex index).
    PendantInnerOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BandViolation {
    pub band: Band,
    pub vertex: usize,
    pub sum: i64,
}

/// Outcome of [`verify_band_structure`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BandReport {
    pub well_formed: bool,
    pub violations: Vec<BandViolation>,
}

impl BandReport {
    pub fn passes(&self) -> bool {
        self.well_formed && self.violations.is_empty()
    }

    pub fn violated_bands(&self) -> HashSet<Band> {
        self.violations.iter().map(|v| v.band).collect()
    }
}

/// Checks that every vertex-sum of a lobster labeling falls in the band
/// its vertex class is assigned.
pub fn verify_band_structure(
    d: &OrientedLabeling,
    decomp: &SpineDecomposition,
    plan: &MatchingPlan,
) -> BandReport {
    let Some(sums) = sums_from_arcs(d) else {
        return BandReport {
            well_formed: false,
            violations: Vec::new(),
        };
    };
    let p = decomp.p() as i64;
    let ny = decomp.y.len() as i64;
    let nx1 = decomp.x1.len() as i64;
    let r = plan.r as i64;
    let nm1 = plan.m1.len() as i64;

    let mut violations = Vec::new();
    let mut check = |band: Band, vertex: usize, ok: &dyn Fn(i64) -> bool| {
        if !ok(sums[vertex]) {
            violations.push(BandViolation {
                band,
                vertex,
                sum: sums[vertex],
            });
        }
    };
    for &y in &decomp.y {
        check(Band::Leg, y, &|s| (p + 1..=p + ny).contains(&s));
    }
    for &x in &decomp.x {
        check(Band::Pendant, x, &|s| s < 0 && -s > p + ny);
        if decomp.x1.binary_search(&x).is_ok() {
            check(Band::PendantLeaf, x, &|s| s.abs() <= p + ny + nx1 - r + nm1);
        } else {
            check(Band::PendantInner, x, &|s| s.abs() >= 2 * p + ny + nx1 - r + 2);
        }
    }
    for (i, &z) in decomp.spine.iter().enumerate() {
        if decomp.u_positions.contains(&i) {
            check(Band::Branch, z, &|s| s >= p + ny + nx1 - r + 2);
        } else {
            check(Band::Spine, z, &|s| (1..=p).contains(&s.abs()));
        }
    }
    let mut labels = std::collections::HashMap::new();
    for a in d.arcs() {
        labels.insert((a.tail.min(a.head), a.tail.max(a.head)), a.label as i64);
    }
    let label = |a: usize, b: usize| labels.get(&(a.min(b), a.max(b))).copied();

    // U ordered by s - tau(M1 arc); M1 arcs enter U
    let mut branch: Vec<(i64, usize, usize)> = Vec::new();
    for &(x, u) in &plan.m1 {
        let (Some(l), Some(pos)) = (label(x, u), decomp.spine.iter().position(|&z| z == u)) else {
            return BandReport {
                well_formed: false,
                violations,
            };
        };
        branch.push((sums[u] - l, pos, u));
    }
    branch.sort_unstable();
    for w in branch.windows(2) {
        if sums[w[1].2] <= sums[w[0].2] {
            violations.push(BandViolation {
                band: Band::BranchOrder,
                vertex: w[1].2,
                sum: sums[w[1].2],
            });
        }
    }

    // non-leaf X ordered by s + tau(M2 arc); M2 arcs leave X
    let mut inner: Vec<(i64, usize)> = Vec::new();
    for &(x, y) in &plan.m2 {
        let Some(l) = label(x, y) else {
            return BandReport {
                well_formed: false,
                violations,
            };
        };
        inner.push((sums[x] + l, x));
    }
    inner.sort_unstable();
    for w in inner.windows(2) {
        if sums[w[1].1] <= sums[w[0].1] {
            violations.push(BandViolation {
                band: Band::PendantInnerOrder,
                vertex: w[1].1,
                sum: sums[w[1].1],
            });
        }
    }

    BandReport {
        well_formed: true,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Arc;

    fn path(labels: &[usize], forward_until: usize) -> OrientedLabeling {
        let arcs = labels
            .iter()
            .enumerate()
            .map(|(e, &l)| {
                if e < forward_until {
                    Arc::new(e, e + 1, l)
                } else {
                    Arc::new(e + 1, e, l)
                }
            })
            .collect();
        OrientedLabeling::new(labels.len() + 1, arcs)
    }

    #[test]
    fn k2_is_antimagic() {
        let d = OrientedLabeling::new(2, vec![Arc::new(0, 1, 1)]);
        let r = verify_antimagic(&d);
        assert!(r.is_antimagic());
        assert_eq!(r.sorted_sums, vec![-1, 1]);
    }

    #[test]
    fn duplicate_label_fails_bijection() {
        let d = OrientedLabeling::new(3, vec![Arc::new(0, 1, 1), Arc::new(1, 2, 1)]);
        let r = verify_antimagic(&d);
        assert!(!r.bijective);
        assert!(!r.is_antimagic());
    }

    #[test]
    fn collisions_are_listed() {
        // 0 -> 1 <- 2 with labels 1, 1 would collide; use 0 -> 1 -> 2 with 2, 1:
        // sums -2, 1, 1
        let d = path(&[2, 1], 2);
        let r = verify_antimagic(&d);
        assert_eq!(r.collisions, vec![(1, 2)]);
        assert!(!r.is_antimagic());
    }

    #[test]
    fn out_of_range_arc_is_not_well_formed() {
        let d = OrientedLabeling::new(2, vec![Arc::new(0, 4, 1)]);
        assert!(!verify_antimagic(&d).well_formed);
    }

    #[test]
    fn thirteen_edge_path_meets_all_three_conditions() {
        let labels = [13, 1, 11, 10, 8, 3, 9, 4, 7, 6, 5, 2, 12];
        let d = path(&labels, 11);
        let r = verify_lemma1(&d, &[3, 4, 7, 9, 10, 11]);
        assert!(r.passes(), "{r:?}");
        assert_eq!(r.sums[0], -13);
        assert_eq!(r.sums[1], 12);
        assert_eq!(r.sums[13], -12);
    }

    #[test]
    fn equal_unmarked_sums_fail_condition_iii() {
        // 0 -> 1 -> 2 -> 3 with 3, 1, 2: sums -3, 2, -1, 2
        let d = path(&[3, 1, 2], 3);
        let r = verify_lemma1(&d, &[]);
        assert!(r.condition_i() && r.condition_ii());
        assert!(!r.condition_iii());
        assert_eq!(r.unmarked_collisions, vec![(1, 3)]);
    }

    #[test]
    fn marked_vertex_with_two_entering_arcs() {
        // 0 -> 1 <- 2 with labels 1, 2: s(v_1) = 3
        let d = path(&[1, 2], 1);
        let r = verify_lemma1(&d, &[1]);
        assert!(r.condition_i());
        assert_eq!(r.sums[1], 3);
    }

    #[test]
    fn non_path_input_is_flagged() {
        let d = OrientedLabeling::new(3, vec![Arc::new(0, 2, 1), Arc::new(1, 2, 2)]);
        assert!(!verify_lemma1(&d, &[]).well_formed);
    }

    #[test]
    fn swapped_matching_labels_break_an_order_band() {
        use crate::generator::{random_lobster, LegProfile};
        use crate::lobster::construct_lobster;
        let mut flagged = HashSet::new();
        for seed in 0..200 {
            let t = random_lobster(12, LegProfile::default(), seed).unwrap();
            let Ok(c) = construct_lobster(&t) else { continue };
            let d = &c.labeling;
            assert!(verify_band_structure(d, &c.decomposition, &c.plan).passes());
            let find = |a: usize, b: usize| {
                d.arcs()
                    .iter()
                    .position(|arc| (arc.tail, arc.head) == (a, b))
                    .unwrap()
            };
            let swap = |pairs: &[(usize, usize)]| {
                if pairs.len() < 2 {
                    return None;
                }
                let (i, j) = (find(pairs[0].0, pairs[0].1), find(pairs[1].0, pairs[1].1));
                let mut faulty = d.clone();
                let (li, lj) = (d.arcs()[i].label, d.arcs()[j].label);
                faulty.arcs_mut()[i].label = lj;
                faulty.arcs_mut()[j].label = li;
                Some(verify_band_structure(&faulty, &c.decomposition, &c.plan).violated_bands())
            };
            flagged.extend(swap(&c.plan.m1).unwrap_or_default());
            flagged.extend(swap(&c.plan.m2).unwrap_or_default());
        }
        assert!(flagged.contains(&Band::BranchOrder));
        assert!(flagged.contains(&Band::PendantInnerOrder));
    }
}
