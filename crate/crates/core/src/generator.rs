//! Seeded random instances for fuzzing.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Tree;
use crate::oracle::random_prufer_tree;

/// How legs hang off the spine of a random lobster.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LegProfile {
    /// Chance that an internal spine vertex gets any children.
    pub attach_probability: f64,
    /// Children per chosen spine vertex are drawn from `1..=max_x_children`.
    pub max_x_children: usize,
    /// Leaves per child are drawn from `0..=max_y_children`.
    pub max_y_children: usize,
}

impl Default for LegProfile {
    fn default() -> Self {
        LegProfile {
            attach_probability: 0.5,
            max_x_children: 3,
            max_y_children: 2,
        }
    }
}

impl LegProfile {
    /// No legs at all.
    pub fn bare() -> Self {
        LegProfile {
            attach_probability: 0.0,
            max_x_children: 0,
            max_y_children: 0,
        }
    }
}

/// A lobster around a spine of `p` edges.
///
/// Legs attach to spine positions `1..p`. Next to either end, legs are
/// single edges so that the spine stays a longest path. Vertex indices are
/// shuffled, so the spine is generally not `0..=p`.
pub fn random_lobster(p: usize, profile: LegProfile, seed: u64) -> Result<Tree> {
    if p < 2 {
        return Err(Error::Domain(format!("spine needs at least two edges, got {p}")));
    }
    if !(0.0..=1.0).contains(&profile.attach_probability) {
        return Err(Error::Domain(format!(
            "attach probability {} is not in [0, 1]",
            profile.attach_probability
        )));
    }
    if profile.attach_probability > 0.0 && profile.max_x_children == 0 {
        return Err(Error::Domain(
            "positive attach probability needs max_x_children >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = (0..p).map(|i| (i, i + 1)).collect();
    let mut next = p + 1;
    for pos in 1..p {
        if !rng.gen_bool(profile.attach_probability) {
            continue;
        }
        let near_end = pos == 1 || pos == p - 1;
        for _ in 0..rng.gen_range(1..=profile.max_x_children) {
            let x = next;
            next += 1;
            edges.push((pos, x));
            if near_end {
                continue;
            }
            for _ in 0..rng.gen_range(0..=profile.max_y_children) {
                edges.push((x, next));
                next += 1;
            }
        }
    }
    let mut perm: Vec<usize> = (0..next).collect();
    perm.shuffle(&mut rng);
    let edges = edges.into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    Tree::new(next, edges)
}

/// Uniformly random labeled tree on `n` vertices.
pub fn random_tree(n: usize, seed: u64) -> Result<Tree> {
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_prufer_tree(n, &mut rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taxonomy::{classify, find_spine, TreeClass};

    #[test]
    fn bare_profile_gives_a_path() {
        let t = random_lobster(6, LegProfile::bare(), 3).unwrap();
        assert_eq!(classify(&t), TreeClass::Path);
        assert_eq!(t.vertex_count(), 7);
    }

    #[test]
    fn same_seed_same_tree() {
        let a = random_lobster(12, LegProfile::default(), 42).unwrap();
        let b = random_lobster(12, LegProfile::default(), 42).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(random_tree(9, 5).unwrap(), random_tree(9, 5).unwrap());
    }

    #[test]
    fn parameter_errors() {
        assert!(random_lobster(1, LegProfile::default(), 0).is_err());
        let bad = LegProfile {
            attach_probability: 1.5,
            ..LegProfile::default()
        };
        assert!(random_lobster(5, bad, 0).is_err());
        assert!(random_tree(0, 0).is_err());
    }

    #[test]
    fn tiny_random_trees() {
        assert_eq!(random_tree(2, 7).unwrap().edge_set(), vec![(0, 1)]);
        let t = random_tree(3, 7).unwrap();
        assert_eq!(classify(&t), TreeClass::Path);
    }

    #[test]
    fn spine_length_is_preserved() {
        for seed in 0..200 {
            let p = 2 + (seed as usize % 20);
            let t = random_lobster(p, LegProfile::default(), seed).unwrap();
            assert!(classify(&t).is_lobster_family());
            assert_eq!(find_spine(&t).len(), p + 1);
        }
    }
}
