//! Seeded random instances for fuzzing and property tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::BipartiteGraph;
use crate::stable::StableMatchingInstance;
use crate::weighted::{Weight, WeightedInstance};

/// Shape of a random instance: side sizes, edge probability, weight range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceShape {
    pub left: usize,
    pub right: usize,
    pub edge_probability: f64,
    pub weights: (i64, i64),
}

impl InstanceShape {
    pub fn new(left: usize, right: usize) -> Self {
        InstanceShape {
            left,
            right,
            edge_probability: 0.5,
            weights: (-50, 50),
        }
    }

    /// Sides drawn uniformly from `1..=max` each.
    pub fn sample(max: usize, rng: &mut impl Rng) -> Self {
        Self::new(rng.gen_range(1..=max), rng.gen_range(1..=max))
    }
}

fn random_graph(shape: &InstanceShape, rng: &mut impl Rng) -> BipartiteGraph {
    let left: Vec<String> = (1..=shape.left).map(|i| format!("u{i}")).collect();
    let right: Vec<String> = (1..=shape.right).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for u in &left {
        for v in &right {
            if rng.gen_bool(shape.edge_probability) {
                edges.push((u.clone(), v.clone()));
            }
        }
    }
    BipartiteGraph::new(left, right, edges).expect("generated graph is well formed")
}

/// Random graph with uniformly random rankings on both sides.
pub fn random_stable(shape: &InstanceShape, seed: u64) -> StableMatchingInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_graph(shape, &mut rng);
    let mut ranking = |lists: Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        lists
            .into_iter()
            .map(|mut l| {
                l.shuffle(&mut rng);
                l
            })
            .collect()
    };
    let left = ranking(
        (0..shape.left)
            .map(|u| {
                g.edges()
                    .iter()
                    .filter(|e| e.left == u)
                    .map(|e| e.right)
                    .collect()
            })
            .collect(),
    );
    let right = ranking(
        (0..shape.right)
            .map(|v| {
                g.edges()
                    .iter()
                    .filter(|e| e.right == v)
                    .map(|e| e.left)
                    .collect()
            })
            .collect(),
    );
    StableMatchingInstance::from_positions(g, left, right)
        .expect("generated rankings are permutations")
}

/// Random graph with uniform integer weights in `shape.weights`.
pub fn random_weighted(shape: &InstanceShape, seed: u64) -> WeightedInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_graph(shape, &mut rng);
    let (lo, hi) = shape.weights;
    let weights = (0..g.edge_count())
        .map(|_| Weight::from(rng.gen_range(lo..=hi)))
        .collect();
    WeightedInstance::new(g, weights).expect("one weight per edge")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let shape = InstanceShape::new(4, 5);
        assert_eq!(random_stable(&shape, 7), random_stable(&shape, 7));
        assert_eq!(random_weighted(&shape, 7), random_weighted(&shape, 7));
    }

    #[test]
    fn weights_stay_in_range() {
        let shape = InstanceShape::new(6, 6);
        for seed in 0..20 {
            let inst = random_weighted(&shape, seed);
            for w in inst.weights().values() {
                let i = i64::try_from(w.to_integer().unwrap()).unwrap();
                assert!((-50..=50).contains(&i));
            }
        }
    }

    #[test]
    fn full_density_is_complete() {
        let shape = InstanceShape {
            edge_probability: 1.0,
            ..InstanceShape::new(3, 4)
        };
        assert_eq!(random_stable(&shape, 0).graph().edge_count(), 12);
    }
}
