#![allow(dead_code)]

use partcover_core::instances::{gen_random_coverage, gen_random_graph, GraphKind, Instance};
use partcover_core::objectives::Objective;
use partcover_core::{PartitionedGroundSet, SeededRng};

pub struct Case {
    pub ground: PartitionedGroundSet,
    pub f: Objective,
    pub instance: Instance,
}

fn case(instance: Instance) -> Case {
    Case {
        ground: instance.ground().unwrap(),
        f: instance.build_objective().unwrap(),
        instance,
    }
}

/// Weighted coverage with `n` elements split over `groups`.
pub fn coverage(seed: u64, n: usize, groups: usize) -> Case {
    case(gen_random_coverage(seed, n, groups, 2 * n, 4, Some((0.5, 2.0))).unwrap())
}

/// Unweighted coverage.
pub fn set_cover(seed: u64, n: usize, groups: usize) -> Case {
    case(gen_random_coverage(seed, n, groups, 2 * n, 4, None).unwrap())
}

/// Graph cut on a random graph with about 40% of all pairs as edges.
pub fn cut(seed: u64, n: usize, groups: usize) -> Case {
    let m = n * (n - 1) / 2 * 2 / 5;
    case(gen_random_graph(seed, n, m, groups, (0.5, 2.0), GraphKind::Cut).unwrap())
}

pub fn coverage_graph(seed: u64, n: usize, groups: usize) -> Case {
    let m = n * (n - 1) / 2 * 2 / 5;
    case(gen_random_graph(seed, n, m, groups, (0.5, 2.0), GraphKind::Coverage).unwrap())
}

/// Uniform random subset of `0..n` as a bit mask.
pub fn random_bits(rng: &mut SeededRng, n: usize) -> u64 {
    (0..n)
        .filter(|_| rng.below(2) == 1)
        .fold(0, |acc, x| acc | 1 << x)
}

pub fn bits_to_vec(n: usize, bits: u64) -> Vec<usize> {
    (0..n).filter(|x| bits >> x & 1 == 1).collect()
}

/// Random caps with `lo ≤ k_j ≤ |U_j|`, or `None` when some group is smaller than `lo`.
pub fn random_caps(rng: &mut SeededRng, ground: &PartitionedGroundSet, lo: usize) -> Option<Vec<usize>> {
    (0..ground.groups())
        .map(|j| {
            let size = ground.group_size(j);
            (size >= lo).then(|| lo + rng.below(size - lo + 1))
        })
        .collect()
}
