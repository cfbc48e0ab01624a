use alloc::vec;
use alloc::vec::Vec;

use crate::objectives::{Graph, GraphCutObjective, SetCoverObjective};
use crate::PartitionedGroundSet;

/// Graph cut on the path 0–1–2 with unit weights.
pub fn path_cut() -> GraphCutObjective {
    GraphCutObjective::new(Graph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap())
}

/// The eight-element tightness example. Element `i` of the write-up is index
/// `i − 1`; tags a, b, c, d are ids 0..4.
pub fn toy() -> (PartitionedGroundSet, SetCoverObjective) {
    let ground = PartitionedGroundSet::new(vec![0, 0, 0, 0, 1, 1, 1, 1]).unwrap();
    let tags: Vec<Vec<u32>> = [0, 1, 2, 3, 0, 1, 0, 0].iter().map(|&t| vec![t]).collect();
    (ground, SetCoverObjective::new(tags, 4).unwrap())
}
