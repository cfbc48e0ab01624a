//! The concrete objectives: coverage functions, graph functions and the
//! log-determinant.

mod cover;
mod graph;
mod logdet;

pub use cover::{SetCoverObjective, WeightedCoverObjective};
pub use graph::{Graph, GraphCutObjective, VertexCoverageObjective};
pub use logdet::{build_gaussian_kernel, LogDetObjective};

use crate::{ElementSet, Result, SetFunction};

/// Any of the supported objectives, behind one [`SetFunction`] impl.
#[derive(Debug, Clone)]
pub enum Objective {
    SetCover(SetCoverObjective),
    WeightedCover(WeightedCoverObjective),
    GraphCut(GraphCutObjective),
    VertexCoverage(VertexCoverageObjective),
    LogDet(LogDetObjective),
}

impl Objective {
    /// Graph cut is the only objective here that is not monotone.
    pub fn is_monotone(&self) -> bool {
        !matches!(self, Objective::GraphCut(_))
    }
}

impl SetFunction for Objective {
    fn ground_size(&self) -> usize {
        match self {
            Objective::SetCover(o) => o.ground_size(),
            Objective::WeightedCover(o) => o.ground_size(),
            Objective::GraphCut(o) => o.ground_size(),
            Objective::VertexCoverage(o) => o.ground_size(),
            Objective::LogDet(o) => o.ground_size(),
        }
    }

    fn eval(&self, set: &ElementSet) -> Result<f64> {
        match self {
            Objective::SetCover(o) => o.eval(set),
            Objective::WeightedCover(o) => o.eval(set),
            Objective::GraphCut(o) => o.eval(set),
            Objective::VertexCoverage(o) => o.eval(set),
            Objective::LogDet(o) => o.eval(set),
        }
    }

    fn exact_gain(&self, set: &ElementSet, x: usize) -> Option<f64> {
        match self {
            Objective::GraphCut(o) => o.exact_gain(set, x),
            Objective::VertexCoverage(o) => o.exact_gain(set, x),
            _ => None,
        }
    }

    fn eval_bits(&self, bits: u64) -> Option<Result<f64>> {
        match self {
            Objective::SetCover(o) => o.eval_bits(bits),
            Objective::WeightedCover(o) => o.eval_bits(bits),
            _ => None,
        }
    }
}
