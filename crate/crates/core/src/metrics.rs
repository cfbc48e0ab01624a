//! Reporting metrics for a finished run.

use alloc::format;
use alloc::vec;

use crate::{Error, PartitionedGroundSet, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RunMetrics {
    pub f_value: f64,
    /// `max_j c(S ∩ U_j) / p_j`: the smallest budget under which `S` is feasible.
    pub budget: f64,
    pub solution_size: usize,
    /// `(max_c |S ∩ U_c| − min_c |S ∩ U_c|) / |S|`, zero for the empty set.
    pub fairness_diff: f64,
    pub queries: u64,
    pub time_ms: f64,
}

/// Computes the metrics of `set`. Missing costs mean unit costs; missing
/// proportions mean the uniform split `1/N`.
pub fn compute_metrics(
    set: &[usize],
    ground: &PartitionedGroundSet,
    costs: Option<&[f64]>,
    p: Option<&[f64]>,
    f_value: f64,
    queries: u64,
    time_ms: f64,
) -> Result<RunMetrics> {
    let groups = ground.groups();
    if let Some(p) = p {
        if p.len() != groups {
            return Err(Error::InvalidProportions(format!(
                "{} proportions for {groups} groups",
                p.len()
            )));
        }
        if let Some(bad) = p.iter().position(|&pj| pj.is_nan() || pj <= 0.0) {
            return Err(Error::InvalidProportions(format!(
                "p[{bad}] = {} is not positive",
                p[bad]
            )));
        }
    }

    let mut group_cost = vec![0.0; groups];
    let mut group_count = vec![0usize; groups];
    for &x in set {
        let g = ground.group_of(x);
        group_cost[g] += costs.map_or(1.0, |c| c[x]);
        group_count[g] += 1;
    }

    let uniform = 1.0 / groups as f64;
    let budget = if set.is_empty() {
        0.0
    } else {
        (0..groups)
            .map(|j| group_cost[j] / p.map_or(uniform, |p| p[j]))
            .fold(0.0, f64::max)
    };

    let fairness_diff = if set.is_empty() {
        0.0
    } else {
        let max = group_count.iter().copied().max().unwrap_or(0);
        let min = group_count.iter().copied().min().unwrap_or(0);
        (max - min) as f64 / set.len() as f64
    };

    Ok(RunMetrics {
        f_value,
        budget,
        solution_size: set.len(),
        fairness_diff,
        queries,
        time_ms,
    })
}
