//! Submodular maximization under partition-style constraints.
//!
//! Every routine breaks ties toward the lowest element index and visits
//! groups in ascending order.

mod bicriteria;
mod block;
mod greedy;
mod random;

pub use bicriteria::{
    block_fair_bi, greedy_knapsack_bi, greedy_knapsack_bi_traced, knapsack_rounds, nonmono_bi,
    nonmono_rounds, KnapsackTrace,
};
pub use block::{block_greedy_gcd, block_greedy_mono, block_greedy_nonmono, BlockScheduleMono};
pub use greedy::{
    caps_from_budget, fair_greedy, greedy_augment, knapsack_density_greedy, standard_greedy_matroid,
    standard_greedy_partition,
};
pub use random::random_greedy_cardinality;

pub(crate) use greedy::check_matroid;

use alloc::format;
use alloc::vec::Vec;

use crate::constraints::{CostVector, FairnessMatroid, PartitionProportions};
use crate::{ElementSet, Error, PartitionedGroundSet, QueryCountedOracle, Result, SeededRng};

/// Output of a maximization routine.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxResult {
    /// Members in ascending order.
    pub set: Vec<usize>,
    /// Members in the order they were selected.
    pub order: Vec<usize>,
    pub f_value: f64,
    pub queries: u64,
    pub per_group_counts: Vec<usize>,
    /// `c(S ∩ U_j)`; equals the counts when no costs apply.
    pub per_group_costs: Vec<f64>,
    /// Set by the knapsack routine when some group ran out of eligible
    /// elements before its block reached the group budget.
    pub pool_exhausted: bool,
}

impl MaxResult {
    pub(crate) fn new(
        ground: &PartitionedGroundSet,
        costs: Option<&CostVector>,
        set: &ElementSet,
        order: Vec<usize>,
        f_value: f64,
        queries: u64,
    ) -> Self {
        let per_group_counts = ground.counts(set.as_slice());
        let per_group_costs = match costs {
            Some(c) => c.group_costs(set.as_slice(), ground),
            None => per_group_counts.iter().map(|&c| c as f64).collect(),
        };
        Self {
            set: set.to_vec(),
            order,
            f_value,
            queries,
            per_group_counts,
            per_group_costs,
            pool_exhausted: false,
        }
    }
}

/// The element of `candidates` maximizing `f(S ∪ {x})`, with that value,
/// given `base = f(S)`. Candidates must come in ascending order; members of
/// `S` are skipped.
pub(crate) fn best_addition(
    oracle: &QueryCountedOracle<'_>,
    set: &mut ElementSet,
    base: f64,
    candidates: impl IntoIterator<Item = usize>,
) -> Result<Option<(usize, f64)>> {
    let mut best: Option<(usize, f64)> = None;
    for x in candidates {
        if set.contains(x) {
            continue;
        }
        let value = oracle.eval_added(set, base, x)?;
        if best.is_none_or(|(_, b)| value > b) {
            best = Some((x, value));
        }
    }
    Ok(best)
}

pub(crate) fn check_caps(ground: &PartitionedGroundSet, caps: &[usize]) -> Result<()> {
    if caps.len() != ground.groups() {
        return Err(Error::InvalidCaps(format!(
            "{} caps for {} groups",
            caps.len(),
            ground.groups()
        )));
    }
    Ok(())
}

pub(crate) fn check_oracle(oracle: &QueryCountedOracle<'_>, ground: &PartitionedGroundSet) -> Result<()> {
    if oracle.ground_size() != ground.n() {
        return Err(Error::InvalidInstance(format!(
            "objective has {} elements but the partition has {}",
            oracle.ground_size(),
            ground.n()
        )));
    }
    Ok(())
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "eps must lie in (0, 1), got {eps}"
        )));
    }
    Ok(())
}

/// A randomized routine for maximization under a partition budget, with its
/// bicriteria guarantee `(γ, β)`: `E f(S) ≥ γ·f(OPT)` and `|S ∩ U_j| ≤ β·p_j·v`.
pub trait SmpMaximizer {
    fn name(&self) -> &'static str;

    fn guarantee(&self, p: &PartitionProportions) -> (f64, f64);

    fn maximize(
        &self,
        oracle: &QueryCountedOracle<'_>,
        ground: &PartitionedGroundSet,
        p: &PartitionProportions,
        v: f64,
        rng: &mut SeededRng,
    ) -> Result<MaxResult>;
}

/// A routine for maximization under a knapsack partition budget.
pub trait SmkpMaximizer {
    fn name(&self) -> &'static str;

    fn guarantee(&self) -> (f64, f64);

    fn maximize(
        &self,
        oracle: &QueryCountedOracle<'_>,
        ground: &PartitionedGroundSet,
        costs: &CostVector,
        p: &PartitionProportions,
        v: f64,
    ) -> Result<MaxResult>;
}

/// A routine for maximization over a fairness matroid.
pub trait SmfMaximizer {
    fn name(&self) -> &'static str;

    fn guarantee(&self) -> (f64, f64);

    fn maximize(
        &self,
        oracle: &QueryCountedOracle<'_>,
        ground: &PartitionedGroundSet,
        m: &FairnessMatroid,
    ) -> Result<MaxResult>;
}

/// `nonmono_bi` as an SMP routine: `(1/e − ε, ⌈2/ε⌉)`.
#[derive(Debug, Clone, Copy)]
pub struct NonmonoBi {
    pub eps: f64,
}

impl SmpMaximizer for NonmonoBi {
    fn name(&self) -> &'static str {
        "nonmono-bi"
    }

    fn guarantee(&self, _p: &PartitionProportions) -> (f64, f64) {
        (
            core::f64::consts::E.recip() - self.eps,
            nonmono_rounds(self.eps) as f64,
        )
    }

    fn maximize(
        &self,
        oracle: &QueryCountedOracle<'_>,
        ground: &PartitionedGroundSet,
        p: &PartitionProportions,
        v: f64,
        rng: &mut SeededRng,
    ) -> Result<MaxResult> {
        nonmono_bi(oracle, ground, p, v, self.eps, rng)
    }
}

/// Random greedy with cardinality `⌊v⌋`, ignoring groups. Each group then
/// holds at most `v ≤ p_j·v / min p` elements, so `β = 1/min p`.
#[derive(Debug, Clone, Copy)]
pub struct RandomGreedyBudget;

impl SmpMaximizer for RandomGreedyBudget {
    fn name(&self) -> &'static str {
        "rg"
    }

    fn guarantee(&self, p: &PartitionProportions) -> (f64, f64) {
        (core::f64::consts::E.recip(), 1.0 / p.min())
    }

    fn maximize(
        &self,
        oracle: &QueryCountedOracle<'_>,
        ground: &PartitionedGroundSet,
        _p: &PartitionProportions,
        v: f64,
        rng: &mut SeededRng,
    ) -> Result<MaxResult> {
        let kappa = (libm::floor(v + crate::FEAS_TOL).max(0.0) as usize).min(ground.n());
        if kappa == 0 {
            return Err(Error::DegenerateBudget);
        }
        random_greedy_cardinality(oracle, ground, kappa, rng)
    }
}

/// `greedy_knapsack_bi` as an SMKP routine: `(1 − ε, 2·rounds)`.
#[derive(Debug, Clone, Copy)]
pub struct GreedyKnapsackBi {
    pub eps: f64,
}

impl SmkpMaximizer for GreedyKnapsackBi {
    fn name(&self) -> &'static str {
        "greedy-knapsack-bi"
    }

    fn guarantee(&self) -> (f64, f64) {
        (1.0 - self.eps, 2.0 * knapsack_rounds(self.eps) as f64)
    }

    fn maximize(
        &self,
        oracle: &QueryCountedOracle<'_>,
        ground: &PartitionedGroundSet,
        costs: &CostVector,
        p: &PartitionProportions,
        v: f64,
    ) -> Result<MaxResult> {
        greedy_knapsack_bi(oracle, ground, costs, p, v, self.eps)
    }
}

/// Density greedy that never exceeds the group budgets. It carries no
/// approximation guarantee here, so it is driven with the experiments'
/// stopping level `1 − ε` and `β = 1`.
#[derive(Debug, Clone, Copy)]
pub struct KnapsackDensityGreedy {
    pub eps: f64,
}

impl SmkpMaximizer for KnapsackDensityGreedy {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn guarantee(&self) -> (f64, f64) {
        (1.0 - self.eps, 1.0)
    }

    fn maximize(
        &self,
        oracle: &QueryCountedOracle<'_>,
        ground: &PartitionedGroundSet,
        costs: &CostVector,
        p: &PartitionProportions,
        v: f64,
    ) -> Result<MaxResult> {
        knapsack_density_greedy(oracle, ground, costs, p, v)
    }
}

/// `block_fair_bi` as an SMF routine: `(1 − ε, rounds)`.
#[derive(Debug, Clone, Copy)]
pub struct BlockFairBi {
    pub eps: f64,
}

impl SmfMaximizer for BlockFairBi {
    fn name(&self) -> &'static str {
        "block-fair-bi"
    }

    fn guarantee(&self) -> (f64, f64) {
        (1.0 - self.eps, knapsack_rounds(self.eps) as f64)
    }

    fn maximize(
        &self,
        oracle: &QueryCountedOracle<'_>,
        ground: &PartitionedGroundSet,
        m: &FairnessMatroid,
    ) -> Result<MaxResult> {
        block_fair_bi(oracle, ground, m, self.eps)
    }
}

/// Standard greedy over the fairness matroid, driven at `1 − ε`, `β = 1`.
#[derive(Debug, Clone, Copy)]
pub struct FairGreedy {
    pub eps: f64,
}

impl SmfMaximizer for FairGreedy {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn guarantee(&self) -> (f64, f64) {
        (1.0 - self.eps, 1.0)
    }

    fn maximize(
        &self,
        oracle: &QueryCountedOracle<'_>,
        ground: &PartitionedGroundSet,
        m: &FairnessMatroid,
    ) -> Result<MaxResult> {
        fair_greedy(oracle, ground, m)
    }
}
