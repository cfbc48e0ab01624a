use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::greedy::check_matroid;
use super::random::random_step;
use super::{best_addition, check_eps, check_oracle, MaxResult};
use crate::constraints::{CostVector, FairnessMatroid, PartitionProportions};
use crate::{ElementSet, Error, PartitionedGroundSet, QueryCountedOracle, Result, SeededRng, FEAS_TOL};

/// `⌈2/ε⌉`, the round count of `nonmono_bi`.
pub fn nonmono_rounds(eps: f64) -> usize {
    libm::ceil(2.0 / eps - FEAS_TOL) as usize
}

/// `⌈log₂(1/ε)⌉`, the round count of the knapsack and fairness routines.
pub fn knapsack_rounds(eps: f64) -> usize {
    libm::ceil(libm::log(1.0 / eps) / core::f64::consts::LN_2 - FEAS_TOL).max(0.0) as usize
}

/// Randomized bicriteria routine for a partition budget. Each round gives
/// group `j` `⌊p_j·v⌋` random-greedy steps over the top `⌈2·p_j·v/ε⌉`
/// elements of `U_j ∖ S`.
pub fn nonmono_bi(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    p: &PartitionProportions,
    v: f64,
    eps: f64,
    rng: &mut SeededRng,
) -> Result<MaxResult> {
    check_oracle(oracle, ground)?;
    p.check_groups(ground)?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "eps must be positive, got {eps}"
        )));
    }
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "budget must be positive, got {v}"
        )));
    }
    let steps: Vec<usize> = p
        .as_slice()
        .iter()
        .map(|&pj| libm::floor(pj * v + FEAS_TOL) as usize)
        .collect();
    if steps.iter().all(|&s| s == 0) {
        return Err(Error::DegenerateBudget);
    }
    let sizes: Vec<usize> = p
        .as_slice()
        .iter()
        .map(|&pj| libm::ceil(2.0 * pj * v / eps - FEAS_TOL) as usize)
        .collect();

    let start = oracle.queries();
    let mut set = ElementSet::new(ground.n());
    let mut order = Vec::new();
    let mut value = oracle.eval(&set)?;
    for _ in 0..nonmono_rounds(eps) {
        for j in 0..ground.groups() {
            for _ in 0..steps[j] {
                let members = ground.members(j).iter().copied();
                if let Some((x, fx)) = random_step(oracle, &mut set, value, members, sizes[j], rng)? {
                    set.insert(x);
                    order.push(x);
                    value = fx;
                }
            }
        }
    }
    Ok(MaxResult::new(
        ground,
        None,
        &set,
        order,
        value,
        oracle.queries() - start,
    ))
}

/// Per-round record of [`greedy_knapsack_bi_traced`]: `added[i][j]` is the cost
/// added to group `j` in round `i`, `exhausted[i][j]` whether that block ran
/// out of eligible elements before reaching the group budget.
#[derive(Debug, Clone, PartialEq)]
pub struct KnapsackTrace {
    pub added: Vec<Vec<f64>>,
    pub exhausted: Vec<Vec<bool>>,
}

/// Bicriteria density greedy for knapsack partition budgets. Each round
/// builds, per group, a block of density-greedy picks whose cost reaches
/// `B_j = p_j·v`, considering only elements with `c(x) ≤ B_j`.
pub fn greedy_knapsack_bi(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    costs: &CostVector,
    p: &PartitionProportions,
    v: f64,
    eps: f64,
) -> Result<MaxResult> {
    greedy_knapsack_bi_traced(oracle, ground, costs, p, v, eps).map(|(r, _)| r)
}

/// [`greedy_knapsack_bi`] together with its per-round trace.
pub fn greedy_knapsack_bi_traced(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    costs: &CostVector,
    p: &PartitionProportions,
    v: f64,
    eps: f64,
) -> Result<(MaxResult, KnapsackTrace)> {
    check_oracle(oracle, ground)?;
    p.check_groups(ground)?;
    check_eps(eps)?;
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "budget must be positive, got {v}"
        )));
    }
    if costs.len() != ground.n() {
        return Err(Error::InvalidInstance(format!(
            "{} costs for {} elements",
            costs.len(),
            ground.n()
        )));
    }
    let rounds = knapsack_rounds(eps);
    let start = oracle.queries();
    let mut set = ElementSet::new(ground.n());
    let mut order = Vec::new();
    let mut value = oracle.eval(&set)?;
    let mut trace = KnapsackTrace {
        added: Vec::new(),
        exhausted: Vec::new(),
    };
    for _ in 0..rounds {
        let mut added = vec![0.0; ground.groups()];
        let mut exhausted = vec![false; ground.groups()];
        for j in 0..ground.groups() {
            let budget = p.get(j) * v;
            // the block A lives inside `set`, so gains are measured against S ∪ A
            loop {
                let mut best: Option<(usize, f64, f64)> = None;
                for &x in ground.members(j) {
                    if set.contains(x) || costs.cost(x) > budget + FEAS_TOL {
                        continue;
                    }
                    let fx = oracle.eval_added(&mut set, value, x)?;
                    let density = (fx - value) / costs.cost(x);
                    if best.is_none_or(|(_, d, _)| density > d) {
                        best = Some((x, density, fx));
                    }
                }
                let Some((x, _, fx)) = best else {
                    exhausted[j] = true;
                    break;
                };
                set.insert(x);
                order.push(x);
                value = fx;
                added[j] += costs.cost(x);
                if added[j] >= budget {
                    break;
                }
            }
        }
        trace.added.push(added);
        trace.exhausted.push(exhausted);
    }
    let mut result = MaxResult::new(ground, Some(costs), &set, order, value, oracle.queries() - start);
    result.pool_exhausted = trace.exhausted.iter().flatten().any(|&e| e);
    Ok((result, trace))
}

/// Block greedy over the fairness matroid: each round grows a fresh block
/// `B ∈ M_fair` from `U ∖ S` by marginal gain with respect to `S`. The union
/// of the blocks lies in the β-extension for `β = rounds`.
pub fn block_fair_bi(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    m: &FairnessMatroid,
    eps: f64,
) -> Result<MaxResult> {
    check_oracle(oracle, ground)?;
    check_matroid(ground, m)?;
    check_eps(eps)?;
    let start = oracle.queries();
    let mut set = ElementSet::new(ground.n());
    let mut order = Vec::new();
    let mut value = oracle.eval(&set)?;
    for _ in 0..knapsack_rounds(eps) {
        let mut block = vec![0usize; ground.groups()];
        loop {
            let pool: Vec<usize> = (0..ground.n())
                .filter(|&x| !set.contains(x) && m.can_extend(&block, ground.group_of(x)))
                .collect();
            let Some((x, fx)) = best_addition(oracle, &mut set, value, pool)? else {
                break;
            };
            set.insert(x);
            order.push(x);
            block[ground.group_of(x)] += 1;
            value = fx;
        }
    }
    Ok(MaxResult::new(
        ground,
        None,
        &set,
        order,
        value,
        oracle.queries() - start,
    ))
}
