use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{best_addition, check_caps, check_oracle, MaxResult};
use crate::constraints::{CostVector, FairnessMatroid, PartitionProportions};
use crate::{ElementSet, Error, PartitionedGroundSet, QueryCountedOracle, Result, FEAS_TOL};

/// Integer caps `⌊p_j·v⌋` for a partition budget.
pub fn caps_from_budget(p: &PartitionProportions, v: f64) -> Vec<usize> {
    p.as_slice()
        .iter()
        .map(|&pj| libm::floor(pj * v + FEAS_TOL).max(0.0) as usize)
        .collect()
}

/// Greedy under a downward-closed family. `can_add(S, counts, x)` answers
/// whether `S ∪ {x}` stays feasible, given the per-group counts of `S`.
///
/// Feasible elements are added even when their gain is zero or negative,
/// until no feasible extension remains.
pub fn standard_greedy_matroid<F>(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    can_add: F,
) -> Result<MaxResult>
where
    F: Fn(&ElementSet, &[usize], usize) -> bool,
{
    check_oracle(oracle, ground)?;
    greedy_from(oracle, ground, ElementSet::new(ground.n()), &can_add)
}

/// Standard greedy under the partition matroid `|S ∩ U_j| ≤ k_j`.
pub fn standard_greedy_partition(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    caps: &[usize],
) -> Result<MaxResult> {
    check_caps(ground, caps)?;
    standard_greedy_matroid(oracle, ground, |_, counts, x| {
        let g = ground.group_of(x);
        counts[g] < caps[g]
    })
}

/// Continues standard greedy from a feasible start set `s0`.
pub fn greedy_augment(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    caps: &[usize],
    s0: &[usize],
) -> Result<MaxResult> {
    check_oracle(oracle, ground)?;
    check_caps(ground, caps)?;
    if let Some(&x) = s0.iter().find(|&&x| x >= ground.n()) {
        return Err(Error::InvalidInput(format!(
            "start element {x} is outside the ground set"
        )));
    }
    let start = ElementSet::from_elements(ground.n(), s0);
    let counts = ground.counts(start.as_slice());
    if let Some(j) = (0..caps.len()).find(|&j| counts[j] > caps[j]) {
        return Err(Error::InvalidInput(format!(
            "start set holds {} elements of group {j}, above its cap {}",
            counts[j], caps[j]
        )));
    }
    greedy_from(
        oracle,
        ground,
        start,
        &|_: &ElementSet, counts: &[usize], x: usize| {
            let g = ground.group_of(x);
            counts[g] < caps[g]
        },
    )
}

/// Standard greedy over the fairness matroid.
pub fn fair_greedy(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    m: &FairnessMatroid,
) -> Result<MaxResult> {
    check_matroid(ground, m)?;
    standard_greedy_matroid(oracle, ground, |_, counts, x| {
        m.can_extend(counts, ground.group_of(x))
    })
}

pub(crate) fn check_matroid(ground: &PartitionedGroundSet, m: &FairnessMatroid) -> Result<()> {
    if m.groups() != ground.groups() {
        return Err(Error::InvalidParameter(format!(
            "fairness caps cover {} groups, the partition has {}",
            m.groups(),
            ground.groups()
        )));
    }
    Ok(())
}

fn greedy_from(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    mut set: ElementSet,
    can_add: &dyn Fn(&ElementSet, &[usize], usize) -> bool,
) -> Result<MaxResult> {
    let start = oracle.queries();
    let mut counts = ground.counts(set.as_slice());
    let mut order = set.to_vec();
    let mut value = oracle.eval(&set)?;
    loop {
        let feasible: Vec<usize> = (0..ground.n())
            .filter(|&x| !set.contains(x) && can_add(&set, &counts, x))
            .collect();
        match best_addition(oracle, &mut set, value, feasible)? {
            None => break,
            Some((x, v)) => {
                set.insert(x);
                counts[ground.group_of(x)] += 1;
                order.push(x);
                value = v;
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

/// Density greedy that keeps `c(S ∩ U_j) ≤ p_j·v` throughout: repeatedly adds
/// the feasible element with the largest `Δf / c`.
pub fn knapsack_density_greedy(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    costs: &CostVector,
    p: &PartitionProportions,
    v: f64,
) -> Result<MaxResult> {
    check_oracle(oracle, ground)?;
    p.check_groups(ground)?;
    let start = oracle.queries();
    let mut set = ElementSet::new(ground.n());
    let mut used = vec![0.0; ground.groups()];
    let mut order = Vec::new();
    let mut value = oracle.eval(&set)?;
    loop {
        let mut best: Option<(usize, f64, f64)> = None;
        for x in 0..ground.n() {
            let g = ground.group_of(x);
            if set.contains(x) || used[g] + costs.cost(x) > p.get(g) * v + FEAS_TOL {
                continue;
            }
            let fx = oracle.eval_added(&mut set, value, x)?;
            let density = (fx - value) / costs.cost(x);
            if best.is_none_or(|(_, d, _)| density > d) {
                best = Some((x, density, fx));
            }
        }
        let Some((x, _, fx)) = best else { break };
        set.insert(x);
        used[ground.group_of(x)] += costs.cost(x);
        order.push(x);
        value = fx;
    }
    Ok(MaxResult::new(
        ground,
        Some(costs),
        &set,
        order,
        value,
        oracle.queries() - start,
    ))
}
