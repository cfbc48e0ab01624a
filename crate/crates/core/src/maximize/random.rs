use alloc::format;
use alloc::vec::Vec;

use super::{check_oracle, MaxResult};
use crate::{ElementSet, Error, PartitionedGroundSet, QueryCountedOracle, Result, SeededRng};

/// One random-greedy step: rank the candidates outside `S` by `f(S ∪ {x})`,
/// keep the top `m`, and draw one of the `m` slots uniformly. Slots not held
/// by a real element with non-negative gain are dummies; drawing one adds
/// nothing. Returns the drawn element and `f(S ∪ {x})`.
pub(crate) fn random_step(
    oracle: &QueryCountedOracle<'_>,
    set: &mut ElementSet,
    base: f64,
    candidates: impl IntoIterator<Item = usize>,
    m: usize,
    rng: &mut SeededRng,
) -> Result<Option<(usize, f64)>> {
    if m == 0 {
        return Ok(None);
    }
    let mut ranked: Vec<(usize, f64)> = Vec::new();
    for x in candidates {
        if !set.contains(x) {
            ranked.push((x, oracle.eval_added(set, base, x)?));
        }
    }
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    // the m-set maximizing total gain swaps negative-gain elements for dummies
    let real = ranked
        .iter()
        .take(m)
        .take_while(|&&(_, v)| v - base >= 0.0)
        .count();
    let slot = rng.below(m);
    Ok((slot < real).then(|| ranked[slot]))
}

/// Random greedy for `|S| ≤ κ`: κ steps, each drawing from the top κ
/// remaining elements.
pub fn random_greedy_cardinality(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    kappa: usize,
    rng: &mut SeededRng,
) -> Result<MaxResult> {
    check_oracle(oracle, ground)?;
    if kappa > ground.n() {
        return Err(Error::InvalidParameter(format!(
            "kappa = {kappa} exceeds the ground set size {}",
            ground.n()
        )));
    }
    let start = oracle.queries();
    let mut set = ElementSet::new(ground.n());
    let mut order = Vec::new();
    let mut value = oracle.eval(&set)?;
    for _ in 0..kappa {
        if let Some((x, v)) = random_step(oracle, &mut set, value, 0..ground.n(), kappa, rng)? {
            set.insert(x);
            order.push(x);
            value = v;
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
