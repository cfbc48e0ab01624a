//! Converting algorithms: solve a cover problem by running a maximizer over
//! a geometric schedule of budget guesses.

use alloc::format;
use alloc::vec::Vec;

use crate::constraints::{
    check_bounds, fairness_beta_member, fairness_from_proportions, knapsack_partition_feasible,
    partition_feasible, CostVector, PartitionProportions,
};
use crate::maximize::{check_oracle, MaxResult, SmfMaximizer, SmkpMaximizer, SmpMaximizer};
use crate::{
    fork_rng, ElementSet, Error, PartitionedGroundSet, QueryCountedOracle, Result, SeededRng, FEAS_TOL,
};

#[derive(Debug, Clone, PartialEq)]
pub struct CoverResult {
    /// Members in ascending order.
    pub set: Vec<usize>,
    /// Members in selection order.
    pub order: Vec<usize>,
    /// Certified budget (`β·guess`) or, for fairness, `|S|`.
    pub v_s: f64,
    pub f_value: f64,
    /// The level `f(S)` had to reach.
    pub threshold: f64,
    /// The guess of the successful run.
    pub guess: f64,
    pub guesses_tried: usize,
    /// Maximizer invocations across all guesses.
    pub runs: u64,
    pub queries: u64,
    /// Whether `(S, v_S)` passes the problem's feasibility predicate; for
    /// fairness, membership in the β-extension of the last guessed matroid.
    pub feasible: bool,
}

/// `⌈ln(1/δ) / ln((β − γ + ε)/(β − γ))⌉` runs per guess.
pub fn repetitions(gamma: f64, beta: f64, eps: f64, delta: f64) -> usize {
    let ratio = (beta - gamma + eps) / (beta - gamma);
    libm::ceil(libm::log(1.0 / delta) / libm::log(ratio) - FEAS_TOL) as usize
}

/// The integer cardinality guesses `k ← max(k + 1, ⌈(1+α)·k⌉)` from 1, with
/// the last one clamped to `limit`.
pub fn cardinality_guesses(alpha: f64, limit: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = 1usize;
    while k < limit {
        out.push(k);
        let next = libm::ceil((1.0 + alpha) * k as f64 - FEAS_TOL) as usize;
        k = next.max(k + 1);
    }
    out.push(limit.max(1));
    out
}

/// Parameters of [`convert_rand`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvertRandParams {
    pub tau: f64,
    pub eps: f64,
    pub delta: f64,
    pub alpha: f64,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    Ok(())
}

fn empty_cover(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    threshold: f64,
) -> Result<Option<CoverResult>> {
    let start = oracle.queries();
    let f = oracle.eval(&ElementSet::new(ground.n()))?;
    if f < threshold {
        return Ok(None);
    }
    Ok(Some(CoverResult {
        set: Vec::new(),
        order: Vec::new(),
        v_s: 0.0,
        f_value: f,
        threshold,
        guess: 0.0,
        guesses_tried: 1,
        runs: 0,
        queries: oracle.queries() - start,
        feasible: true,
    }))
}

fn check_coverable(oracle: &QueryCountedOracle<'_>, ground: &PartitionedGroundSet, tau: f64) -> Result<()> {
    let f_all = oracle.eval(&ElementSet::universe(ground.n()))?;
    if tau > f_all + FEAS_TOL {
        return Err(Error::InfeasibleThreshold(format!(
            "tau = {tau} exceeds f(U) = {f_all}"
        )));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn success(
    result: MaxResult,
    v_s: f64,
    threshold: f64,
    guess: f64,
    guesses_tried: usize,
    runs: u64,
    queries: u64,
    feasible: bool,
) -> CoverResult {
    CoverResult {
        set: result.set,
        order: result.order,
        v_s,
        f_value: result.f_value,
        threshold,
        guess,
        guesses_tried,
        runs,
        queries,
        feasible,
    }
}

/// Cover under partition budgets with a randomized `(γ, β)` maximizer.
///
/// Budget guesses grow by `1 + α` from `1 + α`. Each guess gets `R`
/// independent runs on streams `guess_index·R + i`; the first run reaching
/// `(γ − ε)·τ` is returned with `v_S = β·g`. Guesses stop at `n / min p_j`,
/// where every set is feasible.
pub fn convert_rand(
    maximizer: &dyn SmpMaximizer,
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    p: &PartitionProportions,
    params: ConvertRandParams,
    rng: &SeededRng,
) -> Result<CoverResult> {
    check_oracle(oracle, ground)?;
    p.check_groups(ground)?;
    let ConvertRandParams {
        tau,
        eps,
        delta,
        alpha,
    } = params;
    check_alpha(alpha)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let (gamma, beta) = maximizer.guarantee(p);
    if !(gamma - eps > 0.0 && beta > gamma) {
        return Err(Error::InvalidParameter(format!(
            "need gamma - eps > 0 and beta > gamma, got gamma = {gamma}, beta = {beta}, eps = {eps}"
        )));
    }
    let threshold = (gamma - eps) * tau;
    let start = oracle.queries();
    if tau <= 0.0 {
        if let Some(r) = empty_cover(oracle, ground, threshold)? {
            return Ok(r);
        }
    }

    let reps = repetitions(gamma, beta, eps, delta);
    let cap = ground.n() as f64 / p.min();
    let mut g = (1.0 + alpha).min(cap);
    let mut guesses = 0usize;
    let mut runs = 0u64;
    loop {
        for i in 0..reps {
            let mut stream = fork_rng(rng, (guesses * reps + i) as u64);
            let result = match maximizer.maximize(oracle, ground, p, g, &mut stream) {
                Ok(r) => r,
                // every repetition would fail the same way at this budget
                Err(Error::DegenerateBudget) => break,
                Err(e) => return Err(e),
            };
            runs += 1;
            if result.f_value >= threshold {
                let v_s = beta * g;
                let feasible = partition_feasible(&result.set, ground, p, v_s);
                let queries = oracle.queries() - start;
                return Ok(success(
                    result,
                    v_s,
                    threshold,
                    g,
                    guesses + 1,
                    runs,
                    queries,
                    feasible,
                ));
            }
        }
        guesses += 1;
        if g >= cap {
            return Err(Error::InfeasibleThreshold(format!(
                "no run reached {threshold} up to the budget cap {cap}"
            )));
        }
        g = (g * (1.0 + alpha)).min(cap);
    }
}

/// Cover under knapsack partition budgets. Guesses grow by `1 + α` from
/// `(1 + α)·c_min` up to `c(U) / min p_j`; the first run with
/// `f(S) ≥ γ·τ` is returned with `v_S = β·guess`.
pub fn convert_knapsack(
    maximizer: &dyn SmkpMaximizer,
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    costs: &CostVector,
    p: &PartitionProportions,
    tau: f64,
    alpha: f64,
) -> Result<CoverResult> {
    check_oracle(oracle, ground)?;
    p.check_groups(ground)?;
    check_alpha(alpha)?;
    let (gamma, beta) = maximizer.guarantee();
    let threshold = gamma * tau;
    let start = oracle.queries();
    check_coverable(oracle, ground, tau)?;
    if tau <= 0.0 {
        if let Some(mut r) = empty_cover(oracle, ground, threshold)? {
            r.queries = oracle.queries() - start;
            return Ok(r);
        }
    }

    let cap = costs.total() / p.min();
    let mut g = ((1.0 + alpha) * costs.min()).min(cap);
    let mut guesses = 0usize;
    loop {
        let result = maximizer.maximize(oracle, ground, costs, p, g)?;
        guesses += 1;
        if result.f_value >= threshold {
            let v_s = beta * g;
            let feasible = knapsack_partition_feasible(&result.set, ground, costs, p, v_s);
            let queries = oracle.queries() - start;
            return Ok(success(
                result,
                v_s,
                threshold,
                g,
                guesses,
                guesses as u64,
                queries,
                feasible,
            ));
        }
        if g >= cap {
            return Err(Error::InfeasibleThreshold(format!(
                "no run reached {threshold} up to the budget cap {cap}"
            )));
        }
        g = (g * (1.0 + alpha)).min(cap);
    }
}

/// Cover under proportional fairness `p_lo_c·|S| ≤ |S ∩ U_c| ≤ p_hi_c·|S|`.
///
/// Guesses `k` for `|OPT|` follow [`cardinality_guesses`]; each builds the
/// matroid from [`fairness_from_proportions`] and runs the maximizer until
/// `f(S) ≥ γ·τ`. Returns `v_S = |S|` and records membership in the
/// β-extension of the successful guess's matroid.
pub fn convert_fair(
    maximizer: &dyn SmfMaximizer,
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    p_lo: &[f64],
    p_hi: &[f64],
    tau: f64,
    alpha: f64,
) -> Result<CoverResult> {
    check_oracle(oracle, ground)?;
    check_bounds(p_lo, p_hi)?;
    if p_lo.len() != ground.groups() {
        return Err(Error::InvalidProportions(format!(
            "{} proportions for {} groups",
            p_lo.len(),
            ground.groups()
        )));
    }
    check_alpha(alpha)?;
    let (gamma, beta) = maximizer.guarantee();
    let beta = libm::ceil(beta - FEAS_TOL).max(1.0) as usize;
    let threshold = gamma * tau;
    let start = oracle.queries();
    check_coverable(oracle, ground, tau)?;
    if tau <= 0.0 {
        if let Some(mut r) = empty_cover(oracle, ground, threshold)? {
            r.queries = oracle.queries() - start;
            return Ok(r);
        }
    }

    for (i, k) in cardinality_guesses(alpha, ground.n()).into_iter().enumerate() {
        let m = fairness_from_proportions(p_lo, p_hi, k)?;
        let result = maximizer.maximize(oracle, ground, &m)?;
        if result.f_value >= threshold {
            let feasible = fairness_beta_member(&result.set, ground, &m, beta);
            let v_s = result.set.len() as f64;
            let queries = oracle.queries() - start;
            return Ok(success(
                result,
                v_s,
                threshold,
                k as f64,
                i + 1,
                i as u64 + 1,
                queries,
                feasible,
            ));
        }
    }
    Err(Error::InfeasibleThreshold(format!(
        "no guess up to |U| = {} reached {threshold}",
        ground.n()
    )))
}

/// Cover by unconstrained density greedy: adds the element with the largest
/// `Δf / c` until `f(S) ≥ threshold`, ignoring groups. `v_S` is the smallest
/// budget under which `S` is feasible, `max_j c(S ∩ U_j) / p_j`.
pub fn density_greedy_cover(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    costs: &CostVector,
    p: &PartitionProportions,
    threshold: f64,
) -> Result<CoverResult> {
    check_oracle(oracle, ground)?;
    p.check_groups(ground)?;
    let start = oracle.queries();
    let mut set = ElementSet::new(ground.n());
    let mut order = Vec::new();
    let mut value = oracle.eval(&set)?;
    while value < threshold {
        let mut best: Option<(usize, f64, f64)> = None;
        for x in 0..ground.n() {
            if set.contains(x) {
                continue;
            }
            let fx = oracle.eval_added(&mut set, value, x)?;
            let density = (fx - value) / costs.cost(x);
            if best.is_none_or(|(_, d, _)| density > d) {
                best = Some((x, density, fx));
            }
        }
        let Some((x, _, fx)) = best else {
            return Err(Error::InfeasibleThreshold(format!(
                "f(U) = {value} is below {threshold}"
            )));
        };
        set.insert(x);
        order.push(x);
        value = fx;
    }
    let v_s = costs
        .group_costs(set.as_slice(), ground)
        .iter()
        .enumerate()
        .map(|(j, c)| c / p.get(j))
        .fold(0.0, f64::max);
    Ok(CoverResult {
        set: set.to_vec(),
        order,
        v_s,
        f_value: value,
        threshold,
        guess: v_s,
        guesses_tried: 1,
        runs: 1,
        queries: oracle.queries() - start,
        feasible: true,
    })
}

/// The elements of `order` kept when each group admits only its first
/// `⌊p_j·v⌋` members, in order.
pub fn feasible_prefix(
    order: &[usize],
    ground: &PartitionedGroundSet,
    p: &PartitionProportions,
    v: f64,
) -> Vec<usize> {
    let caps = crate::maximize::caps_from_budget(p, v);
    let mut counts = alloc::vec![0usize; ground.groups()];
    order
        .iter()
        .copied()
        .filter(|&x| {
            let g = ground.group_of(x);
            counts[g] += 1;
            counts[g] <= caps[g]
        })
        .collect()
}
