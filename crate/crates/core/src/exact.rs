//! Exhaustive solvers for small instances.
//!
//! Subsets are visited by increasing size, and within a size in increasing
//! bit order, so the first optimum found is kept. The size guard is checked
//! before any query is spent.

use alloc::vec;
use alloc::vec::Vec;

use crate::constraints::{check_bounds, CostVector, FairnessMatroid, PartitionProportions};
use crate::maximize::check_caps;
use crate::{ElementSet, Error, PartitionedGroundSet, QueryCountedOracle, Result, FEAS_TOL};

/// Largest ground set the enumerators accept.
pub const ENUMERATION_LIMIT: usize = 22;

#[derive(Debug, Clone, PartialEq)]
pub struct ExactResult {
    /// An optimal set, ascending.
    pub set: Vec<usize>,
    /// Max `f`, min budget, or min cardinality, depending on the problem.
    pub value: f64,
    /// Number of subsets examined.
    pub enumerated: u64,
}

fn guard(ground: &PartitionedGroundSet, oracle: &QueryCountedOracle<'_>) -> Result<()> {
    crate::maximize::check_oracle(oracle, ground)?;
    if ground.n() > ENUMERATION_LIMIT {
        return Err(Error::InstanceTooLarge {
            n: ground.n(),
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Calls `visit(bits, size)` on every subset of `0..n`, by size then bits,
/// until it returns `false`.
fn for_each_subset(n: usize, mut visit: impl FnMut(u64, usize) -> bool) -> u64 {
    let end = 1u64 << n;
    let mut count = 0;
    for k in 0..=n {
        let mut bits: u64 = (1u64 << k) - 1;
        while bits < end {
            count += 1;
            if !visit(bits, k) {
                return count;
            }
            if bits == 0 {
                break;
            }
            // next integer with the same popcount
            let c = bits & bits.wrapping_neg();
            let r = bits + c;
            bits = (((r ^ bits) >> 2) / c) | r;
        }
    }
    count
}

fn group_masks(ground: &PartitionedGroundSet) -> Vec<u64> {
    let mut masks = vec![0u64; ground.groups()];
    for x in 0..ground.n() {
        masks[ground.group_of(x)] |= 1 << x;
    }
    masks
}

fn bit_counts(bits: u64, masks: &[u64]) -> impl Iterator<Item = usize> + '_ {
    masks.iter().map(move |m| (bits & m).count_ones() as usize)
}

fn bit_group_costs(bits: u64, ground: &PartitionedGroundSet, costs: &CostVector) -> Vec<f64> {
    let mut out = vec![0.0; ground.groups()];
    for x in 0..ground.n() {
        if bits >> x & 1 == 1 {
            out[ground.group_of(x)] += costs.cost(x);
        }
    }
    out
}

fn to_set(n: usize, bits: u64) -> Vec<usize> {
    (0..n).filter(|x| bits >> x & 1 == 1).collect()
}

/// Maximizes `f` over the subsets accepted by `feasible`.
fn maximize_over(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    mut feasible: impl FnMut(u64) -> bool,
) -> Result<ExactResult> {
    guard(ground, oracle)?;
    let n = ground.n();
    let mut best: Option<(u64, f64)> = None;
    let mut failure = None;
    let enumerated = for_each_subset(n, |bits, _| {
        if !feasible(bits) {
            return true;
        }
        match oracle.eval(&ElementSet::from_bits(n, bits)) {
            Ok(v) => {
                if best.is_none_or(|(_, b)| v > b) {
                    best = Some((bits, v));
                }
                true
            }
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    // the empty set is always feasible for the families used here
    let (bits, value) = best.ok_or_else(|| Error::InvalidInput("no feasible set".into()))?;
    Ok(ExactResult {
        set: to_set(n, bits),
        value,
        enumerated,
    })
}

/// Most sets the cap-aware SMP enumeration will visit.
pub const FAMILY_LIMIT: u64 = 1 << 23;

/// `Σ_{i ≤ k} C(m, i)`, saturating.
fn count_up_to(m: usize, k: usize) -> u64 {
    let mut total: u64 = 0;
    let mut term: u128 = 1;
    for i in 0..=k.min(m) {
        total = total.saturating_add(u64::try_from(term).unwrap_or(u64::MAX));
        term = term.saturating_mul((m - i) as u128) / (i as u128 + 1);
    }
    total
}

/// Bit masks of every subset of `members` with at most `k` elements.
fn masks_up_to(members: &[usize], k: usize) -> Vec<u64> {
    let m = members.len();
    let mut out = Vec::new();
    for_each_subset(m, |local, size| {
        if size > k {
            return false;
        }
        out.push(
            (0..m)
                .filter(|i| local >> i & 1 == 1)
                .fold(0u64, |acc, i| acc | 1 << members[i]),
        );
        true
    });
    out
}

/// `max f(S)` subject to `|S ∩ U_j| ≤ k_j`, visiting only the sets that
/// respect the caps, so instances past [`ENUMERATION_LIMIT`] are accepted
/// when that family has at most [`FAMILY_LIMIT`] members. Ties go to the
/// smaller set, then the lower bit pattern.
pub fn brute_force_smp(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    caps: &[usize],
) -> Result<ExactResult> {
    crate::maximize::check_oracle(oracle, ground)?;
    check_caps(ground, caps)?;
    let n = ground.n();
    let family = (0..ground.groups())
        .map(|j| count_up_to(ground.group_size(j), caps[j]))
        .fold(1u64, u64::saturating_mul);
    if n >= 64 || (n > ENUMERATION_LIMIT && family > FAMILY_LIMIT) {
        return Err(Error::InstanceTooLarge {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let per_group: Vec<Vec<u64>> = (0..ground.groups())
        .map(|j| masks_up_to(ground.members(j), caps[j]))
        .collect();
    let mut digits = vec![0usize; per_group.len()];
    let mut best: Option<(u64, f64)> = None;
    let mut enumerated = 0;
    let mut set = ElementSet::new(n);
    let mut current = 0u64;
    loop {
        let bits = digits
            .iter()
            .zip(&per_group)
            .fold(0u64, |acc, (&d, g)| acc | g[d]);
        enumerated += 1;
        let v = match oracle.eval_bits(bits) {
            Some(v) => v?,
            None => {
                let mut changed = bits ^ current;
                while changed != 0 {
                    let x = changed.trailing_zeros() as usize;
                    if bits >> x & 1 == 1 {
                        set.insert(x);
                    } else {
                        set.remove(x);
                    }
                    changed &= changed - 1;
                }
                current = bits;
                oracle.eval(&set)?
            }
        };
        let better = match best {
            None => true,
            Some((b, bv)) => v > bv || (v == bv && (bits.count_ones(), bits) < (b.count_ones(), b)),
        };
        if better {
            best = Some((bits, v));
        }
        // odometer step
        let mut j = 0;
        loop {
            if j == digits.len() {
                let (bits, value) = best.expect("the empty set is always visited");
                return Ok(ExactResult {
                    set: to_set(n, bits),
                    value,
                    enumerated,
                });
            }
            digits[j] += 1;
            if digits[j] < per_group[j].len() {
                break;
            }
            digits[j] = 0;
            j += 1;
        }
    }
}

pub fn brute_force_smkp(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    costs: &CostVector,
    p: &PartitionProportions,
    v: f64,
) -> Result<ExactResult> {
    guard(ground, oracle)?;
    p.check_groups(ground)?;
    maximize_over(oracle, ground, |bits| {
        bit_group_costs(bits, ground, costs)
            .iter()
            .enumerate()
            .all(|(j, &c)| c <= p.get(j) * v + FEAS_TOL)
    })
}

/// `max f(S)` over the fairness matroid.
pub fn brute_force_smf(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    m: &FairnessMatroid,
) -> Result<ExactResult> {
    guard(ground, oracle)?;
    crate::maximize::check_matroid(ground, m)?;
    let masks = group_masks(ground);
    maximize_over(oracle, ground, |bits| {
        let counts: Vec<usize> = bit_counts(bits, &masks).collect();
        m.independent_counts(&counts)
    })
}

/// Minimizes `cost(S)` over sets with `f(S) ≥ τ`. `lower(size)` must bound
/// `cost` from below for every set of that size and be non-decreasing, so the
/// search stops once a whole size class cannot improve.
fn minimize_cover(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    tau: f64,
    mut cost: impl FnMut(u64) -> Option<f64>,
    lower: impl Fn(usize) -> f64,
) -> Result<ExactResult> {
    guard(ground, oracle)?;
    let n = ground.n();
    let mut best: Option<(u64, f64)> = None;
    let mut failure = None;
    let enumerated = for_each_subset(n, |bits, size| {
        if let Some((_, b)) = best {
            if lower(size) > b {
                return false;
            }
        }
        let Some(c) = cost(bits) else { return true };
        if best.is_some_and(|(_, b)| c >= b) {
            return true;
        }
        match oracle.eval(&ElementSet::from_bits(n, bits)) {
            Ok(f) => {
                if f + FEAS_TOL >= tau {
                    best = Some((bits, c));
                }
                true
            }
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let (bits, value) = best
        .ok_or_else(|| Error::InfeasibleThreshold(alloc::format!("no feasible set reaches tau = {tau}")))?;
    Ok(ExactResult {
        set: to_set(n, bits),
        value,
        enumerated,
    })
}

/// `min_S max_j |S ∩ U_j| / p_j` subject to `f(S) ≥ τ`.
pub fn brute_force_scp(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    p: &PartitionProportions,
    tau: f64,
) -> Result<ExactResult> {
    guard(ground, oracle)?;
    p.check_groups(ground)?;
    let masks = group_masks(ground);
    // max_j |S ∩ U_j| / p_j ≥ |S| because the p_j sum to one
    minimize_cover(
        oracle,
        ground,
        tau,
        |bits| {
            Some(
                bit_counts(bits, &masks)
                    .enumerate()
                    .map(|(j, c)| c as f64 / p.get(j))
                    .fold(0.0, f64::max),
            )
        },
        |size| size as f64 - FEAS_TOL,
    )
}

/// `min_S max_j c(S ∩ U_j) / p_j` subject to `f(S) ≥ τ`.
pub fn brute_force_sckp(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    costs: &CostVector,
    p: &PartitionProportions,
    tau: f64,
) -> Result<ExactResult> {
    guard(ground, oracle)?;
    p.check_groups(ground)?;
    let c_min = costs.min();
    minimize_cover(
        oracle,
        ground,
        tau,
        |bits| {
            let gc = bit_group_costs(bits, ground, costs);
            Some(
                gc.iter()
                    .enumerate()
                    .map(|(j, &c)| c / p.get(j))
                    .fold(0.0, f64::max),
            )
        },
        |size| size as f64 * c_min - FEAS_TOL,
    )
}

/// The balanced minimum-cost cover: `min c(S)` subject to `f(S) ≥ τ` and
/// `c(S ∩ U_j) ≤ p_j·c(S) + c_j`, where `c_j` is the largest cost in `U_j`.
pub fn brute_force_p1(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    costs: &CostVector,
    p: &PartitionProportions,
    tau: f64,
) -> Result<ExactResult> {
    guard(ground, oracle)?;
    p.check_groups(ground)?;
    let c_max: Vec<f64> = (0..ground.groups())
        .map(|j| {
            ground
                .members(j)
                .iter()
                .map(|&x| costs.cost(x))
                .fold(0.0, f64::max)
        })
        .collect();
    let c_min = costs.min();
    minimize_cover(
        oracle,
        ground,
        tau,
        |bits| {
            let gc = bit_group_costs(bits, ground, costs);
            let total: f64 = gc.iter().sum();
            gc.iter()
                .enumerate()
                .all(|(j, &c)| c <= p.get(j) * total + c_max[j] + FEAS_TOL)
                .then_some(total)
        },
        |size| size as f64 * c_min - FEAS_TOL,
    )
}

/// `min |S|` subject to `f(S) ≥ τ` and `p_lo_c·|S| ≤ |S ∩ U_c| ≤ p_hi_c·|S|`.
/// The empty set satisfies the proportional sandwich.
pub fn brute_force_scf(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    p_lo: &[f64],
    p_hi: &[f64],
    tau: f64,
) -> Result<ExactResult> {
    guard(ground, oracle)?;
    check_bounds(p_lo, p_hi)?;
    if p_lo.len() != ground.groups() {
        return Err(Error::InvalidProportions(alloc::format!(
            "{} proportions for {} groups",
            p_lo.len(),
            ground.groups()
        )));
    }
    let masks = group_masks(ground);
    minimize_cover(
        oracle,
        ground,
        tau,
        |bits| {
            let size = bits.count_ones() as f64;
            bit_counts(bits, &masks)
                .enumerate()
                .all(|(c, cnt)| {
                    let cnt = cnt as f64;
                    p_lo[c] * size <= cnt + FEAS_TOL && cnt <= p_hi[c] * size + FEAS_TOL
                })
                .then_some(size)
        },
        |size| size as f64,
    )
}
