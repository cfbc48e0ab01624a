use alloc::format;
use alloc::vec::Vec;

use super::greedy::standard_greedy_partition;
use super::random::random_step;
use super::{best_addition, check_caps, check_oracle, MaxResult};
use crate::{ElementSet, Error, PartitionedGroundSet, QueryCountedOracle, Result, SeededRng};

/// `φ` rounds, each adding `r_j` elements to group `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockScheduleMono {
    pub phi: usize,
    pub r: Vec<usize>,
}

impl BlockScheduleMono {
    /// `φ = ⌊√min k⌋ − 1`, `r_j = ⌊k_j/φ⌋`; `None` when `φ < 1`.
    pub fn mono(caps: &[usize]) -> Option<Self> {
        let min = caps.iter().copied().min()?;
        let phi = isqrt(min).checked_sub(1).filter(|&phi| phi >= 1)?;
        Some(Self {
            phi,
            r: caps.iter().map(|&k| k / phi).collect(),
        })
    }

    /// `φ = gcd(k)`, `r_j = k_j/φ`; `None` when every cap is zero.
    pub fn gcd(caps: &[usize]) -> Option<Self> {
        let phi = caps.iter().fold(0, |a, &b| gcd(a, b));
        if phi == 0 {
            return None;
        }
        Some(Self {
            phi,
            r: caps.iter().map(|&k| k / phi).collect(),
        })
    }
}

fn isqrt(x: usize) -> usize {
    let mut r = libm::sqrt(x as f64) as usize;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn check_block_caps(ground: &PartitionedGroundSet, caps: &[usize]) -> Result<()> {
    check_caps(ground, caps)?;
    if let Some(j) = (0..caps.len()).find(|&j| caps[j] > ground.group_size(j)) {
        return Err(Error::InvalidCaps(format!(
            "cap {} for group {j} exceeds its {} elements",
            caps[j],
            ground.group_size(j)
        )));
    }
    Ok(())
}

/// Block greedy for monotone objectives. Falls back to standard greedy when
/// the caps are too small for a round count `φ ≥ 1`.
pub fn block_greedy_mono(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    caps: &[usize],
) -> Result<MaxResult> {
    check_oracle(oracle, ground)?;
    check_block_caps(ground, caps)?;
    match BlockScheduleMono::mono(caps) {
        Some(schedule) => run_greedy_blocks(oracle, ground, &schedule),
        None => standard_greedy_partition(oracle, ground, caps),
    }
}

/// Block greedy with `φ = gcd(k)`; fills every cap exactly.
pub fn block_greedy_gcd(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    caps: &[usize],
) -> Result<MaxResult> {
    check_oracle(oracle, ground)?;
    check_block_caps(ground, caps)?;
    match BlockScheduleMono::gcd(caps) {
        Some(schedule) => run_greedy_blocks(oracle, ground, &schedule),
        None => standard_greedy_partition(oracle, ground, caps),
    }
}

fn run_greedy_blocks(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    schedule: &BlockScheduleMono,
) -> Result<MaxResult> {
    let start = oracle.queries();
    let mut set = ElementSet::new(ground.n());
    let mut order = Vec::new();
    let mut value = oracle.eval(&set)?;
    for _ in 0..schedule.phi {
        for j in 0..ground.groups() {
            for _ in 0..schedule.r[j] {
                let Some((x, v)) = best_addition(oracle, &mut set, value, ground.members(j).iter().copied())?
                else {
                    break;
                };
                set.insert(x);
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

/// Block greedy for non-monotone objectives: each of the `r_j` steps draws
/// from the top `r_j·φ` elements of `U_j ∖ S`. With `φ < 1` it runs a single
/// round with `r_j = k_j`.
pub fn block_greedy_nonmono(
    oracle: &QueryCountedOracle<'_>,
    ground: &PartitionedGroundSet,
    caps: &[usize],
    rng: &mut SeededRng,
) -> Result<MaxResult> {
    check_oracle(oracle, ground)?;
    check_block_caps(ground, caps)?;
    let schedule = BlockScheduleMono::mono(caps).unwrap_or_else(|| BlockScheduleMono {
        phi: 1,
        r: caps.to_vec(),
    });
    let start = oracle.queries();
    let mut set = ElementSet::new(ground.n());
    let mut order = Vec::new();
    let mut value = oracle.eval(&set)?;
    for _ in 0..schedule.phi {
        for j in 0..ground.groups() {
            let m = schedule.r[j] * schedule.phi;
            for _ in 0..schedule.r[j] {
                let members = ground.members(j).iter().copied();
                if let Some((x, v)) = random_step(oracle, &mut set, value, members, m, rng)? {
                    set.insert(x);
                    order.push(x);
                    value = v;
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
