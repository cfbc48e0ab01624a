//! Feasibility predicates for partition budgets, knapsack partitions and the
//! fairness matroid.

use alloc::format;
use alloc::vec::Vec;

use crate::{Error, PartitionedGroundSet, Result, FEAS_TOL};

/// Per-group proportions `p_j > 0` with `Σ p_j = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionProportions {
    p: Vec<f64>,
}

impl PartitionProportions {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidProportions("no proportions given".into()));
        }
        if let Some(j) = p.iter().position(|&pj| !(pj > 0.0 && pj.is_finite())) {
            return Err(Error::InvalidProportions(format!(
                "p[{j}] = {} is not positive",
                p[j]
            )));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > FEAS_TOL {
            return Err(Error::InvalidProportions(format!(
                "proportions sum to {sum}, not 1"
            )));
        }
        Ok(Self { p })
    }

    pub fn uniform(groups: usize) -> Result<Self> {
        Self::new(alloc::vec![1.0 / groups as f64; groups])
    }

    /// Checks that there is one proportion per group of `ground`.
    pub fn check_groups(&self, ground: &PartitionedGroundSet) -> Result<()> {
        if self.p.len() != ground.groups() {
            return Err(Error::InvalidProportions(format!(
                "{} proportions for {} groups",
                self.p.len(),
                ground.groups()
            )));
        }
        Ok(())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }

    pub fn get(&self, j: usize) -> f64 {
        self.p[j]
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.p.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Positive element costs; `c(S)` is their sum over `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostVector {
    c: Vec<f64>,
}

impl CostVector {
    pub fn new(c: Vec<f64>) -> Result<Self> {
        if let Some(x) = c.iter().position(|&cx| !(cx > 0.0 && cx.is_finite())) {
            return Err(Error::InvalidInstance(format!(
                "cost of element {x} is {}, not positive",
                c[x]
            )));
        }
        Ok(Self { c })
    }

    pub fn unit(n: usize) -> Self {
        Self {
            c: alloc::vec![1.0; n],
        }
    }

    pub fn cost(&self, x: usize) -> f64 {
        self.c[x]
    }

    pub fn of(&self, set: &[usize]) -> f64 {
        set.iter().map(|&x| self.c[x]).sum()
    }

    pub fn total(&self) -> f64 {
        self.c.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.c.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.c.iter().copied().fold(0.0, f64::max)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.c
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// Per-group sums `c(S ∩ U_j)`.
    pub fn group_costs(&self, set: &[usize], ground: &PartitionedGroundSet) -> Vec<f64> {
        let mut out = alloc::vec![0.0; ground.groups()];
        for &x in set {
            out[ground.group_of(x)] += self.c[x];
        }
        out
    }
}

/// `{S : |S ∩ U_c| ≤ u_c ∀c, Σ_c max(|S ∩ U_c|, l_c) ≤ k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FairnessMatroid {
    l: Vec<usize>,
    u: Vec<usize>,
    k: usize,
}

impl FairnessMatroid {
    pub fn new(l: Vec<usize>, u: Vec<usize>, k: usize) -> Result<Self> {
        if l.len() != u.len() || l.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "{} lower and {} upper caps",
                l.len(),
                u.len()
            )));
        }
        if let Some(c) = (0..l.len()).find(|&c| l[c] > u[c]) {
            return Err(Error::InvalidParameter(format!(
                "group {c} has lower cap {} above upper cap {}",
                l[c], u[c]
            )));
        }
        let sum_l: usize = l.iter().sum();
        if sum_l > k {
            return Err(Error::InfeasibleFairness(format!(
                "lower caps sum to {sum_l}, above the rank bound {k}"
            )));
        }
        Ok(Self { l, u, k })
    }

    pub fn lower(&self) -> &[usize] {
        &self.l
    }

    pub fn upper(&self) -> &[usize] {
        &self.u
    }

    pub fn rank_bound(&self) -> usize {
        self.k
    }

    pub fn groups(&self) -> usize {
        self.l.len()
    }

    /// The β-extension: every cap multiplied by `beta`.
    pub fn scaled(&self, beta: usize) -> Self {
        Self {
            l: self.l.iter().map(|&x| x * beta).collect(),
            u: self.u.iter().map(|&x| x * beta).collect(),
            k: self.k * beta,
        }
    }

    fn weight(&self, counts: &[usize]) -> usize {
        counts.iter().zip(&self.l).map(|(&c, &l)| c.max(l)).sum()
    }

    /// Independence test on per-group counts.
    pub fn independent_counts(&self, counts: &[usize]) -> bool {
        counts.iter().zip(&self.u).all(|(&c, &u)| c <= u) && self.weight(counts) <= self.k
    }

    /// Whether adding one element of group `g` to an independent set with
    /// these counts keeps it independent.
    pub fn can_extend(&self, counts: &[usize], g: usize) -> bool {
        if counts[g] + 1 > self.u[g] {
            return false;
        }
        let grows = usize::from(counts[g] >= self.l[g]);
        self.weight(counts) + grows <= self.k
    }
}

/// `|S ∩ U_j| ≤ p_j·v` for every group.
pub fn partition_feasible(
    set: &[usize],
    ground: &PartitionedGroundSet,
    p: &PartitionProportions,
    v: f64,
) -> bool {
    ground
        .counts(set)
        .iter()
        .enumerate()
        .all(|(j, &c)| c as f64 <= p.get(j) * v + FEAS_TOL)
}

/// `c(S ∩ U_j) ≤ p_j·v + 1e−9` for every group.
pub fn knapsack_partition_feasible(
    set: &[usize],
    ground: &PartitionedGroundSet,
    costs: &CostVector,
    p: &PartitionProportions,
    v: f64,
) -> bool {
    costs
        .group_costs(set, ground)
        .iter()
        .enumerate()
        .all(|(j, &c)| c <= p.get(j) * v + FEAS_TOL)
}

pub fn fairness_independent(set: &[usize], ground: &PartitionedGroundSet, m: &FairnessMatroid) -> bool {
    m.independent_counts(&ground.counts(set))
}

/// Membership in the β-extension of `m`.
pub fn fairness_beta_member(
    set: &[usize],
    ground: &PartitionedGroundSet,
    m: &FairnessMatroid,
    beta: usize,
) -> bool {
    m.scaled(beta).independent_counts(&ground.counts(set))
}

/// The fairness matroid for a cardinality guess: `l_c = ⌊p_lo_c·k⌋`,
/// `u_c = ⌈p_hi_c·k⌉`.
pub fn fairness_from_proportions(p_lo: &[f64], p_hi: &[f64], k_guess: usize) -> Result<FairnessMatroid> {
    check_bounds(p_lo, p_hi)?;
    let k = k_guess as f64;
    // products like 0.18·20 = 3.5999999999999996 must not lose an integer step
    let l = p_lo
        .iter()
        .map(|&lo| libm::floor(lo * k + FEAS_TOL) as usize)
        .collect();
    let u = p_hi
        .iter()
        .map(|&hi| libm::ceil(hi * k - FEAS_TOL).max(0.0) as usize)
        .collect();
    FairnessMatroid::new(l, u, k_guess)
}

/// Validates `0 ≤ p_lo_c ≤ p_hi_c ≤ 1` with matching lengths.
pub fn check_bounds(p_lo: &[f64], p_hi: &[f64]) -> Result<()> {
    if p_lo.len() != p_hi.len() || p_lo.is_empty() {
        return Err(Error::InvalidProportions(format!(
            "{} lower and {} upper proportions",
            p_lo.len(),
            p_hi.len()
        )));
    }
    for c in 0..p_lo.len() {
        let (lo, hi) = (p_lo[c], p_hi[c]);
        if !(0.0 <= lo && lo <= hi && hi <= 1.0) {
            return Err(Error::InvalidProportions(format!(
                "group {c} needs 0 <= p_lo <= p_hi <= 1, got {lo} and {hi}"
            )));
        }
    }
    Ok(())
}
