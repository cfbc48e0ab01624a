//! Algorithm registry and run execution.

use std::fmt;
use std::str::FromStr;
use std::thread;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use partcover_core::constraints::{
    fairness_beta_member, fairness_from_proportions, knapsack_partition_feasible, partition_feasible,
    CostVector, FairnessMatroid, PartitionProportions,
};
use partcover_core::cover::{
    convert_fair, convert_knapsack, convert_rand, density_greedy_cover, ConvertRandParams, CoverResult,
};
use partcover_core::exact::{
    brute_force_scf, brute_force_sckp, brute_force_scp, brute_force_smf, brute_force_smkp, brute_force_smp,
    ExactResult,
};
use partcover_core::instances::Instance;
use partcover_core::maximize::{
    block_greedy_gcd, block_greedy_mono, block_greedy_nonmono, caps_from_budget, greedy_augment,
    standard_greedy_partition, BlockFairBi, FairGreedy, GreedyKnapsackBi, KnapsackDensityGreedy, MaxResult,
    NonmonoBi, RandomGreedyBudget, SmfMaximizer, SmkpMaximizer, SmpMaximizer,
};
use partcover_core::objectives::Objective;
use partcover_core::{compute_metrics, Error, PartitionedGroundSet, QueryCountedOracle, SeededRng};

use crate::report::CsvRow;

/// Environment variable holding the default worker count.
pub const JOBS_ENV: &str = "PARTCOVER_JOBS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    Smp,
    Smkp,
    Smf,
    Scp,
    Sckp,
    Scf,
}

impl Problem {
    pub const ALL: [Problem; 6] = [
        Problem::Smp,
        Problem::Smkp,
        Problem::Smf,
        Problem::Scp,
        Problem::Sckp,
        Problem::Scf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::Smp => "smp",
            Problem::Smkp => "smkp",
            Problem::Smf => "smf",
            Problem::Scp => "scp",
            Problem::Sckp => "sckp",
            Problem::Scf => "scf",
        }
    }

    /// Algorithm ids accepted for this problem; the first is the default.
    pub fn algorithms(self) -> &'static [&'static str] {
        match self {
            Problem::Smp => &[
                "block-g",
                "block-g-gcd",
                "block-g-nonmono",
                "block-g-aug",
                "nonmono-bi",
                "greedy",
                "rg",
            ],
            Problem::Smkp => &["block-g", "greedy"],
            Problem::Smf => &["block-fair", "greedy"],
            Problem::Scp => &["block-g", "rg"],
            Problem::Sckp => &["block-g", "greedy", "greedy-knapsack"],
            Problem::Scf => &["block-fair", "greedy"],
        }
    }

    pub fn is_cover(self) -> bool {
        matches!(self, Problem::Scp | Problem::Sckp | Problem::Scf)
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| anyhow!("unknown problem `{s}`"))
    }
}

/// Everything one run needs besides the instance.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: Problem,
    pub alg: String,
    pub tau: Option<f64>,
    pub v: Option<f64>,
    /// Explicit per-group caps for the partition-matroid routines.
    pub caps: Option<Vec<usize>>,
    /// Cardinality for the fairness matroid.
    pub k: Option<usize>,
    pub p: Option<Vec<f64>>,
    pub p_lo: Option<Vec<f64>>,
    pub p_hi: Option<Vec<f64>>,
    pub eps: f64,
    pub alpha: f64,
    pub delta: f64,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(problem: Problem, alg: &str) -> Self {
        Self {
            problem,
            alg: alg.into(),
            tau: None,
            v: None,
            caps: None,
            k: None,
            p: None,
            p_lo: None,
            p_hi: None,
            eps: 0.05,
            alpha: 0.2,
            delta: 0.1,
            seed: 0,
        }
    }

    /// Checks the algorithm id and that the parameters the problem needs are
    /// present and in range.
    pub fn validate(&self) -> Result<()> {
        let algs = self.problem.algorithms();
        if !algs.contains(&self.alg.as_str()) {
            bail!(
                "algorithm `{}` is not available for {}; choose one of {}",
                self.alg,
                self.problem,
                algs.join(", ")
            );
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            bail!("eps must lie in (0, 1), got {}", self.eps);
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            bail!("alpha must be positive, got {}", self.alpha);
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            bail!("delta must lie in (0, 1), got {}", self.delta);
        }
        match self.problem {
            Problem::Smp => {
                let needs_v = matches!(self.alg.as_str(), "nonmono-bi" | "rg");
                if self.v.is_none() && (needs_v || self.caps.is_none()) {
                    bail!(
                        "smp with `{}` needs --v{}",
                        self.alg,
                        if needs_v { "" } else { " or --caps" }
                    );
                }
            }
            Problem::Smkp if self.v.is_none() => bail!("smkp needs --v"),
            Problem::Smf if self.k.is_none() => bail!("smf needs --k"),
            Problem::Scp | Problem::Sckp | Problem::Scf if self.tau.is_none() => {
                bail!("{} needs --tau", self.problem)
            }
            _ => {}
        }
        Ok(())
    }

    fn proportions(&self, groups: usize) -> Result<PartitionProportions> {
        Ok(match &self.p {
            Some(p) => {
                let p = PartitionProportions::new(p.clone())?;
                if p.len() != groups {
                    bail!("{} proportions given for {groups} groups", p.len());
                }
                p
            }
            None => PartitionProportions::uniform(groups)?,
        })
    }

    /// Fairness bounds, defaulting to `0.9/N` and `1.1/N`.
    pub fn fairness_bounds(&self, groups: usize) -> (Vec<f64>, Vec<f64>) {
        let n = groups as f64;
        let lo = self.p_lo.clone().unwrap_or_else(|| vec![0.9 / n; groups]);
        let hi = self
            .p_hi
            .clone()
            .unwrap_or_else(|| vec![(1.1 / n).min(1.0); groups]);
        (lo, hi)
    }

    fn caps(&self, p: &PartitionProportions) -> Vec<usize> {
        match (&self.caps, self.v) {
            (Some(caps), _) => caps.clone(),
            (None, Some(v)) => caps_from_budget(p, v),
            (None, None) => unreachable!("validated"),
        }
    }
}

/// The result of one run: its CSV row, the chosen set, and whether it passed
/// every feasibility check.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub row: CsvRow,
    pub set: Vec<usize>,
    pub ok: bool,
}

enum Solved {
    Max { result: MaxResult, feasible: bool },
    Cover(CoverResult),
    Infeasible,
}

/// A loaded instance with its objective built once.
pub struct Prepared {
    pub instance: Instance,
    pub ground: PartitionedGroundSet,
    pub objective: Objective,
    pub costs: Option<CostVector>,
}

impl Prepared {
    pub fn new(instance: Instance) -> Result<Self> {
        Ok(Self {
            ground: instance.ground()?,
            objective: instance.build_objective()?,
            costs: instance.cost_vector()?,
            instance,
        })
    }

    fn costs_or_unit(&self) -> CostVector {
        self.costs
            .clone()
            .unwrap_or_else(|| CostVector::unit(self.ground.n()))
    }
}

fn within_caps(counts: &[usize], caps: &[usize]) -> bool {
    counts.iter().zip(caps).all(|(c, k)| c <= k)
}

fn fair_beta(maximizer: &dyn SmfMaximizer) -> usize {
    (maximizer.guarantee().1 - 1e-9).ceil().max(1.0) as usize
}

/// Runs `config` once with `seed`. An unreachable threshold is reported as
/// an `infeasible` row, not an error.
pub fn run_once(config: &RunConfig, prepared: &Prepared, seed: u64) -> Result<RunOutcome> {
    config.validate()?;
    let ground = &prepared.ground;
    let groups = ground.groups();
    let p = config.proportions(groups)?;
    let oracle = QueryCountedOracle::new(&prepared.objective);
    let mut rng = SeededRng::new(seed);
    let eps = config.eps;
    let alg = config.alg.as_str();
    let started = Instant::now();

    let solved = match config.problem {
        Problem::Smp => {
            let caps = config.caps(&p);
            let mono = |result: MaxResult| Solved::Max {
                feasible: within_caps(&result.per_group_counts, &caps),
                result,
            };
            match alg {
                "greedy" => mono(standard_greedy_partition(&oracle, ground, &caps)?),
                "block-g" => mono(block_greedy_mono(&oracle, ground, &caps)?),
                "block-g-gcd" => mono(block_greedy_gcd(&oracle, ground, &caps)?),
                "block-g-nonmono" => mono(block_greedy_nonmono(&oracle, ground, &caps, &mut rng)?),
                "block-g-aug" => {
                    let block = block_greedy_mono(&oracle, ground, &caps)?;
                    let mut result = greedy_augment(&oracle, ground, &caps, &block.order)?;
                    result.queries += block.queries;
                    mono(result)
                }
                _ => {
                    let maximizer: &dyn SmpMaximizer = match alg {
                        "nonmono-bi" => &NonmonoBi { eps },
                        _ => &RandomGreedyBudget,
                    };
                    let v = config.v.expect("validated");
                    let (_, beta) = maximizer.guarantee(&p);
                    let result = maximizer.maximize(&oracle, ground, &p, v, &mut rng)?;
                    Solved::Max {
                        feasible: partition_feasible(&result.set, ground, &p, beta * v),
                        result,
                    }
                }
            }
        }
        Problem::Smkp => {
            let costs = prepared.costs_or_unit();
            let maximizer: &dyn SmkpMaximizer = match alg {
                "block-g" => &GreedyKnapsackBi { eps },
                _ => &KnapsackDensityGreedy { eps },
            };
            let v = config.v.expect("validated");
            let (_, beta) = maximizer.guarantee();
            let result = maximizer.maximize(&oracle, ground, &costs, &p, v)?;
            Solved::Max {
                feasible: knapsack_partition_feasible(&result.set, ground, &costs, &p, beta * v),
                result,
            }
        }
        Problem::Smf => {
            let (lo, hi) = config.fairness_bounds(groups);
            let m: FairnessMatroid = fairness_from_proportions(&lo, &hi, config.k.expect("validated"))?;
            let maximizer: &dyn SmfMaximizer = match alg {
                "block-fair" => &BlockFairBi { eps },
                _ => &FairGreedy { eps },
            };
            let result = maximizer.maximize(&oracle, ground, &m)?;
            Solved::Max {
                feasible: fairness_beta_member(&result.set, ground, &m, fair_beta(maximizer)),
                result,
            }
        }
        Problem::Scp => {
            let maximizer: &dyn SmpMaximizer = match alg {
                "block-g" => &NonmonoBi { eps },
                _ => &RandomGreedyBudget,
            };
            let params = ConvertRandParams {
                tau: config.tau.expect("validated"),
                eps,
                delta: config.delta,
                alpha: config.alpha,
            };
            cover(convert_rand(maximizer, &oracle, ground, &p, params, &rng))?
        }
        Problem::Sckp => {
            let costs = prepared.costs_or_unit();
            let tau = config.tau.expect("validated");
            match alg {
                "greedy-knapsack" => cover(density_greedy_cover(
                    &oracle,
                    ground,
                    &costs,
                    &p,
                    (1.0 - eps) * tau,
                ))?,
                _ => {
                    let maximizer: &dyn SmkpMaximizer = match alg {
                        "block-g" => &GreedyKnapsackBi { eps },
                        _ => &KnapsackDensityGreedy { eps },
                    };
                    cover(convert_knapsack(
                        maximizer,
                        &oracle,
                        ground,
                        &costs,
                        &p,
                        tau,
                        config.alpha,
                    ))?
                }
            }
        }
        Problem::Scf => {
            let (lo, hi) = config.fairness_bounds(groups);
            let maximizer: &dyn SmfMaximizer = match alg {
                "block-fair" => &BlockFairBi { eps },
                _ => &FairGreedy { eps },
            };
            let tau = config.tau.expect("validated");
            cover(convert_fair(
                maximizer,
                &oracle,
                ground,
                &lo,
                &hi,
                tau,
                config.alpha,
            ))?
        }
    };
    let time_ms = started.elapsed().as_secs_f64() * 1e3;

    let costs = match config.problem {
        Problem::Smkp | Problem::Sckp => Some(prepared.costs_or_unit()),
        _ => None,
    };
    let (set, f_value, v, guesses, ok, status) = match &solved {
        Solved::Max { result, feasible } => {
            let status = if *feasible { "ok" } else { "violated" };
            (
                result.set.clone(),
                result.f_value,
                config.v,
                None,
                *feasible,
                status,
            )
        }
        Solved::Cover(r) => {
            let ok = r.feasible && r.f_value >= r.threshold;
            let status = if ok { "ok" } else { "violated" };
            (
                r.set.clone(),
                r.f_value,
                Some(r.v_s),
                Some(r.guesses_tried),
                ok,
                status,
            )
        }
        Solved::Infeasible => (Vec::new(), 0.0, None, None, false, "infeasible"),
    };
    let metrics = compute_metrics(
        &set,
        ground,
        costs.as_ref().map(CostVector::as_slice),
        Some(p.as_slice()),
        f_value,
        oracle.queries(),
        time_ms,
    )?;
    let row = CsvRow {
        alg: config.alg.clone(),
        problem: config.problem.name().into(),
        tau: config.tau.filter(|_| config.problem.is_cover()),
        v,
        eps,
        alpha: config.alpha,
        delta: config.delta,
        seed,
        f_value: metrics.f_value,
        budget: metrics.budget,
        solution_size: metrics.solution_size,
        fairness_diff: metrics.fairness_diff,
        queries: metrics.queries,
        time_ms: metrics.time_ms,
        guesses_tried: guesses,
        status: status.into(),
    };
    Ok(RunOutcome { row, set, ok })
}

fn cover(result: partcover_core::Result<CoverResult>) -> Result<Solved> {
    match result {
        Ok(r) => Ok(Solved::Cover(r)),
        Err(Error::InfeasibleThreshold(_)) => Ok(Solved::Infeasible),
        Err(e) => Err(e.into()),
    }
}

/// Worker count from `PARTCOVER_JOBS`, else the available parallelism.
pub fn default_jobs() -> usize {
    std::env::var(JOBS_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&j| j > 0)
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, usize::from))
}

/// Runs seeds `config.seed .. config.seed + repetitions` on up to `jobs`
/// threads. Outcomes come back in seed order.
pub fn run_many(
    config: &RunConfig,
    prepared: &Prepared,
    repetitions: usize,
    jobs: usize,
) -> Result<Vec<RunOutcome>> {
    config.validate()?;
    let seeds: Vec<u64> = (0..repetitions as u64).map(|i| config.seed + i).collect();
    let jobs = jobs.clamp(1, repetitions.max(1));
    let chunk = repetitions.div_ceil(jobs).max(1);
    let results: Vec<Result<Vec<RunOutcome>>> = thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|&s| run_once(config, prepared, s)).collect()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(anyhow!("worker panicked"))))
            .collect()
    });
    let mut out = Vec::with_capacity(repetitions);
    for part in results {
        out.extend(part?);
    }
    Ok(out)
}

/// The exhaustive optimum for `config.problem` (the algorithm id is ignored).
pub fn solve_exact(config: &RunConfig, prepared: &Prepared) -> Result<ExactResult> {
    let ground = &prepared.ground;
    let p = config.proportions(ground.groups())?;
    let oracle = QueryCountedOracle::new(&prepared.objective);
    let need = |what: Option<f64>, flag: &str| what.ok_or_else(|| anyhow!("{} needs {flag}", config.problem));
    Ok(match config.problem {
        Problem::Smp => {
            if config.caps.is_none() && config.v.is_none() {
                bail!("smp needs --caps or --v");
            }
            brute_force_smp(&oracle, ground, &config.caps(&p))?
        }
        Problem::Smkp => brute_force_smkp(
            &oracle,
            ground,
            &prepared.costs_or_unit(),
            &p,
            need(config.v, "--v")?,
        )?,
        Problem::Smf => {
            let k = config.k.ok_or_else(|| anyhow!("smf needs --k"))?;
            let (lo, hi) = config.fairness_bounds(ground.groups());
            brute_force_smf(&oracle, ground, &fairness_from_proportions(&lo, &hi, k)?)?
        }
        Problem::Scp => brute_force_scp(&oracle, ground, &p, need(config.tau, "--tau")?)?,
        Problem::Sckp => brute_force_sckp(
            &oracle,
            ground,
            &prepared.costs_or_unit(),
            &p,
            need(config.tau, "--tau")?,
        )?,
        Problem::Scf => {
            let (lo, hi) = config.fairness_bounds(ground.groups());
            brute_force_scf(&oracle, ground, &lo, &hi, need(config.tau, "--tau")?)?
        }
    })
}
