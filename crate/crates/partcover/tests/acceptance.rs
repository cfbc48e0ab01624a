//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero when any criterion fails.

use std::f64::consts::E;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use partcover_core::constraints::{
    fairness_beta_member, knapsack_partition_feasible, partition_feasible, CostVector, FairnessMatroid,
    PartitionProportions,
};
use partcover_core::cover::{
    convert_knapsack, convert_rand, density_greedy_cover, feasible_prefix, ConvertRandParams,
};
use partcover_core::exact::{
    brute_force_p1, brute_force_sckp, brute_force_scp, brute_force_smf, brute_force_smkp, brute_force_smp,
};
use partcover_core::instances::{
    assign_costs, gen_hardness, gen_random_coverage, gen_random_graph, toy_instance, GraphKind, Instance,
};
use partcover_core::maximize::{
    block_fair_bi, block_greedy_gcd, block_greedy_mono, block_greedy_nonmono, caps_from_budget,
    greedy_augment, greedy_knapsack_bi, nonmono_bi, standard_greedy_partition, BlockScheduleMono,
    GreedyKnapsackBi, NonmonoBi,
};
use partcover_core::objectives::Objective;
use partcover_core::{ElementSet, PartitionedGroundSet, QueryCountedOracle, SeededRng, SetFunction};

struct Case {
    ground: PartitionedGroundSet,
    f: Objective,
}

impl Case {
    fn new(instance: &Instance) -> Self {
        Self {
            ground: instance.ground().unwrap(),
            f: instance.build_objective().unwrap(),
        }
    }

    fn n(&self) -> usize {
        self.ground.n()
    }

    fn value(&self, set: &[usize]) -> f64 {
        self.f.eval(&ElementSet::from_elements(self.n(), set)).unwrap()
    }

    fn full_value(&self) -> f64 {
        self.f.eval(&ElementSet::universe(self.n())).unwrap()
    }
}

fn coverage(seed: u64, n: usize, groups: usize) -> Case {
    Case::new(&gen_random_coverage(seed, n, groups, 2 * n, 4, Some((0.5, 2.0))).unwrap())
}

fn cut(seed: u64, n: usize, groups: usize) -> Case {
    let m = n * (n - 1) / 5;
    Case::new(&gen_random_graph(seed, n, m, groups, (0.5, 2.0), GraphKind::Cut).unwrap())
}

/// Caps with `lo ≤ k_j ≤ |U_j|`, or `None` when a group is smaller than `lo`.
fn random_caps(rng: &mut SeededRng, ground: &PartitionedGroundSet, lo: usize) -> Option<Vec<usize>> {
    (0..ground.groups())
        .map(|j| {
            let size = ground.group_size(j);
            (size >= lo).then(|| lo + rng.below(size - lo + 1))
        })
        .collect()
}

fn random_p(rng: &mut SeededRng, groups: usize) -> PartitionProportions {
    let raw: Vec<f64> = (0..groups).map(|_| rng.uniform(0.5, 1.5)).collect();
    let total: f64 = raw.iter().sum();
    PartitionProportions::new(raw.iter().map(|r| r / total).collect()).unwrap()
}

fn random_costs(rng: &mut SeededRng, n: usize) -> CostVector {
    CostVector::new((0..n).map(|_| rng.uniform(0.5, 2.0)).collect()).unwrap()
}

fn sizes(ground: &PartitionedGroundSet) -> Vec<usize> {
    (0..ground.groups()).map(|j| ground.group_size(j)).collect()
}

fn log2_rounds(eps: f64) -> usize {
    (1.0 / eps).log2().ceil() as usize
}

struct Report {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Report {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn summary(&self) -> String {
        let mut parts = self.notes.clone();
        if !self.failures.is_empty() {
            parts.push(format!("{} violations", self.failures.len()));
            parts.extend(self.failures.iter().filter(|f| !f.is_empty()).cloned());
        }
        parts.join("; ")
    }
}

fn hardness_ratio() -> Report {
    let mut report = Report::new();
    let start = Instant::now();
    for k in [vec![2, 2], vec![3, 3], vec![4, 4, 4]] {
        for eps in [0.05, 0.1, 0.25] {
            let inst = gen_hardness(&k, eps).unwrap();
            let case = Case::new(&inst);
            let oracle = QueryCountedOracle::new(&case.f);
            let greedy = standard_greedy_partition(&oracle, &case.ground, &k).unwrap();
            let opt = brute_force_smp(&oracle, &case.ground, &k).unwrap();
            let k1 = k[0] as f64;
            let ratio = greedy.f_value / opt.value;
            report.check((greedy.f_value - k1 * (0.5 + eps)).abs() <= 1e-12, || {
                format!("k={k:?} eps={eps}: greedy {}", greedy.f_value)
            });
            report.check((opt.value - k1).abs() <= 1e-12, || {
                format!("k={k:?} eps={eps}: exact {}", opt.value)
            });
            report.check((ratio - (0.5 + eps)).abs() <= 1e-12, || {
                format!("k={k:?} eps={eps}: ratio {ratio}")
            });
        }
    }
    let elapsed = start.elapsed();
    report.check(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"));
    report.note(format!("9 cases in {:.3}s", elapsed.as_secs_f64()));
    report
}

fn toy_trace() -> Report {
    let mut report = Report::new();
    let case = Case::new(&toy_instance());
    let oracle = QueryCountedOracle::new(&case.f);
    let greedy = standard_greedy_partition(&oracle, &case.ground, &[2, 2]).unwrap();
    let opt = brute_force_smp(&oracle, &case.ground, &[2, 2]).unwrap();
    report.check(greedy.f_value == 2.0, || format!("greedy {}", greedy.f_value));
    report.check(opt.value == 4.0, || format!("exact {}", opt.value));
    report.note(format!("greedy {} exact {}", greedy.f_value, opt.value));
    report
}

fn block_greedy_guarantee() -> Report {
    let mut report = Report::new();
    let start = Instant::now();
    let mut rng = SeededRng::new(3);
    let mut tested = 0;
    let mut worst = f64::INFINITY;
    let mut phis = [0usize; 4];
    for seed in 0.. {
        if tested == 100 {
            break;
        }
        let n = 10 + rng.below(5);
        let case = coverage(seed, n, 1 + rng.below(2));
        let Some(caps) = random_caps(&mut rng, &case.ground, 4) else {
            continue;
        };
        let phi = BlockScheduleMono::mono(&caps).unwrap().phi;
        phis[phi.min(3)] += 1;
        let bound = 1.0 - 1.0 / E - 1.0 / (phi as f64 + 1.0);
        let oracle = QueryCountedOracle::new(&case.f);
        let opt = brute_force_smp(&oracle, &case.ground, &caps).unwrap().value;
        let block = block_greedy_mono(&oracle, &case.ground, &caps).unwrap();
        let aug = greedy_augment(&oracle, &case.ground, &caps, &block.order).unwrap();
        worst = worst.min(block.f_value / opt);
        report.check(block.f_value >= bound * opt - 1e-9, || {
            format!("seed {seed}: block {} < {bound:.4}·{opt}", block.f_value)
        });
        report.check(aug.f_value >= 0.5 * opt - 1e-9, || {
            format!("seed {seed}: aug {} < 0.5·{opt}", aug.f_value)
        });
        tested += 1;
    }
    let elapsed = start.elapsed();
    report.check(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"));
    report.note(format!(
        "100 instances, phi=1:{} phi=2:{}, worst ratio {worst:.4}",
        phis[1], phis[2]
    ));
    report
}

fn gcd_variant() -> Report {
    let mut report = Report::new();
    let mut rng = SeededRng::new(4);
    let mut tested = 0;
    let mut worst = f64::INFINITY;
    for seed in 1000.. {
        if tested == 100 {
            break;
        }
        let k = 2 + tested % 3;
        let n = 10 + rng.below(5);
        let case = coverage(seed, n, 2 + rng.below(2));
        if sizes(&case.ground).iter().any(|&s| s < k) {
            continue;
        }
        let caps = vec![k; case.ground.groups()];
        let oracle = QueryCountedOracle::new(&case.f);
        let opt = brute_force_smp(&oracle, &case.ground, &caps).unwrap().value;
        let r = block_greedy_gcd(&oracle, &case.ground, &caps).unwrap();
        let bound = 1.0 - 1.0 / E - 1.0 / k as f64;
        worst = worst.min(r.f_value / opt);
        report.check(r.f_value >= bound * opt - 1e-9, || {
            format!("seed {seed} k={k}: {} < {bound:.4}·{opt}", r.f_value)
        });
        tested += 1;
    }
    report.note(format!("100 instances, worst ratio {worst:.4}"));
    report
}

fn knapsack_bicriteria() -> Report {
    let mut report = Report::new();
    let mut rng = SeededRng::new(5);
    let mut conditional = 0;
    let mut exhausted = 0;
    for seed in 0..100 {
        let n = 10 + rng.below(5);
        let groups = 1 + rng.below(2);
        let case = coverage(2000 + seed, n, groups);
        let costs = random_costs(&mut rng, n);
        let p = random_p(&mut rng, groups);
        let v = rng.uniform(0.5, 2.5);
        let oracle = QueryCountedOracle::new(&case.f);
        let opt = brute_force_smkp(&oracle, &case.ground, &costs, &p, v)
            .unwrap()
            .value;
        for eps in [0.1, 0.5] {
            let r = greedy_knapsack_bi(&oracle, &case.ground, &costs, &p, v, eps).unwrap();
            let rounds = log2_rounds(eps) as f64;
            let spent = costs.group_costs(&r.set, &case.ground);
            for (j, c) in spent.iter().enumerate() {
                let cap = 2.0 * rounds * p.get(j) * v;
                report.check(*c <= cap + 1e-9, || {
                    format!("seed {seed} eps={eps}: group {j} cost {c} > {cap}")
                });
            }
            if r.pool_exhausted {
                exhausted += 1;
                continue;
            }
            conditional += 1;
            report.check(r.f_value >= (1.0 - eps) * opt - 1e-9, || {
                format!("seed {seed} eps={eps}: {} < (1-eps)·{opt}", r.f_value)
            });
        }
    }
    report.note(format!(
        "200 runs, value bound checked on {conditional}, pool exhausted on {exhausted}"
    ));
    report
}

fn fair_bicriteria() -> Report {
    let mut report = Report::new();
    let mut rng = SeededRng::new(6);
    let mut tested = 0;
    while tested < 100 {
        let n = 8 + rng.below(5);
        let groups = 2 + rng.below(2);
        let case = coverage(rng.below(1 << 30) as u64, n, groups);
        let l: Vec<usize> = (0..groups).map(|_| rng.below(2)).collect();
        let u: Vec<usize> = l.iter().map(|&lo| lo + 1 + rng.below(3)).collect();
        let k = l.iter().sum::<usize>().max(2) + rng.below(3);
        let Ok(m) = FairnessMatroid::new(l, u, k) else {
            continue;
        };
        let oracle = QueryCountedOracle::new(&case.f);
        let Ok(opt) = brute_force_smf(&oracle, &case.ground, &m) else {
            continue;
        };
        for eps in [0.1, 0.25, 0.5] {
            let r = block_fair_bi(&oracle, &case.ground, &m, eps).unwrap();
            let beta = log2_rounds(eps);
            report.check(fairness_beta_member(&r.set, &case.ground, &m, beta), || {
                format!(
                    "instance {tested} eps={eps}: counts {:?} outside M_{beta}",
                    r.per_group_counts
                )
            });
            report.check(r.f_value >= (1.0 - eps) * opt.value - 1e-9, || {
                format!(
                    "instance {tested} eps={eps}: {} < (1-eps)·{}",
                    r.f_value, opt.value
                )
            });
        }
        tested += 1;
    }
    report.note("100 instances x eps {0.1, 0.25, 0.5}");
    report
}

fn mean_and_se(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt() / n.sqrt())
}

fn expectation_bounds() -> Report {
    const SEEDS: u64 = 500;
    let mut report = Report::new();
    let start = Instant::now();
    let eps = 0.25;
    let mut vacuous = 0;
    let mut margin_bi = f64::INFINITY;
    let mut margin_block = f64::INFINITY;
    for inst in 0..10u64 {
        let case = cut(3000 + inst, 12, 2);
        let p = PartitionProportions::uniform(2).unwrap();
        let v = 6.0;
        let caps: Vec<usize> = caps_from_budget(&p, v)
            .iter()
            .zip(sizes(&case.ground))
            .map(|(&k, s)| k.min(s))
            .collect();
        let oracle = QueryCountedOracle::new(&case.f);
        let opt = brute_force_smp(&oracle, &case.ground, &caps).unwrap().value;
        let phi = BlockScheduleMono::mono(&caps).map_or(1, |s| s.phi) as f64;

        let bi: Vec<f64> = (0..SEEDS)
            .map(|s| {
                nonmono_bi(&oracle, &case.ground, &p, v, eps, &mut SeededRng::new(s))
                    .unwrap()
                    .f_value
            })
            .collect();
        let (mean, se) = mean_and_se(&bi);
        let target = (1.0 / E - eps) * opt;
        margin_bi = margin_bi.min((mean - target + 3.0 * se) / opt);
        report.check(mean >= target - 3.0 * se, || {
            format!("instance {inst}: nonmono_bi mean {mean:.4} < {target:.4} - 3·{se:.4}")
        });

        let block: Vec<f64> = (0..SEEDS)
            .map(|s| {
                block_greedy_nonmono(&oracle, &case.ground, &caps, &mut SeededRng::new(s))
                    .unwrap()
                    .f_value
            })
            .collect();
        let (mean, se) = mean_and_se(&block);
        let factor = 1.0 / E - 3.0 / (E * (phi + 1.0));
        if factor <= 0.0 {
            vacuous += 1;
        }
        let target = factor * opt;
        margin_block = margin_block.min((mean - target + 3.0 * se) / opt);
        report.check(mean >= target - 3.0 * se, || {
            format!("instance {inst}: block nonmono mean {mean:.4} < {target:.4} - 3·{se:.4}")
        });
    }
    let elapsed = start.elapsed();
    report.check(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"));
    report.note(format!(
        "10 instances x {SEEDS} seeds, min slack/OPT nonmono_bi {margin_bi:.3} block {margin_block:.3}"
    ));
    if vacuous > 0 {
        report.note(format!(
            "block bound factor <= 0 on {vacuous} instances (phi <= 2 at n = 12)"
        ));
    }
    report
}

fn converter_certification() -> Report {
    let mut report = Report::new();
    let mut rng = SeededRng::new(8);
    let (alpha, eps, delta) = (0.2, 0.1, 0.1);
    for seed in 0..50u64 {
        let n = 8 + rng.below(5);
        let groups = 2 + rng.below(2);
        let case = coverage(4000 + seed, n, groups);
        let p = random_p(&mut rng, groups);
        let tau = rng.uniform(0.3, 1.0) * case.full_value();
        let oracle = QueryCountedOracle::new(&case.f);
        let exact = brute_force_scp(&oracle, &case.ground, &p, tau).unwrap().value;
        let params = ConvertRandParams {
            tau,
            eps,
            delta,
            alpha,
        };
        let r = convert_rand(
            &NonmonoBi { eps },
            &oracle,
            &case.ground,
            &p,
            params,
            &SeededRng::new(seed),
        )
        .unwrap();
        let beta = (2.0 / eps).ceil();
        let threshold = (1.0 / E - eps - eps) * tau;
        report.check(
            r.feasible && partition_feasible(&r.set, &case.ground, &p, r.v_s),
            || format!("scp {seed}: infeasible at v_S {}", r.v_s),
        );
        report.check(
            r.f_value >= threshold - 1e-9 && case.value(&r.set) == r.f_value,
            || format!("scp {seed}: f {} below {threshold}", r.f_value),
        );
        report.check(r.v_s <= beta * (1.0 + alpha) * exact + 1e-9, || {
            format!("scp {seed}: v_S {} > {beta}·1.2·{exact}", r.v_s)
        });
    }
    for seed in 0..50u64 {
        let n = 8 + rng.below(5);
        let groups = 2 + rng.below(2);
        let case = coverage(5000 + seed, n, groups);
        let costs = random_costs(&mut rng, n);
        let p = random_p(&mut rng, groups);
        let tau = rng.uniform(0.3, 1.0) * case.full_value();
        let oracle = QueryCountedOracle::new(&case.f);
        let exact = brute_force_sckp(&oracle, &case.ground, &costs, &p, tau)
            .unwrap()
            .value;
        let r = convert_knapsack(
            &GreedyKnapsackBi { eps },
            &oracle,
            &case.ground,
            &costs,
            &p,
            tau,
            alpha,
        )
        .unwrap();
        let beta = 2.0 * log2_rounds(eps) as f64;
        let threshold = (1.0 - eps) * tau;
        report.check(
            r.feasible && knapsack_partition_feasible(&r.set, &case.ground, &costs, &p, r.v_s),
            || format!("sckp {seed}: infeasible at v_S {}", r.v_s),
        );
        report.check(
            r.f_value >= threshold - 1e-9 && case.value(&r.set) == r.f_value,
            || format!("sckp {seed}: f {} below {threshold}", r.f_value),
        );
        report.check(r.v_s <= beta * (1.0 + alpha) * exact + 1e-9, || {
            format!("sckp {seed}: v_S {} > {beta}·1.2·{exact}", r.v_s)
        });
    }
    report.note("50 scp + 50 sckp");
    report
}

fn lemma_suites() -> Report {
    let mut report = Report::new();
    let mut rng = SeededRng::new(9);
    // Shrinking every cap to a multiple of c keeps c/(c+1) of the optimum
    // whenever ⌊k_j/c⌋ ≥ k_j − c⌊k_j/c⌋.
    let mut shrunk_cases = 0;
    for seed in 6000.. {
        if shrunk_cases == 50 {
            break;
        }
        let case = coverage(seed, 10 + rng.below(3), 2);
        let c = 2 + rng.below(2);
        let Some(caps) = random_caps(&mut rng, &case.ground, c) else {
            continue;
        };
        if caps.iter().any(|&k| k / c < k - c * (k / c)) {
            continue;
        }
        let shrunk: Vec<usize> = caps.iter().map(|&k| k / c * c).collect();
        let oracle = QueryCountedOracle::new(&case.f);
        let full = brute_force_smp(&oracle, &case.ground, &caps).unwrap().value;
        let part = brute_force_smp(&oracle, &case.ground, &shrunk).unwrap().value;
        let ratio = c as f64 / (c + 1) as f64;
        report.check(part >= ratio * full - 1e-9, || {
            format!("seed {seed} caps {caps:?} c={c}: {part} < {ratio}·{full}")
        });
        shrunk_cases += 1;
    }
    // Min-budget cover is at most the min-cost balanced cover plus the
    // largest per-group item cost over its proportion.
    for seed in 0..50u64 {
        let n = 8 + rng.below(4);
        let case = coverage(7000 + seed, n, 2);
        let costs = random_costs(&mut rng, n);
        let p = random_p(&mut rng, 2);
        let tau = rng.uniform(0.3, 1.0) * case.full_value();
        let oracle = QueryCountedOracle::new(&case.f);
        let p2 = brute_force_sckp(&oracle, &case.ground, &costs, &p, tau)
            .unwrap()
            .value;
        let p1 = brute_force_p1(&oracle, &case.ground, &costs, &p, tau)
            .unwrap()
            .value;
        let slack = (0..2)
            .map(|j| {
                case.ground
                    .members(j)
                    .iter()
                    .map(|&x| costs.cost(x))
                    .fold(0.0, f64::max)
                    / p.get(j)
            })
            .fold(0.0, f64::max);
        report.check(p2 <= p1 + slack + 1e-9, || {
            format!("seed {seed}: {p2} > {p1} + {slack}")
        });
    }
    report.note("50 shrunk-cap instances + 50 budget bridge instances");
    report
}

fn query_bounds() -> Report {
    let mut report = Report::new();
    let mut rng = SeededRng::new(10);
    let mut block_runs = 0;
    for seed in 0..300u64 {
        // min k ≥ 4 keeps φ ≥ 1; smaller caps fall back to standard greedy
        let case = coverage(8000 + seed, 10 + rng.below(5), 1 + rng.below(2));
        let Some(caps) = random_caps(&mut rng, &case.ground, 4) else {
            continue;
        };
        let bound: usize = sizes(&case.ground).iter().zip(&caps).map(|(u, k)| u * k).sum();
        let oracle = QueryCountedOracle::new(&case.f);
        let r = block_greedy_mono(&oracle, &case.ground, &caps).unwrap();
        report.check(r.queries <= bound as u64, || {
            format!("block seed {seed}: {} > {bound}", r.queries)
        });
        report.check(oracle.queries() == r.queries, || {
            format!("block seed {seed}: oracle saw {}", oracle.queries())
        });
        block_runs += 1;
    }
    let mut bi_runs = 0;
    for seed in 0..50u64 {
        let n = 8 + rng.below(5);
        let groups = 1 + rng.below(3);
        let case = if seed % 2 == 0 {
            cut(9000 + seed, n, groups)
        } else {
            coverage(9000 + seed, n, groups)
        };
        let p = random_p(&mut rng, groups);
        for eps in [0.1, 0.25, 0.5] {
            let v = rng.uniform(1.0, 3.0 * n as f64 / groups as f64);
            let oracle = QueryCountedOracle::new(&case.f);
            let Ok(r) = nonmono_bi(&oracle, &case.ground, &p, v, eps, &mut SeededRng::new(seed)) else {
                continue;
            };
            let bound = (2.0 / eps).ceil() * n as f64 * v * 2.0;
            report.check(r.queries as f64 <= bound, || {
                format!("nonmono_bi seed {seed} eps={eps}: {} > {bound}", r.queries)
            });
            bi_runs += 1;
        }
    }
    report.note(format!(
        "{block_runs} block_greedy_mono runs, {bi_runs} nonmono_bi runs"
    ));
    report
}

fn scaled_ordering() -> Report {
    const N: usize = 2000;
    const M: usize = 10_000;
    const GROUPS: usize = 5;
    let mut report = Report::new();
    let p = PartitionProportions::uniform(GROUPS).unwrap();
    let eps = 0.1;
    let mut value_wins = 0;
    let mut budget_wins = 0;
    let mut lines = Vec::new();
    for seed in 0..10u64 {
        let graph = gen_random_graph(seed, N, M, GROUPS, (1.0, 1.0), GraphKind::Cut).unwrap();
        let case = Case::new(&graph);
        let oracle = QueryCountedOracle::new(&case.f);
        let params = ConvertRandParams {
            tau: 3000.0,
            eps,
            delta: 0.1,
            alpha: 0.2,
        };
        let rng = SeededRng::new(seed);
        let block = convert_rand(&NonmonoBi { eps }, &oracle, &case.ground, &p, params, &rng).unwrap();
        let rg = convert_rand(
            &partcover_core::maximize::RandomGreedyBudget,
            &oracle,
            &case.ground,
            &p,
            params,
            &rng,
        )
        .unwrap();
        let budget =
            partcover_core::compute_metrics(&block.set, &case.ground, None, Some(p.as_slice()), 0.0, 0, 0.0)
                .unwrap()
                .budget;
        let rg_adjusted = case.value(&feasible_prefix(&rg.order, &case.ground, &p, budget));
        if block.f_value >= rg_adjusted {
            value_wins += 1;
        }

        let cov = gen_random_graph(seed, N, M, GROUPS, (1.0, 1.0), GraphKind::Coverage).unwrap();
        let cov = assign_costs(&cov, seed, 0.001, 10.0).unwrap();
        let costs = cov.cost_vector().unwrap().unwrap();
        let case = Case::new(&cov);
        let oracle = QueryCountedOracle::new(&case.f);
        let tau = 1500.0;
        let block_k = convert_knapsack(
            &GreedyKnapsackBi { eps },
            &oracle,
            &case.ground,
            &costs,
            &p,
            tau,
            0.2,
        )
        .unwrap();
        let block_budget = costs
            .group_costs(&block_k.set, &case.ground)
            .iter()
            .enumerate()
            .map(|(j, c)| c / p.get(j))
            .fold(0.0, f64::max);
        let gk = density_greedy_cover(&oracle, &case.ground, &costs, &p, (1.0 - eps) * tau).unwrap();
        if block_budget < gk.v_s {
            budget_wins += 1;
        }
        lines.push(format!(
            "seed {seed}: f {:.0} vs {rg_adjusted:.0}, budget {block_budget:.1} vs {:.1}",
            block.f_value, gk.v_s
        ));
    }
    report.check(value_wins >= 8, || {
        format!("scp value ordering on {value_wins}/10 seeds")
    });
    report.check(budget_wins >= 8, || {
        format!("sckp budget ordering on {budget_wins}/10 seeds")
    });
    report.note(format!(
        "scp f ordering {value_wins}/10, sckp budget ordering {budget_wins}/10"
    ));
    if std::env::var_os("ACCEPTANCE_VERBOSE").is_some() {
        report.notes.extend(lines);
    }
    report
}

type Criterion = (&'static str, fn() -> Report);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("hardness ratio", hardness_ratio),
        ("toy trace", toy_trace),
        ("block greedy guarantee", block_greedy_guarantee),
        ("gcd variant", gcd_variant),
        ("knapsack bicriteria", knapsack_bicriteria),
        ("fair bicriteria", fair_bicriteria),
        ("randomized expectation bounds", expectation_bounds),
        ("converter certification", converter_certification),
        ("lemma suites", lemma_suites),
        ("query-count bounds", query_bounds),
        ("scaled ordering", scaled_ordering),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = (i + 1).to_string();
        if !filter.is_empty() && !filter.iter().any(|f| *f == id || name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let report = run();
        let status = if report.passed() { "PASS" } else { "FAIL" };
        if !report.passed() {
            failed += 1;
        }
        println!(
            "{status} {id:>2} {name} ({:.2}s): {}",
            start.elapsed().as_secs_f64(),
            report.summary()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
