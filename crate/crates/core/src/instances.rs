//! Instance descriptions and generators.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;

use crate::constraints::CostVector;
use crate::objectives::{
    build_gaussian_kernel, Graph, GraphCutObjective, LogDetObjective, Objective, SetCoverObjective,
    VertexCoverageObjective, WeightedCoverObjective,
};
use crate::{Error, PartitionedGroundSet, Result, SeededRng};

/// The objective of an instance, as plain data.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum ObjectiveSpec {
    SetCover {
        universe: usize,
        tags: Vec<Vec<u32>>,
    },
    WeightedCover {
        weights: Vec<f64>,
        tags: Vec<Vec<u32>>,
    },
    GraphCut {
        n: usize,
        edges: Vec<(usize, usize, f64)>,
    },
    VertexCoverage {
        n: usize,
        edges: Vec<(usize, usize, f64)>,
    },
    /// Row-major `n × n` kernel.
    LogDet {
        n: usize,
        kernel: Vec<f64>,
    },
}

impl ObjectiveSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ObjectiveSpec::SetCover { .. } => "set_cover",
            ObjectiveSpec::WeightedCover { .. } => "weighted_cover",
            ObjectiveSpec::GraphCut { .. } => "graph_cut",
            ObjectiveSpec::VertexCoverage { .. } => "vertex_coverage",
            ObjectiveSpec::LogDet { .. } => "logdet",
        }
    }

    pub fn n(&self) -> usize {
        match self {
            ObjectiveSpec::SetCover { tags, .. } | ObjectiveSpec::WeightedCover { tags, .. } => tags.len(),
            ObjectiveSpec::GraphCut { n, .. }
            | ObjectiveSpec::VertexCoverage { n, .. }
            | ObjectiveSpec::LogDet { n, .. } => *n,
        }
    }

    pub fn build(&self) -> Result<Objective> {
        Ok(match self {
            ObjectiveSpec::SetCover { universe, tags } => {
                Objective::SetCover(SetCoverObjective::new(tags.clone(), *universe)?)
            }
            ObjectiveSpec::WeightedCover { weights, tags } => {
                Objective::WeightedCover(WeightedCoverObjective::new(tags.clone(), weights.clone())?)
            }
            ObjectiveSpec::GraphCut { n, edges } => {
                Objective::GraphCut(GraphCutObjective::new(Graph::from_edges(*n, edges)?))
            }
            ObjectiveSpec::VertexCoverage { n, edges } => {
                Objective::VertexCoverage(VertexCoverageObjective::new(Graph::from_edges(*n, edges)?))
            }
            ObjectiveSpec::LogDet { n, kernel } => {
                Objective::LogDet(LogDetObjective::new(*n, kernel.clone())?)
            }
        })
    }
}

/// A complete problem instance: objective, group labels, optional costs and
/// free-form metadata (generator name, seed, parameters).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Instance {
    pub name: String,
    pub objective: ObjectiveSpec,
    pub groups: Vec<usize>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub costs: Option<Vec<f64>>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub meta: BTreeMap<String, String>,
}

impl Instance {
    pub fn n(&self) -> usize {
        self.groups.len()
    }

    /// Checks that labels, objective and costs agree and build cleanly.
    pub fn validate(&self) -> Result<()> {
        if self.objective.n() != self.groups.len() {
            return Err(Error::InvalidInstance(format!(
                "objective has {} elements but {} group labels are given",
                self.objective.n(),
                self.groups.len()
            )));
        }
        self.ground()?;
        self.objective.build()?;
        self.cost_vector()?;
        Ok(())
    }

    pub fn ground(&self) -> Result<PartitionedGroundSet> {
        PartitionedGroundSet::new(self.groups.clone())
    }

    pub fn build_objective(&self) -> Result<Objective> {
        self.objective.build()
    }

    pub fn cost_vector(&self) -> Result<Option<CostVector>> {
        match &self.costs {
            None => Ok(None),
            Some(c) if c.len() != self.n() => Err(Error::InvalidInstance(format!(
                "{} costs for {} elements",
                c.len(),
                self.n()
            ))),
            Some(c) => CostVector::new(c.clone()).map(Some),
        }
    }

    /// Costs, or unit costs when the instance has none.
    pub fn costs_or_unit(&self) -> Result<CostVector> {
        Ok(self.cost_vector()?.unwrap_or_else(|| CostVector::unit(self.n())))
    }

    fn with_meta(mut self, pairs: &[(&str, String)]) -> Self {
        for (k, v) in pairs {
            self.meta.insert(k.to_string(), v.clone());
        }
        self
    }
}

fn list(values: &[usize]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// The weighted-cover instance on which standard greedy reaches only
/// `k_1·(1/2 + ε)` against an optimum of `k_1`.
///
/// Group `i` holds `2·k_i` elements. In group 0, element `j < k_1` covers a
/// shared tag `s_j` (weight 1/2) and a private extra tag (weight ε); the
/// other `k_1` elements each cover a private tag of weight 1/2. In every
/// other group, element `j < k_1` covers `s_j` and the rest cover `s_0`.
pub fn gen_hardness(k: &[usize], eps: f64) -> Result<Instance> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "eps must lie in (0, 0.5), got {eps}"
        )));
    }
    if k.len() < 2 {
        return Err(Error::InvalidParameter(
            "the construction needs at least two groups".into(),
        ));
    }
    if k.contains(&0) {
        return Err(Error::InvalidParameter("every k_i must be positive".into()));
    }
    if k.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter(format!(
            "k must be non-decreasing, got {}",
            list(k)
        )));
    }
    let k1 = k[0];
    // tags: shared s_j = j, extra e_j = k1 + j, private q_j = 2·k1 + j
    let mut weights = vec![0.5; 3 * k1];
    for w in &mut weights[k1..2 * k1] {
        *w = eps;
    }
    let mut tags = Vec::new();
    let mut groups = Vec::new();
    for j in 0..2 * k1 {
        tags.push(if j < k1 {
            vec![j as u32, (k1 + j) as u32]
        } else {
            vec![(k1 + j) as u32]
        });
        groups.push(0);
    }
    for (i, &ki) in k.iter().enumerate().skip(1) {
        for j in 0..2 * ki {
            tags.push(vec![if j < k1 { j as u32 } else { 0 }]);
            groups.push(i);
        }
    }
    Ok(Instance {
        name: format!("hardness-{}", list(k)),
        objective: ObjectiveSpec::WeightedCover { weights, tags },
        groups,
        costs: None,
        meta: BTreeMap::new(),
    }
    .with_meta(&[
        ("generator", "hardness".into()),
        ("k", list(k)),
        ("eps", eps.to_string()),
    ]))
}

/// The eight-element example: groups `{0,1,2,3}` and `{4,5,6,7}`, tags
/// a (elements 0, 4, 6, 7), b (1, 5), c (2), d (3).
pub fn toy_instance() -> Instance {
    Instance {
        name: "toy".into(),
        objective: ObjectiveSpec::SetCover {
            universe: 4,
            tags: [0u32, 1, 2, 3, 0, 1, 0, 0].iter().map(|&t| vec![t]).collect(),
        },
        groups: vec![0, 0, 0, 0, 1, 1, 1, 1],
        costs: None,
        meta: BTreeMap::new(),
    }
    .with_meta(&[("generator", "toy".into())])
}

/// Parameters of [`gen_synthetic_setcover`]. Group `i` has
/// `base + increment·i` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyntheticParams {
    pub groups: usize,
    pub base: usize,
    pub increment: usize,
    /// Elements per group (beyond group 0) sharing one tag set.
    pub block: usize,
    pub tags_per_element: usize,
}

impl Default for SyntheticParams {
    fn default() -> Self {
        Self {
            groups: 5,
            base: 200,
            increment: 40,
            block: 100,
            tags_per_element: 25,
        }
    }
}

/// Synthetic set cover in the shape of the hardness instance. Group 0
/// elements cover disjoint tag sets. In each later group the first `block`
/// elements all cover the same tags, the first half of the tags of a
/// randomly chosen group-0 element; the remaining elements cover fresh
/// disjoint tag sets.
pub fn gen_synthetic_setcover(seed: u64, params: SyntheticParams) -> Result<Instance> {
    let SyntheticParams {
        groups,
        base,
        increment,
        block,
        tags_per_element: t,
    } = params;
    if groups < 2 {
        return Err(Error::InvalidParameter(
            "synthetic set cover needs at least two groups".into(),
        ));
    }
    if base == 0 || t == 0 {
        return Err(Error::InvalidParameter(
            "group size and tags per element must be positive".into(),
        ));
    }
    let mut rng = SeededRng::new(seed);
    let mut tags: Vec<Vec<u32>> = Vec::new();
    let mut labels = Vec::new();
    let mut next_tag = 0u32;
    let mut fresh = |count: usize| -> Vec<u32> {
        let out = (next_tag..next_tag + count as u32).collect();
        next_tag += count as u32;
        out
    };
    for _ in 0..base {
        tags.push(fresh(t));
        labels.push(0);
    }
    for i in 1..groups {
        let size = base + increment * i;
        let host = rng.below(base);
        let shared: Vec<u32> = tags[host][..t.div_ceil(2)].to_vec();
        for j in 0..size {
            tags.push(if j < block { shared.clone() } else { fresh(t) });
            labels.push(i);
        }
    }
    let universe = next_tag as usize;
    Ok(Instance {
        name: format!("synthetic-setcover-{seed}"),
        objective: ObjectiveSpec::SetCover { universe, tags },
        groups: labels,
        costs: None,
        meta: BTreeMap::new(),
    }
    .with_meta(&[
        ("generator", "setcover".into()),
        ("seed", seed.to_string()),
        ("groups", groups.to_string()),
        ("base", base.to_string()),
        ("increment", increment.to_string()),
        ("block", block.to_string()),
        ("tags_per_element", t.to_string()),
    ]))
}

/// Random coverage: each element covers between 1 and `max_tags` distinct
/// tags drawn uniformly from `0..universe`. With `weights`, tag weights are
/// uniform in that range and the objective is weighted cover.
pub fn gen_random_coverage(
    seed: u64,
    n: usize,
    groups: usize,
    universe: usize,
    max_tags: usize,
    weights: Option<(f64, f64)>,
) -> Result<Instance> {
    if universe == 0 || max_tags == 0 || max_tags > universe {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= max_tags <= universe, got {max_tags} and {universe}"
        )));
    }
    let mut tag_rng = SeededRng::with_stream(seed, 0);
    let mut weight_rng = SeededRng::with_stream(seed, 1);
    let mut label_rng = SeededRng::with_stream(seed, 2);
    let tags: Vec<Vec<u32>> = (0..n)
        .map(|_| {
            let count = 1 + tag_rng.below(max_tags);
            let mut t: Vec<u32> = rand::seq::index::sample(&mut tag_rng, universe, count)
                .into_iter()
                .map(|t| t as u32)
                .collect();
            t.sort_unstable();
            t
        })
        .collect();
    let labels = random_labels(n, groups, &mut label_rng)?;
    let objective = match weights {
        None => ObjectiveSpec::SetCover { universe, tags },
        Some((lo, hi)) => {
            if !(lo >= 0.0 && hi >= lo && hi.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "weight range [{lo}, {hi}] is invalid"
                )));
            }
            let weights = (0..universe).map(|_| weight_rng.uniform(lo, hi)).collect();
            ObjectiveSpec::WeightedCover { weights, tags }
        }
    };
    Ok(Instance {
        name: format!("coverage-{n}-{seed}"),
        objective,
        groups: labels,
        costs: None,
        meta: BTreeMap::new(),
    }
    .with_meta(&[
        ("generator", "coverage".into()),
        ("seed", seed.to_string()),
        ("universe", universe.to_string()),
        ("max_tags", max_tags.to_string()),
    ]))
}

/// Which graph objective a generated graph carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Cut,
    Coverage,
}

impl GraphKind {
    fn spec(self, n: usize, edges: Vec<(usize, usize, f64)>) -> ObjectiveSpec {
        match self {
            GraphKind::Cut => ObjectiveSpec::GraphCut { n, edges },
            GraphKind::Coverage => ObjectiveSpec::VertexCoverage { n, edges },
        }
    }
}

/// Uniform labels in `0..groups`, with every group receiving at least one
/// element.
pub fn random_labels(n: usize, groups: usize, rng: &mut SeededRng) -> Result<Vec<usize>> {
    if groups == 0 || n < groups {
        return Err(Error::InvalidParameter(format!(
            "cannot split {n} elements into {groups} non-empty groups"
        )));
    }
    let mut labels: Vec<usize> = (0..n).map(|_| rng.below(groups)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for (g, &x) in order.iter().take(groups).enumerate() {
        labels[x] = g;
    }
    Ok(labels)
}

/// A graph with `m` distinct edges drawn uniformly from all `n(n−1)/2`
/// pairs, weights uniform in `[w_lo, w_hi]`, and uniform group labels.
pub fn gen_random_graph(
    seed: u64,
    n: usize,
    m: usize,
    groups: usize,
    weights: (f64, f64),
    kind: GraphKind,
) -> Result<Instance> {
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Err(Error::InvalidParameter(format!(
            "{m} edges requested, a graph on {n} nodes has {pairs}"
        )));
    }
    let (w_lo, w_hi) = weights;
    if !(w_lo >= 0.0 && w_hi >= w_lo && w_hi.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "weight range [{w_lo}, {w_hi}] is invalid"
        )));
    }
    let mut edge_rng = SeededRng::with_stream(seed, 0);
    let mut weight_rng = SeededRng::with_stream(seed, 1);
    let mut label_rng = SeededRng::with_stream(seed, 2);
    let mut picked = rand::seq::index::sample(&mut edge_rng, pairs, m).into_vec();
    picked.sort_unstable();
    let edges = picked
        .into_iter()
        .map(|idx| {
            let (u, v) = pair_from_index(idx, n);
            (u, v, weight_rng.uniform(w_lo, w_hi))
        })
        .collect();
    let labels = random_labels(n, groups, &mut label_rng)?;
    Ok(Instance {
        name: format!("graph-{n}-{m}-{seed}"),
        objective: kind.spec(n, edges),
        groups: labels,
        costs: None,
        meta: BTreeMap::new(),
    }
    .with_meta(&[
        ("generator", "graph".into()),
        ("seed", seed.to_string()),
        ("m", m.to_string()),
        ("w_lo", w_lo.to_string()),
        ("w_hi", w_hi.to_string()),
    ]))
}

/// The `idx`-th pair `(u, v)`, `u < v`, in row-major order.
fn pair_from_index(mut idx: usize, n: usize) -> (usize, usize) {
    let mut u = 0;
    while idx >= n - 1 - u {
        idx -= n - 1 - u;
        u += 1;
    }
    (u, u + 1 + idx)
}

/// A log-determinant instance over `n` random points in `[0, 1]^dim` with a
/// Gaussian kernel of bandwidth `sigma`.
pub fn gen_logdet(seed: u64, n: usize, dim: usize, groups: usize, sigma: f64) -> Result<Instance> {
    let mut feature_rng = SeededRng::with_stream(seed, 0);
    let mut label_rng = SeededRng::with_stream(seed, 1);
    let features: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..dim).map(|_| feature_rng.uniform(0.0, 1.0)).collect())
        .collect();
    let kernel = build_gaussian_kernel(&features, sigma)?;
    let labels = random_labels(n, groups, &mut label_rng)?;
    Ok(Instance {
        name: format!("logdet-{n}-{seed}"),
        objective: ObjectiveSpec::LogDet { n, kernel },
        groups: labels,
        costs: None,
        meta: BTreeMap::new(),
    }
    .with_meta(&[
        ("generator", "logdet".into()),
        ("seed", seed.to_string()),
        ("dim", dim.to_string()),
        ("sigma", sigma.to_string()),
    ]))
}

/// Replaces the costs with independent draws uniform in `[lo, hi]`.
pub fn assign_costs(instance: &Instance, seed: u64, lo: f64, hi: f64) -> Result<Instance> {
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "cost range [{lo}, {hi}] needs 0 < lo <= hi"
        )));
    }
    let mut rng = SeededRng::new(seed);
    let costs = (0..instance.n()).map(|_| rng.uniform(lo, hi)).collect();
    let mut out = instance.clone();
    out.costs = Some(costs);
    Ok(out.with_meta(&[
        ("cost_seed", seed.to_string()),
        ("cost_lo", lo.to_string()),
        ("cost_hi", hi.to_string()),
    ]))
}

/// A parsed edge list: node count and edges over compacted ids.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
    /// Original node label of each compacted id.
    pub labels: Vec<String>,
}

/// Parses whitespace-separated `u v [w]` lines. Lines starting with `#` and
/// blank lines are skipped; node labels are compacted to `0..n` in order of
/// first appearance; the weight defaults to 1. Duplicate edges are kept here
/// and merged when the graph is built.
pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut ids: BTreeMap<String, usize> = BTreeMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut id_of = |label: &str, labels: &mut Vec<String>| -> usize {
        if let Some(&id) = ids.get(label) {
            return id;
        }
        let id = labels.len();
        ids.insert(label.to_string(), id);
        labels.push(label.to_string());
        id
    };
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected `u v [w]`, found {} fields", fields.len()),
            });
        }
        let w = match fields.get(2) {
            None => 1.0,
            Some(s) => s.parse::<f64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("weight `{s}` is not a number"),
            })?,
        };
        if !(w.is_finite() && w >= 0.0) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("weight {w} is negative or not finite"),
            });
        }
        let u = id_of(fields[0], &mut labels);
        let v = id_of(fields[1], &mut labels);
        edges.push((u, v, w));
    }
    if edges.is_empty() {
        return Err(Error::InvalidInstance("edge list contains no edges".into()));
    }
    Ok(EdgeList {
        n: labels.len(),
        edges,
        labels,
    })
}

/// A graph instance from an edge list with uniform random group labels.
pub fn edge_list_instance(
    name: &str,
    list: &EdgeList,
    groups: usize,
    seed: u64,
    kind: GraphKind,
) -> Result<Instance> {
    let mut rng = SeededRng::new(seed);
    let labels = random_labels(list.n, groups, &mut rng)?;
    // build once so duplicates are merged and self-loops dropped in the stored data
    let edges = Graph::from_edges(list.n, &list.edges)?.edges();
    Ok(Instance {
        name: name.to_string(),
        objective: kind.spec(list.n, edges),
        groups: labels,
        costs: None,
        meta: BTreeMap::new(),
    }
    .with_meta(&[("generator", "edgelist".into()), ("seed", seed.to_string())]))
}
