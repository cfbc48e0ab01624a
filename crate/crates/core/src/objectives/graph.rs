use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{ElementSet, Error, Result, SetFunction};

/// An undirected weighted graph on nodes `0..n`, stored as sorted adjacency
/// lists. Duplicate edges are merged by summing weights; self-loops are
/// dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    adj: Vec<Vec<(usize, f64)>>,
    /// Every weight is an integer and the total stays below 2^52, so sums are
    /// exact in any order.
    integral: bool,
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance("graph has no nodes".into()));
        }
        let mut canon: Vec<(usize, usize, f64)> = Vec::with_capacity(edges.len());
        for (i, &(u, v, w)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidInstance(format!(
                    "edge {i} ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::InvalidInstance(format!(
                    "edge {i} ({u}, {v}) has weight {w}, expected a finite non-negative value"
                )));
            }
            if u != v {
                canon.push((u.min(v), u.max(v), w));
            }
        }
        // stable sort keeps input order among duplicates, so merged sums are reproducible
        canon.sort_by_key(|e| (e.0, e.1));
        let mut adj = vec![Vec::new(); n];
        let mut i = 0;
        while i < canon.len() {
            let (u, v, mut w) = canon[i];
            i += 1;
            while i < canon.len() && canon[i].0 == u && canon[i].1 == v {
                w += canon[i].2;
                i += 1;
            }
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for list in &mut adj {
            list.sort_by_key(|&(y, _)| y);
        }
        let total: f64 = adj.iter().flatten().map(|&(_, w)| w).sum();
        let integral = total < (1u64 << 52) as f64 && adj.iter().flatten().all(|&(_, w)| libm::trunc(w) == w);
        Ok(Self { adj, integral })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, x: usize) -> &[(usize, f64)] {
        &self.adj[x]
    }

    /// Merged edges `(u, v, w)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            for &(v, w) in list {
                if u < v {
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    /// Weight from `x` to members and to non-members of `S`.
    fn split_weight(&self, set: &ElementSet, x: usize) -> (f64, f64) {
        let mask = set.mask();
        let (mut inside, mut outside) = (0.0, 0.0);
        for &(y, w) in &self.adj[x] {
            if mask[y] {
                inside += w;
            } else {
                outside += w;
            }
        }
        (inside, outside)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// `f(S) = Σ_{x∈S, y∉S} w(x, y)`. Not monotone.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphCutObjective {
    graph: Graph,
}

impl GraphCutObjective {
    pub fn new(graph: Graph) -> Self {
        Self { graph }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
}

impl SetFunction for GraphCutObjective {
    fn ground_size(&self) -> usize {
        self.graph.n()
    }

    fn eval(&self, set: &ElementSet) -> Result<f64> {
        let mask = set.mask();
        let mut total = 0.0;
        for x in set.iter() {
            for &(y, w) in self.graph.neighbors(x) {
                if !mask[y] {
                    total += w;
                }
            }
        }
        Ok(total)
    }

    fn exact_gain(&self, set: &ElementSet, x: usize) -> Option<f64> {
        if !self.graph.integral || set.contains(x) {
            return None;
        }
        let (inside, outside) = self.graph.split_weight(set, x);
        Some(outside - inside)
    }
}

/// Total weight of edges with at least one endpoint in `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexCoverageObjective {
    graph: Graph,
}

impl VertexCoverageObjective {
    pub fn new(graph: Graph) -> Self {
        Self { graph }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
}

impl SetFunction for VertexCoverageObjective {
    fn ground_size(&self) -> usize {
        self.graph.n()
    }

    fn eval(&self, set: &ElementSet) -> Result<f64> {
        let mask = set.mask();
        let mut total = 0.0;
        for x in set.iter() {
            for &(y, w) in self.graph.neighbors(x) {
                // an edge inside S is counted once, from its smaller endpoint
                if !mask[y] || x < y {
                    total += w;
                }
            }
        }
        Ok(total)
    }

    fn exact_gain(&self, set: &ElementSet, x: usize) -> Option<f64> {
        if !self.graph.integral || set.contains(x) {
            return None;
        }
        Some(self.graph.split_weight(set, x).1)
    }
}
