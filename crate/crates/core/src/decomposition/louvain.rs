//! Weighted undirected graphs, modularity, and Louvain clustering.
//!
//! Local moving visits nodes in ascending order and moves a node only
//! when that strictly raises modularity; equal gains go to the lowest
//! community id. Levels are aggregated until a sweep moves nothing.
//! Finally, adjacent communities whose merge leaves modularity unchanged
//! or higher are merged, so equally good partitions resolve to the
//! coarser one.

use crate::error::{Error, Result};

/// Undirected graph with positive edge weights, edges stored once.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    edges: Vec<(usize, usize, f64)>,
}

impl WeightedGraph {
    /// Parallel edges accumulate. Self-loops are kept and count once
    /// towards the owning node's degree on each side.
    pub fn new(labels: Vec<String>, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let n = labels.len();
        for &(a, b, w) in &edges {
            for index in [a, b] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidWeight {
                    row: a,
                    col: b,
                    value: w,
                });
            }
        }
        let edges = edges
            .into_iter()
            .map(|(a, b, w)| (a.min(b), a.max(b), w))
            .collect();
        Ok(WeightedGraph { labels, edges })
    }

    /// Unit-weight graph on nodes `0..n` labelled by their index.
    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::new(labels, edges.iter().map(|&(a, b)| (a, b, 1.0)).collect())
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    /// Sum of edge weights (`m`).
    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    fn level(&self) -> Level {
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); self.n()];
        let mut self_loops = vec![0.0; self.n()];
        for &(a, b, w) in &self.edges {
            if a == b {
                self_loops[a] += 2.0 * w;
            } else {
                adj[a].push((b, w));
                adj[b].push((a, w));
            }
        }
        Level::new(adj, self_loops)
    }
}

/// Node-to-community assignment with ids contiguous from 0, numbered in
/// order of each community's smallest node.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    pub community_of: Vec<usize>,
    /// Modularity (resolution 1) on the source graph; `None` when the graph
    /// has no edges.
    pub q: Option<f64>,
    /// Modularity at the run's resolution for the starting singletons and
    /// after each aggregation level and the final tie merge.
    pub history: Vec<f64>,
}

impl Partition {
    pub fn from_assignment(assignment: &[usize]) -> Self {
        Partition {
            community_of: renumber(assignment),
            q: None,
            history: Vec::new(),
        }
    }

    pub fn community_count(&self) -> usize {
        self.community_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn communities(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.community_count()];
        for (node, &c) in self.community_of.iter().enumerate() {
            out[c].push(node);
        }
        out
    }
}

fn renumber(assignment: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    assignment
        .iter()
        .map(|&c| {
            let next = map.len();
            *map.entry(c).or_insert(next)
        })
        .collect()
}

/// Symmetric adjacency `A` without the diagonal, plus `A_ii` per node.
/// Degrees are `k_i = A_ii + sum_j A_ij` and `2m = sum_i k_i`.
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    self_loops: Vec<f64>,
    degree: Vec<f64>,
    two_m: f64,
}

impl Level {
    fn new(adj: Vec<Vec<(usize, f64)>>, self_loops: Vec<f64>) -> Self {
        let degree: Vec<f64> = adj
            .iter()
            .zip(&self_loops)
            .map(|(nbrs, s)| s + nbrs.iter().map(|e| e.1).sum::<f64>())
            .collect();
        let two_m = degree.iter().sum();
        Level {
            adj,
            self_loops,
            degree,
            two_m,
        }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    fn modularity(&self, community: &[usize], resolution: f64) -> f64 {
        let k = self.n();
        let mut internal = vec![0.0; k];
        let mut total = vec![0.0; k];
        for v in 0..k {
            let c = community[v];
            total[c] += self.degree[v];
            internal[c] += self.self_loops[v];
            for &(u, w) in &self.adj[v] {
                if community[u] == c {
                    internal[c] += w;
                }
            }
        }
        internal
            .iter()
            .zip(&total)
            .map(|(&a, &t)| a / self.two_m - resolution * (t / self.two_m).powi(2))
            .sum()
    }

    /// One local-moving phase. Returns whether any node moved.
    fn local_moving(&self, community: &mut [usize], resolution: f64) -> bool {
        const EPS: f64 = 1e-13;
        let n = self.n();
        let m = self.two_m / 2.0;
        let mut total = vec![0.0; n];
        for v in 0..n {
            total[community[v]] += self.degree[v];
        }
        let mut link = vec![0.0; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut moved_any = false;
        loop {
            let mut moved = false;
            for v in 0..n {
                let own = community[v];
                let kv = self.degree[v];
                total[own] -= kv;

                for &(u, w) in &self.adj[v] {
                    let c = community[u];
                    if link[c] == 0.0 {
                        touched.push(c);
                    }
                    link[c] += w;
                }
                let gain = |c: usize, l: f64| l / m - resolution * total[c] * kv / (2.0 * m * m);
                let stay = gain(own, link[own]);
                let mut best = own;
                let mut best_gain = stay;
                touched.sort_unstable();
                for &c in &touched {
                    if c == own {
                        continue;
                    }
                    let g = gain(c, link[c]);
                    // ascending order: equal gains keep the lower id
                    let better = g > stay + EPS && (best == own || g > best_gain + EPS);
                    if better {
                        best = c;
                        best_gain = g;
                    }
                }
                for &c in &touched {
                    link[c] = 0.0;
                }
                touched.clear();

                total[best] += kv;
                if best != own {
                    community[v] = best;
                    moved = true;
                }
            }
            if !moved {
                break;
            }
            moved_any = true;
        }
        moved_any
    }

    fn aggregate(&self, community: &[usize], count: usize) -> Level {
        let mut self_loops = vec![0.0; count];
        let mut weights: Vec<std::collections::BTreeMap<usize, f64>> =
            vec![Default::default(); count];
        for v in 0..self.n() {
            let c = community[v];
            self_loops[c] += self.self_loops[v];
            for &(u, w) in &self.adj[v] {
                let d = community[u];
                if c == d {
                    self_loops[c] += w;
                } else {
                    *weights[c].entry(d).or_insert(0.0) += w;
                }
            }
        }
        let adj = weights
            .into_iter()
            .map(|m| m.into_iter().collect())
            .collect();
        Level::new(adj, self_loops)
    }

    /// Merges adjacent communities while some merge does not lower modularity.
    fn merge_ties(&self, community: &mut [usize], resolution: f64) {
        loop {
            let count = community.iter().max().map_or(0, |m| m + 1);
            let coarse = self.aggregate(community, count);
            let mut merge = None;
            'search: for a in 0..count {
                for &(b, w) in &coarse.adj[a] {
                    // merge gain >= 0  <=>  2m * A_ab >= resolution * k_a * k_b
                    if b > a && coarse.two_m * w >= resolution * coarse.degree[a] * coarse.degree[b]
                    {
                        merge = Some((a, b));
                        break 'search;
                    }
                }
            }
            let Some((a, b)) = merge else { break };
            for c in community.iter_mut() {
                if *c == b {
                    *c = a;
                }
            }
            let renumbered = renumber(community);
            community.copy_from_slice(&renumbered);
        }
    }
}

/// Weighted Newman-Girvan modularity at the given resolution.
pub fn modularity_with_resolution(
    graph: &WeightedGraph,
    partition: &Partition,
    resolution: f64,
) -> Result<f64> {
    if partition.community_of.len() != graph.n() {
        return Err(Error::PartitionMismatch {
            expected: graph.n(),
            found: partition.community_of.len(),
        });
    }
    if graph.total_weight() == 0.0 {
        return Err(Error::EmptyGraph);
    }
    let community = renumber(&partition.community_of);
    Ok(graph.level().modularity(&community, resolution))
}

pub fn modularity(graph: &WeightedGraph, partition: &Partition) -> Result<f64> {
    modularity_with_resolution(graph, partition, 1.0)
}

/// Deterministic multi-level Louvain clustering.
pub fn louvain_partition(graph: &WeightedGraph, resolution: f64) -> Partition {
    let n = graph.n();
    let base = graph.level();
    let mut assignment: Vec<usize> = (0..n).collect();
    if base.two_m == 0.0 {
        return Partition {
            community_of: assignment,
            q: None,
            history: Vec::new(),
        };
    }

    let mut history = vec![base.modularity(&assignment, resolution)];
    let mut level = graph.level();
    loop {
        let mut community: Vec<usize> = (0..level.n()).collect();
        let moved = level.local_moving(&mut community, resolution);
        if !moved {
            break;
        }
        let community = renumber(&community);
        let count = community.iter().max().map_or(0, |m| m + 1);
        for c in assignment.iter_mut() {
            *c = community[*c];
        }
        level = level.aggregate(&community, count);
        history.push(base.modularity(&assignment, resolution));
    }
    base.merge_ties(&mut assignment, resolution);
    history.push(base.modularity(&assignment, resolution));

    let community_of = renumber(&assignment);
    let q = base.modularity(&community_of, 1.0);
    Partition {
        community_of,
        q: Some(q),
        history,
    }
}
