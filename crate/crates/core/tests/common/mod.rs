#![allow(dead_code)]

use pwr_core::{CitationMatrix, Partition, WeightedGraph};
use rand::Rng;

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("j{i}")).collect()
}

pub fn matrix(rows: Vec<Vec<f64>>) -> CitationMatrix {
    CitationMatrix::from_rows(labels(rows.len()), rows).unwrap()
}

/// Non-negative integer matrix with roughly `density` of the entries set.
pub fn random_counts<R: Rng>(rng: &mut R, n: usize, max: u32, density: f64) -> CitationMatrix {
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if rng.gen_bool(density) {
                        rng.gen_range(1..=max) as f64
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect();
    matrix(rows)
}

/// Strictly positive matrix, so every ratio is defined.
pub fn random_positive<R: Rng>(rng: &mut R, n: usize) -> CitationMatrix {
    let rows = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(1..=60) as f64).collect())
        .collect();
    matrix(rows)
}

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    a == b || (a - b).abs() <= rel * a.abs().max(b.abs())
}

pub fn all_rel_close(a: &[f64], b: &[f64], rel: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(&x, &y)| rel_close(x, y, rel))
}

/// Fisher-Yates shuffle of `0..n`.
pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

/// `out[perm[i]][perm[j]] = z[i][j]`, labels moved along.
pub fn permuted(z: &CitationMatrix, perm: &[usize]) -> CitationMatrix {
    let n = z.n();
    let mut rows = vec![vec![0.0; n]; n];
    let mut names = vec![String::new(); n];
    for i in 0..n {
        names[perm[i]] = z.label(i).to_string();
        for j in 0..n {
            rows[perm[i]][perm[j]] = z.get(i, j);
        }
    }
    CitationMatrix::from_rows(names, rows).unwrap()
}

/// Every set partition of `0..n` as a restricted growth string.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for c in 0..=next {
            prefix.push(c);
            go(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

/// Textbook modularity: sum over node pairs of (A_ij - k_i k_j / 2m) [c_i = c_j] / 2m.
pub fn modularity_oracle(n: usize, edges: &[(usize, usize, f64)], community: &[usize]) -> f64 {
    let mut a = vec![vec![0.0; n]; n];
    for &(u, v, w) in edges {
        if u == v {
            a[u][u] += 2.0 * w;
        } else {
            a[u][v] += w;
            a[v][u] += w;
        }
    }
    let k: Vec<f64> = a.iter().map(|r| r.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if community[i] == community[j] {
                q += a[i][j] - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

/// Best modularity over all partitions of the graph's nodes.
pub fn brute_force_best_q(graph: &WeightedGraph) -> f64 {
    set_partitions(graph.n())
        .iter()
        .map(|p| modularity_oracle(graph.n(), graph.edges(), p))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Every simple undirected graph on `n` nodes with at least one edge.
pub fn all_simple_graphs(n: usize) -> Vec<WeightedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    (1u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(e, _)| mask >> e & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            WeightedGraph::unweighted(n, &edges).unwrap()
        })
        .collect()
}

pub fn partition_q(graph: &WeightedGraph, p: &Partition) -> f64 {
    modularity_oracle(graph.n(), graph.edges(), &p.community_of)
}
