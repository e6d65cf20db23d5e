//! Strongly connected components of the citation graph.
//!
//! A positive entry `Z[i][j]` is read as an arc from the citing journal `j`
//! to the cited journal `i`. Self-citations do not affect reachability.

use crate::matrix::{CitationMatrix, NodeSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccResult {
    /// Components ordered by their smallest node index; members ascending.
    pub components: Vec<NodeSet>,
    /// Component index of every node.
    pub component_of: Vec<usize>,
}

impl SccResult {
    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(NodeSet::len).collect()
    }

    /// Index of the largest component; ties go to the one holding the
    /// smallest node index.
    pub fn largest(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (c, comp) in self.components.iter().enumerate() {
            if best.is_none_or(|b| comp.len() > self.components[b].len()) {
                best = Some(c);
            }
        }
        best
    }
}

/// Citing -> cited adjacency lists, without self-loops.
pub(crate) fn citation_arcs(z: &CitationMatrix) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); z.n()];
    for (i, j, _) in z.nonzeros() {
        if i != j {
            out[j].push(i);
        }
    }
    out
}

/// Iterative Tarjan, so deep chains cannot overflow the call stack.
fn tarjan(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next_index = 0;
    // (node, position in its adjacency list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(frame) = call.last_mut() {
            let v = frame.0;
            if let Some(&w) = adj[v].get(frame.1) {
                frame.1 += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    lowlink[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                lowlink[parent] = lowlink[parent].min(lowlink[v]);
            }
            if lowlink[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                components.push(comp);
            }
        }
    }
    components
}

pub fn strongly_connected_components(z: &CitationMatrix) -> SccResult {
    let mut components = tarjan(&citation_arcs(z));
    for comp in &mut components {
        comp.sort_unstable();
    }
    components.sort_unstable_by_key(|c| c[0]);

    let mut component_of = vec![0; z.n()];
    for (c, comp) in components.iter().enumerate() {
        for &v in comp {
            component_of[v] = c;
        }
    }
    let components = NodeSet::partition_of(z, components);
    SccResult {
        components,
        component_of,
    }
}

/// Subgraph induced by the largest strong component (empty for an empty matrix).
pub fn largest_strong_component(z: &CitationMatrix) -> CitationMatrix {
    let scc = strongly_connected_components(z);
    let nodes = match scc.largest() {
        Some(c) => scc.components[c].clone(),
        None => NodeSet::all(z),
    };
    z.extract_subgraph(&nodes)
        .expect("component belongs to this matrix")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn m(rows: Vec<Vec<f64>>) -> CitationMatrix {
        let labels = (0..rows.len()).map(|i| format!("v{i}")).collect();
        CitationMatrix::from_rows(labels, rows).unwrap()
    }

    #[test]
    fn three_cycle_is_one_component() {
        let z = m(vec![
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
        ]);
        let scc = strongly_connected_components(&z);
        assert_eq!(scc.sizes(), vec![3]);
        assert_eq!(scc.component_of, vec![0, 0, 0]);
    }

    #[test]
    fn one_way_pair_splits() {
        let z = m(vec![vec![0.0, 1.0], vec![0.0, 0.0]]);
        let scc = strongly_connected_components(&z);
        assert_eq!(scc.sizes(), vec![1, 1]);
        assert_eq!(scc.components[0].indices(), [0]);
        let largest = largest_strong_component(&z);
        assert_eq!(largest.labels(), ["v0"]);
    }

    #[test]
    fn self_loops_do_not_connect() {
        let z = m(vec![vec![4.0, 1.0], vec![0.0, 9.0]]);
        assert_eq!(strongly_connected_components(&z).sizes(), vec![1, 1]);
    }

    #[test]
    fn fixture_is_strong() {
        let z = fixtures::jasist_plus();
        let scc = strongly_connected_components(&z);
        assert_eq!(scc.sizes(), vec![7]);
        assert_eq!(largest_strong_component(&z), z);
    }

    #[test]
    fn star_keeps_center() {
        // periphery 1..=3 cites the center 0 only
        let mut rows = vec![vec![0.0; 4]; 4];
        for j in 1..4 {
            rows[0][j] = 2.0;
        }
        let z = m(rows);
        let scc = strongly_connected_components(&z);
        assert_eq!(scc.sizes(), vec![1, 1, 1, 1]);
        assert_eq!(largest_strong_component(&z).labels(), ["v0"]);
    }

    #[test]
    fn largest_prefers_bigger_component() {
        // 0 alone; 1 <-> 2 mutual
        let z = m(vec![
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![0.0, 1.0, 0.0],
        ]);
        let scc = strongly_connected_components(&z);
        assert_eq!(scc.sizes(), vec![1, 2]);
        assert_eq!(largest_strong_component(&z).labels(), ["v1", "v2"]);
    }

    #[test]
    fn long_chain_does_not_recurse() {
        let n = 5000;
        let labels = (0..n).map(|i| i.to_string()).collect();
        let entries = (0..n).map(|i| ((i + 1) % n, i, 1.0));
        let z = CitationMatrix::from_entries(labels, entries).unwrap();
        assert_eq!(strongly_connected_components(&z).sizes(), vec![n]);
    }
}
