//! Splitting a journal set into homogeneous groups.

mod louvain;

pub use louvain::{
    louvain_partition, modularity, modularity_with_resolution, Partition, WeightedGraph,
};

use crate::engine::SelfCitations;
use crate::error::{Error, Result};
use crate::matrix::{CitationMatrix, NodeSet};

/// Symmetric similarity scores in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    pub labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl SimilarityMatrix {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }
}

/// Cosine similarity between the citing profiles (columns) of every pair
/// of journals. Journals that cite nothing have similarity 0 to everything,
/// themselves included.
pub fn citing_cosine_matrix(z: &CitationMatrix, diagonal: SelfCitations) -> SimilarityMatrix {
    let z = match diagonal {
        SelfCitations::Include => z.clone(),
        SelfCitations::Exclude => z.zero_diagonal(),
    };
    let n = z.n();
    let mut dot = vec![vec![0.0; n]; n];
    // each row lists the journals citing one cited journal
    for i in 0..n {
        let row: Vec<(usize, f64)> = z.row(i).collect();
        for (a, &(ja, wa)) in row.iter().enumerate() {
            for &(jb, wb) in &row[a..] {
                dot[ja][jb] += wa * wb;
            }
        }
    }
    let norm: Vec<f64> = (0..n).map(|j| dot[j][j].sqrt()).collect();
    let mut values = vec![vec![0.0; n]; n];
    for a in 0..n {
        if norm[a] == 0.0 {
            continue;
        }
        values[a][a] = 1.0;
        for b in a + 1..n {
            if norm[b] > 0.0 {
                let s = (dot[a][b] / (norm[a] * norm[b])).clamp(0.0, 1.0);
                values[a][b] = s;
                values[b][a] = s;
            }
        }
    }
    SimilarityMatrix {
        labels: z.labels().to_vec(),
        values,
    }
}

/// Graph with an edge `{i, j}` of weight `s_ij` wherever `s_ij > tau`, `i < j`.
pub fn threshold_graph(s: &SimilarityMatrix, tau: f64) -> Result<WeightedGraph> {
    if tau.is_nan() || tau < 0.0 {
        return Err(Error::InvalidOption(format!(
            "threshold must be >= 0, got {tau}"
        )));
    }
    let n = s.n();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if s.values[i][j] > tau {
                edges.push((i, j, s.values[i][j]));
            }
        }
    }
    WeightedGraph::new(s.labels.clone(), edges)
}

/// Journals that cite `target` at least `min_count` times, in matrix order.
/// The target itself qualifies through its self-citations.
pub fn citing_threshold_subset(
    z: &CitationMatrix,
    target: &str,
    min_count: u64,
) -> Result<NodeSet> {
    let t = z
        .index_of(target)
        .ok_or_else(|| Error::UnknownLabel(target.to_string()))?;
    let min = min_count as f64;
    let indices = (0..z.n()).filter(|&j| z.get(t, j) >= min).collect();
    NodeSet::new(z, indices)
}

/// Ordered union of two node sets of the same matrix.
pub fn union_subset(a: &NodeSet, b: &NodeSet) -> Result<NodeSet> {
    a.union(b)
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
    fn cosine_trivial() {
        // columns [1,0] and [0,1]
        let s = citing_cosine_matrix(
            &m(vec![vec![1.0, 0.0], vec![0.0, 1.0]]),
            SelfCitations::Include,
        );
        assert_eq!(s.values, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        let same = citing_cosine_matrix(
            &m(vec![vec![2.0, 2.0], vec![3.0, 3.0]]),
            SelfCitations::Include,
        );
        assert!((same.get(0, 1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_column_has_zero_self_similarity() {
        let s = citing_cosine_matrix(
            &m(vec![vec![0.0, 1.0], vec![0.0, 1.0]]),
            SelfCitations::Include,
        );
        assert_eq!(s.get(0, 0), 0.0);
        assert_eq!(s.get(1, 1), 1.0);
        assert_eq!(s.get(0, 1), 0.0);
    }

    #[test]
    fn cosine_on_fixture() {
        let z = fixtures::jasist_plus();
        let s = citing_cosine_matrix(&z, SelfCitations::Include);
        let inf = z.index_of("J INFORMETR").unwrap();
        let sci = z.index_of("SCIENTOMETRICS").unwrap();
        // oracle: columns written out from the fixture
        let a = [23.0, 319.0, 30.0, 552.0, 4.0, 29.0, 302.0];
        let b = [86.0, 495.0, 72.0, 1542.0, 8.0, 69.0, 269.0];
        let dot: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        let expected = dot / (na * nb);
        assert!((s.get(inf, sci) - expected).abs() < 1e-12);
        assert!((expected - 0.9416).abs() < 5e-5);
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(s.get(i, j), s.get(j, i));
            }
        }
    }

    #[test]
    fn cosine_excluding_diagonal_differs() {
        let z = fixtures::jasist_plus();
        let inc = citing_cosine_matrix(&z, SelfCitations::Include);
        let exc = citing_cosine_matrix(&z, SelfCitations::Exclude);
        assert_ne!(inc.get(3, 6), exc.get(3, 6));
        assert_eq!(
            exc,
            citing_cosine_matrix(&z.zero_diagonal(), SelfCitations::Include)
        );
    }

    #[test]
    fn thresholds() {
        let s = citing_cosine_matrix(&fixtures::jasist_plus(), SelfCitations::Include);
        assert_eq!(threshold_graph(&s, 1.0).unwrap().edges().len(), 0);
        assert_eq!(threshold_graph(&s, 0.01).unwrap().edges().len(), 21);
        assert!(threshold_graph(&s, -0.1).is_err());

        let blocks = SimilarityMatrix {
            labels: (0..4).map(|i| i.to_string()).collect(),
            values: vec![
                vec![1.0, 0.9, 0.1, 0.1],
                vec![0.9, 1.0, 0.1, 0.1],
                vec![0.1, 0.1, 1.0, 0.8],
                vec![0.1, 0.1, 0.8, 1.0],
            ],
        };
        let g = threshold_graph(&blocks, 0.5).unwrap();
        assert_eq!(g.edges(), [(0, 1, 0.9), (2, 3, 0.8)]);
        let p = louvain_partition(&g, 1.0);
        assert_eq!(p.community_of, vec![0, 0, 1, 1]);
    }

    #[test]
    fn citing_subsets() {
        let z = fixtures::jasist_plus();
        assert_eq!(citing_threshold_subset(&z, "JASIST", 100).unwrap().len(), 7);
        assert_eq!(citing_threshold_subset(&z, "JASIST", 0).unwrap().len(), 7);
        assert!(citing_threshold_subset(&z, "J INF SCI", 100)
            .unwrap()
            .is_empty());
        let j_inf_sci_90 = citing_threshold_subset(&z, "J INF SCI", 89).unwrap();
        assert_eq!(j_inf_sci_90.indices(), [2]);
        assert!(matches!(
            citing_threshold_subset(&z, "NOPE", 1),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn unions() {
        let z = fixtures::jasist_plus();
        let a = NodeSet::new(&z, vec![0, 1]).unwrap();
        let b = NodeSet::new(&z, vec![2]).unwrap();
        assert_eq!(union_subset(&a, &b).unwrap().indices(), [0, 1, 2]);
        assert_eq!(union_subset(&a, &a).unwrap(), a);
    }
}
