//! Power-weakness ratio (PWR) journal indicator over directed weighted
//! citation graphs, with the structural preprocessing and comparator
//! metrics needed to judge it.
//!
//! The citation matrix `Z` has cited journals as rows and citing journals
//! as columns. The power of a journal at order `k` is its row sum in
//! `Z^k`, its weakness the column sum, and the PWR their quotient.
//!
//! ```
//! use pwr_core::{fixtures, pwr_trace, PwrOptions, SelfCitations};
//!
//! let z = fixtures::jasist_plus();
//! let opts = PwrOptions { k_max: 7, self_citations: SelfCitations::Exclude, ..Default::default() };
//! let trace = pwr_trace(&z, &opts).unwrap();
//! assert!((trace.ratio_at(7)[0] - 1.79).abs() < 0.005);
//! ```

pub mod comparators;
pub mod decomposition;
pub mod engine;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod matrix;
pub mod scc;

pub use comparators::{
    citation_factor, compare_rankings, hits, pagerank, pearson, spearman, ComparisonTable,
    HitsOptions, HitsScores, MetricVector, PageRankOptions, RankingComparison,
};
pub use decomposition::{
    citing_cosine_matrix, citing_threshold_subset, louvain_partition, modularity, threshold_graph,
    union_subset, Partition, SimilarityMatrix, WeightedGraph,
};
pub use engine::{
    converged_pwr, convergence_report, dangling_nodes, power_vector_trace, pwr_trace,
    weakness_vector_trace, ConvergedPwr, ConvergenceReport, DanglingKind, DanglingNode, PwrOptions,
    PwrTrace, SelfCitations, VectorTrace, ZeroDivision, ZERO_DIVISION_SENTINEL,
};
pub use error::{Error, Position, Result};
pub use matrix::{matrix_power_oracle, CitationMatrix, NodeSet, DENSE_LIMIT};
pub use scc::{largest_strong_component, strongly_connected_components, SccResult};
