//! PageRank on the citation graph.
//!
//! The random surfer stands on a citing journal `j` and follows one of its
//! references, moving to `i` with probability `Z[i][j] / colsum(j)`.
//! Journals citing nothing spread their mass uniformly.

use super::MetricVector;
use crate::error::{Error, Result};
use crate::matrix::CitationMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankOptions {
    pub damping: f64,
    /// Stop once the L1 change between iterates is at most this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankOptions {
    fn default() -> Self {
        Self {
            damping: 0.85,
            tol: 1e-9,
            max_iter: 1000,
        }
    }
}

pub fn pagerank(z: &CitationMatrix, opts: &PageRankOptions) -> Result<MetricVector> {
    if !(opts.damping > 0.0 && opts.damping < 1.0) {
        return Err(Error::InvalidOption(format!(
            "damping must lie in (0, 1), got {}",
            opts.damping
        )));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidOption("tol must be positive".into()));
    }
    let n = z.n();
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let out_weight = z.column_sums();
    let uniform = 1.0 / n as f64;
    let mut x = vec![uniform; n];

    for _ in 0..opts.max_iter {
        let dangling: f64 = x
            .iter()
            .zip(&out_weight)
            .filter(|(_, &w)| w == 0.0)
            .map(|(v, _)| v)
            .sum();
        // share of each citing journal's score passed per unit weight
        let share: Vec<f64> = x
            .iter()
            .zip(&out_weight)
            .map(|(v, &w)| if w > 0.0 { v / w } else { 0.0 })
            .collect();
        let flow = z.matvec(&share)?;
        let base = (1.0 - opts.damping) * uniform + opts.damping * dangling * uniform;
        let mut next: Vec<f64> = flow.iter().map(|f| base + opts.damping * f).collect();
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|v| *v /= total);

        let change: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = next;
        if change <= opts.tol {
            return Ok(MetricVector::new("pagerank", z.labels().to_vec(), x));
        }
    }
    Err(Error::NotConverged {
        algorithm: "pagerank",
        iterations: opts.max_iter,
        last: x,
    })
}
