//! Hubs and authorities on the citation graph.
//!
//! Authorities sit on the cited side (rows), hubs on the citing side
//! (columns). Both vectors are updated from the previous iterate of the
//! other and rescaled to unit sum, so the scores of `Z` and `Z^T` are
//! exact mirror images.

use super::MetricVector;
use crate::error::{Error, Result};
use crate::matrix::CitationMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HitsOptions {
    /// Stop once the summed L1 change of both vectors is at most this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for HitsOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HitsScores {
    pub hubs: MetricVector,
    pub authorities: MetricVector,
}

fn unit_sum(mut v: Vec<f64>) -> Vec<f64> {
    let total: f64 = v.iter().sum();
    if total > 0.0 {
        v.iter_mut().for_each(|x| *x /= total);
    }
    v
}

fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

pub fn hits(z: &CitationMatrix, opts: &HitsOptions) -> Result<HitsScores> {
    let n = z.n();
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    if z.nnz() == 0 {
        return Err(Error::InvalidOption(
            "HITS needs at least one citation".into(),
        ));
    }
    let zt = z.transpose();
    let mut auth = vec![1.0 / n as f64; n];
    let mut hub = auth.clone();
    for _ in 0..opts.max_iter {
        let next_auth = unit_sum(z.matvec(&hub)?);
        let next_hub = unit_sum(zt.matvec(&auth)?);
        let change = l1(&next_auth, &auth) + l1(&next_hub, &hub);
        auth = next_auth;
        hub = next_hub;
        if change <= opts.tol {
            let labels = z.labels().to_vec();
            return Ok(HitsScores {
                hubs: MetricVector::new("hits_hub", labels.clone(), hub),
                authorities: MetricVector::new("hits_authority", labels, auth),
            });
        }
    }
    let mut last = auth;
    last.extend(hub);
    Err(Error::NotConverged {
        algorithm: "hits",
        iterations: opts.max_iter,
        last,
    })
}
