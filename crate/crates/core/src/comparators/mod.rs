//! Baseline journal metrics and ranking statistics.

mod correlation;
mod hits;
mod pagerank;

pub use correlation::{compare_rankings, pearson, spearman, ComparisonTable, RankingComparison};
pub use hits::{hits, HitsOptions, HitsScores};
pub use pagerank::{pagerank, PageRankOptions};

use crate::engine::{pwr_trace, PwrOptions, ZeroDivision};
use crate::error::{Error, Result};
use crate::matrix::CitationMatrix;

/// One value per journal, tagged with the metric's name.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricVector {
    pub name: String,
    pub labels: Vec<String>,
    pub values: Vec<f64>,
}

impl MetricVector {
    pub fn new(name: impl Into<String>, labels: Vec<String>, values: Vec<f64>) -> Self {
        assert_eq!(labels.len(), values.len(), "one value per label");
        MetricVector {
            name: name.into(),
            labels,
            values,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value_of(&self, label: &str) -> Option<f64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.values[i])
    }

    /// Values reordered to follow `labels`. Fails listing every label that
    /// is missing on either side.
    pub fn aligned_to(&self, labels: &[String]) -> Result<Vec<f64>> {
        let mut unmatched: Vec<String> = labels
            .iter()
            .filter(|l| self.value_of(l).is_none())
            .cloned()
            .collect();
        unmatched.extend(self.labels.iter().filter(|l| !labels.contains(l)).cloned());
        if !unmatched.is_empty() {
            return Err(Error::LabelMismatch(unmatched));
        }
        Ok(labels
            .iter()
            .map(|l| self.value_of(l).expect("checked above"))
            .collect())
    }
}

/// Citations received over references given, per journal. Identical to
/// the power-weakness ratio of order 1.
pub fn citation_factor(z: &CitationMatrix, zero_division: ZeroDivision) -> Result<MetricVector> {
    let opts = PwrOptions {
        k_max: 1,
        zero_division,
        normalize_each_iteration: false,
        ..PwrOptions::default()
    };
    let trace = pwr_trace(z, &opts)?;
    Ok(MetricVector::new(
        "cf",
        z.labels().to_vec(),
        trace.ratio_at(1).to_vec(),
    ))
}
