use super::MetricVector;
use crate::error::{Error, Result};

fn pearson_values(x: &[f64], y: &[f64], x_name: &str, y_name: &str) -> Result<f64> {
    let n = x.len();
    if n < 2 {
        return Err(Error::TooFewValues(n));
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / n as f64;
    let (mx, my) = (mean(x), mean(y));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::ZeroVariance(x_name.to_string()));
    }
    if syy == 0.0 {
        return Err(Error::ZeroVariance(y_name.to_string()));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// 1-based ranks, ties sharing the mean of the positions they span.
pub(crate) fn average_ranks(v: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut ranks = vec![0.0; v.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && v[order[end]] == v[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

/// Sample Pearson correlation; `y` is matched to `x` by label.
pub fn pearson(x: &MetricVector, y: &MetricVector) -> Result<f64> {
    let ys = y.aligned_to(&x.labels)?;
    pearson_values(&x.values, &ys, &x.name, &y.name)
}

/// Pearson correlation of tie-averaged ranks.
pub fn spearman(x: &MetricVector, y: &MetricVector) -> Result<f64> {
    let ys = y.aligned_to(&x.labels)?;
    pearson_values(
        &average_ranks(&x.values),
        &average_ranks(&ys),
        &x.name,
        &y.name,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankingComparison {
    pub x_name: String,
    pub y_name: String,
    pub labels: Vec<String>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub pearson: f64,
    pub spearman: f64,
    pub n: usize,
}

/// Pairwise comparisons; `pairs[a][b]` compares metric `a` with metric `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTable {
    pub names: Vec<String>,
    pub labels: Vec<String>,
    pub pairs: Vec<Vec<RankingComparison>>,
}

impl ComparisonTable {
    pub fn pearson_matrix(&self) -> Vec<Vec<f64>> {
        self.pairs
            .iter()
            .map(|row| row.iter().map(|c| c.pearson).collect())
            .collect()
    }

    pub fn spearman_matrix(&self) -> Vec<Vec<f64>> {
        self.pairs
            .iter()
            .map(|row| row.iter().map(|c| c.spearman).collect())
            .collect()
    }
}

/// Aligns every metric to the labels of the first and correlates all pairs.
pub fn compare_rankings(metrics: &[MetricVector]) -> Result<ComparisonTable> {
    let first = metrics
        .first()
        .ok_or_else(|| Error::InvalidOption("no metrics to compare".into()))?;
    let labels = first.labels.clone();
    let aligned = metrics
        .iter()
        .map(|m| m.aligned_to(&labels))
        .collect::<Result<Vec<_>>>()?;
    let ranks: Vec<Vec<f64>> = aligned.iter().map(|v| average_ranks(v)).collect();

    let mut pairs = Vec::with_capacity(metrics.len());
    for (a, ma) in metrics.iter().enumerate() {
        let mut row = Vec::with_capacity(metrics.len());
        for (b, mb) in metrics.iter().enumerate() {
            row.push(RankingComparison {
                x_name: ma.name.clone(),
                y_name: mb.name.clone(),
                labels: labels.clone(),
                x: aligned[a].clone(),
                y: aligned[b].clone(),
                pearson: pearson_values(&aligned[a], &aligned[b], &ma.name, &mb.name)?,
                spearman: pearson_values(&ranks[a], &ranks[b], &ma.name, &mb.name)?,
                n: labels.len(),
            });
        }
        pairs.push(row);
    }
    Ok(ComparisonTable {
        names: metrics.iter().map(|m| m.name.clone()).collect(),
        labels,
        pairs,
    })
}
