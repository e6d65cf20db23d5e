//! Iterated power, weakness and power-weakness ratio.
//!
//! The power of node `i` at order `k` is the `i`-th row sum of `Z^k`
//! (being cited by well-cited journals); its weakness is the `i`-th column
//! sum of `Z^k` (citing journals that themselves cite a lot). Both are
//! obtained by repeated matrix-vector products from a uniform start
//! vector, optionally rescaled to unit sum after every product. Since the
//! power and weakness vectors of a given order share the same total (the
//! grand total of `Z^k`), the rescaling leaves their quotient unchanged.

use crate::error::{Error, Result};
use crate::matrix::CitationMatrix;

/// Ratio reported for `x / 0` under [`ZeroDivision::Infinite`].
pub const ZERO_DIVISION_SENTINEL: f64 = 999_999_999.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelfCitations {
    #[default]
    Include,
    Exclude,
}

/// What to report when a node's weakness is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZeroDivision {
    /// Ratio is 0.
    #[default]
    Zero,
    /// Ratio is [`ZERO_DIVISION_SENTINEL`] and the entry is flagged.
    Infinite,
    /// Fail with [`Error::ZeroDivision`].
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PwrOptions {
    pub k_max: usize,
    /// Convergence threshold on the largest ratio change between orders.
    pub tol: f64,
    pub self_citations: SelfCitations,
    pub zero_division: ZeroDivision,
    pub normalize_each_iteration: bool,
}

impl Default for PwrOptions {
    fn default() -> Self {
        Self {
            k_max: 20,
            tol: 1e-6,
            self_citations: SelfCitations::Include,
            zero_division: ZeroDivision::Zero,
            normalize_each_iteration: true,
        }
    }
}

impl PwrOptions {
    pub fn validate(&self) -> Result<()> {
        if self.k_max == 0 {
            return Err(Error::InvalidOption("k_max must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidOption(format!(
                "tol must be positive and finite, got {}",
                self.tol
            )));
        }
        Ok(())
    }

    fn effective_matrix(&self, z: &CitationMatrix) -> CitationMatrix {
        match self.self_citations {
            SelfCitations::Include => z.clone(),
            SelfCitations::Exclude => z.zero_diagonal(),
        }
    }
}

/// Iterates of one side (power or weakness), orders `1..=k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorTrace {
    /// `vectors[k - 1]` is the vector of order `k`.
    pub vectors: Vec<Vec<f64>>,
    /// Sum of each raw product before rescaling; all 1 when not normalizing.
    pub scaling: Vec<f64>,
    /// Set once an iterate collapses to the zero vector.
    pub degenerate: bool,
}

fn iterate(z: &CitationMatrix, opts: &PwrOptions) -> VectorTrace {
    let n = z.n();
    let mut v = if opts.normalize_each_iteration {
        vec![1.0 / n as f64; n]
    } else {
        vec![1.0; n]
    };
    let mut vectors = Vec::with_capacity(opts.k_max);
    let mut scaling = Vec::with_capacity(opts.k_max);
    let mut degenerate = false;
    for _ in 0..opts.k_max {
        let mut next = z.matvec(&v).expect("start vector has length n");
        let total: f64 = next.iter().sum();
        if total == 0.0 {
            degenerate = true;
        }
        if opts.normalize_each_iteration {
            if total > 0.0 {
                next.iter_mut().for_each(|x| *x /= total);
            }
            scaling.push(total);
        } else {
            scaling.push(1.0);
        }
        vectors.push(next.clone());
        v = next;
    }
    VectorTrace {
        vectors,
        scaling,
        degenerate,
    }
}

fn check_input(z: &CitationMatrix, opts: &PwrOptions) -> Result<()> {
    opts.validate()?;
    if z.n() == 0 {
        return Err(Error::EmptyMatrix);
    }
    Ok(())
}

/// Power vectors `p(1..=k_max)`: row sums of `Z^k`, unit-sum scaled when
/// normalization is on.
pub fn power_vector_trace(z: &CitationMatrix, opts: &PwrOptions) -> Result<VectorTrace> {
    check_input(z, opts)?;
    Ok(iterate(&opts.effective_matrix(z), opts))
}

/// Weakness vectors `w(1..=k_max)`: column sums of `Z^k`.
pub fn weakness_vector_trace(z: &CitationMatrix, opts: &PwrOptions) -> Result<VectorTrace> {
    check_input(z, opts)?;
    Ok(iterate(&opts.effective_matrix(z).transpose(), opts))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DanglingKind {
    /// Receives citations from other nodes but cites none of them.
    CitedOnly,
    /// Cites other nodes but is never cited by them.
    CitingOnly,
    /// No off-diagonal citations either way.
    Isolated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DanglingNode {
    pub node: usize,
    pub kind: DanglingKind,
}

/// Nodes lacking off-diagonal citations on one or both sides. Cited-only
/// nodes get inflated ratios because their weakness is at most their
/// self-citations.
pub fn dangling_nodes(z: &CitationMatrix) -> Vec<DanglingNode> {
    let n = z.n();
    let mut cited = vec![false; n];
    let mut citing = vec![false; n];
    for (i, j, _) in z.nonzeros() {
        if i != j {
            cited[i] = true;
            citing[j] = true;
        }
    }
    (0..n)
        .filter_map(|node| {
            let kind = match (cited[node], citing[node]) {
                (true, false) => DanglingKind::CitedOnly,
                (false, true) => DanglingKind::CitingOnly,
                (false, false) => DanglingKind::Isolated,
                (true, true) => return None,
            };
            Some(DanglingNode { node, kind })
        })
        .collect()
}

/// Full per-order record of a power-weakness computation.
#[derive(Debug, Clone, PartialEq)]
pub struct PwrTrace {
    pub labels: Vec<String>,
    pub options: PwrOptions,
    /// `power[k - 1][i]` = p_i(k).
    pub power: Vec<Vec<f64>>,
    /// `weakness[k - 1][i]` = w_i(k).
    pub weakness: Vec<Vec<f64>>,
    /// `ratio[k - 1][i]` = p_i(k) / w_i(k) after the zero-division policy.
    pub ratio: Vec<Vec<f64>>,
    /// Per-order `(power, weakness)` scaling constants.
    pub normalization: Vec<(f64, f64)>,
    /// `(k, node)` pairs whose ratio is [`ZERO_DIVISION_SENTINEL`].
    pub sentinels: Vec<(usize, usize)>,
    /// Some iterate collapsed to zero (e.g. an all-zero or nilpotent matrix).
    pub degenerate: bool,
    /// Dangling nodes of the matrix actually iterated.
    pub dangling: Vec<DanglingNode>,
}

impl PwrTrace {
    pub fn k_max(&self) -> usize {
        self.ratio.len()
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Ratio vector of order `k` (1-based).
    pub fn ratio_at(&self, k: usize) -> &[f64] {
        &self.ratio[k - 1]
    }

    pub fn is_sentinel(&self, k: usize, node: usize) -> bool {
        self.sentinels.contains(&(k, node))
    }
}

pub fn pwr_trace(z: &CitationMatrix, opts: &PwrOptions) -> Result<PwrTrace> {
    check_input(z, opts)?;
    let effective = opts.effective_matrix(z);
    let power = iterate(&effective, opts);
    let weakness = iterate(&effective.transpose(), opts);

    let mut ratio = Vec::with_capacity(opts.k_max);
    let mut sentinels = Vec::new();
    for (k0, (p, w)) in power.vectors.iter().zip(&weakness.vectors).enumerate() {
        let k = k0 + 1;
        let mut r = Vec::with_capacity(p.len());
        for (i, (&pi, &wi)) in p.iter().zip(w).enumerate() {
            if wi != 0.0 {
                r.push(pi / wi);
                continue;
            }
            match opts.zero_division {
                ZeroDivision::Zero => r.push(0.0),
                ZeroDivision::Infinite => {
                    sentinels.push((k, i));
                    r.push(ZERO_DIVISION_SENTINEL);
                }
                ZeroDivision::Error => {
                    return Err(Error::ZeroDivision {
                        node: i,
                        label: z.label(i).to_string(),
                        k,
                    })
                }
            }
        }
        ratio.push(r);
    }

    Ok(PwrTrace {
        labels: z.labels().to_vec(),
        options: *opts,
        normalization: power
            .scaling
            .iter()
            .copied()
            .zip(weakness.scaling.iter().copied())
            .collect(),
        power: power.vectors,
        weakness: weakness.vectors,
        ratio,
        sentinels,
        degenerate: power.degenerate || weakness.degenerate,
        dangling: dangling_nodes(&effective),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub tol: f64,
    /// `deltas[k - 2]` = max_i |r_i(k) - r_i(k-1)| for k = 2..=k_max.
    pub deltas: Vec<f64>,
    pub converged: bool,
    /// Smallest order whose delta is within `tol`. The number of orders
    /// needed is a homogeneity diagnostic: slow or absent convergence
    /// suggests the set mixes citation communities.
    pub k_converged: Option<usize>,
    /// Nodes left out of the deltas because of zero-division sentinels.
    pub flagged_nodes: Vec<usize>,
}

impl ConvergenceReport {
    pub fn delta_at(&self, k: usize) -> Option<f64> {
        k.checked_sub(2).and_then(|i| self.deltas.get(i)).copied()
    }
}

pub fn convergence_report(trace: &PwrTrace, tol: f64) -> ConvergenceReport {
    let mut flagged: Vec<usize> = trace.sentinels.iter().map(|&(_, i)| i).collect();
    flagged.sort_unstable();
    flagged.dedup();

    let deltas: Vec<f64> = (2..=trace.k_max())
        .map(|k| {
            let prev = trace.ratio_at(k - 1);
            let cur = trace.ratio_at(k);
            (0..trace.n())
                .filter(|&i| !trace.is_sentinel(k, i) && !trace.is_sentinel(k - 1, i))
                .map(|i| (cur[i] - prev[i]).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    let k_converged = deltas.iter().position(|&d| d <= tol).map(|i| i + 2);
    ConvergenceReport {
        tol,
        deltas,
        converged: k_converged.is_some(),
        k_converged,
        flagged_nodes: flagged,
    }
}

/// Ratio vector at convergence, or at `k_max` when the trace never settles.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergedPwr {
    pub ratios: Vec<f64>,
    /// Order the ratios were taken from.
    pub k: usize,
    pub report: ConvergenceReport,
}

pub fn converged_pwr(z: &CitationMatrix, opts: &PwrOptions) -> Result<ConvergedPwr> {
    let trace = pwr_trace(z, opts)?;
    let report = convergence_report(&trace, opts.tol);
    let k = report.k_converged.unwrap_or(trace.k_max());
    Ok(ConvergedPwr {
        ratios: trace.ratio_at(k).to_vec(),
        k,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn m(rows: Vec<Vec<f64>>) -> CitationMatrix {
        let labels = (0..rows.len()).map(|i| format!("v{i}")).collect();
        CitationMatrix::from_rows(labels, rows).unwrap()
    }

    fn raw(k_max: usize) -> PwrOptions {
        PwrOptions {
            k_max,
            normalize_each_iteration: false,
            ..PwrOptions::default()
        }
    }

    fn close(a: &[f64], b: &[f64], eps: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= eps)
    }

    #[test]
    fn power_trace_examples() {
        let t3 = fixtures::jasist_plus();
        let p = power_vector_trace(&t3, &raw(1)).unwrap();
        assert_eq!(
            p.vectors[0],
            vec![569.0, 2125.0, 321.0, 2534.0, 230.0, 500.0, 700.0]
        );

        let ones = m(vec![vec![1.0; 3]; 3]);
        let p = power_vector_trace(
            &ones,
            &PwrOptions {
                k_max: 5,
                ..Default::default()
            },
        )
        .unwrap();
        for v in &p.vectors {
            assert!(close(v, &[1.0 / 3.0; 3], 1e-15));
        }

        let z = m(vec![vec![0.0, 2.0], vec![1.0, 0.0]]);
        let p = power_vector_trace(&z, &raw(2)).unwrap();
        assert_eq!(p.vectors[1], vec![2.0, 2.0]);
    }

    #[test]
    fn weakness_trace_examples() {
        let t3 = fixtures::jasist_plus();
        let w = weakness_vector_trace(&t3, &raw(1)).unwrap();
        assert_eq!(
            w.vectors[0],
            vec![381.0, 1537.0, 354.0, 2541.0, 521.0, 386.0, 1259.0]
        );

        let sym = m(vec![
            vec![1.0, 4.0, 0.0],
            vec![4.0, 0.0, 2.0],
            vec![0.0, 2.0, 7.0],
        ]);
        let opts = PwrOptions {
            k_max: 6,
            ..Default::default()
        };
        assert_eq!(
            weakness_vector_trace(&sym, &opts).unwrap(),
            power_vector_trace(&sym, &opts).unwrap()
        );

        let z = m(vec![vec![0.0, 2.0], vec![1.0, 0.0]]);
        let w = weakness_vector_trace(&z, &raw(3)).unwrap();
        assert_eq!(w.vectors[2], vec![2.0, 4.0]);
    }

    #[test]
    fn zero_matrix_is_degenerate() {
        let z = CitationMatrix::zeros(vec!["a".into(), "b".into()]).unwrap();
        let p = power_vector_trace(&z, &PwrOptions::default()).unwrap();
        assert!(p.degenerate);
        assert!(p.vectors.iter().flatten().all(|&x| x == 0.0));
        let t = pwr_trace(&z, &PwrOptions::default()).unwrap();
        assert!(t.degenerate);
        assert!(t.ratio.iter().flatten().all(|&x| x == 0.0));
    }

    #[test]
    fn normalized_vectors_sum_to_one() {
        let t = pwr_trace(&fixtures::jasist_plus(), &PwrOptions::default()).unwrap();
        for k in 0..t.k_max() {
            assert!((t.power[k].iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!((t.weakness[k].iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        let (sp, sw) = t.normalization[0];
        assert!((sp - 6979.0 / 7.0).abs() < 1e-9 && (sw - 6979.0 / 7.0).abs() < 1e-9);
    }

    #[test]
    fn first_order_with_self_citations() {
        let t = pwr_trace(&fixtures::jasist_plus(), &PwrOptions::default()).unwrap();
        let expected = [1.49, 1.38, 0.91, 1.00, 0.44, 1.30, 0.56];
        assert!(close(t.ratio_at(1), &expected, 0.005));
    }

    #[test]
    fn seventh_order_without_self_citations() {
        let opts = PwrOptions {
            k_max: 7,
            self_citations: SelfCitations::Exclude,
            ..Default::default()
        };
        let t = pwr_trace(&fixtures::jasist_plus(), &opts).unwrap();
        let expected = [1.79, 1.58, 1.25, 0.98, 0.42, 1.48, 0.48];
        assert!(
            close(t.ratio_at(7), &expected, 0.005),
            "{:?}",
            t.ratio_at(7)
        );
    }

    #[test]
    fn zero_division_policies() {
        // node 1 cites node 0 and is never cited; node 0 cites nothing
        let z = m(vec![vec![0.0, 5.0], vec![0.0, 0.0]]);
        let t = pwr_trace(&z, &raw(1)).unwrap();
        assert_eq!(t.ratio_at(1), [0.0, 0.0]);
        assert_eq!(
            t.dangling,
            vec![
                DanglingNode {
                    node: 0,
                    kind: DanglingKind::CitedOnly
                },
                DanglingNode {
                    node: 1,
                    kind: DanglingKind::CitingOnly
                },
            ]
        );

        let inf = PwrOptions {
            zero_division: ZeroDivision::Infinite,
            ..raw(1)
        };
        let t = pwr_trace(&z, &inf).unwrap();
        assert_eq!(t.ratio_at(1), [ZERO_DIVISION_SENTINEL, 0.0]);
        assert_eq!(t.sentinels, vec![(1, 0)]);

        let err = PwrOptions {
            zero_division: ZeroDivision::Error,
            ..raw(1)
        };
        match pwr_trace(&z, &err) {
            Err(Error::ZeroDivision {
                node: 0,
                k: 1,
                label,
            }) => assert_eq!(label, "v0"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invalid_options_and_empty_matrix() {
        let z = fixtures::jasist_plus();
        assert!(pwr_trace(
            &z,
            &PwrOptions {
                k_max: 0,
                ..Default::default()
            }
        )
        .is_err());
        assert!(pwr_trace(
            &z,
            &PwrOptions {
                tol: 0.0,
                ..Default::default()
            }
        )
        .is_err());
        assert!(pwr_trace(
            &z,
            &PwrOptions {
                tol: f64::NAN,
                ..Default::default()
            }
        )
        .is_err());
        let empty = CitationMatrix::zeros(vec![]).unwrap();
        assert!(matches!(
            pwr_trace(&empty, &PwrOptions::default()),
            Err(Error::EmptyMatrix)
        ));
    }

    #[test]
    fn converged_fixture_without_self_citations() {
        let opts = PwrOptions {
            k_max: 20,
            tol: 0.01,
            self_citations: SelfCitations::Exclude,
            ..Default::default()
        };
        let res = converged_pwr(&fixtures::jasist_plus(), &opts).unwrap();
        assert!(res.report.converged);
        assert!(res.report.k_converged.unwrap() <= 7);
        let mut order: Vec<usize> = (0..7).collect();
        order.sort_by(|&a, &b| res.ratios[b].total_cmp(&res.ratios[a]));
        let labels = fixtures::jasist_plus().labels().to_vec();
        let ranked: Vec<&str> = order.iter().map(|&i| labels[i].as_str()).collect();
        assert_eq!(
            ranked,
            [
                "INFORM PROCESS MANAG",
                "JASIST",
                "J DOC",
                "J INF SCI",
                "SCIENTOMETRICS",
                "J INFORMETR",
                "INFORM RES"
            ]
        );
    }

    #[test]
    fn oscillating_trace_does_not_converge() {
        let z = m(vec![vec![0.0, 2.0], vec![1.0, 0.0]]);
        let res = converged_pwr(&z, &PwrOptions::default()).unwrap();
        assert!(!res.report.converged);
        assert_eq!(res.k, 20);
        let t = pwr_trace(&z, &raw(4)).unwrap();
        assert_eq!(t.ratio_at(1), [2.0, 0.5]);
        assert_eq!(t.ratio_at(2), [1.0, 1.0]);
        assert_eq!(t.ratio_at(3), [2.0, 0.5]);
        assert!(res.report.deltas.iter().all(|&d| d == 1.0));
    }

    #[test]
    fn all_ones_converges_at_two() {
        let z = m(vec![vec![1.0; 4]; 4]);
        let res = converged_pwr(&z, &PwrOptions::default()).unwrap();
        assert_eq!(res.report.k_converged, Some(2));
        assert_eq!(res.k, 2);
        assert!(res.ratios.iter().all(|&r| r == 1.0));
    }

    #[test]
    fn report_on_constant_trace() {
        let z = m(vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        let t = pwr_trace(&z, &raw(5)).unwrap();
        let rep = convergence_report(&t, 1e-9);
        assert_eq!(rep.deltas, vec![0.0; 4]);
        assert_eq!(rep.k_converged, Some(2));
        assert_eq!(rep.delta_at(1), None);
        assert_eq!(rep.delta_at(5), Some(0.0));
    }

    #[test]
    fn report_single_order_never_converges() {
        let t = pwr_trace(&fixtures::jasist_plus(), &raw(1)).unwrap();
        let rep = convergence_report(&t, 1.0);
        assert!(rep.deltas.is_empty());
        assert!(!rep.converged);
    }

    #[test]
    fn sentinels_are_excluded_from_deltas() {
        // node 0 is cited only, so its weakness is 0 at every order
        let z = m(vec![
            vec![0.0, 3.0, 1.0],
            vec![0.0, 0.0, 2.0],
            vec![0.0, 1.0, 0.0],
        ]);
        let opts = PwrOptions {
            zero_division: ZeroDivision::Infinite,
            k_max: 6,
            ..Default::default()
        };
        let t = pwr_trace(&z, &opts).unwrap();
        let rep = convergence_report(&t, 1e-6);
        assert_eq!(rep.flagged_nodes, vec![0]);
        assert!(rep.deltas.iter().all(|d| d.is_finite() && *d < 10.0));
    }

    #[test]
    fn heavy_one_way_citation_slows_convergence() {
        let a = [
            [10.0, 6.0, 5.0, 4.0],
            [4.0, 10.0, 5.0, 3.0],
            [3.0, 4.0, 10.0, 6.0],
            [5.0, 3.0, 4.0, 10.0],
        ];
        let b = [
            [10.0, 5.0, 4.0, 6.0],
            [6.0, 10.0, 3.0, 5.0],
            [4.0, 5.0, 10.0, 4.0],
            [3.0, 4.0, 6.0, 10.0],
        ];
        let mut rows = vec![vec![0.0; 8]; 8];
        for i in 0..4 {
            for j in 0..4 {
                rows[i][j] = a[i][j];
                rows[i + 4][j + 4] = b[i][j];
                rows[i + 4][j] = 8.0; // block A cites block B heavily
                rows[i][j + 4] = 1.0;
            }
        }
        let opts = PwrOptions {
            tol: 1e-4,
            k_max: 40,
            ..Default::default()
        };
        let k_of = |rows: Vec<Vec<f64>>| {
            converged_pwr(&m(rows), &opts)
                .unwrap()
                .report
                .k_converged
                .unwrap()
        };
        let ka = k_of(a.iter().map(|r| r.to_vec()).collect());
        let kb = k_of(b.iter().map(|r| r.to_vec()).collect());
        let kab = k_of(rows);
        assert!(kab > ka && kab > kb, "{kab} vs {ka}, {kb}");
    }
}
