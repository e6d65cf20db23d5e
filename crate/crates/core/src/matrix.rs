//! Citation matrix data model.
//!
//! Rows are cited journals, columns are citing journals: entry `(i, j)`
//! counts citations from journal `j` to journal `i`. Matrices up to
//! [`DENSE_LIMIT`] nodes are stored densely, larger ones in compressed
//! sparse rows. Both layouts accumulate every row in ascending column
//! order and skip zero entries, so results are bit-identical across
//! layouts.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// Largest node count stored densely.
pub const DENSE_LIMIT: usize = 1024;

#[derive(Debug, Clone)]
enum Storage {
    Dense(Vec<f64>),
    Sparse(Csr),
}

#[derive(Debug, Clone)]
struct Csr {
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl Csr {
    /// `entries` must be sorted row-major, deduplicated, and nonzero.
    fn from_sorted(n: usize, entries: &[(usize, usize, f64)]) -> Self {
        let mut row_ptr = vec![0; n + 1];
        let mut cols = Vec::with_capacity(entries.len());
        let mut vals = Vec::with_capacity(entries.len());
        for &(i, j, w) in entries {
            row_ptr[i + 1] += 1;
            cols.push(j);
            vals.push(w);
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        Csr {
            row_ptr,
            cols,
            vals,
        }
    }
}

/// Square non-negative weighted adjacency matrix with unique node labels.
#[derive(Debug, Clone)]
pub struct CitationMatrix {
    labels: Vec<String>,
    storage: Storage,
}

fn validate_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() {
            return Err(Error::EmptyLabel(i));
        }
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

fn validate_weight(row: usize, col: usize, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidWeight { row, col, value })
    }
}

impl CitationMatrix {
    /// Builds a matrix from dense rows (`rows[i][j]` = citations from `j` to `i`).
    pub fn from_rows(labels: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = labels.len();
        if rows.len() != n {
            return Err(Error::NotSquare {
                rows: rows.len(),
                labels: n,
            });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedRow {
                    row: i,
                    found: row.len(),
                    expected: n,
                });
            }
        }
        let entries = rows
            .into_iter()
            .enumerate()
            .flat_map(|(i, row)| row.into_iter().enumerate().map(move |(j, w)| (i, j, w)));
        Self::from_entries(labels, entries)
    }

    /// Builds a matrix from `(row, col, weight)` triples. Repeated positions
    /// accumulate; unlisted positions are zero.
    pub fn from_entries<I>(labels: Vec<String>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        validate_labels(&labels)?;
        let n = labels.len();
        let mut triples = Vec::new();
        for (i, j, w) in entries {
            for index in [i, j] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            validate_weight(i, j, w)?;
            if w != 0.0 {
                triples.push((i, j, w));
            }
        }
        // stable sort keeps input order within a position, so accumulation
        // order is the caller's order
        triples.sort_by_key(|&(i, j, _)| (i, j));
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(triples.len());
        for (i, j, w) in triples {
            match merged.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += w,
                _ => merged.push((i, j, w)),
            }
        }
        for &(i, j, w) in &merged {
            validate_weight(i, j, w)?;
        }
        let storage = if n <= DENSE_LIMIT {
            let mut data = vec![0.0; n * n];
            for (i, j, w) in merged {
                data[i * n + j] = w;
            }
            Storage::Dense(data)
        } else {
            Storage::Sparse(Csr::from_sorted(n, &merged))
        };
        Ok(CitationMatrix { labels, storage })
    }

    /// An `n`×`n` zero matrix.
    pub fn zeros(labels: Vec<String>) -> Result<Self> {
        Self::from_entries(labels, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    /// Same matrix stored densely regardless of size.
    pub fn to_dense_storage(&self) -> Self {
        let n = self.n();
        let mut data = vec![0.0; n * n];
        for (i, j, w) in self.nonzeros() {
            data[i * n + j] = w;
        }
        CitationMatrix {
            labels: self.labels.clone(),
            storage: Storage::Dense(data),
        }
    }

    /// Same matrix stored as compressed sparse rows regardless of size.
    pub fn to_sparse_storage(&self) -> Self {
        let entries: Vec<_> = self.nonzeros().collect();
        CitationMatrix {
            labels: self.labels.clone(),
            storage: Storage::Sparse(Csr::from_sorted(self.n(), &entries)),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let n = self.n();
        assert!(
            i < n && j < n,
            "index ({i}, {j}) out of range for {n} nodes"
        );
        match &self.storage {
            Storage::Dense(data) => data[i * n + j],
            Storage::Sparse(csr) => {
                let range = csr.row_ptr[i]..csr.row_ptr[i + 1];
                match csr.cols[range.clone()].binary_search(&j) {
                    Ok(pos) => csr.vals[range.start + pos],
                    Err(_) => 0.0,
                }
            }
        }
    }

    /// Nonzero entries of row `i` in ascending column order.
    pub fn row(&self, i: usize) -> Box<dyn Iterator<Item = (usize, f64)> + '_> {
        let n = self.n();
        match &self.storage {
            Storage::Dense(data) => Box::new(
                data[i * n..(i + 1) * n]
                    .iter()
                    .copied()
                    .enumerate()
                    .filter(|&(_, w)| w != 0.0),
            ),
            Storage::Sparse(csr) => {
                let range = csr.row_ptr[i]..csr.row_ptr[i + 1];
                Box::new(
                    csr.cols[range.clone()]
                        .iter()
                        .copied()
                        .zip(csr.vals[range].iter().copied()),
                )
            }
        }
    }

    /// All nonzero entries in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n()).flat_map(move |i| self.row(i).map(move |(j, w)| (i, j, w)))
    }

    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Dense(data) => data.iter().filter(|&&w| w != 0.0).count(),
            Storage::Sparse(csr) => csr.vals.len(),
        }
    }

    /// Dense copy as nested rows.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        let mut rows = vec![vec![0.0; n]; n];
        for (i, j, w) in self.nonzeros() {
            rows[i][j] = w;
        }
        rows
    }

    fn with_entries<I>(&self, labels: Vec<String>, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        // Inputs come from an already validated matrix.
        Self::from_entries(labels, entries).expect("entries derived from a valid matrix")
    }

    pub fn transpose(&self) -> Self {
        self.with_entries(
            self.labels.clone(),
            self.nonzeros().map(|(i, j, w)| (j, i, w)),
        )
    }

    /// Removes self-citations.
    pub fn zero_diagonal(&self) -> Self {
        self.with_entries(
            self.labels.clone(),
            self.nonzeros().filter(|&(i, j, _)| i != j),
        )
    }

    /// Multiplies every weight by `factor` (which must be finite and non-negative).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        validate_weight(0, 0, factor)?;
        Self::from_entries(
            self.labels.clone(),
            self.nonzeros().map(|(i, j, w)| (i, j, w * factor)),
        )
    }

    /// Total citations received within the set, per node.
    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n())
            .map(|i| self.row(i).map(|(_, w)| w).sum())
            .collect()
    }

    /// Total references given within the set, per node.
    pub fn column_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n()];
        for (_, j, w) in self.nonzeros() {
            sums[j] += w;
        }
        sums
    }

    pub fn grand_total(&self) -> f64 {
        self.nonzeros().map(|(_, _, w)| w).sum()
    }

    pub fn matvec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: v.len(),
            });
        }
        // zeros are skipped on both storages so the sums agree bit for bit
        let out = match &self.storage {
            Storage::Dense(data) => data
                .chunks_exact(self.n().max(1))
                .take(self.n())
                .map(|row| {
                    let mut acc = 0.0;
                    for (&w, &x) in row.iter().zip(v) {
                        if w != 0.0 {
                            acc += w * x;
                        }
                    }
                    acc
                })
                .collect(),
            Storage::Sparse(csr) => csr
                .row_ptr
                .windows(2)
                .map(|r| {
                    let mut acc = 0.0;
                    for (&j, &w) in csr.cols[r[0]..r[1]].iter().zip(&csr.vals[r[0]..r[1]]) {
                        acc += w * v[j];
                    }
                    acc
                })
                .collect(),
        };
        Ok(out)
    }

    /// Restriction of the matrix to `nodes`, in the node set's order.
    pub fn extract_subgraph(&self, nodes: &NodeSet) -> Result<Self> {
        nodes.check_parent(self)?;
        let mut position = vec![usize::MAX; self.n()];
        for (new, &old) in nodes.indices().iter().enumerate() {
            position[old] = new;
        }
        let labels = nodes
            .indices()
            .iter()
            .map(|&i| self.labels[i].clone())
            .collect();
        let mut entries = Vec::new();
        for &old_i in nodes.indices() {
            for (old_j, w) in self.row(old_i) {
                if position[old_j] != usize::MAX {
                    entries.push((position[old_i], position[old_j], w));
                }
            }
        }
        Ok(self.with_entries(labels, entries))
    }

    /// Fingerprint of the label list, used to tie node sets to their parent.
    fn key(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.labels.hash(&mut h);
        h.finish()
    }
}

impl PartialEq for CitationMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.nonzeros().eq(other.nonzeros())
    }
}

/// Explicit `Z^k` by repeated dense multiplication.
///
/// Intended as a reference for small matrices; cost is `O(k n^3)`.
pub fn matrix_power_oracle(z: &CitationMatrix, k: usize) -> Result<CitationMatrix> {
    if k == 0 {
        return Err(Error::InvalidOption("matrix power needs k >= 1".into()));
    }
    let n = z.n();
    let base = z.to_rows();
    let mut acc = base.clone();
    for step in 2..=k {
        let mut next = vec![vec![0.0; n]; n];
        for i in 0..n {
            for l in 0..n {
                let a = acc[i][l];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    next[i][j] += a * base[l][j];
                }
            }
        }
        if next.iter().flatten().any(|w| !w.is_finite()) {
            return Err(Error::Overflow(step));
        }
        acc = next;
    }
    CitationMatrix::from_rows(z.labels.clone(), acc)
}

/// Ordered subset of the nodes of a parent [`CitationMatrix`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSet {
    indices: Vec<usize>,
    parent_n: usize,
    parent_key: u64,
}

impl NodeSet {
    pub fn new(parent: &CitationMatrix, indices: Vec<usize>) -> Result<Self> {
        let n = parent.n();
        let mut seen = vec![false; n];
        for &index in &indices {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
            if std::mem::replace(&mut seen[index], true) {
                return Err(Error::DuplicateIndex(index));
            }
        }
        Ok(NodeSet {
            indices,
            parent_n: n,
            parent_key: parent.key(),
        })
    }

    /// Splits `0..n` into node sets without re-validating; `parts` must be
    /// disjoint and in range.
    pub(crate) fn partition_of(parent: &CitationMatrix, parts: Vec<Vec<usize>>) -> Vec<Self> {
        let (n, key) = (parent.n(), parent.key());
        parts
            .into_iter()
            .map(|indices| NodeSet {
                indices,
                parent_n: n,
                parent_key: key,
            })
            .collect()
    }

    pub fn all(parent: &CitationMatrix) -> Self {
        NodeSet {
            indices: (0..parent.n()).collect(),
            parent_n: parent.n(),
            parent_key: parent.key(),
        }
    }

    pub fn from_labels<S: AsRef<str>>(parent: &CitationMatrix, labels: &[S]) -> Result<Self> {
        let indices = labels
            .iter()
            .map(|l| {
                parent
                    .index_of(l.as_ref())
                    .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parent, indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.contains(&index)
    }

    pub fn labels<'a>(&'a self, parent: &'a CitationMatrix) -> impl Iterator<Item = &'a str> {
        self.indices.iter().map(move |&i| parent.label(i))
    }

    /// Elements of `self` followed by the elements of `other` not already present.
    pub fn union(&self, other: &NodeSet) -> Result<NodeSet> {
        if self.parent_n != other.parent_n || self.parent_key != other.parent_key {
            return Err(Error::ParentMismatch);
        }
        let mut seen = vec![false; self.parent_n];
        let mut indices = Vec::with_capacity(self.len() + other.len());
        for &i in self.indices.iter().chain(&other.indices) {
            if !std::mem::replace(&mut seen[i], true) {
                indices.push(i);
            }
        }
        Ok(NodeSet { indices, ..*self })
    }

    fn check_parent(&self, parent: &CitationMatrix) -> Result<()> {
        if self.parent_n != parent.n() || self.parent_key != parent.key() {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }
}
