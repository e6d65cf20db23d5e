//! Trace tables: one `label,k,power,weakness,ratio` row per node per order.

use std::collections::HashMap;

use crate::engine::PwrTrace;
use crate::error::{Error, Position, Result};

pub const TRACE_HEADER: [&str; 5] = ["label", "k", "power", "weakness", "ratio"];

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub label: String,
    pub k: usize,
    pub power: f64,
    pub weakness: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TraceTable {
    pub rows: Vec<TraceRow>,
}

impl TraceTable {
    pub fn from_trace(trace: &PwrTrace) -> Self {
        let mut rows = Vec::with_capacity(trace.n() * trace.k_max());
        for (i, label) in trace.labels.iter().enumerate() {
            for k in 1..=trace.k_max() {
                rows.push(TraceRow {
                    label: label.clone(),
                    k,
                    power: trace.power[k - 1][i],
                    weakness: trace.weakness[k - 1][i],
                    ratio: trace.ratio[k - 1][i],
                });
            }
        }
        TraceTable { rows }
    }

    /// Labels in first-appearance order.
    pub fn labels(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.label.as_str()) {
                out.push(&r.label);
            }
        }
        out
    }

    /// Ratios of one node ordered by `k`.
    pub fn ratio_series(&self, label: &str) -> Vec<f64> {
        let mut rows: Vec<&TraceRow> = self.rows.iter().filter(|r| r.label == label).collect();
        rows.sort_by_key(|r| r.k);
        rows.into_iter().map(|r| r.ratio).collect()
    }

    pub fn k_max(&self) -> usize {
        self.rows.iter().map(|r| r.k).max().unwrap_or(0)
    }
}

/// Serializes the full trace; floats use the shortest exact representation.
pub fn write_trace_csv(trace: &PwrTrace) -> String {
    let table = TraceTable::from_trace(trace);
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(TRACE_HEADER).expect("in-memory write");
    for r in &table.rows {
        writer
            .write_record([
                r.label.clone(),
                r.k.to_string(),
                r.power.to_string(),
                r.weakness.to_string(),
                r.ratio.to_string(),
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

/// Reads a trace CSV, skipping `#` comment lines. Every label must cover
/// the same contiguous orders `1..=k_max`.
pub fn read_trace_csv(text: &str) -> Result<TraceTable> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    if header.iter().ne(TRACE_HEADER) {
        return Err(Error::parse(
            Position::line(1),
            format!("expected header {}", TRACE_HEADER.join(",")),
        ));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let num = |c: usize| -> Result<f64> {
            record[c]
                .parse()
                .map_err(|_| Error::parse(Position::cell(line, c + 1), "not a number"))
        };
        let k: usize =
            record[1].parse().ok().filter(|&k| k >= 1).ok_or_else(|| {
                Error::parse(Position::cell(line, 2), "k must be a positive integer")
            })?;
        rows.push(TraceRow {
            label: record[0].to_string(),
            k,
            power: num(2)?,
            weakness: num(3)?,
            ratio: num(4)?,
        });
    }

    let mut orders: HashMap<&str, Vec<usize>> = HashMap::new();
    for r in &rows {
        orders.entry(&r.label).or_default().push(r.k);
    }
    let k_max = rows.iter().map(|r| r.k).max().unwrap_or(0);
    for (label, ks) in &mut orders {
        ks.sort_unstable();
        if !ks.iter().copied().eq(1..=k_max) {
            return Err(Error::parse(
                Position::line(1),
                format!("label {label:?} does not cover k = 1..={k_max} exactly once"),
            ));
        }
    }
    Ok(TraceTable { rows })
}
