//! External per-journal metrics: `label,value` CSV with a header row.

use std::collections::HashSet;

use crate::comparators::MetricVector;
use crate::error::{Error, Position, Result};

pub fn read_metric_csv(name: &str, text: &str) -> Result<MetricVector> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    if header.len() != 2 {
        return Err(Error::parse(
            Position::line(1),
            "metric file needs a two-column header (label,value)",
        ));
    }
    let mut labels = Vec::new();
    let mut values = Vec::new();
    let mut seen = HashSet::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != 2 {
            return Err(Error::parse(
                Position::line(line),
                format!("expected 2 cells, found {}", record.len()),
            ));
        }
        let label = record[0].to_string();
        if label.is_empty() {
            return Err(Error::parse(Position::cell(line, 1), "empty label"));
        }
        if !seen.insert(label.clone()) {
            return Err(Error::parse(
                Position::cell(line, 1),
                format!("duplicate label {label:?}"),
            ));
        }
        let value: f64 = record[1]
            .trim()
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| {
                Error::parse(
                    Position::cell(line, 2),
                    format!("invalid value {:?}", &record[1]),
                )
            })?;
        labels.push(label);
        values.push(value);
    }
    Ok(MetricVector::new(name, labels, values))
}

pub fn write_metric_csv(metric: &MetricVector) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["label", "value"])
        .expect("in-memory write");
    for (label, value) in metric.labels.iter().zip(&metric.values) {
        writer
            .write_record([label.as_str(), &value.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
}
