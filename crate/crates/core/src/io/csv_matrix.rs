//! Square citation matrices as CSV.
//!
//! The header row holds an empty corner cell followed by the citing
//! labels; every following row starts with a cited label and carries one
//! weight per citing journal. Row and column labels must agree in order.

use crate::error::{Error, Position, Result};
use crate::matrix::CitationMatrix;

pub fn read_csv_matrix(text: &str) -> Result<CitationMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    let header = match records.next() {
        Some(r) => r?,
        None => return Err(Error::parse(Position::line(1), "empty input")),
    };
    let header_line = header.position().map_or(1, |p| p.line() as usize);
    let labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    if labels.is_empty() {
        return Err(Error::parse(
            Position::line(header_line),
            "header has no labels",
        ));
    }
    for (c, label) in labels.iter().enumerate() {
        if label.is_empty() {
            return Err(Error::parse(
                Position::cell(header_line, c + 2),
                "empty column label",
            ));
        }
    }
    let n = labels.len();

    let mut rows = Vec::with_capacity(n);
    for record in records {
        let record = record?;
        let line = record
            .position()
            .map_or(rows.len() + 2, |p| p.line() as usize);
        if record.len() == 1 && record[0].trim().is_empty() {
            continue;
        }
        if record.len() != n + 1 {
            return Err(Error::parse(
                Position::line(line),
                format!("row has {} cells, expected {}", record.len(), n + 1),
            ));
        }
        let r = rows.len();
        if r >= n {
            return Err(Error::parse(
                Position::line(line),
                format!("more than {n} data rows"),
            ));
        }
        if record[0] != labels[r] {
            return Err(Error::parse(
                Position::cell(line, 1),
                format!(
                    "row label {:?} does not match column label {:?}",
                    &record[0], labels[r]
                ),
            ));
        }
        let mut row = Vec::with_capacity(n);
        for (c, cell) in record.iter().enumerate().skip(1) {
            let value: f64 = cell.trim().parse().map_err(|_| {
                Error::parse(
                    Position::cell(line, c + 1),
                    format!("non-numeric cell {cell:?}"),
                )
            })?;
            if !value.is_finite() || value < 0.0 {
                return Err(Error::parse(
                    Position::cell(line, c + 1),
                    format!("weight {cell:?} must be finite and non-negative"),
                ));
            }
            row.push(value);
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::parse(
            Position::line(header_line + rows.len() + 1),
            format!("found {} data rows, expected {n}", rows.len()),
        ));
    }
    CitationMatrix::from_rows(labels, rows).map_err(|e| match e {
        Error::DuplicateLabel(l) => Error::parse(
            Position::line(header_line),
            format!("duplicate label {l:?}"),
        ),
        other => other,
    })
}

pub fn write_csv_matrix(z: &CitationMatrix) -> String {
    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    let header = std::iter::once("").chain(z.labels().iter().map(String::as_str));
    writer.write_record(header).expect("in-memory write");
    for (i, row) in z.to_rows().into_iter().enumerate() {
        let cells =
            std::iter::once(z.label(i).to_string()).chain(row.iter().map(|w| w.to_string()));
        writer.write_record(cells).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
}
