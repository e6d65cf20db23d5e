//! Pajek `.net` networks with `*Vertices` and `*Arcs` sections.
//!
//! Arcs point from the cited to the citing journal: `src dst w` adds `w`
//! to `Z[src][dst]`. Vertex ids are 1-based.

use std::fmt::Write as _;

use crate::error::{Error, Position, Result};
use crate::matrix::CitationMatrix;

/// Non-fatal observations made while parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PajekWarning {
    NoArcsSection,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PajekNetwork {
    pub matrix: CitationMatrix,
    pub warnings: Vec<PajekWarning>,
}

#[derive(PartialEq)]
enum Section {
    Preamble,
    Vertices,
    Arcs,
}

fn parse_vertex(line: &str, pos: Position) -> Result<(usize, String)> {
    let line = line.trim();
    let (id, rest) = line
        .split_once(char::is_whitespace)
        .ok_or_else(|| Error::parse(pos, "vertex line needs an id and a label"))?;
    let id: usize = id
        .parse()
        .map_err(|_| Error::parse(pos, format!("invalid vertex id {id:?}")))?;
    let rest = rest.trim_start();
    let label = if let Some(quoted) = rest.strip_prefix('"') {
        let end = quoted
            .rfind('"')
            .ok_or_else(|| Error::parse(pos, "unterminated quoted label"))?;
        quoted[..end].to_string()
    } else {
        // unquoted labels end at the first whitespace (coordinates may follow)
        rest.split_whitespace()
            .next()
            .unwrap_or_default()
            .to_string()
    };
    if label.is_empty() {
        return Err(Error::parse(pos, "empty vertex label"));
    }
    Ok((id, label))
}

fn parse_arc(line: &str, pos: Position, n: usize) -> Result<(usize, usize, f64)> {
    let mut fields = line.split_whitespace();
    let mut id = |what: &str| -> Result<usize> {
        let tok = fields
            .next()
            .ok_or_else(|| Error::parse(pos, format!("arc is missing its {what} id")))?;
        let id: usize = tok
            .parse()
            .map_err(|_| Error::parse(pos, format!("invalid {what} id {tok:?}")))?;
        if id == 0 || id > n {
            return Err(Error::parse(
                pos,
                format!("{what} id {id} out of range 1..={n}"),
            ));
        }
        Ok(id - 1)
    };
    let src = id("source")?;
    let dst = id("target")?;
    let weight = match fields.next() {
        None => 1.0,
        Some(tok) => tok
            .parse::<f64>()
            .map_err(|_| Error::parse(pos, format!("invalid weight {tok:?}")))?,
    };
    if !weight.is_finite() || weight < 0.0 {
        return Err(Error::parse(
            pos,
            format!("weight {weight} must be finite and non-negative"),
        ));
    }
    Ok((src, dst, weight))
}

pub fn read_pajek(text: &str) -> Result<PajekNetwork> {
    let mut section = Section::Preamble;
    let mut declared: Option<(usize, Position)> = None;
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut arcs = Vec::new();
    let mut saw_arcs = false;

    for (idx, raw) in text.lines().enumerate() {
        let pos = Position::line(idx + 1);
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if let Some(header) = line.strip_prefix('*') {
            let mut words = header.split_whitespace();
            let name = words.next().unwrap_or_default().to_ascii_lowercase();
            match name.as_str() {
                "vertices" => {
                    if declared.is_some() {
                        return Err(Error::parse(pos, "second *Vertices section"));
                    }
                    let count = words
                        .next()
                        .and_then(|w| w.parse::<usize>().ok())
                        .ok_or_else(|| Error::parse(pos, "*Vertices needs a vertex count"))?;
                    declared = Some((count, pos));
                    labels = vec![None; count];
                    section = Section::Vertices;
                }
                "arcs" => {
                    if declared.is_none() {
                        return Err(Error::parse(pos, "*Arcs before *Vertices"));
                    }
                    if saw_arcs {
                        return Err(Error::parse(pos, "second *Arcs section"));
                    }
                    saw_arcs = true;
                    section = Section::Arcs;
                }
                _ => {
                    return Err(Error::parse(
                        pos,
                        format!("unsupported section *{}", header.trim()),
                    ))
                }
            }
            continue;
        }
        match section {
            Section::Preamble => {
                return Err(Error::parse(pos, "content before *Vertices"));
            }
            Section::Vertices => {
                let (id, label) = parse_vertex(line, pos)?;
                let n = labels.len();
                if id == 0 || id > n {
                    return Err(Error::parse(
                        pos,
                        format!("vertex id {id} out of range 1..={n}"),
                    ));
                }
                if labels[id - 1].is_some() {
                    return Err(Error::parse(pos, format!("duplicate vertex id {id}")));
                }
                labels[id - 1] = Some(label);
            }
            Section::Arcs => arcs.push(parse_arc(line, pos, labels.len())?),
        }
    }

    let (_, vertices_pos) =
        declared.ok_or_else(|| Error::parse(Position::line(1), "missing *Vertices section"))?;
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            l.ok_or_else(|| {
                Error::parse(
                    vertices_pos,
                    format!("vertex {} is declared but not listed", i + 1),
                )
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = CitationMatrix::from_entries(labels, arcs).map_err(|e| match e {
        Error::DuplicateLabel(l) => {
            Error::parse(vertices_pos, format!("duplicate vertex label {l:?}"))
        }
        other => other,
    })?;
    let warnings = if saw_arcs {
        Vec::new()
    } else {
        vec![PajekWarning::NoArcsSection]
    };
    Ok(PajekNetwork { matrix, warnings })
}

/// Serializes `z` with one arc per nonzero entry in row-major order.
pub fn write_pajek(z: &CitationMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "*Vertices {}", z.n()).unwrap();
    for (i, label) in z.labels().iter().enumerate() {
        writeln!(out, "{} \"{}\"", i + 1, label).unwrap();
    }
    out.push_str("*Arcs\n");
    for (i, j, w) in z.nonzeros() {
        writeln!(out, "{} {} {}", i + 1, j + 1, w).unwrap();
    }
    out
}
