use std::fmt;

/// Location of a problem inside a parsed text input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    /// 1-based line (or CSV record) number.
    pub line: usize,
    /// 1-based column, when the format has columns.
    pub column: Option<usize>,
}

impl Position {
    pub fn line(line: usize) -> Self {
        Self { line, column: None }
    }

    pub fn cell(line: usize, column: usize) -> Self {
        Self {
            line,
            column: Some(column),
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.column {
            Some(c) => write!(f, "line {}, column {}", self.line, c),
            None => write!(f, "line {}", self.line),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix must be square: {rows} rows but {labels} labels")]
    NotSquare { rows: usize, labels: usize },

    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },

    #[error("entry ({row}, {col}) is {value}; weights must be finite and non-negative")]
    InvalidWeight { row: usize, col: usize, value: f64 },

    #[error("label at position {0} is empty")]
    EmptyLabel(usize),

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("node index {index} out of range for {n} nodes")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("node index {0} appears twice in node set")]
    DuplicateIndex(usize),

    #[error("vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("node sets belong to different parent matrices")]
    ParentMismatch,

    #[error("matrix has no nodes")]
    EmptyMatrix,

    #[error("invalid option: {0}")]
    InvalidOption(String),

    #[error("weakness of node {label:?} is zero at k = {k}")]
    ZeroDivision {
        node: usize,
        label: String,
        k: usize,
    },

    #[error("matrix power overflowed at k = {0}")]
    Overflow(usize),

    #[error("graph has no edges; modularity is undefined")]
    EmptyGraph,

    #[error("partition covers {found} nodes, graph has {expected}")]
    PartitionMismatch { expected: usize, found: usize },

    #[error("{0} has zero variance")]
    ZeroVariance(String),

    #[error("need at least two paired values, found {0}")]
    TooFewValues(usize),

    #[error("label sets differ; unmatched: {}", .0.join(", "))]
    LabelMismatch(Vec<String>),

    #[error("{algorithm} did not converge within {iterations} iterations")]
    NotConverged {
        algorithm: &'static str,
        iterations: usize,
        last: Vec<f64>,
    },

    #[error("parse error at {position}: {message}")]
    Parse { position: Position, message: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(position: Position, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    /// True for bad input (text that could not be read as a matrix, trace
    /// or metric file, or labels that name no journal), false for
    /// well-formed input that violates an operation's contract.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::Csv(_)
                | Error::NotSquare { .. }
                | Error::RaggedRow { .. }
                | Error::InvalidWeight { .. }
                | Error::EmptyLabel(_)
                | Error::DuplicateLabel(_)
                | Error::UnknownLabel(_)
                | Error::LabelMismatch(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
