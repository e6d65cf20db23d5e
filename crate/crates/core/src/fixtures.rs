//! Bundled data: the seven-journal JASIST+ citation matrix (2013 citing
//! year, all publication years) and the matching 2013 SJR values.

use crate::comparators::MetricVector;
use crate::io::{read_csv_matrix, read_metric_csv};
use crate::matrix::CitationMatrix;

pub const JASIST_PLUS_CSV: &str = include_str!("../data/jasist_plus.csv");
pub const SJR_2013_CSV: &str = include_str!("../data/sjr2013.csv");

pub fn jasist_plus() -> CitationMatrix {
    read_csv_matrix(JASIST_PLUS_CSV).expect("bundled matrix parses")
}

pub fn sjr2013() -> MetricVector {
    read_metric_csv("sjr", SJR_2013_CSV).expect("bundled metric file parses")
}
