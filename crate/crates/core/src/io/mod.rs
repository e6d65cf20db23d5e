//! Readers and writers for matrices, traces and metric files.

mod csv_matrix;
mod metric;
mod pajek;
mod trace;

pub use csv_matrix::{read_csv_matrix, write_csv_matrix};
pub use metric::{read_metric_csv, write_metric_csv};
pub use pajek::{read_pajek, write_pajek, PajekNetwork, PajekWarning};
pub use trace::{read_trace_csv, write_trace_csv, TraceRow, TraceTable, TRACE_HEADER};
