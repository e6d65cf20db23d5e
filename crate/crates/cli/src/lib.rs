//! Command-line front end: compute traces, extract components and subsets,
//! decompose sets, compare rankings, convert formats and draw plots.

pub mod commands;
pub mod svg;

pub use commands::{exit_code, run, Cli, Command};
pub use svg::{render_convergence_svg, PlotError};
