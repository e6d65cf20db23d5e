use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pwr_core::io::{
    read_csv_matrix, read_metric_csv, read_pajek, write_csv_matrix, write_pajek, write_trace_csv,
    PajekWarning,
};
use pwr_core::{
    citation_factor, citing_cosine_matrix, citing_threshold_subset, compare_rankings,
    convergence_report, hits, louvain_partition, pagerank, pwr_trace,
    strongly_connected_components, threshold_graph, CitationMatrix, DanglingKind, HitsOptions,
    MetricVector, NodeSet, PageRankOptions, PwrOptions, SelfCitations, ZeroDivision,
};

use crate::svg::{render_convergence_svg, PlotError};

/// Well-formed request the command cannot honor.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct Contract(pub String);

/// Input the command cannot read or interpret.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct BadInput(pub String);

/// 1 for unreadable or malformed input, 2 for contract violations.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<std::io::Error>() || cause.is::<BadInput>() {
            return 1;
        }
        if let Some(e) = cause.downcast_ref::<pwr_core::Error>() {
            return if e.is_input_error() { 1 } else { 2 };
        }
        if cause.is::<Contract>() || cause.is::<PlotError>() {
            return 2;
        }
    }
    1
}

#[derive(Debug, Parser)]
#[command(
    name = "pwr",
    version,
    about = "Power-weakness ratio journal indicators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Iterate power, weakness and their ratio and report convergence
    Pwr(PwrCmd),
    /// List strong components or extract the largest
    Scc(SccCmd),
    /// Keep the journals citing a target at least a given number of times
    Subset(SubsetCmd),
    /// Cluster journals by the cosine similarity of what they cite
    Decompose(DecomposeCmd),
    /// Compute several rankings and correlate them
    Compare(CompareCmd),
    /// Convert between Pajek and CSV matrices
    Convert(ConvertCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pajek,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    Include,
    Exclude,
}

impl From<Policy> for SelfCitations {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Include => SelfCitations::Include,
            Policy::Exclude => SelfCitations::Exclude,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZeroDiv {
    Zero,
    Inf,
    Error,
}

impl From<ZeroDiv> for ZeroDivision {
    fn from(z: ZeroDiv) -> Self {
        match z {
            ZeroDiv::Zero => ZeroDivision::Zero,
            ZeroDiv::Inf => ZeroDivision::Infinite,
            ZeroDiv::Error => ZeroDivision::Error,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Pwr,
    Pagerank,
    Hits,
    Cf,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Citation matrix (Pajek .net or CSV)
    #[arg(long)]
    pub input: PathBuf,
    /// Input format; guessed from the extension when omitted
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct PwrArgs {
    #[arg(long, default_value_t = 20)]
    pub k_max: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Policy::Include)]
    pub self_citations: Policy,
    #[arg(long, value_enum, default_value_t = ZeroDiv::Zero)]
    pub zero_div: ZeroDiv,
    /// Iterate raw counts instead of rescaling each step to unit sum
    #[arg(long)]
    pub no_normalize: bool,
}

impl PwrArgs {
    fn options(&self) -> PwrOptions {
        PwrOptions {
            k_max: self.k_max,
            tol: self.tol,
            self_citations: self.self_citations.into(),
            zero_division: self.zero_div.into(),
            normalize_each_iteration: !self.no_normalize,
        }
    }
}

#[derive(Debug, Args)]
pub struct PwrCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub pwr: PwrArgs,
    /// Write a convergence plot
    #[arg(long, value_name = "FILE.svg")]
    pub plot: Option<PathBuf>,
    /// Write the trace here instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SccCmd {
    #[command(flatten)]
    pub input: InputArgs,
    /// Emit the matrix of the largest component instead of the listing
    #[arg(long)]
    pub largest: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SubsetCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub target: String,
    #[arg(long)]
    pub min: u64,
    /// File with one journal label per line to add to the subset
    #[arg(long)]
    pub union_with: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecomposeCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 0.01)]
    pub cosine_threshold: f64,
    #[arg(long, default_value_t = 1.0)]
    pub resolution: f64,
    #[arg(long, value_enum, default_value_t = Policy::Include)]
    pub cosine_diagonal: Policy,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub pwr: PwrArgs,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "pwr,pagerank,hits,cf"
    )]
    pub metrics: Vec<Metric>,
    /// Extra `label,value` metric, given as NAME=FILE.csv
    #[arg(long, value_name = "NAME=FILE")]
    pub external: Vec<String>,
    /// Write the per-journal table here instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvertCmd {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    #[arg(long, value_enum)]
    pub from: Option<Format>,
    #[arg(long, value_enum)]
    pub to: Option<Format>,
    /// Allow input and output in the same format
    #[arg(long)]
    pub force: bool,
}

fn guess_format(path: &Path, given: Option<Format>) -> Result<Format> {
    if let Some(f) = given {
        return Ok(f);
    }
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    match ext.as_deref() {
        Some("net" | "paj" | "pajek") => Ok(Format::Pajek),
        Some("csv") => Ok(Format::Csv),
        _ => Err(BadInput(format!(
            "cannot tell the format of {} from its extension; pass it explicitly",
            path.display()
        ))
        .into()),
    }
}

fn read_matrix(path: &Path, format: Format, err: &mut dyn Write) -> Result<CitationMatrix> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let z = match format {
        Format::Csv => read_csv_matrix(&text),
        Format::Pajek => read_pajek(&text).map(|net| {
            for w in net.warnings {
                match w {
                    PajekWarning::NoArcsSection => {
                        let _ = writeln!(err, "warning: {} has no *Arcs section", path.display());
                    }
                }
            }
            net.matrix
        }),
    }
    .with_context(|| format!("in {}", path.display()))?;
    Ok(z)
}

fn load(input: &InputArgs, err: &mut dyn Write) -> Result<CitationMatrix> {
    let format = guess_format(&input.input, input.format)?;
    read_matrix(&input.input, format, err)
}

fn matrix_text(z: &CitationMatrix, format: Format) -> String {
    match format {
        Format::Csv => write_csv_matrix(z),
        Format::Pajek => write_pajek(z),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Matrix to a file (format from its extension, CSV otherwise) or as CSV
/// to standard output.
fn emit_matrix(z: &CitationMatrix, output: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => {
            let format = guess_format(path, None).unwrap_or(Format::Csv);
            write_file(path, &matrix_text(z, format))
        }
        None => Ok(out.write_all(write_csv_matrix(z).as_bytes())?),
    }
}

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_pwr(cmd: &PwrCmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let z = load(&cmd.input, err)?;
    let opts = cmd.pwr.options();
    let trace = pwr_trace(&z, &opts)?;
    let report = convergence_report(&trace, opts.tol);

    for d in &trace.dangling {
        let what = match d.kind {
            DanglingKind::CitedOnly => "is cited but cites no other journal; its ratio is inflated",
            DanglingKind::CitingOnly => "cites but is never cited by another journal",
            DanglingKind::Isolated => "has no citations to or from other journals",
        };
        writeln!(err, "warning: {} {what}", z.label(d.node))?;
    }
    if trace.degenerate {
        writeln!(
            err,
            "warning: an iterate vanished; the matrix is nilpotent or empty"
        )?;
    }

    let csv = write_trace_csv(&trace);
    match &cmd.output {
        Some(path) => write_file(path, &csv)?,
        None => out.write_all(csv.as_bytes())?,
    }
    if let Some(path) = &cmd.plot {
        write_file(path, &render_convergence_svg(&trace)?)?;
    }

    let k = report.k_converged.unwrap_or(trace.k_max());
    let mut summary = format!("# converged={} tol={}", report.converged, report.tol);
    match report.k_converged {
        Some(k) => write!(summary, " k_converged={k}")?,
        None => write!(summary, " k_max={}", trace.k_max())?,
    }
    if let Some(d) = report.deltas.last() {
        write!(summary, " last_delta={d:e}")?;
    }
    writeln!(out, "{summary}")?;
    if !report.flagged_nodes.is_empty() {
        let names: Vec<&str> = report.flagged_nodes.iter().map(|&i| z.label(i)).collect();
        writeln!(
            out,
            "# zero weakness (sentinel ratios): {}",
            names.join("; ")
        )?;
    }
    writeln!(out, "# pwr at k={k}")?;
    for (label, r) in z.labels().iter().zip(trace.ratio_at(k)) {
        writeln!(out, "# {label}: {r}")?;
    }
    Ok(())
}

fn cmd_scc(cmd: &SccCmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let z = load(&cmd.input, err)?;
    let scc = strongly_connected_components(&z);
    if cmd.largest {
        let Some(c) = scc.largest() else {
            return Err(Contract("matrix has no nodes".into()).into());
        };
        let sub = z.extract_subgraph(&scc.components[c])?;
        return emit_matrix(&sub, cmd.output.as_deref(), out);
    }
    let mut text = String::from("component,size,labels\n");
    for (c, comp) in scc.components.iter().enumerate() {
        let labels: Vec<&str> = comp.labels(&z).collect();
        writeln!(
            text,
            "{},{},{}",
            c + 1,
            comp.len(),
            field(&labels.join(";"))
        )?;
    }
    match &cmd.output {
        Some(path) => write_file(path, &text),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn read_node_labels(path: &Path) -> Result<Vec<String>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect())
}

fn cmd_subset(cmd: &SubsetCmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let z = load(&cmd.input, err)?;
    let mut nodes = citing_threshold_subset(&z, &cmd.target, cmd.min)?;
    if let Some(path) = &cmd.union_with {
        let extra = NodeSet::from_labels(&z, &read_node_labels(path)?)
            .with_context(|| format!("in {}", path.display()))?;
        nodes = nodes.union(&extra)?;
    }
    if nodes.is_empty() {
        return Err(Contract(format!(
            "no journal cites {:?} at least {} times; the subset is empty",
            cmd.target, cmd.min
        ))
        .into());
    }
    emit_matrix(&z.extract_subgraph(&nodes)?, cmd.output.as_deref(), out)
}

fn cmd_decompose(cmd: &DecomposeCmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let z = load(&cmd.input, err)?;
    if !(cmd.resolution > 0.0 && cmd.resolution.is_finite()) {
        return Err(Contract(format!(
            "resolution must be positive, got {}",
            cmd.resolution
        ))
        .into());
    }
    let s = citing_cosine_matrix(&z, cmd.cosine_diagonal.into());
    let g = threshold_graph(&s, cmd.cosine_threshold)?;
    if g.edges().is_empty() {
        return Err(Contract(format!(
            "no pair of journals has cosine above {}; modularity is undefined",
            cmd.cosine_threshold
        ))
        .into());
    }
    let p = louvain_partition(&g, cmd.resolution);
    let mut text = String::from("label,community\n");
    for (label, c) in z.labels().iter().zip(&p.community_of) {
        writeln!(text, "{},{}", field(label), c + 1)?;
    }
    match &cmd.output {
        Some(path) => write_file(path, &text)?,
        None => out.write_all(text.as_bytes())?,
    }
    let q = p.q.expect("graph has edges");
    writeln!(out, "# Q={q} communities={}", p.community_count())?;
    Ok(())
}

fn parse_external(spec: &str) -> Result<(String, PathBuf)> {
    match spec.split_once('=') {
        Some((name, path)) if !name.is_empty() && !path.is_empty() => {
            Ok((name.to_string(), PathBuf::from(path)))
        }
        _ => Err(BadInput(format!("--external expects NAME=FILE, got {spec:?}")).into()),
    }
}

fn cmd_compare(cmd: &CompareCmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let z = load(&cmd.input, err)?;
    let opts = cmd.pwr.options();
    let mut metrics: Vec<MetricVector> = Vec::new();
    for m in &cmd.metrics {
        match m {
            Metric::Pwr => {
                let c = pwr_core::converged_pwr(&z, &opts)?;
                if !c.report.converged {
                    writeln!(err, "warning: pwr did not converge; using k={}", c.k)?;
                }
                metrics.push(MetricVector::new("pwr", z.labels().to_vec(), c.ratios));
            }
            Metric::Pagerank => metrics.push(pagerank(&z, &PageRankOptions::default())?),
            Metric::Hits => {
                let h = hits(&z, &HitsOptions::default())?;
                metrics.push(h.hubs);
                metrics.push(h.authorities);
            }
            Metric::Cf => metrics.push(citation_factor(&z, opts.zero_division)?),
        }
    }
    for spec in &cmd.external {
        let (name, path) = parse_external(spec)?;
        let text =
            fs::read_to_string(&path).with_context(|| format!("cannot read {}", path.display()))?;
        let m = read_metric_csv(&name, &text).with_context(|| format!("in {}", path.display()))?;
        m.aligned_to(z.labels())
            .with_context(|| format!("{} does not match the matrix labels", path.display()))?;
        metrics.push(m);
    }
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = metrics.iter().find(|m| !seen.insert(m.name.clone())) {
        return Err(Contract(format!("metric {:?} given twice", dup.name)).into());
    }
    let table = compare_rankings(&metrics)?;

    let mut text = String::from("label");
    for name in &table.names {
        write!(text, ",{}", field(name))?;
    }
    text.push('\n');
    for (i, label) in table.labels.iter().enumerate() {
        text.push_str(&field(label));
        for row in &table.pairs {
            write!(text, ",{}", row[0].y[i])?;
        }
        text.push('\n');
    }
    match &cmd.output {
        Some(path) => write_file(path, &text)?,
        None => out.write_all(text.as_bytes())?,
    }

    for (title, matrix) in [
        ("pearson", table.pearson_matrix()),
        ("spearman", table.spearman_matrix()),
    ] {
        writeln!(out)?;
        write!(out, "{title}")?;
        for name in &table.names {
            write!(out, ",{}", field(name))?;
        }
        writeln!(out)?;
        for (name, row) in table.names.iter().zip(matrix) {
            write!(out, "{}", field(name))?;
            for v in row {
                write!(out, ",{v}")?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}

fn cmd_convert(cmd: &ConvertCmd, _out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let from = guess_format(&cmd.input, cmd.from)?;
    let to = guess_format(&cmd.output, cmd.to)?;
    if from == to && !cmd.force {
        return Err(Contract(format!(
            "input and output are both {from:?}; pass --force to rewrite anyway"
        ))
        .into());
    }
    let z = read_matrix(&cmd.input, from, err)?;
    write_file(&cmd.output, &matrix_text(&z, to))
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Pwr(c) => cmd_pwr(c, out, err),
        Command::Scc(c) => cmd_scc(c, out, err),
        Command::Subset(c) => cmd_subset(c, out, err),
        Command::Decompose(c) => cmd_decompose(c, out, err),
        Command::Compare(c) => cmd_compare(c, out, err),
        Command::Convert(c) => cmd_convert(c, out, err),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_from_extensions() {
        assert_eq!(
            guess_format(Path::new("a.NET"), None).unwrap(),
            Format::Pajek
        );
        assert_eq!(guess_format(Path::new("a.csv"), None).unwrap(), Format::Csv);
        assert_eq!(
            guess_format(Path::new("a.txt"), Some(Format::Csv)).unwrap(),
            Format::Csv
        );
        let e = guess_format(Path::new("a.txt"), None).unwrap_err();
        assert_eq!(exit_code(&e), 1);
    }

    #[test]
    fn exit_codes() {
        let zero_div: anyhow::Error = pwr_core::Error::ZeroDivision {
            node: 0,
            label: "a".into(),
            k: 1,
        }
        .into();
        assert_eq!(exit_code(&zero_div), 2);
        let parse = read_csv_matrix("x").unwrap_err();
        assert_eq!(exit_code(&anyhow::Error::from(parse).context("in f")), 1);
        assert_eq!(exit_code(&Contract("empty".into()).into()), 2);
    }

    #[test]
    fn fields_are_quoted_when_needed() {
        assert_eq!(field("J DOC"), "J DOC");
        assert_eq!(field("a,b"), "\"a,b\"");
        assert_eq!(field("say \"x\""), "\"say \"\"x\"\"\"");
    }

    #[test]
    fn external_specs() {
        assert_eq!(
            parse_external("sjr=data/s.csv").unwrap(),
            ("sjr".to_string(), PathBuf::from("data/s.csv"))
        );
        assert!(parse_external("sjr").is_err());
        assert!(parse_external("=x.csv").is_err());
    }
}
