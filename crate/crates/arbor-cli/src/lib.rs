//! Command-line front end: graph file ingestion, command dispatch, and
//! machine-readable reporting over everything `arbor-core` can do.

pub mod document;
pub mod report;

use std::fmt;
use std::path::{Path, PathBuf};

use arbor_core::counting::{
    binet_cauchy_expansion, count_trees, enumerate_trees, CountError, DEFAULT_SUBSET_CAP,
};
use arbor_core::graph::{Digraph, Direction, Mode, VertexId};
use arbor_core::laplacian::{laplacians, LaplacianKind};
use arbor_core::spectral::{stationary, tree_vector, SpectralError};
use arbor_core::verify::run_checks;
use clap::{Args, Parser, Subcommand, ValueEnum};

use document::GraphDocument;
use report::{
    matrix_strings, ApproxIncidence, GraphSummary, InfoPayload, LaplacianPayload, OutputFormat,
    Payload, ReducedMatrices, Report, VertexInfo,
};

/// Exit codes: 0 success, 1 input or parse error, 2 cap exceeded,
/// 3 verification failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    CapExceeded { required: u128, cap: u64 },
    VerificationFailed,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::CapExceeded { required, cap } => write!(
                f,
                "enumeration needs {required} subsets, above the cap of {cap} \
                 (raise it with --cap)"
            ),
            CliError::VerificationFailed => write!(f, "verification failed"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::CapExceeded { .. } => 2,
            CliError::VerificationFailed => 3,
        }
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::CapExceeded { required, cap } => CliError::CapExceeded { required, cap },
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CliMode {
    Outgoing,
    Incoming,
}

impl From<CliMode> for Mode {
    fn from(m: CliMode) -> Mode {
        match m {
            CliMode::Outgoing => Mode::Outgoing,
            CliMode::Incoming => Mode::Incoming,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CliFormat {
    Table,
    Json,
}

impl From<CliFormat> for OutputFormat {
    fn from(f: CliFormat) -> OutputFormat {
        match f {
            CliFormat::Table => OutputFormat::Table,
            CliFormat::Json => OutputFormat::Json,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Graph document (JSON; see README for the schema)
    pub graph: PathBuf,
    /// Output format
    #[arg(long, value_enum, default_value = "table")]
    pub format: CliFormat,
    /// Add approximate decimal renderings next to exact values
    #[arg(long)]
    pub approx: bool,
}

#[derive(Debug, Parser)]
#[command(
    name = "arbor",
    about = "Count, enumerate and inspect rooted directed spanning trees with exact arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertex/edge summary, degrees and strong connectivity
    Info {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Degree, adjacency and Laplacian matrices (reduced forms with --root)
    Laplacian {
        #[command(flatten)]
        common: CommonArgs,
        /// Also print both Laplacians reduced at this vertex
        #[arg(long)]
        root: Option<String>,
    },
    /// Tree count (or weighted total) at a root, as a determinant
    Count {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        root: String,
        #[arg(long, value_enum)]
        mode: CliMode,
    },
    /// Brute-force enumeration of all spanning trees at a root
    Enumerate {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        root: String,
        #[arg(long, value_enum)]
        mode: CliMode,
        /// Bound on the number of edge subsets to examine
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        cap: u64,
    },
    /// Per-subset Binet-Cauchy expansion of the reduced determinant
    Expand {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        root: String,
        #[arg(long, value_enum)]
        mode: CliMode,
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        cap: u64,
    },
    /// Per-root tree counts as a kernel eigenvector of the Laplacian
    Eigenvector {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum)]
        mode: CliMode,
        /// Normalize the vector to sum 1
        #[arg(long)]
        stationary: bool,
    },
    /// Run the full invariant battery and report pass/fail per check
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        cap: u64,
    },
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Info { common }
            | Command::Laplacian { common, .. }
            | Command::Count { common, .. }
            | Command::Enumerate { common, .. }
            | Command::Expand { common, .. }
            | Command::Eigenvector { common, .. }
            | Command::Verify { common, .. } => common,
        }
    }
}

fn load_graph(path: &Path) -> Result<Digraph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    GraphDocument::from_json(&text)?.to_digraph()
}

fn resolve_root(g: &Digraph, label: &str) -> Result<VertexId, CliError> {
    g.vertex_by_label(label)
        .ok_or_else(|| CliError::Input(format!("unknown vertex label {label:?}")))
}

/// Echo of the arguments that determine the report, in canonical order.
fn echo(parts: &[Option<String>]) -> String {
    parts
        .iter()
        .flatten()
        .cloned()
        .collect::<Vec<_>>()
        .join(" ")
}

/// Run one parsed command against its graph file and build the report.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let common = cli.command.common();
    let g = load_graph(&common.graph)?;
    let summary = GraphSummary::of(&g);
    let with_approx = common.approx;

    let (command, result) = match &cli.command {
        Command::Info { .. } => {
            let vertices = g
                .vertices()
                .map(|v| VertexInfo {
                    label: g.label(v).to_string(),
                    in_degree: g.degree(v, Direction::In, None),
                    out_degree: g.degree(v, Direction::Out, None),
                })
                .collect();
            let edges = g
                .edges()
                .iter()
                .map(|e| {
                    use num_traits::One;
                    let mut s = format!("{}: {} -> {}", e.id, g.label(e.from), g.label(e.to));
                    if !e.weight.is_one() {
                        s.push_str(&format!(" (weight {})", e.weight));
                    }
                    s
                })
                .collect();
            (
                "info".to_string(),
                Payload::Info(InfoPayload {
                    vertices,
                    edges,
                    strongly_connected: g.is_strongly_connected(),
                }),
            )
        }
        Command::Laplacian { root, .. } => {
            let lp = laplacians(&g);
            let reduced = match root {
                None => None,
                Some(label) => {
                    let r = resolve_root(&g, label)?;
                    Some(ReducedMatrices {
                        root: label.clone(),
                        l1: matrix_strings(&lp.reduced(LaplacianKind::L1, r)),
                        l2: matrix_strings(&lp.reduced(LaplacianKind::L2, r)),
                    })
                }
            };
            let approx_incidence = with_approx.then(|| {
                let (p, q) = (g.vertex_count(), g.edge_count());
                let mut n_in = vec![vec![0.0; p]; q];
                let mut m_out = vec![vec![0.0; q]; p];
                for e in g.edges() {
                    let sqrt_w = report::approx(&e.weight).sqrt();
                    n_in[e.id.0][e.to.0] = sqrt_w;
                    m_out[e.from.0][e.id.0] = sqrt_w;
                }
                ApproxIncidence {
                    n_in_weighted: n_in,
                    m_out_weighted: m_out,
                }
            });
            (
                echo(&[
                    Some("laplacian".into()),
                    root.as_ref().map(|r| format!("--root {r}")),
                ]),
                Payload::Laplacian(LaplacianPayload {
                    d_in: matrix_strings(&lp.d_in),
                    d_out: matrix_strings(&lp.d_out),
                    a_v: matrix_strings(&lp.a_v),
                    l1: matrix_strings(&lp.l1),
                    l2: matrix_strings(&lp.l2),
                    reduced,
                    approx_incidence,
                }),
            )
        }
        Command::Count { root, mode, .. } => {
            let r = resolve_root(&g, root)?;
            let sum = count_trees(&g, r, Mode::from(*mode));
            (
                format!("count --root {root} --mode {}", sum.mode),
                Payload::count(&g, &sum, with_approx),
            )
        }
        Command::Enumerate {
            root, mode, cap, ..
        } => {
            let r = resolve_root(&g, root)?;
            let mode = Mode::from(*mode);
            let report = enumerate_trees(&g, r, mode, *cap)?;
            (
                format!("enumerate --root {root} --mode {mode} --cap {cap}"),
                Payload::enumerate(root, mode, *cap, &report, with_approx),
            )
        }
        Command::Expand {
            root, mode, cap, ..
        } => {
            let r = resolve_root(&g, root)?;
            let expansion = binet_cauchy_expansion(&g, r, Mode::from(*mode), *cap)?;
            (
                format!(
                    "expand --root {root} --mode {} --cap {cap}",
                    expansion.mode
                ),
                Payload::expand(&g, *cap, &expansion),
            )
        }
        Command::Eigenvector {
            mode, stationary: normalize, ..
        } => {
            let mode = Mode::from(*mode);
            let payload = if *normalize {
                match stationary(&g, mode) {
                    Ok(sv) => Payload::stationary(&g, &sv, with_approx),
                    Err(SpectralError::ZeroVector) => {
                        return Err(CliError::Input(
                            "tree-count vector is zero; no spanning tree exists at any root"
                                .into(),
                        ))
                    }
                    Err(e) => return Err(CliError::Input(e.to_string())),
                }
            } else {
                Payload::tree_vector(&g, &tree_vector(&g, mode), with_approx)
            };
            (
                echo(&[
                    Some(format!("eigenvector --mode {mode}")),
                    normalize.then(|| "--stationary".into()),
                ]),
                payload,
            )
        }
        Command::Verify { cap, .. } => {
            let checks = run_checks(&g, *cap)?;
            (
                format!("verify --cap {cap}"),
                Payload::verify(*cap, &checks),
            )
        }
    };

    Ok(Report {
        command,
        graph: summary,
        result,
    })
}

/// Render the report and decide the exit code (verification failures exit 3
/// after the report is printed).
pub fn run(cli: &Cli) -> (String, i32) {
    match execute(cli) {
        Ok(report) => {
            let text = report.render(cli.command.common().format.into());
            let code = match &report.result {
                Payload::Verify(v) if !v.all_passed => CliError::VerificationFailed.exit_code(),
                _ => 0,
            };
            (text, code)
        }
        Err(e) => (format!("error: {e}\n"), e.exit_code()),
    }
}
