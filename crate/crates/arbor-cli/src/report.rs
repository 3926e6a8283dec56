//! Machine- and human-readable reports. Values are exact rational strings;
//! decimals appear only in the optional `approx` fields filled in under
//! `--approx`. Rendering is deterministic: identical inputs give
//! byte-identical output.

use arbor_core::counting::{BinetCauchyExpansion, TreeReport, TreeSum};
use arbor_core::graph::{Digraph, Mode, TreeClassification};
use arbor_core::matrix::Matrix;
use arbor_core::spectral::{StationaryVector, TreeVector};
use arbor_core::verify::Check;
use arbor_core::Rational;
use num_traits::ToPrimitive;
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub p: usize,
    pub q: usize,
    pub weighted: bool,
}

impl GraphSummary {
    pub fn of(g: &Digraph) -> Self {
        GraphSummary {
            p: g.vertex_count(),
            q: g.edge_count(),
            weighted: g.is_weighted(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub graph: GraphSummary,
    pub result: Payload,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Info(InfoPayload),
    Laplacian(LaplacianPayload),
    Count(CountPayload),
    Enumerate(EnumeratePayload),
    Expand(ExpandPayload),
    Eigenvector(EigenvectorPayload),
    Verify(VerifyPayload),
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexInfo {
    pub label: String,
    pub in_degree: usize,
    pub out_degree: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct InfoPayload {
    pub vertices: Vec<VertexInfo>,
    pub edges: Vec<String>,
    pub strongly_connected: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReducedMatrices {
    pub root: String,
    pub l1: Vec<Vec<String>>,
    pub l2: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ApproxIncidence {
    pub n_in_weighted: Vec<Vec<f64>>,
    pub m_out_weighted: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LaplacianPayload {
    pub d_in: Vec<Vec<String>>,
    pub d_out: Vec<Vec<String>>,
    pub a_v: Vec<Vec<String>>,
    pub l1: Vec<Vec<String>>,
    pub l2: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<ReducedMatrices>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx_incidence: Option<ApproxIncidence>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountPayload {
    pub root: String,
    pub mode: String,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumeratePayload {
    pub root: String,
    pub mode: String,
    pub cap: u64,
    pub subsets_examined: u64,
    pub tree_count: usize,
    pub trees: Vec<Vec<String>>,
    pub total_weight: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx_total: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TermPayload {
    pub subset: Vec<String>,
    pub classification: String,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det_b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det_c: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpandPayload {
    pub root: String,
    pub mode: String,
    pub cap: u64,
    pub terms: Vec<TermPayload>,
    pub sum: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenvectorEntry {
    pub vertex: String,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenvectorPayload {
    pub mode: String,
    /// `tree-vector` or `stationary` (sum-to-one normalization).
    pub kind: String,
    pub all_zero: bool,
    pub entries: Vec<EigenvectorEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckPayload {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyPayload {
    pub cap: u64,
    pub checks: Vec<CheckPayload>,
    pub all_passed: bool,
}

pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
        .collect()
}

pub fn approx(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn classification_string(g: &Digraph, c: TreeClassification) -> String {
    match c {
        TreeClassification::Tree => "tree".into(),
        TreeClassification::BadNonRootDegree(v) => {
            format!("non-root-degree({})", g.label(v))
        }
        TreeClassification::RootHasWrongDegree => "root-degree".into(),
        TreeClassification::ContainsCycle => "cycle".into(),
    }
}

pub fn edge_names(subset: &arbor_core::EdgeSubset) -> Vec<String> {
    subset.iter().map(|id| id.to_string()).collect()
}

impl Payload {
    pub fn count(g: &Digraph, sum: &TreeSum, with_approx: bool) -> Payload {
        Payload::Count(CountPayload {
            root: g.label(sum.root).to_string(),
            mode: sum.mode.to_string(),
            value: sum.value.to_string(),
            approx: with_approx.then(|| approx(&sum.value)),
        })
    }

    pub fn enumerate(
        root: &str,
        mode: Mode,
        cap: u64,
        report: &TreeReport,
        with_approx: bool,
    ) -> Payload {
        Payload::Enumerate(EnumeratePayload {
            root: root.to_string(),
            mode: mode.to_string(),
            cap,
            subsets_examined: report.subsets_examined,
            tree_count: report.trees.len(),
            trees: report.trees.iter().map(edge_names).collect(),
            total_weight: report.total_weight.to_string(),
            approx_total: with_approx.then(|| approx(&report.total_weight)),
        })
    }

    pub fn expand(g: &Digraph, cap: u64, expansion: &BinetCauchyExpansion) -> Payload {
        Payload::Expand(ExpandPayload {
            root: g.label(expansion.root).to_string(),
            mode: expansion.mode.to_string(),
            cap,
            terms: expansion
                .terms
                .iter()
                .map(|t| TermPayload {
                    subset: edge_names(&t.subset),
                    classification: classification_string(g, t.classification),
                    value: t.term_value.to_string(),
                    det_b: t.factor_dets.as_ref().map(|(b, _)| b.to_string()),
                    det_c: t.factor_dets.as_ref().map(|(_, c)| c.to_string()),
                })
                .collect(),
            sum: expansion.sum.to_string(),
        })
    }

    pub fn tree_vector(g: &Digraph, tv: &TreeVector, with_approx: bool) -> Payload {
        Payload::Eigenvector(EigenvectorPayload {
            mode: tv.mode.to_string(),
            kind: "tree-vector".into(),
            all_zero: tv.all_zero,
            entries: vector_entries(g, &tv.entries, with_approx),
        })
    }

    pub fn stationary(g: &Digraph, sv: &StationaryVector, with_approx: bool) -> Payload {
        Payload::Eigenvector(EigenvectorPayload {
            mode: sv.mode.to_string(),
            kind: "stationary".into(),
            all_zero: false,
            entries: vector_entries(g, &sv.entries, with_approx),
        })
    }

    pub fn verify(cap: u64, checks: &[Check]) -> Payload {
        Payload::Verify(VerifyPayload {
            cap,
            checks: checks
                .iter()
                .map(|c| CheckPayload {
                    name: c.name.to_string(),
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
            all_passed: arbor_core::verify::all_passed(checks),
        })
    }
}

fn vector_entries(g: &Digraph, entries: &[Rational], with_approx: bool) -> Vec<EigenvectorEntry> {
    g.vertices()
        .zip(entries)
        .map(|(v, value)| EigenvectorEntry {
            vertex: g.label(v).to_string(),
            value: value.to_string(),
            approx: with_approx.then(|| approx(value)),
        })
        .collect()
}

impl Report {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            OutputFormat::Table => self.render_table(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(
            out,
            "graph: p={} q={} weighted={}",
            self.graph.p, self.graph.q, self.graph.weighted
        );
        match &self.result {
            Payload::Info(p) => {
                let _ = writeln!(out, "strongly connected: {}", p.strongly_connected);
                let _ = writeln!(out, "vertices (label in-degree out-degree):");
                for v in &p.vertices {
                    let _ = writeln!(out, "  {} {} {}", v.label, v.in_degree, v.out_degree);
                }
                let _ = writeln!(out, "edges:");
                for e in &p.edges {
                    let _ = writeln!(out, "  {e}");
                }
            }
            Payload::Laplacian(p) => {
                write_matrix(&mut out, "D_in", &p.d_in);
                write_matrix(&mut out, "D_out", &p.d_out);
                write_matrix(&mut out, "A_v", &p.a_v);
                write_matrix(&mut out, "L1", &p.l1);
                write_matrix(&mut out, "L2", &p.l2);
                if let Some(r) = &p.reduced {
                    write_matrix(&mut out, &format!("L1 reduced at {}", r.root), &r.l1);
                    write_matrix(&mut out, &format!("L2 reduced at {}", r.root), &r.l2);
                }
                if let Some(a) = &p.approx_incidence {
                    write_float_matrix(&mut out, "N_in weighted (approx)", &a.n_in_weighted);
                    write_float_matrix(&mut out, "M_out weighted (approx)", &a.m_out_weighted);
                }
            }
            Payload::Count(p) => {
                let _ = write!(
                    out,
                    "{} trees rooted at {}: {}",
                    p.mode, p.root, p.value
                );
                if let Some(a) = p.approx {
                    let _ = write!(out, " (~{a})");
                }
                out.push('\n');
            }
            Payload::Enumerate(p) => {
                let _ = writeln!(
                    out,
                    "subsets examined: {} (cap {})",
                    p.subsets_examined, p.cap
                );
                let _ = writeln!(
                    out,
                    "{} trees rooted at {}: {}",
                    p.mode, p.root, p.tree_count
                );
                for t in &p.trees {
                    let _ = writeln!(out, "  [{}]", t.join(", "));
                }
                let _ = write!(out, "total weight: {}", p.total_weight);
                if let Some(a) = p.approx_total {
                    let _ = write!(out, " (~{a})");
                }
                out.push('\n');
            }
            Payload::Expand(p) => {
                let _ = writeln!(
                    out,
                    "Binet-Cauchy terms for {} trees rooted at {} (cap {}):",
                    p.mode, p.root, p.cap
                );
                let has_factors = p.terms.iter().any(|t| t.det_b.is_some());
                for t in &p.terms {
                    let subset = t.subset.join(",");
                    if has_factors {
                        let _ = writeln!(
                            out,
                            "  {{{subset}}} {} det(B[S])={} det(C[S])={} term={}",
                            t.classification,
                            t.det_b.as_deref().unwrap_or("-"),
                            t.det_c.as_deref().unwrap_or("-"),
                            t.value
                        );
                    } else {
                        let _ = writeln!(
                            out,
                            "  {{{subset}}} {} term={}",
                            t.classification, t.value
                        );
                    }
                }
                let _ = writeln!(out, "sum of terms: {}", p.sum);
            }
            Payload::Eigenvector(p) => {
                let _ = writeln!(out, "{} {} (all_zero={})", p.mode, p.kind, p.all_zero);
                for e in &p.entries {
                    let _ = write!(out, "  {}: {}", e.vertex, e.value);
                    if let Some(a) = e.approx {
                        let _ = write!(out, " (~{a})");
                    }
                    out.push('\n');
                }
            }
            Payload::Verify(p) => {
                for c in &p.checks {
                    let _ = writeln!(
                        out,
                        "{} {}: {}",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.name,
                        c.detail
                    );
                }
                let _ = writeln!(
                    out,
                    "verify: {}",
                    if p.all_passed { "all checks passed" } else { "FAILED" }
                );
            }
        }
        out
    }
}

fn write_matrix(out: &mut String, name: &str, rows: &[Vec<String>]) {
    let _ = writeln!(out, "{name}:");
    if rows.is_empty() || rows[0].is_empty() {
        let _ = writeln!(out, "  (empty)");
        return;
    }
    let cols = rows[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    for r in rows {
        let mut line = String::from("  [");
        for (j, cell) in r.iter().enumerate() {
            if j > 0 {
                line.push(' ');
            }
            let _ = write!(line, "{cell:>width$}", width = widths[j]);
        }
        line.push(']');
        let _ = writeln!(out, "{line}");
    }
}

fn write_float_matrix(out: &mut String, name: &str, rows: &[Vec<f64>]) {
    let strings: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|x| format!("{x:.6}")).collect())
        .collect();
    write_matrix(out, name, &strings);
}
