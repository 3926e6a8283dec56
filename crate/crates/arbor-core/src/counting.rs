//! Tree counting and enumeration: reduced-determinant counts, the
//! brute-force subset oracle, and the term-by-term Binet-Cauchy expansion
//! connecting the two.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::graph::{Digraph, EdgeId, EdgeSubset, GraphError, Mode, TreeClassification, VertexId};
use crate::laplacian::{self, LaplacianKind};
use crate::matrix::Matrix;
use crate::Rational;

/// Default bound on how many edge subsets enumeration will visit.
pub const DEFAULT_SUBSET_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountError {
    /// Enumerating would require visiting `required` subsets, above `cap`.
    CapExceeded { required: u128, cap: u64 },
    /// The edge subset is not a spanning tree of the requested kind.
    NotATree(TreeClassification),
    Graph(GraphError),
}

impl fmt::Display for CountError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountError::CapExceeded { required, cap } => write!(
                f,
                "enumeration needs {required} subsets, above the cap of {cap}"
            ),
            CountError::NotATree(c) => write!(f, "edge subset is not a spanning tree: {c:?}"),
            CountError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CountError {}

impl From<GraphError> for CountError {
    fn from(e: GraphError) -> Self {
        CountError::Graph(e)
    }
}

/// A tree count (unweighted) or total tree weight (weighted) at one root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSum {
    pub root: VertexId,
    pub mode: Mode,
    pub value: Rational,
}

/// Everything enumeration saw: the spanning trees in lexicographic edge-id
/// order, their total weight, and how many subsets were examined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeReport {
    pub trees: Vec<EdgeSubset>,
    pub total_weight: Rational,
    pub subsets_examined: u64,
}

/// One term of the Binet-Cauchy expansion of the reduced-Laplacian
/// determinant: the subset, its classification, and the exact value of
/// `det(B[S] C[S])`.
///
/// The product matrix is assembled edge-wise so weighted terms stay
/// rational. For unweighted graphs `factor_dets` additionally carries
/// `det(B[S])` and `det(C[S])` separately (both rational there).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinetCauchyTerm {
    pub subset: EdgeSubset,
    pub classification: TreeClassification,
    pub term_value: Rational,
    pub factor_dets: Option<(Rational, Rational)>,
}

/// The full expansion: one term per `(p-1)`-subset, plus their sum, which
/// equals the reduced-Laplacian determinant exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinetCauchyExpansion {
    pub root: VertexId,
    pub mode: Mode,
    pub terms: Vec<BinetCauchyTerm>,
    pub sum: Rational,
}

/// `C(n, k)` without overflow; saturates at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        let Some(next) = acc.checked_mul((n - i) as u128) else {
            return u128::MAX;
        };
        acc = next / (i as u128 + 1);
    }
    acc
}

/// Lexicographic iterator over all k-element subsets of `0..n`.
struct Subsets {
    n: usize,
    k: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Subsets { n, k, current }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.current.as_mut()?;
        let item = current.clone();
        // advance: find the rightmost index that can still move right
        let mut i = self.k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if current[i] < self.n - self.k + i {
                current[i] += 1;
                for j in i + 1..self.k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
        Some(item)
    }
}

fn subset_cap_check(g: &Digraph, cap: u64) -> Result<u128, CountError> {
    let required = binomial(g.edge_count(), g.vertex_count() - 1);
    if required > cap as u128 {
        return Err(CountError::CapExceeded { required, cap });
    }
    Ok(required)
}

/// Tree count (or total tree weight) at `root` as a reduced-Laplacian
/// determinant: `det(L1^r)` for outgoing trees, `det(L2^r)` for incoming.
/// A single-vertex graph counts 1.
pub fn count_trees(g: &Digraph, root: VertexId, mode: Mode) -> TreeSum {
    let lp = laplacian::laplacians(g);
    let reduced = lp.reduced(LaplacianKind::from(mode), root);
    let value = reduced.det().expect("reduced Laplacian is square");
    TreeSum { root, mode, value }
}

/// Brute-force oracle: classify every `(p-1)`-subset of the edges and sum
/// the weights of those that are spanning trees. Subsets are visited (and
/// trees reported) in lexicographic edge-id order.
pub fn enumerate_trees(
    g: &Digraph,
    root: VertexId,
    mode: Mode,
    cap: u64,
) -> Result<TreeReport, CountError> {
    let required = subset_cap_check(g, cap)?;
    let mut trees = Vec::new();
    let mut total_weight = Rational::zero();
    for ids in Subsets::new(g.edge_count(), g.vertex_count() - 1) {
        let subset = EdgeSubset::from_indices(ids.iter().copied());
        if g.classify_spanning_tree(&subset, root, mode)?.is_tree() {
            total_weight += tree_weight(g, &subset);
            trees.push(subset);
        }
    }
    Ok(TreeReport {
        trees,
        total_weight,
        subsets_examined: required as u64,
    })
}

/// Product of the edge weights in a subset (1 for the empty subset).
pub fn tree_weight(g: &Digraph, subset: &EdgeSubset) -> Rational {
    subset
        .iter()
        .fold(Rational::one(), |acc, id| acc * &g.edge(id).weight)
}

/// Expand the reduced-Laplacian determinant subset by subset.
///
/// For each `(p-1)`-subset `S` the term is `det(B[S] C[S])`, where `B` and
/// `C` are the factors of the reduced Laplacian (`B = (N_in^r)^T - M_out^r`,
/// `C = N_in^r` in outgoing mode, and the transposed-analogue pair in
/// incoming mode). The product matrix is assembled edge-wise so the term is
/// rational even for weighted graphs. The terms sum to the determinant.
pub fn binet_cauchy_expansion(
    g: &Digraph,
    root: VertexId,
    mode: Mode,
    cap: u64,
) -> Result<BinetCauchyExpansion, CountError> {
    subset_cap_check(g, cap)?;
    let kind = LaplacianKind::from(mode);
    let p = g.vertex_count();

    // Literal factors for the unweighted per-factor determinants.
    let factors = (!g.is_weighted()).then(|| {
        let n_in = laplacian::incidence_in(g);
        let m_out = laplacian::incidence_out(g);
        let keep: Vec<usize> = (0..p).filter(|&v| v != root.0).collect();
        let n_r = n_in.select(None, Some(&keep)).unwrap();
        let m_r = m_out.select(Some(&keep), None).unwrap();
        match mode {
            // B is (p-1) x q with edge k in column k; C is q x (p-1).
            Mode::Outgoing => (n_r.transpose().sub(&m_r).unwrap(), n_r),
            Mode::Incoming => (
                m_r.sub(&n_r.transpose()).unwrap(),
                m_r.transpose(),
            ),
        }
    });

    let mut terms = Vec::new();
    let mut sum = Rational::zero();
    for ids in Subsets::new(g.edge_count(), p - 1) {
        let subset = EdgeSubset::from_indices(ids.iter().copied());
        let classification = g.classify_spanning_tree(&subset, root, mode)?;
        let product = laplacian::edge_paired_product(g, kind, Some(root), Some(&subset));
        let term_value = product.det().expect("product matrix is square");
        let factor_dets = factors.as_ref().map(|(b, c)| {
            let b_s = b.select(None, Some(&ids)).unwrap();
            let c_s = c.select(Some(&ids), None).unwrap();
            (b_s.det().unwrap(), c_s.det().unwrap())
        });
        sum += term_value.clone();
        terms.push(BinetCauchyTerm {
            subset,
            classification,
            term_value,
            factor_dets,
        });
    }
    Ok(BinetCauchyExpansion {
        root,
        mode,
        terms,
        sum,
    })
}

/// The internal adjacency of an outgoing spanning tree: the square matrix
/// over non-root vertices (ascending index order) whose `(i, j)` entry is
/// the weight of the tree edge from the i-th to the j-th non-root vertex,
/// or 0. Nilpotent for every tree.
pub fn tree_internal_adjacency(
    g: &Digraph,
    tree: &EdgeSubset,
    root: VertexId,
) -> Result<Matrix, CountError> {
    let classification = g.classify_spanning_tree(tree, root, Mode::Outgoing)?;
    if !classification.is_tree() {
        return Err(CountError::NotATree(classification));
    }
    Ok(laplacian::internal_adjacency(g, root, tree))
}

/// True iff the tree's internal adjacency `D` satisfies `D^(p-1) = 0`.
pub fn check_nilpotency(
    g: &Digraph,
    tree: &EdgeSubset,
    root: VertexId,
) -> Result<bool, CountError> {
    let d = tree_internal_adjacency(g, tree, root)?;
    let power = g.vertex_count() - 1;
    if power == 0 {
        return Ok(true);
    }
    Ok(d.power_is_zero(power).expect("D is square"))
}

/// Ids of the edges of a subset rendered `e1..eq`, for reports.
pub fn subset_names(subset: &EdgeSubset) -> Vec<EdgeId> {
    subset.iter().collect()
}
