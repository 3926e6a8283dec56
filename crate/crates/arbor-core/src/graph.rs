//! Digraph data model: vertices, weighted directed edges, degree queries,
//! cycle detection, and the three-condition spanning-tree classifier.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::Rational;

/// Index of a vertex in a digraph's vertex list (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Index of an edge in a digraph's edge list (0-based).
///
/// User-facing reports render edges 1-based as `e1..eq`; [`EdgeId`]'s
/// `Display` does that conversion in one place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0 + 1)
    }
}

/// A weighted directed edge. No self-loops; weight strictly positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub from: VertexId,
    pub to: VertexId,
    pub weight: Rational,
}

/// Whether a degree query counts incoming or outgoing edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    In,
    Out,
}

/// Orientation of a directed spanning tree relative to its root.
///
/// Outgoing trees constrain in-degrees (every non-root vertex is entered
/// exactly once); incoming trees constrain out-degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Outgoing,
    Incoming,
}

impl Mode {
    /// The degree side that the tree conditions constrain in this mode.
    pub fn constrained_direction(self) -> Direction {
        match self {
            Mode::Outgoing => Direction::In,
            Mode::Incoming => Direction::Out,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Outgoing => f.write_str("outgoing"),
            Mode::Incoming => f.write_str("incoming"),
        }
    }
}

/// A set of edge ids, stored sorted and deduplicated.
///
/// Candidate spanning trees are `(p-1)`-element subsets of the edge list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSubset {
    ids: Vec<EdgeId>,
}

impl EdgeSubset {
    pub fn new(ids: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut ids: Vec<EdgeId> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        EdgeSubset { ids }
    }

    /// Subset from raw 0-based indices.
    pub fn from_indices(ids: impl IntoIterator<Item = usize>) -> Self {
        Self::new(ids.into_iter().map(EdgeId))
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    /// Sorted edge ids.
    pub fn ids(&self) -> &[EdgeId] {
        &self.ids
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.ids.iter().copied()
    }
}

/// Outcome of testing an edge subset against the three defining conditions
/// of a directed spanning tree.
///
/// The conditions are not mutually exclusive; classification reports the
/// first failure in the fixed order non-root degree, root degree, cycle,
/// scanning vertices in index order. This keeps outputs deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeClassification {
    /// All three conditions hold: the subset is a directed spanning tree.
    Tree,
    /// Some non-root vertex has constrained degree different from 1.
    BadNonRootDegree(VertexId),
    /// The root has constrained degree different from 0.
    RootHasWrongDegree,
    /// The subset contains a directed cycle.
    ContainsCycle,
}

impl TreeClassification {
    pub fn is_tree(self) -> bool {
        matches!(self, TreeClassification::Tree)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    NoVertices,
    EmptyLabel,
    DuplicateLabel(String),
    SelfLoop(String),
    ParallelEdge(String, String),
    NonPositiveWeight(String, String),
    UnknownEndpoint(String),
    WrongSubsetSize { expected: usize, got: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::NoVertices => write!(f, "graph must have at least one vertex"),
            GraphError::EmptyLabel => write!(f, "vertex labels must be nonempty"),
            GraphError::DuplicateLabel(l) => write!(f, "duplicate vertex label {l:?}"),
            GraphError::SelfLoop(l) => write!(f, "self-loop at vertex {l:?} is not allowed"),
            GraphError::ParallelEdge(a, b) => {
                write!(f, "more than one edge from {a:?} to {b:?}")
            }
            GraphError::NonPositiveWeight(a, b) => {
                write!(f, "edge {a:?} -> {b:?} must have strictly positive weight")
            }
            GraphError::UnknownEndpoint(l) => write!(f, "unknown vertex label {l:?}"),
            GraphError::WrongSubsetSize { expected, got } => {
                write!(f, "edge subset has {got} edges, expected {expected}")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// A finite directed graph with labelled vertices and weighted edges.
///
/// At most one edge per ordered vertex pair; antiparallel pairs are fine.
/// Vertex and edge order is input order and fixes the row/column order of
/// every matrix derived from the graph. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
    weighted: bool,
}

impl Digraph {
    /// Build a digraph from vertex labels and `(from, to, weight)` edge specs.
    ///
    /// Vertices keep the given order; edge `k` of the input becomes edge id
    /// `k` (rendered `e{k+1}`).
    pub fn new<L, F, T>(
        labels: impl IntoIterator<Item = L>,
        edge_specs: impl IntoIterator<Item = (F, T, Rational)>,
    ) -> Result<Self, GraphError>
    where
        L: Into<String>,
        F: AsRef<str>,
        T: AsRef<str>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(GraphError::NoVertices);
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(GraphError::EmptyLabel);
            }
            if labels[..i].contains(l) {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }

        let index_of = |label: &str| -> Result<VertexId, GraphError> {
            labels
                .iter()
                .position(|l| l == label)
                .map(VertexId)
                .ok_or_else(|| GraphError::UnknownEndpoint(label.into()))
        };

        let mut edges: Vec<Edge> = Vec::new();
        for (k, (from, to, weight)) in edge_specs.into_iter().enumerate() {
            let (from, to) = (from.as_ref(), to.as_ref());
            let (fi, ti) = (index_of(from)?, index_of(to)?);
            if fi == ti {
                return Err(GraphError::SelfLoop(from.into()));
            }
            if weight <= Rational::zero() {
                return Err(GraphError::NonPositiveWeight(from.into(), to.into()));
            }
            if edges.iter().any(|e| e.from == fi && e.to == ti) {
                return Err(GraphError::ParallelEdge(from.into(), to.into()));
            }
            edges.push(Edge {
                id: EdgeId(k),
                from: fi,
                to: ti,
                weight,
            });
        }

        let weighted = edges.iter().any(|e| !e.weight.is_one());
        Ok(Digraph {
            labels,
            edges,
            weighted,
        })
    }

    /// Unweighted convenience constructor: every edge gets weight 1.
    pub fn unweighted<L, F, T>(
        labels: impl IntoIterator<Item = L>,
        edge_specs: impl IntoIterator<Item = (F, T)>,
    ) -> Result<Self, GraphError>
    where
        L: Into<String>,
        F: AsRef<str>,
        T: AsRef<str>,
    {
        Self::new(
            labels,
            edge_specs
                .into_iter()
                .map(|(f, t)| (f, t, Rational::one())),
        )
    }

    /// Number of vertices `p`.
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of edges `q`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True if any edge weight differs from 1.
    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.labels.len()).map(VertexId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label).map(VertexId)
    }

    fn check_vertex(&self, v: VertexId) {
        assert!(v.0 < self.vertex_count(), "vertex index out of range");
    }

    fn check_subset(&self, s: &EdgeSubset) {
        if let Some(last) = s.ids().last() {
            assert!(last.0 < self.edge_count(), "edge id out of range");
        }
    }

    /// Count edges into (`Direction::In`) or out of (`Direction::Out`) `v`,
    /// optionally restricted to an edge subset.
    pub fn degree(&self, v: VertexId, direction: Direction, restrict: Option<&EdgeSubset>) -> usize {
        self.check_vertex(v);
        if let Some(s) = restrict {
            self.check_subset(s);
        }
        self.edges
            .iter()
            .filter(|e| restrict.is_none_or(|s| s.contains(e.id)))
            .filter(|e| match direction {
                Direction::In => e.to == v,
                Direction::Out => e.from == v,
            })
            .count()
    }

    /// True iff the subgraph on all vertices with edge set `restrict`
    /// contains a directed cycle. Iterative three-color depth-first search.
    pub fn has_directed_cycle(&self, restrict: &EdgeSubset) -> bool {
        self.check_subset(restrict);
        let p = self.vertex_count();
        let mut successors: Vec<Vec<usize>> = vec![Vec::new(); p];
        for id in restrict.iter() {
            let e = self.edge(id);
            successors[e.from.0].push(e.to.0);
        }

        // 0 = unvisited, 1 = on the current DFS path, 2 = done
        let mut color = vec![0u8; p];
        for start in 0..p {
            if color[start] != 0 {
                continue;
            }
            // stack holds (vertex, next successor index to try)
            let mut stack = vec![(start, 0usize)];
            color[start] = 1;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < successors[v].len() {
                    let w = successors[v][*next];
                    *next += 1;
                    match color[w] {
                        0 => {
                            color[w] = 1;
                            stack.push((w, 0));
                        }
                        1 => return true,
                        _ => {}
                    }
                } else {
                    color[v] = 2;
                    stack.pop();
                }
            }
        }
        false
    }

    /// Test an edge subset against the three conditions defining a directed
    /// spanning tree rooted at `root`.
    ///
    /// Outgoing mode: every non-root vertex has in-degree 1 within `s`, the
    /// root has in-degree 0, and `s` is acyclic. Incoming mode uses
    /// out-degrees. `s` must have exactly `p - 1` edges.
    pub fn classify_spanning_tree(
        &self,
        s: &EdgeSubset,
        root: VertexId,
        mode: Mode,
    ) -> Result<TreeClassification, GraphError> {
        self.check_vertex(root);
        self.check_subset(s);
        let p = self.vertex_count();
        if s.len() != p - 1 {
            return Err(GraphError::WrongSubsetSize {
                expected: p - 1,
                got: s.len(),
            });
        }

        let direction = mode.constrained_direction();
        let mut deg = vec![0usize; p];
        for id in s.iter() {
            let e = self.edge(id);
            let v = match direction {
                Direction::In => e.to,
                Direction::Out => e.from,
            };
            deg[v.0] += 1;
        }

        for v in self.vertices() {
            if v != root && deg[v.0] != 1 {
                return Ok(TreeClassification::BadNonRootDegree(v));
            }
        }
        if deg[root.0] != 0 {
            return Ok(TreeClassification::RootHasWrongDegree);
        }
        if self.has_directed_cycle(s) {
            return Ok(TreeClassification::ContainsCycle);
        }
        Ok(TreeClassification::Tree)
    }

    /// True iff every ordered vertex pair is joined by a directed path.
    pub fn is_strongly_connected(&self) -> bool {
        let p = self.vertex_count();
        if p == 1 {
            return true;
        }
        // Strongly connected iff vertex 0 reaches everything in the graph
        // and in its reverse.
        self.reaches_all_from_zero(false) && self.reaches_all_from_zero(true)
    }

    fn reaches_all_from_zero(&self, reversed: bool) -> bool {
        let p = self.vertex_count();
        let mut successors: Vec<Vec<usize>> = vec![Vec::new(); p];
        for e in &self.edges {
            let (from, to) = if reversed {
                (e.to.0, e.from.0)
            } else {
                (e.from.0, e.to.0)
            };
            successors[from].push(to);
        }
        let mut seen = vec![false; p];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &successors[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == p
    }

    /// The graph with every edge direction flipped (ids, order and weights
    /// unchanged). Swaps the roles of outgoing and incoming trees.
    pub fn reversed(&self) -> Digraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                id: e.id,
                from: e.to,
                to: e.from,
                weight: e.weight.clone(),
            })
            .collect();
        Digraph {
            labels: self.labels.clone(),
            edges,
            weighted: self.weighted,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    /// The three-vertex, five-edge graph used as a fixture throughout:
    /// e1: v1->v2, e2: v2->v3, e3: v3->v2, e4: v3->v1, e5: v1->v3.
    pub(crate) fn sample_graph() -> Digraph {
        Digraph::unweighted(
            ["v1", "v2", "v3"],
            [
                ("v1", "v2"),
                ("v2", "v3"),
                ("v3", "v2"),
                ("v3", "v1"),
                ("v1", "v3"),
            ],
        )
        .unwrap()
    }

    pub(crate) fn subset(ids: &[usize]) -> EdgeSubset {
        EdgeSubset::from_indices(ids.iter().copied())
    }

    #[test]
    fn builds_sample_graph() {
        let g = sample_graph();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 5);
        assert!(!g.is_weighted());
        assert_eq!(g.edge(EdgeId(3)).from, VertexId(2));
        assert_eq!(g.edge(EdgeId(3)).to, VertexId(0));
    }

    #[test]
    fn single_vertex_graph_is_legal() {
        let g = Digraph::unweighted(["a"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Digraph::unweighted(["v1"], [("v1", "v1")]),
            Err(GraphError::SelfLoop("v1".into()))
        );
        assert_eq!(
            Digraph::unweighted(["v1", "v1"], Vec::<(&str, &str)>::new()),
            Err(GraphError::DuplicateLabel("v1".into()))
        );
        assert_eq!(
            Digraph::unweighted(["v1", "v2"], [("v1", "v2"), ("v1", "v2")]),
            Err(GraphError::ParallelEdge("v1".into(), "v2".into()))
        );
        assert_eq!(
            Digraph::new(["v1", "v2"], [("v1", "v2", rat(0, 1))]),
            Err(GraphError::NonPositiveWeight("v1".into(), "v2".into()))
        );
        assert_eq!(
            Digraph::unweighted(["v1", "v2"], [("v1", "v3")]),
            Err(GraphError::UnknownEndpoint("v3".into()))
        );
        assert_eq!(
            Digraph::unweighted(Vec::<&str>::new(), Vec::<(&str, &str)>::new()),
            Err(GraphError::NoVertices)
        );
    }

    #[test]
    fn antiparallel_pair_is_allowed() {
        let g = Digraph::unweighted(["a", "b"], [("a", "b"), ("b", "a")]).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn degrees_match_sample_graph() {
        let g = sample_graph();
        let ins: Vec<usize> = g.vertices().map(|v| g.degree(v, Direction::In, None)).collect();
        let outs: Vec<usize> = g.vertices().map(|v| g.degree(v, Direction::Out, None)).collect();
        assert_eq!(ins, [1, 2, 2]);
        assert_eq!(outs, [2, 1, 2]);
    }

    #[test]
    fn degree_with_empty_restriction_is_zero() {
        let g = sample_graph();
        let empty = subset(&[]);
        for v in g.vertices() {
            assert_eq!(g.degree(v, Direction::In, Some(&empty)), 0);
            assert_eq!(g.degree(v, Direction::Out, Some(&empty)), 0);
        }
    }

    #[test]
    fn degree_sums_equal_edge_count() {
        let g = sample_graph();
        let q = g.edge_count();
        let in_sum: usize = g.vertices().map(|v| g.degree(v, Direction::In, None)).sum();
        let out_sum: usize = g.vertices().map(|v| g.degree(v, Direction::Out, None)).sum();
        assert_eq!(in_sum, q);
        assert_eq!(out_sum, q);
    }

    #[test]
    fn cycle_detection() {
        let g = sample_graph();
        assert!(g.has_directed_cycle(&subset(&[1, 2]))); // {e2,e3}
        assert!(!g.has_directed_cycle(&subset(&[0, 3]))); // {e1,e4}
        assert!(g.has_directed_cycle(&subset(&[0, 1, 3]))); // {e1,e2,e4}
        assert!(!g.has_directed_cycle(&subset(&[])));
    }

    #[test]
    fn classify_trees_of_sample_graph() {
        let g = sample_graph();
        let v3 = VertexId(2);
        assert_eq!(
            g.classify_spanning_tree(&subset(&[0, 3]), v3, Mode::Outgoing),
            Ok(TreeClassification::Tree)
        );
        assert_eq!(
            g.classify_spanning_tree(&subset(&[1, 4]), v3, Mode::Incoming),
            Ok(TreeClassification::Tree)
        );
        // {e2,e3} is a cycle, but v1 has in-degree 0, which fires first.
        assert_eq!(
            g.classify_spanning_tree(&subset(&[1, 2]), v3, Mode::Outgoing),
            Ok(TreeClassification::BadNonRootDegree(VertexId(0)))
        );
    }

    #[test]
    fn classify_reports_first_failure_in_order() {
        let g = sample_graph();
        let v3 = VertexId(2);
        // {e2,e5}: in-degrees v1=0 -> non-root degree fires.
        assert_eq!(
            g.classify_spanning_tree(&subset(&[1, 4]), v3, Mode::Outgoing),
            Ok(TreeClassification::BadNonRootDegree(VertexId(0)))
        );
        // {e1,e2} rooted at v1: v2 in 1, v3 in 1, root v1 in 0 -> Tree.
        assert_eq!(
            g.classify_spanning_tree(&subset(&[0, 1]), VertexId(0), Mode::Outgoing),
            Ok(TreeClassification::Tree)
        );
        // {e3,e4} rooted at v1 outgoing: v2 in 1 (e3), v3 in 0 -> bad.
        assert_eq!(
            g.classify_spanning_tree(&subset(&[2, 3]), VertexId(0), Mode::Outgoing),
            Ok(TreeClassification::BadNonRootDegree(VertexId(2)))
        );
        // With |s| = p-1, an edge into the root always starves a non-root
        // vertex, so the non-root degree case fires before the root case:
        let h = Digraph::unweighted(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(
            h.classify_spanning_tree(&subset(&[0, 1]), VertexId(1), Mode::Outgoing),
            Ok(TreeClassification::BadNonRootDegree(VertexId(0)))
        );
        // Cycle case: degrees fine but the subset wraps around on itself.
        let k = Digraph::unweighted(
            ["a", "b", "c", "d"],
            [("a", "b"), ("b", "a"), ("a", "c"), ("c", "d"), ("d", "c")],
        )
        .unwrap();
        // rooted at d outgoing with {a->b, b->a, a->c}: a, b, c all in-degree 1,
        // d in-degree 0, but a<->b is a directed cycle.
        assert_eq!(
            k.classify_spanning_tree(&subset(&[0, 1, 2]), VertexId(3), Mode::Outgoing),
            Ok(TreeClassification::ContainsCycle)
        );
    }

    #[test]
    fn classify_rejects_wrong_subset_size() {
        let g = sample_graph();
        assert_eq!(
            g.classify_spanning_tree(&subset(&[0]), VertexId(2), Mode::Outgoing),
            Err(GraphError::WrongSubsetSize {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn single_vertex_empty_subset_is_a_tree() {
        let g = Digraph::unweighted(["a"], Vec::<(&str, &str)>::new()).unwrap();
        for mode in [Mode::Outgoing, Mode::Incoming] {
            assert_eq!(
                g.classify_spanning_tree(&subset(&[]), VertexId(0), mode),
                Ok(TreeClassification::Tree)
            );
        }
    }

    #[test]
    fn strong_connectivity() {
        assert!(sample_graph().is_strongly_connected());
        let single = Digraph::unweighted(["a"], Vec::<(&str, &str)>::new()).unwrap();
        assert!(single.is_strongly_connected());
        let one_way = Digraph::unweighted(["v1", "v2"], [("v1", "v2")]).unwrap();
        assert!(!one_way.is_strongly_connected());
    }

    #[test]
    fn reversal_swaps_modes() {
        let g = sample_graph();
        let rev = g.reversed();
        let v3 = VertexId(2);
        for ids in [[0usize, 3], [1, 2], [0, 1], [2, 4]] {
            let s = subset(&ids);
            assert_eq!(
                g.classify_spanning_tree(&s, v3, Mode::Outgoing),
                rev.classify_spanning_tree(&s, v3, Mode::Incoming)
            );
        }
    }

    #[test]
    fn weighted_flag_tracks_weights() {
        let g = Digraph::new(["a", "b"], [("a", "b", rat(3, 2))]).unwrap();
        assert!(g.is_weighted());
        let h = Digraph::new(["a", "b"], [("a", "b", Rational::one())]).unwrap();
        assert!(!h.is_weighted());
    }
}
