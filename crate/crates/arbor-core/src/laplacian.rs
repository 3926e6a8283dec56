//! Incidence matrices, degree/adjacency matrices, both graph Laplacians
//! (weighted and unweighted), reduced forms, and verification of the
//! incidence factorization identities.
//!
//! Weighted incidence matrices carry square roots of edge weights, so they
//! are never materialized exactly. Every identity involving them is instead
//! evaluated through edge-paired products: each nonzero term pairs the two
//! square roots of the same edge weight, so the result is rational.

use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::graph::{Digraph, EdgeSubset, Mode, VertexId};
use crate::matrix::Matrix;
use crate::Rational;

/// Which of the two Laplacians to use: `L1 = D_in - A_v` counts outgoing
/// trees, `L2 = D_out - A_v^T` counts incoming ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianKind {
    L1,
    L2,
}

impl From<Mode> for LaplacianKind {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::Outgoing => LaplacianKind::L1,
            Mode::Incoming => LaplacianKind::L2,
        }
    }
}

impl fmt::Display for LaplacianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaplacianKind::L1 => f.write_str("L1"),
            LaplacianKind::L2 => f.write_str("L2"),
        }
    }
}

/// Both Laplacians of a digraph together with the matrices they are built
/// from. Column sums of `l1` and `l2` are all exactly zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaplacianPair {
    pub l1: Matrix,
    pub l2: Matrix,
    pub d_in: Matrix,
    pub d_out: Matrix,
    pub a_v: Matrix,
}

impl LaplacianPair {
    pub fn get(&self, kind: LaplacianKind) -> &Matrix {
        match kind {
            LaplacianKind::L1 => &self.l1,
            LaplacianKind::L2 => &self.l2,
        }
    }

    /// The chosen Laplacian with the root's row and column deleted.
    pub fn reduced(&self, kind: LaplacianKind, root: VertexId) -> Matrix {
        self.get(kind)
            .delete_row_col(root.0)
            .expect("root index is valid for a p x p Laplacian")
    }
}

/// The unweighted q x p incidence matrix: row k has a single 1 in the
/// column of edge k's head.
pub fn incidence_in(g: &Digraph) -> Matrix {
    let mut m = Matrix::zero(g.edge_count(), g.vertex_count());
    for e in g.edges() {
        m[(e.id.0, e.to.0)] = Rational::one();
    }
    m
}

/// The unweighted p x q incidence matrix: column k has a single 1 in the
/// row of edge k's tail.
pub fn incidence_out(g: &Digraph) -> Matrix {
    let mut m = Matrix::zero(g.vertex_count(), g.edge_count());
    for e in g.edges() {
        m[(e.from.0, e.id.0)] = Rational::one();
    }
    m
}

/// The weighted degree and adjacency matrices `(D_in, A_v, D_out)`,
/// accumulated edge-wise in exact arithmetic:
/// `[D_in]_ii` sums weights of edges into `v_i`, `[A_v]_ij` is the weight
/// of the edge `v_i -> v_j` (or 0), `[D_out]_ii` sums weights out of `v_i`.
///
/// For unweighted graphs these equal the literal products of the 0/1
/// incidence matrices: `N_in^T N_in`, `M_out N_in` and `M_out M_out^T`.
pub fn gram_products(g: &Digraph) -> (Matrix, Matrix, Matrix) {
    let p = g.vertex_count();
    let mut d_in = Matrix::zero(p, p);
    let mut a_v = Matrix::zero(p, p);
    let mut d_out = Matrix::zero(p, p);
    for e in g.edges() {
        d_in[(e.to.0, e.to.0)] += e.weight.clone();
        a_v[(e.from.0, e.to.0)] += e.weight.clone();
        d_out[(e.from.0, e.from.0)] += e.weight.clone();
    }
    (d_in, a_v, d_out)
}

/// Both Laplacians with exact entries.
pub fn laplacians(g: &Digraph) -> LaplacianPair {
    let (d_in, a_v, d_out) = gram_products(g);
    let l1 = d_in.sub(&a_v).expect("shapes match");
    let l2 = d_out.sub(&a_v.transpose()).expect("shapes match");
    LaplacianPair {
        l1,
        l2,
        d_in,
        d_out,
        a_v,
    }
}

/// Edge-paired evaluation of the factored Laplacian products.
///
/// For `L1` this is `(N_in^T - M_out) N_in`, for `L2` it is
/// `(M_out - N_in^T) M_out^T`, in each case restricted to the vertices
/// other than `root` (if given) and to the edges in `subset` (if given).
/// Each term of the product pairs the two square roots of one edge weight,
/// so entries are accumulated directly as rational weights.
pub fn edge_paired_product(
    g: &Digraph,
    kind: LaplacianKind,
    root: Option<VertexId>,
    subset: Option<&EdgeSubset>,
) -> Matrix {
    let p = g.vertex_count();
    // kept[v] = column/row index of v in the reduced matrix
    let mut kept: Vec<Option<usize>> = Vec::with_capacity(p);
    let mut n = 0;
    for v in 0..p {
        if root.is_some_and(|r| r.0 == v) {
            kept.push(None);
        } else {
            kept.push(Some(n));
            n += 1;
        }
    }

    let mut out = Matrix::zero(n, n);
    for e in g.edges() {
        if let Some(s) = subset {
            if !s.contains(e.id) {
                continue;
            }
        }
        let (tail, head) = (kept[e.from.0], kept[e.to.0]);
        match kind {
            LaplacianKind::L1 => {
                if let Some(h) = head {
                    out[(h, h)] += e.weight.clone();
                    if let Some(t) = tail {
                        out[(t, h)] -= e.weight.clone();
                    }
                }
            }
            LaplacianKind::L2 => {
                if let Some(t) = tail {
                    out[(t, t)] += e.weight.clone();
                    if let Some(h) = head {
                        out[(h, t)] -= e.weight.clone();
                    }
                }
            }
        }
    }
    out
}

/// Edge-paired evaluation of `M_out^r[S] N_in^r[S]`: the adjacency among
/// non-root vertices (ascending index order) induced by the edge subset.
/// Entry `(i, j)` is the weight of the subset edge from the i-th to the
/// j-th non-root vertex, or 0.
pub(crate) fn internal_adjacency(g: &Digraph, root: VertexId, subset: &EdgeSubset) -> Matrix {
    let p = g.vertex_count();
    let mut kept: Vec<Option<usize>> = Vec::with_capacity(p);
    let mut n = 0;
    for v in 0..p {
        if v == root.0 {
            kept.push(None);
        } else {
            kept.push(Some(n));
            n += 1;
        }
    }
    let mut out = Matrix::zero(n, n);
    for e in g.edges() {
        if !subset.contains(e.id) {
            continue;
        }
        if let (Some(t), Some(h)) = (kept[e.from.0], kept[e.to.0]) {
            out[(t, h)] += e.weight.clone();
        }
    }
    out
}

/// Check the incidence factorization identities exactly.
///
/// Always checks the edge-paired products against both full Laplacians and
/// against the reduced Laplacians (at the given root, or at every root when
/// omitted). For unweighted graphs additionally checks the literal matrix
/// products of the 0/1 incidence matrices, full and reduced.
///
/// A `false` return signals an internal inconsistency; it should not occur.
pub fn verify_factorization(g: &Digraph, root: Option<VertexId>) -> bool {
    let lp = laplacians(g);
    let roots: Vec<VertexId> = match root {
        Some(r) => alloc::vec![r],
        None => g.vertices().collect(),
    };

    // Edge-paired route (valid for weighted and unweighted graphs alike).
    if edge_paired_product(g, LaplacianKind::L1, None, None) != lp.l1 {
        return false;
    }
    if edge_paired_product(g, LaplacianKind::L2, None, None) != lp.l2 {
        return false;
    }
    for &r in &roots {
        for kind in [LaplacianKind::L1, LaplacianKind::L2] {
            if edge_paired_product(g, kind, Some(r), None) != lp.reduced(kind, r) {
                return false;
            }
        }
    }

    // Literal incidence-matrix route for unweighted graphs.
    if !g.is_weighted() {
        let n_in = incidence_in(g);
        let m_out = incidence_out(g);
        let n_in_t = n_in.transpose();

        let gram_ok = n_in_t.multiply(&n_in).unwrap() == lp.d_in
            && m_out.multiply(&n_in).unwrap() == lp.a_v
            && m_out.multiply(&m_out.transpose()).unwrap() == lp.d_out;
        if !gram_ok {
            return false;
        }

        let b1 = n_in_t.sub(&m_out).unwrap();
        if b1.multiply(&n_in).unwrap() != lp.l1 {
            return false;
        }
        let b2 = m_out.sub(&n_in_t).unwrap();
        if b2.multiply(&m_out.transpose()).unwrap() != lp.l2 {
            return false;
        }

        for &r in &roots {
            let keep: Vec<usize> = (0..g.vertex_count()).filter(|&v| v != r.0).collect();
            // N_in^r drops the root column, M_out^r drops the root row.
            let n_r = n_in.select(None, Some(&keep)).unwrap();
            let m_r = m_out.select(Some(&keep), None).unwrap();
            let b1_r = n_r.transpose().sub(&m_r).unwrap();
            if b1_r.multiply(&n_r).unwrap() != lp.reduced(LaplacianKind::L1, r) {
                return false;
            }
            let b2_r = m_r.sub(&n_r.transpose()).unwrap();
            if b2_r.multiply(&m_r.transpose()).unwrap() != lp.reduced(LaplacianKind::L2, r) {
                return false;
            }
        }
    }

    true
}

/// True iff every column sum of both Laplacians is exactly zero.
pub fn column_sums_vanish(g: &Digraph) -> bool {
    use num_traits::Zero;
    let lp = laplacians(g);
    for m in [&lp.l1, &lp.l2] {
        for j in 0..m.cols() {
            let mut sum = Rational::zero();
            for i in 0..m.rows() {
                sum += m[(i, j)].clone();
            }
            if !sum.is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Digraph;
    use alloc::vec::Vec;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn sample_graph() -> Digraph {
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

    fn weighted_sample_graph() -> Digraph {
        let w = [2, 3, 5, 7, 11];
        let ends = [
            ("v1", "v2"),
            ("v2", "v3"),
            ("v3", "v2"),
            ("v3", "v1"),
            ("v1", "v3"),
        ];
        Digraph::new(
            ["v1", "v2", "v3"],
            ends.iter()
                .zip(w)
                .map(|(&(f, t), w)| (f, t, rat(w, 1))),
        )
        .unwrap()
    }

    #[test]
    fn incidence_matrices_match_fixture() {
        let g = sample_graph();
        let n_in = incidence_in(&g);
        assert_eq!(
            n_in,
            Matrix::from_i64(&[
                &[0, 1, 0],
                &[0, 0, 1],
                &[0, 1, 0],
                &[1, 0, 0],
                &[0, 0, 1]
            ])
        );
        let m_out = incidence_out(&g);
        assert_eq!(
            m_out,
            Matrix::from_i64(&[
                &[1, 0, 0, 0, 1],
                &[0, 1, 0, 0, 0],
                &[0, 0, 1, 1, 0]
            ])
        );
    }

    #[test]
    fn incidence_of_edgeless_graph() {
        let g = Digraph::unweighted(["a", "b"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!((incidence_in(&g).rows(), incidence_in(&g).cols()), (0, 2));
        assert_eq!((incidence_out(&g).rows(), incidence_out(&g).cols()), (2, 0));
        let (d_in, a_v, d_out) = gram_products(&g);
        assert!(d_in.is_zero() && a_v.is_zero() && d_out.is_zero());
        let lp = laplacians(&g);
        assert!(lp.l1.is_zero() && lp.l2.is_zero());
        assert!(verify_factorization(&g, None));
    }

    #[test]
    fn gram_products_match_fixture() {
        let g = sample_graph();
        let (d_in, a_v, d_out) = gram_products(&g);
        assert_eq!(d_in, Matrix::from_i64(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 2]]));
        assert_eq!(a_v, Matrix::from_i64(&[&[0, 1, 1], &[0, 0, 1], &[1, 1, 0]]));
        assert_eq!(d_out, Matrix::from_i64(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 2]]));
    }

    #[test]
    fn weighted_gram_products() {
        let g = weighted_sample_graph();
        let (d_in, _, _) = gram_products(&g);
        assert_eq!(
            d_in,
            Matrix::from_i64(&[&[7, 0, 0], &[0, 7, 0], &[0, 0, 14]])
        );
    }

    #[test]
    fn gram_products_equal_literal_incidence_products_when_unweighted() {
        let g = sample_graph();
        let (d_in, a_v, d_out) = gram_products(&g);
        let n_in = incidence_in(&g);
        let m_out = incidence_out(&g);
        assert_eq!(n_in.transpose().multiply(&n_in).unwrap(), d_in);
        assert_eq!(m_out.multiply(&n_in).unwrap(), a_v);
        assert_eq!(m_out.multiply(&m_out.transpose()).unwrap(), d_out);
    }

    #[test]
    fn laplacians_match_fixture() {
        let lp = laplacians(&sample_graph());
        assert_eq!(
            lp.l1,
            Matrix::from_i64(&[&[1, -1, -1], &[0, 2, -1], &[-1, -1, 2]])
        );
        assert_eq!(
            lp.l2,
            Matrix::from_i64(&[&[2, 0, -1], &[-1, 1, -1], &[-1, -1, 2]])
        );
    }

    #[test]
    fn reduced_laplacians_match_fixture() {
        let lp = laplacians(&sample_graph());
        let v3 = VertexId(2);
        assert_eq!(
            lp.reduced(LaplacianKind::L1, v3),
            Matrix::from_i64(&[&[1, -1], &[0, 2]])
        );
        assert_eq!(
            lp.reduced(LaplacianKind::L2, v3),
            Matrix::from_i64(&[&[2, 0], &[-1, 1]])
        );

        let single = Digraph::unweighted(["a"], Vec::<(&str, &str)>::new()).unwrap();
        let lp1 = laplacians(&single);
        let reduced = lp1.reduced(LaplacianKind::L1, VertexId(0));
        assert_eq!((reduced.rows(), reduced.cols()), (0, 0));
    }

    #[test]
    fn factorization_holds_on_fixtures() {
        assert!(verify_factorization(&sample_graph(), Some(VertexId(2))));
        assert!(verify_factorization(&sample_graph(), None));
        assert!(verify_factorization(
            &weighted_sample_graph(),
            Some(VertexId(0))
        ));
        assert!(verify_factorization(&weighted_sample_graph(), None));
    }

    #[test]
    fn column_sums_are_zero() {
        assert!(column_sums_vanish(&sample_graph()));
        assert!(column_sums_vanish(&weighted_sample_graph()));
    }

    #[test]
    fn ones_row_annihilates_difference_factor() {
        // (1,...,1) (N_in^T - M_out) = 0 for unweighted graphs
        let g = sample_graph();
        let diff = incidence_in(&g).transpose().sub(&incidence_out(&g)).unwrap();
        let ones = Matrix::from_rows(alloc::vec![alloc::vec![
            Rational::one();
            g.vertex_count()
        ]]);
        assert!(ones.multiply(&diff).unwrap().is_zero());
    }

    #[test]
    fn incidence_rows_and_columns_have_one_nonzero() {
        use num_traits::Zero;
        let g = sample_graph();
        let n_in = incidence_in(&g);
        for k in 0..n_in.rows() {
            let nonzero = (0..n_in.cols())
                .filter(|&j| !n_in[(k, j)].is_zero())
                .count();
            assert_eq!(nonzero, 1);
        }
        let m_out = incidence_out(&g);
        for k in 0..m_out.cols() {
            let nonzero = (0..m_out.rows())
                .filter(|&i| !m_out[(i, k)].is_zero())
                .count();
            assert_eq!(nonzero, 1);
        }
    }

}
