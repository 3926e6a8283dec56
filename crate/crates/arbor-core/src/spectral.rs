//! Kernel eigenvectors of both Laplacians computed combinatorially from
//! per-root tree counts, cofactor-constancy verification, and
//! sum-to-one normalization into a stationary vector.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::counting::count_trees;
use crate::graph::{Digraph, Mode};
use crate::laplacian::laplacians;
use crate::matrix::Matrix;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectralError {
    /// Cofactor constancy is only defined for matrices whose column sums
    /// all vanish.
    ColumnSumsNonzero,
    /// The graph admits no spanning tree of this mode at any root, so
    /// there is nothing to normalize.
    ZeroVector,
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::ColumnSumsNonzero => {
                write!(f, "matrix column sums are not all zero")
            }
            SpectralError::ZeroVector => {
                write!(f, "tree-count vector is zero; no spanning tree exists at any root")
            }
        }
    }
}

impl core::error::Error for SpectralError {}

/// Per-vertex tree counts (or weighted totals): entry `i` is the count of
/// trees rooted at vertex `i`. A kernel vector of the matching Laplacian
/// whenever it is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeVector {
    pub mode: Mode,
    pub entries: Vec<Rational>,
    pub all_zero: bool,
}

impl TreeVector {
    pub fn as_column(&self) -> Matrix {
        Matrix::column(self.entries.clone())
    }
}

/// A tree vector normalized to sum exactly 1. Entrywise positive when the
/// graph is strongly connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StationaryVector {
    pub mode: Mode,
    pub entries: Vec<Rational>,
}

/// Tree counts at every root, computed as `p` reduced-Laplacian
/// determinants (never by a numeric eigensolver).
pub fn tree_vector(g: &Digraph, mode: Mode) -> TreeVector {
    let entries: Vec<Rational> = g
        .vertices()
        .map(|v| count_trees(g, v, mode).value)
        .collect();
    let all_zero = entries.iter().all(Zero::is_zero);
    TreeVector {
        mode,
        entries,
        all_zero,
    }
}

/// True iff `L1 x = 0` and `L2 y = 0` exactly, where `x` and `y` are the
/// outgoing and incoming tree vectors.
pub fn verify_kernel(g: &Digraph) -> bool {
    let lp = laplacians(g);
    let x = tree_vector(g, Mode::Outgoing).as_column();
    let y = tree_vector(g, Mode::Incoming).as_column();
    lp.l1.multiply(&x).expect("shapes match").is_zero()
        && lp.l2.multiply(&y).expect("shapes match").is_zero()
}

/// True iff all cofactors within each column of `m` are equal.
///
/// Requires a square matrix whose column sums all vanish (the property
/// that makes column cofactors constant in the first place).
pub fn verify_cofactor_constancy(m: &Matrix) -> Result<bool, SpectralError> {
    assert!(m.is_square(), "cofactor constancy needs a square matrix");
    let n = m.rows();
    for j in 0..n {
        let mut sum = Rational::zero();
        for i in 0..n {
            sum += m[(i, j)].clone();
        }
        if !sum.is_zero() {
            return Err(SpectralError::ColumnSumsNonzero);
        }
    }
    for j in 0..n {
        let first = m.cofactor(0, j).expect("indices in range");
        for i in 1..n {
            if m.cofactor(i, j).expect("indices in range") != first {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The first-row cofactor of each column. When column sums vanish these
/// are the common per-column values checked by
/// [`verify_cofactor_constancy`]; for a Laplacian, column `j`'s value is
/// the tree count rooted at vertex `j`.
pub fn column_cofactors(m: &Matrix) -> Vec<Rational> {
    (0..m.cols())
        .map(|j| m.cofactor(0, j).expect("indices in range"))
        .collect()
}

/// The tree vector normalized to sum 1.
pub fn stationary(g: &Digraph, mode: Mode) -> Result<StationaryVector, SpectralError> {
    let tv = tree_vector(g, mode);
    if tv.all_zero {
        return Err(SpectralError::ZeroVector);
    }
    let sum: Rational = tv.entries.iter().fold(Rational::zero(), |a, b| a + b);
    let entries = tv.entries.iter().map(|e| e / &sum).collect();
    Ok(StationaryVector { mode, entries })
}
