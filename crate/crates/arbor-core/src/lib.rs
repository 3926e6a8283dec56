//! Exact-arithmetic toolkit for counting and enumerating rooted directed
//! spanning trees (arborescences) of weighted digraphs.
//!
//! Tree counts are obtained two independent ways: as determinants of reduced
//! graph Laplacians, and by brute-force enumeration of edge subsets. The
//! [`counting`] module also exposes the term-by-term Binet-Cauchy expansion
//! that connects the two, and [`spectral`] turns per-root counts into exact
//! kernel eigenvectors of both Laplacians.
//!
//! All arithmetic is exact: matrix entries, edge weights, determinants and
//! eigenvector entries are arbitrary-precision rationals. The crate is
//! `no_std` (with `alloc`); IO and the command-line front end live in the
//! companion `arbor-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod counting;
pub mod graph;
pub mod laplacian;
pub mod matrix;
pub mod spectral;
pub mod verify;

/// Exact rational scalar used for every weight, matrix entry and count.
///
/// Always stored in lowest terms with a positive denominator; zero is `0/1`.
pub type Rational = num_rational::BigRational;

pub use graph::{Digraph, Direction, Edge, EdgeId, EdgeSubset, GraphError, Mode, TreeClassification, VertexId};
pub use matrix::{Matrix, MatrixError};
