//! Determinants and permanents of sparse matrices via block decomposition.
//!
//! A square matrix corresponds to a weighted digraph: vertex `u` for row
//! `u`, an edge `(u, v)` per nonzero off-diagonal entry, a loop per nonzero
//! diagonal entry. When that digraph is separable, its blocks (2-connected
//! components) are usually much smaller than the matrix, and both the
//! determinant and the permanent can be assembled from dense kernel runs on
//! induced subdigraphs of the blocks:
//!
//! * [`blocks`] finds the blocks and cut-vertices,
//! * [`bpartition`] enumerates the B-partitions (one part per block,
//!   vertex-disjoint, covering the graph),
//! * [`kernels`] supplies exact and float dense kernels (Bareiss, LU,
//!   Ryser, bordered/Schur updates) plus naive oracles,
//! * [`blockcompute`] runs the cut-vertex-removal summation that combines
//!   per-block values into `det(A)` and `per(A)`,
//! * [`advisor`] evaluates the parameterized cost model that decides when
//!   the block route beats the dense kernels,
//! * [`generator`] builds seeded random matrices with a known block
//!   structure for tests and benchmarks.
//!
//! Exact arithmetic (arbitrary-precision integers, promoting to rationals
//! where coefficients demand it) is the default; binary64 mode is opt-in
//! per matrix. With the default `parallel` feature the summand cache fill
//! and large Ryser runs are data-parallel via rayon; disabling the feature
//! yields the purely sequential build with identical exact results.

pub mod advisor;
pub mod blockcompute;
pub mod blocks;
pub mod bpartition;
pub mod error;
pub mod fixtures;
pub mod generator;
pub mod graph;
pub mod kernels;
pub mod matrix;
mod par;
pub mod scalar;

pub use error::{Error, Result};
pub use graph::{VertexSet, WeightedDigraph};
pub use matrix::Matrix;
pub use scalar::{ArithmeticMode, Scalar};
