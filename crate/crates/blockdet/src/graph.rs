//! The weighted digraph of a square matrix.
//!
//! Vertex ids are 1-based and match matrix row indices: entry `a(u,v)` of an
//! `n x n` matrix is the weight of edge `(u, v)` when `u != v` and nonzero,
//! and the loop weight at `u` when `u == v` and nonzero. Zero entries have no
//! edge; explicit and structural zeros are indistinguishable.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// A sorted, duplicate-free set of 1-based vertex ids with deterministic
/// ascending iteration.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn range(lo: usize, hi: usize) -> Self {
        VertexSet((lo..=hi).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Elements of `self` not in `other`.
    pub fn minus(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl From<&[usize]> for VertexSet {
    fn from(ids: &[usize]) -> Self {
        VertexSet::new(ids.to_vec())
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(ids: [usize; N]) -> Self {
        VertexSet::new(ids.to_vec())
    }
}

/// Weighted digraph with loops kept separate from off-diagonal edges.
/// Immutable after construction; edge iteration is ordered by `(u, v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedDigraph {
    vertices: VertexSet,
    edges: BTreeMap<(usize, usize), Scalar>,
    loops: BTreeMap<usize, Scalar>,
}

impl WeightedDigraph {
    /// Digraph of a square matrix, with vertex ids `1..=n`.
    pub fn from_matrix(m: &Matrix) -> WeightedDigraph {
        let n = m.order();
        let mut edges = BTreeMap::new();
        let mut loops = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let a = m.get(i, j);
                if a.is_zero() {
                    continue;
                }
                if i == j {
                    loops.insert(i + 1, a.clone());
                } else {
                    edges.insert((i + 1, j + 1), a.clone());
                }
            }
        }
        WeightedDigraph {
            vertices: VertexSet::range(1, n),
            edges,
            loops,
        }
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.edges.iter().map(|(&(u, v), w)| (u, v, w))
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Option<&Scalar> {
        self.edges.get(&(u, v))
    }

    pub fn loop_weight(&self, v: usize) -> Option<&Scalar> {
        self.loops.get(&v)
    }

    pub fn loops(&self) -> &BTreeMap<usize, Scalar> {
        &self.loops
    }

    /// Induced subdigraph on `s`: keeps exactly the edges and loops with all
    /// endpoints in `s`.
    pub fn induced_subdigraph(&self, s: &VertexSet) -> Result<WeightedDigraph> {
        if let Some(bad) = s.iter().find(|&v| !self.vertices.contains(v)) {
            return Err(Error::Domain(format!(
                "vertex v{bad} is not in the digraph"
            )));
        }
        let edges = self
            .edges
            .iter()
            .filter(|(&(u, v), _)| s.contains(u) && s.contains(v))
            .map(|(&k, w)| (k, w.clone()))
            .collect();
        let loops = self
            .loops
            .iter()
            .filter(|(&v, _)| s.contains(v))
            .map(|(&v, w)| (v, w.clone()))
            .collect();
        Ok(WeightedDigraph {
            vertices: s.clone(),
            edges,
            loops,
        })
    }

    /// Undirected simple adjacency of the underlying graph: for every pair
    /// with an edge in either direction, both endpoints list each other once.
    /// Loops are ignored. Keyed and ordered by vertex id.
    pub fn undirected_adjacency(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut adj: BTreeMap<usize, Vec<usize>> =
            self.vertices.iter().map(|v| (v, Vec::new())).collect();
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in self.edges.keys() {
            let key = (u.min(v), u.max(v));
            if seen.insert(key) {
                adj.get_mut(&u).unwrap().push(v);
                adj.get_mut(&v).unwrap().push(u);
            }
        }
        for nbrs in adj.values_mut() {
            nbrs.sort_unstable();
        }
        adj
    }
}

/// `|s| x |s|` principal submatrix of `m` on the 1-based indices in `s`,
/// rows and columns taken in ascending order.
pub fn principal_submatrix(m: &Matrix, s: &VertexSet) -> Result<Matrix> {
    let n = m.order();
    if let Some(bad) = s.iter().find(|&v| v == 0 || v > n) {
        return Err(Error::Domain(format!(
            "index {bad} is outside 1..={n}"
        )));
    }
    let ids = s.as_slice();
    Matrix::from_fn(ids.len(), |i, j| m.get(ids[i] - 1, ids[j] - 1).clone())
}
