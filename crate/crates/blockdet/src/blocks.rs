//! Block (2-connected component) decomposition of a digraph.
//!
//! Biconnectivity is computed on the underlying undirected simple graph:
//! edge direction, weights and loops are all ignored. Every result is
//! normalized — blocks sorted by ascending vertex list, cut-vertices
//! ascending — so decompositions compare with `==` and downstream
//! enumeration order is reproducible.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{VertexSet, WeightedDigraph};

/// Blocks, cut-vertices and their bookkeeping for one digraph.
///
/// Block indices are 0-based positions into `blocks()`. For a cut-vertex `v`,
/// `membership(v)` lists the blocks containing it and `cut_index(v)` is the
/// length of that list (always >= 2).
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDecomposition {
    blocks: Vec<VertexSet>,
    components: Vec<VertexSet>,
    component_of_block: Vec<usize>,
    cut_vertices: Vec<usize>,
    membership: BTreeMap<usize, Vec<usize>>,
    block_cuts: Vec<Vec<usize>>,
}

impl BlockDecomposition {
    /// Normalize a raw block list into a full decomposition. The list must
    /// come from an actual graph decomposition: distinct blocks may share at
    /// most one vertex, and the per-component size identity
    /// `sum(n_i - 1) + 1 = component order` must hold (asserted).
    pub(crate) fn from_block_list(mut blocks: Vec<VertexSet>) -> BlockDecomposition {
        blocks.sort();

        // membership: vertex -> blocks containing it
        let mut by_vertex: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, b) in blocks.iter().enumerate() {
            for v in b.iter() {
                by_vertex.entry(v).or_default().push(i);
            }
        }

        // components: union-find over blocks joined by shared vertices
        let mut parent: Vec<usize> = (0..blocks.len()).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                parent[r] = parent[parent[r]];
                r = parent[r];
            }
            r
        }
        for ids in by_vertex.values() {
            for w in ids.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut comp_vertices: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, block) in blocks.iter().enumerate() {
            let root = find(&mut parent, i);
            comp_vertices.entry(root).or_default().extend(block.iter());
        }
        let mut components: Vec<VertexSet> =
            comp_vertices.into_values().map(VertexSet::new).collect();
        components.sort();
        let component_of_block = blocks
            .iter()
            .map(|b| {
                components
                    .iter()
                    .position(|c| b.is_subset_of(c))
                    .expect("block outside every component")
            })
            .collect();

        let membership: BTreeMap<usize, Vec<usize>> = by_vertex
            .into_iter()
            .filter(|(_, ids)| ids.len() >= 2)
            .collect();
        let cut_vertices: Vec<usize> = membership.keys().copied().collect();
        let block_cuts: Vec<Vec<usize>> = blocks
            .iter()
            .map(|b| cut_vertices.iter().copied().filter(|&v| b.contains(v)).collect())
            .collect();

        let d = BlockDecomposition {
            blocks,
            components,
            component_of_block,
            cut_vertices,
            membership,
            block_cuts,
        };
        assert!(
            d.size_identity_holds(),
            "block size identity violated: {:?}",
            d.blocks
        );
        d
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn components(&self) -> &[VertexSet] {
        &self.components
    }

    pub fn component_of_block(&self, block: usize) -> usize {
        self.component_of_block[block]
    }

    pub fn cut_vertices(&self) -> &[usize] {
        &self.cut_vertices
    }

    /// T(v): how many blocks contain cut-vertex `v`.
    pub fn cut_index(&self, v: usize) -> Option<usize> {
        self.membership.get(&v).map(Vec::len)
    }

    /// S(v): sorted indices of the blocks containing cut-vertex `v`.
    pub fn membership(&self, v: usize) -> Option<&[usize]> {
        self.membership.get(&v).map(Vec::as_slice)
    }

    /// Sorted cut-vertices lying inside block `i` (t_i entries).
    pub fn block_cut_vertices(&self, block: usize) -> &[usize] {
        &self.block_cuts[block]
    }

    pub fn block_cut_count(&self, block: usize) -> usize {
        self.block_cuts[block].len()
    }

    pub fn vertex_count(&self) -> usize {
        self.components.iter().map(VertexSet::len).sum()
    }

    /// Per-component size identity: `sum over blocks (n_i - 1) + 1` equals
    /// the component order.
    pub fn size_identity_holds(&self) -> bool {
        self.components.iter().enumerate().all(|(c, comp)| {
            let sum: usize = self
                .blocks
                .iter()
                .zip(&self.component_of_block)
                .filter(|(_, &bc)| bc == c)
                .map(|(b, _)| b.len() - 1)
                .sum();
            sum + 1 == comp.len()
        })
    }

    /// The decomposition restricted to one connected component, with block
    /// indices renumbered. Vertex ids are unchanged.
    pub fn restrict_to_component(&self, component: usize) -> BlockDecomposition {
        let blocks = self
            .blocks
            .iter()
            .zip(&self.component_of_block)
            .filter(|(_, &c)| c == component)
            .map(|(b, _)| b.clone())
            .collect();
        BlockDecomposition::from_block_list(blocks)
    }
}

/// Decompose `g` into blocks and cut-vertices (Hopcroft–Tarjan, iterative).
/// An isolated vertex forms a singleton block; loops never affect
/// connectivity. The empty digraph yields an empty decomposition.
pub fn decompose(g: &WeightedDigraph) -> BlockDecomposition {
    let adj = g.undirected_adjacency();
    let ids: Vec<usize> = g.vertices().iter().collect();
    let index: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = ids.len();

    const UNSET: usize = usize::MAX;
    let mut disc = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut raw_blocks: Vec<VertexSet> = Vec::new();

    // frame: (vertex, parent, next unread position in its adjacency list)
    let mut frames: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSET {
            continue;
        }
        if adj[&ids[root]].is_empty() {
            disc[root] = timer;
            timer += 1;
            raw_blocks.push(VertexSet::from([ids[root]]));
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        frames.push((root, UNSET, 0));
        while !frames.is_empty() {
            let (u, parent, next) = {
                let frame = frames.last_mut().unwrap();
                let (u, parent) = (frame.0, frame.1);
                let nbrs = &adj[&ids[u]];
                if frame.2 < nbrs.len() {
                    let v = index[&nbrs[frame.2]];
                    frame.2 += 1;
                    (u, parent, Some(v))
                } else {
                    (u, parent, None)
                }
            };
            match next {
                Some(v) if v == parent => {
                    // simple graph: the tree edge appears once, skip it
                }
                Some(v) if disc[v] == UNSET => {
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    edge_stack.push((u, v));
                    frames.push((v, u, 0));
                }
                Some(v) if disc[v] < disc[u] => {
                    // back edge to an ancestor
                    edge_stack.push((u, v));
                    low[u] = low[u].min(disc[v]);
                }
                Some(_) => {
                    // mirror of a back edge already recorded from the other end
                }
                None => {
                    frames.pop();
                    if parent != UNSET {
                        low[parent] = low[parent].min(low[u]);
                        if low[u] >= disc[parent] {
                            // edges popped down to (parent, u) form one block
                            let mut members = Vec::new();
                            while let Some((a, b)) = edge_stack.pop() {
                                members.push(ids[a]);
                                members.push(ids[b]);
                                if (a, b) == (parent, u) {
                                    break;
                                }
                            }
                            raw_blocks.push(VertexSet::new(members));
                        }
                    }
                }
            }
        }
        debug_assert!(edge_stack.is_empty());
    }

    BlockDecomposition::from_block_list(raw_blocks)
}

/// Reference cut-vertex finder: `v` is a cut-vertex iff deleting it strictly
/// increases the number of connected components. Quadratic; used to
/// cross-check [`decompose`].
pub fn cut_vertices_bruteforce(g: &WeightedDigraph) -> VertexSet {
    let adj = g.undirected_adjacency();
    let base = count_components(&adj, None);
    g.vertices()
        .iter()
        .filter(|&v| count_components(&adj, Some(v)) > base)
        .collect()
}

fn count_components(adj: &BTreeMap<usize, Vec<usize>>, skip: Option<usize>) -> usize {
    let mut seen: BTreeMap<usize, bool> = adj
        .keys()
        .filter(|&&v| Some(v) != skip)
        .map(|&v| (v, false))
        .collect();
    let mut count = 0;
    let roots: Vec<usize> = seen.keys().copied().collect();
    for root in roots {
        if seen[&root] {
            continue;
        }
        count += 1;
        let mut queue = vec![root];
        seen.insert(root, true);
        while let Some(u) = queue.pop() {
            for &w in &adj[&u] {
                if Some(w) == skip {
                    continue;
                }
                if let Some(flag) = seen.get_mut(&w) {
                    if !*flag {
                        *flag = true;
                        queue.push(w);
                    }
                }
            }
        }
    }
    count
}

/// `decompose(from_matrix(m))` in one call.
pub fn decompose_matrix(m: &crate::matrix::Matrix) -> BlockDecomposition {
    decompose(&WeightedDigraph::from_matrix(m))
}

/// Validate an assignment target: `block` must contain cut-vertex `v`.
pub(crate) fn check_assignment(d: &BlockDecomposition, v: usize, block: usize) -> Result<()> {
    match d.membership(v) {
        Some(s) if s.contains(&block) => Ok(()),
        Some(_) => Err(Error::Domain(format!(
            "cut-vertex v{v} is not in block {block}"
        ))),
        None => Err(Error::Domain(format!("v{v} is not a cut-vertex"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::WeightedDigraph;
    use crate::matrix::Matrix;

    fn digraph_from_undirected_edges(n: usize, edges: &[(usize, usize)]) -> WeightedDigraph {
        let mut m = Matrix::zeros(n);
        for &(u, v) in edges {
            m.set(u - 1, v - 1, crate::scalar::Scalar::one());
            m.set(v - 1, u - 1, crate::scalar::Scalar::one());
        }
        WeightedDigraph::from_matrix(&m)
    }

    #[test]
    fn chain_fixture_blocks_and_cuts() {
        let d = decompose_matrix(&fixtures::block_chain_7x7());
        let expect: Vec<VertexSet> = vec![
            VertexSet::from([1, 2, 3]),
            VertexSet::from([2, 4, 5, 6]),
            VertexSet::from([6, 7]),
        ];
        assert_eq!(d.blocks(), expect.as_slice());
        assert_eq!(d.cut_vertices(), &[2, 6]);
        assert_eq!(d.cut_index(2), Some(2));
        assert_eq!(d.cut_index(6), Some(2));
        assert_eq!(d.membership(2), Some(&[0, 1][..]));
        assert_eq!(d.membership(6), Some(&[1, 2][..]));
        assert_eq!(d.block_cut_vertices(1), &[2, 6]);
        assert_eq!(d.components().len(), 1);
    }

    #[test]
    fn star_fixture_blocks_and_cuts() {
        let d = decompose_matrix(&fixtures::block_star_8x8());
        let expect: Vec<VertexSet> = vec![
            VertexSet::from([1, 2, 3]),
            VertexSet::from([2, 4, 5, 6]),
            VertexSet::from([6, 7]),
            VertexSet::from([6, 8]),
        ];
        assert_eq!(d.blocks(), expect.as_slice());
        assert_eq!(d.cut_vertices(), &[2, 6]);
        assert_eq!(d.cut_index(2), Some(2));
        assert_eq!(d.cut_index(6), Some(3));
    }

    #[test]
    fn triangle_is_one_block() {
        let g = digraph_from_undirected_edges(3, &[(1, 2), (2, 3), (1, 3)]);
        let d = decompose(&g);
        assert_eq!(d.blocks(), &[VertexSet::from([1, 2, 3])]);
        assert!(d.cut_vertices().is_empty());
    }

    #[test]
    fn bruteforce_oracle_cases() {
        let g = WeightedDigraph::from_matrix(&fixtures::block_chain_7x7());
        assert_eq!(cut_vertices_bruteforce(&g), VertexSet::from([2, 6]));

        let path = digraph_from_undirected_edges(3, &[(1, 2), (2, 3)]);
        assert_eq!(cut_vertices_bruteforce(&path), VertexSet::from([2]));

        let k4 = digraph_from_undirected_edges(
            4,
            &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
        );
        assert!(cut_vertices_bruteforce(&k4).is_empty());
        assert!(decompose(&k4).cut_vertices().is_empty());
    }

    #[test]
    fn isolated_vertices_are_singleton_blocks() {
        let g = WeightedDigraph::from_matrix(&Matrix::zeros(2));
        let d = decompose(&g);
        assert_eq!(d.blocks(), &[VertexSet::from([1]), VertexSet::from([2])]);
        assert_eq!(d.components().len(), 2);
        assert!(d.size_identity_holds());
    }

    #[test]
    fn disconnected_graph_decomposes_per_component() {
        // path 1-2-3 plus edge 4-5
        let g = digraph_from_undirected_edges(5, &[(1, 2), (2, 3), (4, 5)]);
        let d = decompose(&g);
        assert_eq!(
            d.blocks(),
            &[
                VertexSet::from([1, 2]),
                VertexSet::from([2, 3]),
                VertexSet::from([4, 5]),
            ]
        );
        assert_eq!(d.cut_vertices(), &[2]);
        assert_eq!(d.components().len(), 2);
        assert_eq!(d.component_of_block(0), 0);
        assert_eq!(d.component_of_block(2), 1);
        let sub = d.restrict_to_component(0);
        assert_eq!(sub.block_count(), 2);
        assert_eq!(sub.cut_vertices(), &[2]);
        assert_eq!(sub.vertex_count(), 3);
    }

    #[test]
    fn direction_is_ignored() {
        // one-directional cycle 1->2->3->1 is still a single block
        let mut m = Matrix::zeros(3);
        m.set(0, 1, crate::scalar::Scalar::one());
        m.set(1, 2, crate::scalar::Scalar::one());
        m.set(2, 0, crate::scalar::Scalar::one());
        let d = decompose(&WeightedDigraph::from_matrix(&m));
        assert_eq!(d.block_count(), 1);
        assert!(d.cut_vertices().is_empty());
    }

    #[test]
    fn empty_digraph() {
        let d = decompose(&WeightedDigraph::from_matrix(&Matrix::zeros(0)));
        assert_eq!(d.block_count(), 0);
        assert_eq!(d.components().len(), 0);
        assert!(d.size_identity_holds());
    }
}
