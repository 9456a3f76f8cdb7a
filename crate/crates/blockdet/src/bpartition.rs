//! B-partitions of a decomposed digraph.
//!
//! A B-partition assigns every cut-vertex to exactly one of the blocks
//! containing it. Block `i` then keeps its non-cut vertices plus the
//! cut-vertices assigned to it, and the resulting parts are vertex-disjoint
//! and cover the whole graph. There are `prod T(i)` of them, and
//! [`enumerate`] yields them lazily in lexicographic order of the assignment
//! vector (cut-vertices ascending, block choices in membership order).

use num::bigint::BigUint;
use num::traits::One;

use crate::blocks::{check_assignment, BlockDecomposition};
use crate::error::Result;
use crate::graph::VertexSet;

/// One B-partition: the assignment vector and the induced parts.
///
/// `assignment[j]` is the 0-based block index chosen for the `j`-th
/// cut-vertex (in ascending cut-vertex order); `parts[i]` is the vertex set
/// kept by block `i` and may be empty.
#[derive(Clone, Debug, PartialEq)]
pub struct BPartition {
    pub assignment: Vec<usize>,
    pub parts: Vec<VertexSet>,
}

/// Number of B-partitions: the product of the cut-indices, 1 when there are
/// no cut-vertices.
pub fn count(d: &BlockDecomposition) -> BigUint {
    d.cut_vertices()
        .iter()
        .map(|&v| BigUint::from(d.cut_index(v).unwrap()))
        .fold(BigUint::one(), |acc, t| acc * t)
}

/// Parts induced by an assignment: block `i` keeps every vertex except the
/// cut-vertices assigned to a different block.
pub fn parts_of(d: &BlockDecomposition, assignment: &[usize]) -> Result<Vec<VertexSet>> {
    let cuts = d.cut_vertices();
    if assignment.len() != cuts.len() {
        return Err(crate::error::Error::Domain(format!(
            "assignment has {} entries for {} cut-vertices",
            assignment.len(),
            cuts.len()
        )));
    }
    for (&v, &b) in cuts.iter().zip(assignment) {
        check_assignment(d, v, b)?;
    }
    Ok(d.blocks()
        .iter()
        .enumerate()
        .map(|(i, block)| {
            block
                .iter()
                .filter(|&v| match cuts.binary_search(&v) {
                    Ok(j) => assignment[j] == i,
                    Err(_) => true,
                })
                .collect()
        })
        .collect())
}

/// Streaming enumeration of all B-partitions. Each iterator owns its cursor,
/// so independent consumers can walk the same decomposition concurrently and
/// always see the identical sequence.
pub fn enumerate(d: &BlockDecomposition) -> BPartitions<'_> {
    BPartitions {
        inner: assignments(d),
    }
}

/// Assignment vectors only, in the same order as [`enumerate`]; the summation
/// path uses this to skip materializing parts.
pub(crate) fn assignments(d: &BlockDecomposition) -> Assignments<'_> {
    Assignments {
        decomposition: d,
        choices: vec![0; d.cut_vertices().len()],
        done: false,
    }
}

pub struct BPartitions<'a> {
    inner: Assignments<'a>,
}

impl Iterator for BPartitions<'_> {
    type Item = BPartition;

    fn next(&mut self) -> Option<BPartition> {
        let assignment = self.inner.next()?;
        let parts =
            parts_of(self.inner.decomposition, &assignment).expect("enumerated assignment is valid");
        Some(BPartition { assignment, parts })
    }
}

pub(crate) struct Assignments<'a> {
    decomposition: &'a BlockDecomposition,
    /// Per cut-vertex: position into its membership list (odometer).
    choices: Vec<usize>,
    done: bool,
}

impl Iterator for Assignments<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let d = self.decomposition;
        let cuts = d.cut_vertices();
        let assignment: Vec<usize> = cuts
            .iter()
            .zip(&self.choices)
            .map(|(&v, &c)| d.membership(v).unwrap()[c])
            .collect();

        // advance the odometer, rightmost position fastest
        let mut pos = self.choices.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            let t = d.cut_index(cuts[pos]).unwrap();
            if self.choices[pos] + 1 < t {
                self.choices[pos] += 1;
                break;
            }
            self.choices[pos] = 0;
        }

        Some(assignment)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::decompose_matrix;
    use crate::fixtures;
    use crate::matrix::Matrix;

    fn sets(ids: &[&[usize]]) -> Vec<VertexSet> {
        ids.iter().map(|s| VertexSet::from(*s)).collect()
    }

    #[test]
    fn counts_for_fixtures() {
        let d1 = decompose_matrix(&fixtures::block_chain_7x7());
        assert_eq!(count(&d1), BigUint::from(4u32));
        let d2 = decompose_matrix(&fixtures::block_star_8x8());
        assert_eq!(count(&d2), BigUint::from(6u32));
    }

    #[test]
    fn single_block_has_one_partition() {
        let d = decompose_matrix(&Matrix::from_i64_rows(&[&[1, 2], &[3, 4]]));
        assert_eq!(count(&d), BigUint::one());
        let all: Vec<_> = enumerate(&d).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].parts, sets(&[&[1, 2]]));
    }

    #[test]
    fn chain_fixture_enumeration_order_and_parts() {
        let d = decompose_matrix(&fixtures::block_chain_7x7());
        let all: Vec<_> = enumerate(&d).collect();
        assert_eq!(all.len(), 4);
        // lexicographic in the assignment vector over S(2) = [0,1], S(6) = [1,2]
        assert_eq!(all[0].assignment, vec![0, 1]);
        assert_eq!(all[0].parts, sets(&[&[1, 2, 3], &[4, 5, 6], &[7]]));
        assert_eq!(all[1].assignment, vec![0, 2]);
        assert_eq!(all[1].parts, sets(&[&[1, 2, 3], &[4, 5], &[6, 7]]));
        assert_eq!(all[2].assignment, vec![1, 1]);
        assert_eq!(all[2].parts, sets(&[&[1, 3], &[2, 4, 5, 6], &[7]]));
        assert_eq!(all[3].assignment, vec![1, 2]);
        assert_eq!(all[3].parts, sets(&[&[1, 3], &[2, 4, 5], &[6, 7]]));
    }

    #[test]
    fn star_fixture_enumeration() {
        let d = decompose_matrix(&fixtures::block_star_8x8());
        let all: Vec<_> = enumerate(&d).collect();
        assert_eq!(all.len(), 6);
        let expected = [
            sets(&[&[1, 2, 3], &[4, 5, 6], &[7], &[8]]),
            sets(&[&[1, 2, 3], &[4, 5], &[6, 7], &[8]]),
            sets(&[&[1, 2, 3], &[4, 5], &[7], &[6, 8]]),
            sets(&[&[1, 3], &[2, 4, 5, 6], &[7], &[8]]),
            sets(&[&[1, 3], &[2, 4, 5], &[6, 7], &[8]]),
            sets(&[&[1, 3], &[2, 4, 5], &[7], &[6, 8]]),
        ];
        for (got, want) in all.iter().zip(&expected) {
            assert_eq!(&got.parts, want);
        }
    }

    #[test]
    fn path_has_two_partitions() {
        let m = Matrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
        let d = decompose_matrix(&m);
        let all: Vec<_> = enumerate(&d).collect();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].parts, sets(&[&[1, 2], &[3]]));
        assert_eq!(all[1].parts, sets(&[&[1], &[2, 3]]));
    }

    #[test]
    fn parts_of_fixture_assignments() {
        let d = decompose_matrix(&fixtures::block_chain_7x7());
        // v2 -> first block, v6 -> second block
        assert_eq!(
            parts_of(&d, &[0, 1]).unwrap(),
            sets(&[&[1, 2, 3], &[4, 5, 6], &[7]])
        );
        // v2 -> second block, v6 -> third block
        assert_eq!(
            parts_of(&d, &[1, 2]).unwrap(),
            sets(&[&[1, 3], &[2, 4, 5], &[6, 7]])
        );
    }

    #[test]
    fn parts_of_rejects_bad_assignment() {
        let d = decompose_matrix(&fixtures::block_chain_7x7());
        // v2 is not in block 2
        assert!(parts_of(&d, &[2, 1]).is_err());
        assert!(parts_of(&d, &[0]).is_err());
    }

    #[test]
    fn parts_cover_and_are_disjoint() {
        let d = decompose_matrix(&fixtures::block_star_8x8());
        for p in enumerate(&d) {
            let mut seen = Vec::new();
            for (i, part) in p.parts.iter().enumerate() {
                assert!(part.is_subset_of(&d.blocks()[i]));
                seen.extend(part.iter());
            }
            seen.sort_unstable();
            assert_eq!(seen, (1..=8).collect::<Vec<_>>());
        }
    }
}
