//! Seeded random matrices with a planned block structure.
//!
//! A spec lists block sizes and how each block glues onto the graph built so
//! far; every glue vertex becomes a cut-vertex. Each block gets a random
//! Hamiltonian cycle (so it stays biconnected) plus density-driven extra
//! edges, all with nonzero integer weights. The planned decomposition is
//! returned alongside the matrix and always equals what [`decompose`]
//! recovers from it.
//!
//! [`decompose`]: crate::blocks::decompose

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::blocks::BlockDecomposition;
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// How block `j >= 1` picks the existing vertex it glues onto.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Attachment {
    /// Glue onto a fresh (not yet cut) vertex of the previous block.
    #[default]
    Chain,
    /// Glue every block onto vertex 1.
    Star,
    /// Glue onto a uniformly random existing vertex.
    RandomTree,
    /// Glue block `j` onto the given vertex id (one entry per block after
    /// the first).
    Explicit(Vec<usize>),
}

/// Generation plan. JSON-serializable with exactly these field names.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub block_sizes: Vec<usize>,
    #[serde(default)]
    pub attachment: Attachment,
    /// Probability that a cut-vertex carries a nonzero loop.
    #[serde(default = "default_loop_policy")]
    pub loop_policy: f64,
    /// Inclusive integer bounds for edge and loop weights; zero draws are
    /// rejected and redrawn.
    #[serde(default = "default_weight_range")]
    pub weight_range: (i64, i64),
    /// Probability of each extra within-block edge beyond the Hamiltonian
    /// cycle, and of a loop on a non-cut vertex.
    #[serde(default = "default_density")]
    pub density: f64,
    pub seed: u64,
}

fn default_loop_policy() -> f64 {
    0.5
}

fn default_weight_range() -> (i64, i64) {
    (-9, 9)
}

fn default_density() -> f64 {
    0.3
}

impl GenSpec {
    pub fn new(block_sizes: Vec<usize>, attachment: Attachment, seed: u64) -> GenSpec {
        GenSpec {
            block_sizes,
            attachment,
            loop_policy: default_loop_policy(),
            weight_range: default_weight_range(),
            density: default_density(),
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.block_sizes.is_empty() {
            return Err(Error::Spec("block_sizes must not be empty".into()));
        }
        if let Some(&s) = self.block_sizes.iter().find(|&&s| s < 2) {
            return Err(Error::Spec(format!("block size {s} is below 2")));
        }
        if !(0.0..=1.0).contains(&self.loop_policy) {
            return Err(Error::Spec(format!(
                "loop_policy {} is not a probability",
                self.loop_policy
            )));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::Spec(format!(
                "density {} is not a probability",
                self.density
            )));
        }
        let (lo, hi) = self.weight_range;
        if lo > hi || (lo == 0 && hi == 0) {
            return Err(Error::Spec(format!(
                "weight_range ({lo}, {hi}) admits no nonzero weight"
            )));
        }
        if let Attachment::Explicit(targets) = &self.attachment {
            if targets.len() + 1 != self.block_sizes.len() {
                return Err(Error::Spec(format!(
                    "explicit attachment lists {} targets for {} blocks",
                    targets.len(),
                    self.block_sizes.len()
                )));
            }
        }
        Ok(())
    }
}

/// Build the matrix and its planned decomposition. Deterministic per spec
/// (including the seed); infeasible specs are rejected.
pub fn generate(spec: &GenSpec) -> Result<(Matrix, BlockDecomposition)> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (lo, hi) = spec.weight_range;
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let w = rng.random_range(lo..=hi);
        if w != 0 {
            return w;
        }
    };

    let n: usize = spec.block_sizes.iter().map(|s| s - 1).sum::<usize>() + 1;
    let mut matrix = Matrix::zeros(n);
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(spec.block_sizes.len());
    let mut glue_targets: Vec<usize> = Vec::new(); // one per block after the first
    let mut next_id = 1usize;

    for (j, &size) in spec.block_sizes.iter().enumerate() {
        let mut members: Vec<usize> = Vec::with_capacity(size);
        let fresh = if j == 0 {
            size
        } else {
            let target = match &spec.attachment {
                Attachment::Chain => {
                    // a vertex of the previous block that is not a glue point yet
                    let prev = &blocks[j - 1];
                    let candidates: Vec<usize> = prev
                        .iter()
                        .copied()
                        .filter(|v| !glue_targets.contains(v) && Some(v) != prev.first())
                        .collect();
                    let pool = if candidates.is_empty() { prev } else { &candidates };
                    pool[rng.random_range(0..pool.len())]
                }
                Attachment::Star => 1,
                Attachment::RandomTree => rng.random_range(1..next_id),
                Attachment::Explicit(targets) => {
                    let t = targets[j - 1];
                    if t == 0 || t >= next_id {
                        return Err(Error::Spec(format!(
                            "explicit target v{t} does not exist when block {} attaches",
                            j + 1
                        )));
                    }
                    t
                }
            };
            members.push(target);
            glue_targets.push(target);
            size - 1
        };
        members.extend(next_id..next_id + fresh);
        next_id += fresh;
        blocks.push(members);
    }
    debug_assert_eq!(next_id - 1, n);

    // wire each block: random Hamiltonian cycle plus density-driven extras
    let write_edge = |m: &mut Matrix, rng: &mut ChaCha8Rng, u: usize, v: usize| {
        match rng.random_range(0..4u8) {
            0 => m.set(u - 1, v - 1, Scalar::from_i64(nonzero(rng))),
            1 => m.set(v - 1, u - 1, Scalar::from_i64(nonzero(rng))),
            _ => {
                m.set(u - 1, v - 1, Scalar::from_i64(nonzero(rng)));
                m.set(v - 1, u - 1, Scalar::from_i64(nonzero(rng)));
            }
        }
    };
    for members in &blocks {
        let mut order = members.clone();
        order.shuffle(&mut rng);
        let mut wired: BTreeSet<(usize, usize)> = BTreeSet::new();
        let cycle_pairs: Vec<(usize, usize)> = if order.len() == 2 {
            vec![(order[0], order[1])]
        } else {
            (0..order.len())
                .map(|i| (order[i], order[(i + 1) % order.len()]))
                .collect()
        };
        for (u, v) in cycle_pairs {
            wired.insert((u.min(v), u.max(v)));
            write_edge(&mut matrix, &mut rng, u, v);
        }
        for a in 0..members.len() {
            for b in a + 1..members.len() {
                let pair = (members[a].min(members[b]), members[a].max(members[b]));
                if wired.contains(&pair) {
                    continue;
                }
                if rng.random_bool(spec.density) {
                    write_edge(&mut matrix, &mut rng, pair.0, pair.1);
                }
            }
        }
    }

    // loops: cut-vertices by loop_policy, the rest by density
    let cut_set: BTreeSet<usize> = glue_targets.iter().copied().collect();
    for v in 1..=n {
        let p = if cut_set.contains(&v) {
            spec.loop_policy
        } else {
            spec.density
        };
        if rng.random_bool(p) {
            matrix.set(v - 1, v - 1, Scalar::from_i64(nonzero(&mut rng)));
        }
    }

    let expected =
        BlockDecomposition::from_block_list(blocks.into_iter().map(VertexSet::new).collect());
    Ok((matrix, expected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::decompose_matrix;

    #[test]
    fn chain_shape_matches_plan() {
        let spec = GenSpec::new(vec![3, 4, 2], Attachment::Chain, 7);
        let (m, expected) = generate(&spec).unwrap();
        assert_eq!(m.order(), 7);
        assert_eq!(expected.block_count(), 3);
        assert_eq!(expected.cut_vertices().len(), 2);
        for &v in expected.cut_vertices() {
            assert_eq!(expected.cut_index(v), Some(2));
        }
        assert_eq!(decompose_matrix(&m), expected);
    }

    #[test]
    fn two_vertex_chain_is_a_path_of_blocks() {
        let spec = GenSpec::new(vec![2; 5], Attachment::Chain, 3);
        let (m, expected) = generate(&spec).unwrap();
        assert_eq!(m.order(), 6);
        assert_eq!(expected.block_count(), 5);
        assert_eq!(expected.cut_vertices().len(), 4);
        assert_eq!(decompose_matrix(&m), expected);
    }

    #[test]
    fn star_attachment_raises_cut_index() {
        let spec = GenSpec::new(vec![3, 3, 3, 3], Attachment::Star, 11);
        let (m, expected) = generate(&spec).unwrap();
        assert_eq!(expected.cut_vertices(), &[1]);
        assert_eq!(expected.cut_index(1), Some(4));
        assert_eq!(decompose_matrix(&m), expected);
    }

    #[test]
    fn explicit_attachment_targets() {
        let spec = GenSpec::new(vec![3, 2, 2], Attachment::Explicit(vec![2, 2]), 5);
        let (m, expected) = generate(&spec).unwrap();
        assert_eq!(expected.cut_vertices(), &[2]);
        assert_eq!(expected.cut_index(2), Some(3));
        assert_eq!(decompose_matrix(&m), expected);

        let bad = GenSpec::new(vec![3, 2], Attachment::Explicit(vec![9]), 5);
        assert!(matches!(generate(&bad), Err(Error::Spec(_))));
    }

    #[test]
    fn same_seed_same_matrix() {
        let spec = GenSpec::new(vec![4, 4, 3], Attachment::RandomTree, 42);
        let (a, _) = generate(&spec).unwrap();
        let (b, _) = generate(&spec).unwrap();
        assert_eq!(a, b);
        let other = GenSpec {
            seed: 43,
            ..spec.clone()
        };
        let (c, _) = generate(&other).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn planned_decomposition_always_recovered() {
        for seed in 0..30 {
            for attachment in [Attachment::Chain, Attachment::Star, Attachment::RandomTree] {
                let spec = GenSpec {
                    block_sizes: vec![3, 2, 4, 2],
                    attachment: attachment.clone(),
                    loop_policy: 0.5,
                    weight_range: (-9, 9),
                    density: 0.4,
                    seed,
                };
                let (m, expected) = generate(&spec).unwrap();
                let got = decompose_matrix(&m);
                assert_eq!(got, expected, "seed {seed} {attachment:?}");
                assert!(got.size_identity_holds());
            }
        }
    }

    #[test]
    fn infeasible_specs_are_rejected() {
        for spec in [
            GenSpec::new(vec![], Attachment::Chain, 1),
            GenSpec::new(vec![3, 1], Attachment::Chain, 1),
            GenSpec {
                density: 1.5,
                ..GenSpec::new(vec![3, 3], Attachment::Chain, 1)
            },
            GenSpec {
                loop_policy: -0.1,
                ..GenSpec::new(vec![3, 3], Attachment::Chain, 1)
            },
            GenSpec {
                weight_range: (0, 0),
                ..GenSpec::new(vec![3, 3], Attachment::Chain, 1)
            },
            GenSpec {
                weight_range: (5, -5),
                ..GenSpec::new(vec![3, 3], Attachment::Chain, 1)
            },
        ] {
            assert!(matches!(generate(&spec), Err(Error::Spec(_))), "{spec:?}");
        }
    }

    #[test]
    fn json_round_trip() {
        let spec = GenSpec::new(vec![3, 4, 2], Attachment::Explicit(vec![2, 5]), 7);
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"block_sizes\":[3,4,2]"));
        assert!(text.contains("\"explicit\":[2,5]"));
        let back: GenSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);

        let minimal: GenSpec =
            serde_json::from_str(r#"{"block_sizes":[2,2],"seed":9}"#).unwrap();
        assert_eq!(minimal.attachment, Attachment::Chain);
        assert_eq!(minimal.loop_policy, 0.5);
        assert_eq!(minimal.weight_range, (-9, 9));
    }
}
