//! Blockwise determinant and permanent via cut-vertex removal.
//!
//! For a connected, separable digraph the value is assembled as
//!
//! ```text
//! sum over subsets S of the nonzero-loop cut-vertices:
//!     coefficient(S) * sum over all B-partitions of
//!         prod over blocks of val(part minus S)
//! ```
//!
//! where `coefficient(S) = prod_{v in S} (-loop(v)) (T(v)-1) / T(v)` and
//! `val` is the determinant or permanent of the principal submatrix on the
//! part's vertices (1 for the empty part). Partitions that coincide after
//! removing `S` are all enumerated; the `1/T(v)` factors normalize the
//! duplicates. Every part value is a block minus a subset of its
//! cut-vertices, so a [`SummandCache`] of `sum_i 2^(t_i)` dense-kernel runs
//! feeds the whole double sum.
//!
//! Components are handled independently and multiplied; a component that is
//! nonseparable, a single vertex, or too interconnected to cache falls back
//! to the dense kernels. Integer input in exact mode always yields an
//! integer, which is asserted, not assumed.

use std::collections::BTreeMap;

use crate::blocks::{decompose, BlockDecomposition};
use crate::bpartition;
use crate::error::{Error, Result};
use crate::graph::{principal_submatrix, VertexSet, WeightedDigraph};
use crate::kernels::{det_dense, per_ryser_capped, DEFAULT_PERMANENT_CAP};
use crate::matrix::Matrix;
use crate::par;
use crate::scalar::{ArithmeticMode, Scalar};

/// Blocks with more cut-vertices than this fall back to the dense kernels
/// rather than materializing a 2^(t_i)-entry cache.
const MAX_BLOCK_CUTS: usize = 22;
/// Components whose double sum would exceed this many terms fall back too.
const MAX_COMPONENT_TERMS: u128 = 1 << 24;
/// Default ceiling on the number of terms a trace report may carry.
pub const DEFAULT_TRACE_CAP: usize = 10_000;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Need {
    Det,
    Per,
    Both,
}

impl Need {
    fn det(self) -> bool {
        matches!(self, Need::Det | Need::Both)
    }
    fn per(self) -> bool {
        matches!(self, Need::Per | Need::Both)
    }
}

/// Per block `i`, the determinant and permanent of the block minus each
/// subset of its cut-vertices, indexed by a bitmask over
/// `block_cut_vertices(i)`. Complete by construction: `2^(t_i)` entries per
/// block. The mask with all bits set on a 2-vertex block whose endpoints are
/// both cut-vertices holds the null-graph value 1.
pub struct SummandCache {
    block_cuts: Vec<Vec<usize>>,
    det: Vec<Vec<Scalar>>,
    per: Vec<Vec<Scalar>>,
}

impl SummandCache {
    /// Bitmask for a removal set: bit `b` set iff `block_cut_vertices(i)[b]`
    /// is removed. Vertices outside the block's cut list are ignored.
    pub fn mask_of(&self, block: usize, removed: &VertexSet) -> usize {
        self.block_cuts[block]
            .iter()
            .enumerate()
            .filter(|(_, &v)| removed.contains(v))
            .fold(0usize, |m, (b, _)| m | 1 << b)
    }

    pub fn det(&self, block: usize, mask: usize) -> &Scalar {
        &self.det[block][mask]
    }

    pub fn per(&self, block: usize, mask: usize) -> &Scalar {
        &self.per[block][mask]
    }

    /// Total number of cached (block, subset) slots: `sum_i 2^(t_i)`.
    pub fn entry_count(&self) -> usize {
        self.block_cuts.iter().map(|c| 1usize << c.len()).sum()
    }
}

/// Fill the cache for every block of `d`, both determinants and permanents,
/// with the default permanent cap. Entries are computed concurrently under
/// the `parallel` feature; values are identical to a sequential fill.
pub fn build_cache(m: &Matrix, d: &BlockDecomposition) -> Result<SummandCache> {
    build_cache_need(m, d, Need::Both, DEFAULT_PERMANENT_CAP)
}

/// Sequential cache fill, kept as the reference path for the benches.
pub fn build_cache_seq(m: &Matrix, d: &BlockDecomposition) -> Result<SummandCache> {
    fill_cache(m, d, Need::Both, DEFAULT_PERMANENT_CAP, false)
}

fn build_cache_need(
    m: &Matrix,
    d: &BlockDecomposition,
    need: Need,
    per_cap: usize,
) -> Result<SummandCache> {
    fill_cache(m, d, need, per_cap, cfg!(feature = "parallel"))
}

type CacheEntry = (usize, usize, Option<Scalar>, Option<Scalar>);

fn fill_cache(
    m: &Matrix,
    d: &BlockDecomposition,
    need: Need,
    per_cap: usize,
    concurrent: bool,
) -> Result<SummandCache> {
    let block_cuts: Vec<Vec<usize>> = (0..d.block_count())
        .map(|i| d.block_cut_vertices(i).to_vec())
        .collect();

    // one task per (block, removal subset), largest removals first per block
    let mut tasks: Vec<(usize, usize)> = Vec::new();
    for (i, cuts) in block_cuts.iter().enumerate() {
        let t = cuts.len();
        let mut masks: Vec<usize> = (0..1usize << t).collect();
        masks.sort_by_key(|&mask| (std::cmp::Reverse(mask.count_ones()), mask));
        tasks.extend(masks.into_iter().map(|mask| (i, mask)));
    }

    let compute = |(block, mask): (usize, usize)| -> Result<CacheEntry> {
        let cuts = &block_cuts[block];
        let removed: VertexSet = cuts
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        let keep = d.blocks()[block].minus(&removed);
        let sub = principal_submatrix(m, &keep).expect("block vertices index the matrix");
        let det = need.det().then(|| det_dense(&sub));
        let per = match need.per() {
            true => Some(per_ryser_capped(&sub, per_cap)?),
            false => None,
        };
        Ok((block, mask, det, per))
    };

    let results = if concurrent {
        par::map_vec(tasks, compute)
    } else {
        tasks.into_iter().map(compute).collect()
    };

    let mut det: Vec<Vec<Scalar>> = Vec::new();
    let mut per: Vec<Vec<Scalar>> = Vec::new();
    if need.det() {
        det = block_cuts
            .iter()
            .map(|c| vec![Scalar::zero(); 1 << c.len()])
            .collect();
    }
    if need.per() {
        per = block_cuts
            .iter()
            .map(|c| vec![Scalar::zero(); 1 << c.len()])
            .collect();
    }
    for item in results {
        let (block, mask, d_val, p_val) = item?;
        if let Some(v) = d_val {
            det[block][mask] = v;
        }
        if let Some(v) = p_val {
            per[block][mask] = v;
        }
    }
    Ok(SummandCache {
        block_cuts,
        det,
        per,
    })
}

/// `prod_{v in S} (-loop(v)) (T(v)-1) / T(v)` as an exact rational (or float
/// in float mode); 1 for the empty set. Every member of `S` must be a
/// cut-vertex with a nonzero loop weight.
pub fn coefficient(
    s: &VertexSet,
    d: &BlockDecomposition,
    loops: &BTreeMap<usize, Scalar>,
) -> Result<Scalar> {
    let mode = loops
        .values()
        .next()
        .map(Scalar::mode)
        .unwrap_or(ArithmeticMode::Exact);
    let mut value = Scalar::one_of(mode);
    for v in s.iter() {
        let t = d
            .cut_index(v)
            .ok_or_else(|| Error::Contract(format!("v{v} is not a cut-vertex")))?;
        let alpha = loops
            .get(&v)
            .filter(|a| !a.is_zero())
            .ok_or_else(|| Error::Contract(format!("cut-vertex v{v} has no nonzero loop")))?;
        let (t_scalar, t_minus_1) = match mode {
            ArithmeticMode::Exact => (
                Scalar::from_i64(t as i64),
                Scalar::from_i64(t as i64 - 1),
            ),
            ArithmeticMode::Float => (Scalar::F64(t as f64), Scalar::F64(t as f64 - 1.0)),
        };
        value = &value * &(&(-alpha) * &t_minus_1).div(&t_scalar);
    }
    Ok(value)
}

/// A removal subset together with its coefficient value.
#[derive(Clone, Debug, PartialEq)]
pub struct RemovalCoefficient {
    pub removed: VertexSet,
    pub value: Scalar,
}

/// Determinant assembled blockwise; always equals `det_bareiss`/`det_lu` of
/// the full matrix. Disconnected input multiplies over components;
/// nonseparable, single-vertex or cache-defeating components use the dense
/// kernel directly.
pub fn det_blockwise(m: &Matrix) -> Scalar {
    blockwise(m, Need::Det, DEFAULT_PERMANENT_CAP)
        .expect("determinant path has no permanent cap to hit")
}

/// Permanent assembled blockwise with the default Ryser cap for per-block
/// and fallback kernel runs.
pub fn per_blockwise(m: &Matrix) -> Result<Scalar> {
    blockwise(m, Need::Per, DEFAULT_PERMANENT_CAP)
}

/// [`per_blockwise`] with an explicit cap on dense permanent kernel orders.
pub fn per_blockwise_capped(m: &Matrix, cap: usize) -> Result<Scalar> {
    blockwise(m, Need::Per, cap)
}

fn blockwise(m: &Matrix, need: Need, per_cap: usize) -> Result<Scalar> {
    let mode = m.mode();
    let n = m.order();
    if n == 0 {
        return Ok(Scalar::one_of(mode));
    }
    let all_int = m.is_all_int();
    let d = decompose(&WeightedDigraph::from_matrix(m));

    let mut total = Scalar::one_of(mode);
    for c in 0..d.components().len() {
        let sub = d.restrict_to_component(c);
        let value = if use_dense_fallback(&sub) {
            let comp = principal_submatrix(m, &d.components()[c])
                .expect("component vertices index the matrix");
            match need {
                Need::Per => per_ryser_capped(&comp, per_cap)?,
                _ => det_dense(&comp),
            }
        } else {
            component_value(m, &sub, need, per_cap)?
        };
        total = &total * &value;
    }

    if all_int && mode == ArithmeticMode::Exact {
        let int = total
            .as_exact_integer()
            .expect("blockwise result for an integer matrix must be an integer");
        return Ok(Scalar::Int(int));
    }
    Ok(total)
}

fn use_dense_fallback(sub: &BlockDecomposition) -> bool {
    if sub.block_count() == 1 {
        return true;
    }
    if (0..sub.block_count()).any(|i| sub.block_cut_count(i) > MAX_BLOCK_CUTS) {
        return true;
    }
    // predicted term ceiling: 2^t * prod T(i) <= prod 2 T(i), capped
    let mut terms: u128 = 1;
    for &v in sub.cut_vertices() {
        let t = sub.cut_index(v).unwrap() as u128;
        terms = match terms.checked_mul(2 * t) {
            Some(x) if x <= MAX_COMPONENT_TERMS => x,
            _ => return true,
        };
    }
    false
}

/// Nonzero diagonal entries of the component's cut-vertices.
fn cut_loops(m: &Matrix, sub: &BlockDecomposition) -> BTreeMap<usize, Scalar> {
    sub.cut_vertices()
        .iter()
        .filter_map(|&v| {
            let a = m.get(v - 1, v - 1);
            (!a.is_zero()).then(|| (v, a.clone()))
        })
        .collect()
}

/// Removal masks per block for one (assignment, removed-set) pair: block `i`
/// drops the cut-vertices assigned elsewhere plus those in `removed`.
fn masks_for(
    sub: &BlockDecomposition,
    cache: &SummandCache,
    assignment: &[usize],
    removed: &VertexSet,
) -> Vec<usize> {
    let cuts = sub.cut_vertices();
    (0..sub.block_count())
        .map(|i| {
            cache.block_cuts[i]
                .iter()
                .enumerate()
                .filter(|(_, &v)| {
                    let pos = cuts.binary_search(&v).expect("block cut is a cut-vertex");
                    assignment[pos] != i || removed.contains(v)
                })
                .fold(0usize, |mask, (b, _)| mask | 1 << b)
        })
        .collect()
}

fn summand(cache: &SummandCache, masks: &[usize], need: Need, mode: ArithmeticMode) -> Scalar {
    let mut prod = Scalar::one_of(mode);
    for (i, &mask) in masks.iter().enumerate() {
        let v = match need {
            Need::Per => cache.per(i, mask),
            _ => cache.det(i, mask),
        };
        if v.is_zero() {
            return Scalar::zero_of(mode);
        }
        prod = &prod * v;
    }
    prod
}

/// The double sum for one connected, separable component.
fn component_value(
    m: &Matrix,
    sub: &BlockDecomposition,
    need: Need,
    per_cap: usize,
) -> Result<Scalar> {
    let mode = m.mode();
    let cache = build_cache_need(m, sub, need, per_cap)?;
    let loops = cut_loops(m, sub);
    let nz_cuts: Vec<usize> = loops.keys().copied().collect();

    let subsets = subsets_popcount_lex(&nz_cuts);
    let partials = par::map_vec(subsets, |removed| -> Result<Scalar> {
        let coef = if removed.is_empty() {
            Scalar::one_of(mode)
        } else {
            coefficient(&removed, sub, &loops)?
        };
        let mut inner = Scalar::zero_of(mode);
        for assignment in bpartition::assignments(sub) {
            let masks = masks_for(sub, &cache, &assignment, &removed);
            inner = &inner + &summand(&cache, &masks, need, mode);
        }
        Ok(&coef * &inner)
    });

    let mut total = Scalar::zero_of(mode);
    for p in partials {
        total = &total + &p?;
    }
    Ok(total)
}

/// All subsets of `items`, ordered by ascending size and lexicographically
/// within a size.
fn subsets_popcount_lex(items: &[usize]) -> Vec<VertexSet> {
    let t = items.len();
    let mut out = Vec::with_capacity(1 << t);
    out.push(VertexSet::empty());
    for q in 1..=t {
        // lexicographic combinations of positions 0..t taken q at a time
        let mut idx: Vec<usize> = (0..q).collect();
        'combs: loop {
            out.push(idx.iter().map(|&i| items[i]).collect());
            let mut j = q;
            loop {
                if j == 0 {
                    break 'combs;
                }
                j -= 1;
                if idx[j] != j + t - q {
                    idx[j] += 1;
                    for l in j + 1..q {
                        idx[l] = idx[l - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    out
}

/// One line of a trace report: a removal subset with its coefficient, one
/// B-partition, the post-removal parts, their product, and the term's
/// contribution (coefficient times product).
#[derive(Clone, Debug)]
pub struct TraceTerm {
    pub removal: RemovalCoefficient,
    pub assignment: Vec<usize>,
    pub parts: Vec<VertexSet>,
    pub summand: Scalar,
    pub contribution: Scalar,
}

/// Terms sharing one removal size `q`, with their total.
#[derive(Clone, Debug)]
pub struct TraceGroup {
    pub q: usize,
    pub terms: Vec<TraceTerm>,
    pub total: Scalar,
}

/// The full term-by-term breakdown of a blockwise determinant.
#[derive(Clone, Debug)]
pub struct TraceReport {
    pub groups: Vec<TraceGroup>,
    pub grand_total: Scalar,
}

/// Term-by-term breakdown of `det_blockwise` for a connected exact-mode
/// matrix, grouped by removal size `q` (one group per removal subset, in
/// ascending-size order). The grand total equals [`det_blockwise`]. Refuses
/// float mode and disconnected digraphs (contract errors) and reports larger
/// than the cap (resource error).
pub fn trace_terms(m: &Matrix) -> Result<TraceReport> {
    trace_terms_capped(m, DEFAULT_TRACE_CAP)
}

pub fn trace_terms_capped(m: &Matrix, cap: usize) -> Result<TraceReport> {
    if m.mode() != ArithmeticMode::Exact {
        return Err(Error::Contract("trace_terms requires exact mode".into()));
    }
    if m.order() == 0 {
        return Err(Error::Contract(
            "trace_terms requires a nonempty matrix".into(),
        ));
    }
    let d = decompose(&WeightedDigraph::from_matrix(m));
    if d.components().len() != 1 {
        return Err(Error::Contract(
            "trace_terms requires a connected digraph".into(),
        ));
    }

    if d.block_count() == 1 {
        let value = det_dense(m);
        let term = TraceTerm {
            removal: RemovalCoefficient {
                removed: VertexSet::empty(),
                value: Scalar::one(),
            },
            assignment: vec![],
            parts: vec![d.blocks()[0].clone()],
            summand: value.clone(),
            contribution: value.clone(),
        };
        return Ok(TraceReport {
            groups: vec![TraceGroup {
                q: 0,
                terms: vec![term],
                total: value.clone(),
            }],
            grand_total: value,
        });
    }

    let cache = build_cache_need(m, &d, Need::Det, DEFAULT_PERMANENT_CAP)?;
    let loops = cut_loops(m, &d);
    let nz_cuts: Vec<usize> = loops.keys().copied().collect();

    let partitions: u128 = d
        .cut_vertices()
        .iter()
        .map(|&v| d.cut_index(v).unwrap() as u128)
        .product();
    let term_count = (1u128 << nz_cuts.len()).saturating_mul(partitions);
    if term_count > cap as u128 {
        return Err(Error::Resource {
            what: "trace terms",
            n: term_count.min(usize::MAX as u128) as usize,
            cap,
        });
    }

    let mut groups: Vec<TraceGroup> = Vec::new();
    let mut grand_total = Scalar::zero();
    for removed in subsets_popcount_lex(&nz_cuts) {
        let q = removed.len();
        let coef = if removed.is_empty() {
            Scalar::one()
        } else {
            coefficient(&removed, &d, &loops)?
        };
        groups.push(TraceGroup {
            q,
            terms: Vec::new(),
            total: Scalar::zero(),
        });
        let group = groups.last_mut().unwrap();
        for assignment in bpartition::assignments(&d) {
            let masks = masks_for(&d, &cache, &assignment, &removed);
            let parts: Vec<VertexSet> = (0..d.block_count())
                .map(|i| {
                    let dropped: VertexSet = cache.block_cuts[i]
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| masks[i] >> b & 1 == 1)
                        .map(|(_, &v)| v)
                        .collect();
                    d.blocks()[i].minus(&dropped)
                })
                .collect();
            let summand = summand(&cache, &masks, Need::Det, ArithmeticMode::Exact);
            let contribution = (&coef * &summand).canonical();
            group.total = (&group.total + &contribution).canonical();
            grand_total = (&grand_total + &contribution).canonical();
            group.terms.push(TraceTerm {
                removal: RemovalCoefficient {
                    removed: removed.clone(),
                    value: coef.clone(),
                },
                assignment,
                parts,
                summand,
                contribution,
            });
        }
    }

    Ok(TraceReport {
        groups,
        grand_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::decompose_matrix;
    use crate::fixtures;
    use crate::kernels::{det_bareiss, det_naive, per_naive, per_ryser};

    #[test]
    fn cache_holds_block_values() {
        let m = fixtures::block_chain_7x7();
        let d = decompose_matrix(&m);
        let cache = build_cache(&m, &d).unwrap();
        assert_eq!(cache.entry_count(), 2 + 4 + 2);
        // block {6,7}: no removal -> det [[-4,2],[20,3]] = -52; remove v6 -> det [[3]] = 3
        let b3 = 2;
        assert_eq!(cache.det(b3, 0), &Scalar::from_i64(-52));
        let mask_v6 = cache.mask_of(b3, &VertexSet::from([6]));
        assert_eq!(cache.det(b3, mask_v6), &Scalar::from_i64(3));
        // block {1,2,3} has a single cut-vertex, so two slots
        assert_eq!(cache.det[0].len(), 2);
    }

    #[test]
    fn cache_null_graph_convention() {
        // path 1-2-3-4: middle block {2,3} loses both endpoints
        let m = Matrix::from_i64_rows(&[
            &[0, 1, 0, 0],
            &[1, 0, 1, 0],
            &[0, 1, 0, 1],
            &[0, 0, 1, 0],
        ]);
        let d = decompose_matrix(&m);
        let cache = build_cache(&m, &d).unwrap();
        let middle = 1;
        assert_eq!(d.blocks()[middle], VertexSet::from([2, 3]));
        let full = cache.mask_of(middle, &VertexSet::from([2, 3]));
        assert_eq!(cache.det(middle, full), &Scalar::one());
        assert_eq!(cache.per(middle, full), &Scalar::one());
    }

    #[test]
    fn coefficient_values_on_fixture() {
        let m = fixtures::block_chain_7x7();
        let d = decompose_matrix(&m);
        let loops = cut_loops(&m, &d);
        assert_eq!(
            coefficient(&VertexSet::from([2]), &d, &loops).unwrap(),
            Scalar::rational(-5, 2)
        );
        assert_eq!(
            coefficient(&VertexSet::from([2, 6]), &d, &loops).unwrap(),
            Scalar::rational(-5, 1)
        );
        assert_eq!(
            coefficient(&VertexSet::empty(), &d, &loops).unwrap(),
            Scalar::one()
        );
    }

    #[test]
    fn coefficient_rejects_zero_loop() {
        // path 1-2-3 with empty diagonal: v2 is a cut-vertex with no loop
        let m = Matrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
        let d = decompose_matrix(&m);
        let loops = cut_loops(&m, &d);
        let err = coefficient(&VertexSet::from([2]), &d, &loops);
        assert!(matches!(err, Err(Error::Contract(_))));
        let err = coefficient(&VertexSet::from([1]), &d, &loops);
        assert!(matches!(err, Err(Error::Contract(_))));
    }

    #[test]
    fn two_block_path_by_hand() {
        // det = det(B1) det(B2\2) + det(B1\2) det(B2) - 2 det(B1\2) det(B2\2)
        //     = 1*3 + 1*5 - 2*1*3 = 2
        let m = fixtures::two_block_path_3x3();
        assert_eq!(det_blockwise(&m), Scalar::from_i64(2));
        assert_eq!(det_blockwise(&m), det_naive(&m).unwrap());
        // per = 3*3 + 1*7 - 2*1*3 = 10
        assert_eq!(per_blockwise(&m).unwrap(), Scalar::from_i64(10));
        assert_eq!(per_blockwise(&m).unwrap(), per_naive(&m).unwrap());
    }

    #[test]
    fn fixtures_match_oracles() {
        for m in [fixtures::block_chain_7x7(), fixtures::block_star_8x8()] {
            assert_eq!(det_blockwise(&m), det_naive(&m).unwrap());
            assert_eq!(per_blockwise(&m).unwrap(), per_naive(&m).unwrap());
        }
    }

    #[test]
    fn nonseparable_falls_back_to_dense() {
        let m = Matrix::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(det_blockwise(&m), det_bareiss(&m));
        assert_eq!(per_blockwise(&m).unwrap(), per_ryser(&m).unwrap());
    }

    #[test]
    fn disconnected_multiplies_components() {
        // block-diagonal: the 3x3 path fixture plus a dense 2x2 block
        let m = Matrix::from_i64_rows(&[
            &[1, 1, 0, 0, 0],
            &[1, 2, 1, 0, 0],
            &[0, 1, 3, 0, 0],
            &[0, 0, 0, 2, 3],
            &[0, 0, 0, 1, 4],
        ]);
        assert_eq!(det_blockwise(&m), Scalar::from_i64(2 * 5));
        assert_eq!(per_blockwise(&m).unwrap(), Scalar::from_i64(10 * 11));
    }

    #[test]
    fn single_vertex_and_empty() {
        assert_eq!(
            det_blockwise(&Matrix::from_i64_rows(&[&[7]])),
            Scalar::from_i64(7)
        );
        assert_eq!(det_blockwise(&Matrix::zeros(1)), Scalar::zero());
        assert_eq!(det_blockwise(&Matrix::new(0, vec![]).unwrap()), Scalar::one());
        assert_eq!(
            per_blockwise(&Matrix::new(0, vec![]).unwrap()).unwrap(),
            Scalar::one()
        );
    }

    #[test]
    fn float_mode_blockwise() {
        let m = fixtures::block_chain_7x7();
        let exact = det_blockwise(&m).to_f64();
        let float = det_blockwise(&m.to_float()).to_f64();
        assert!((exact - float).abs() / exact.abs().max(1.0) < 1e-9);
    }

    #[test]
    fn integer_results_stay_integers() {
        let m = fixtures::block_star_8x8();
        assert!(det_blockwise(&m).is_int());
        assert!(per_blockwise(&m).unwrap().is_int());
    }

    #[test]
    fn subsets_order_is_popcount_then_lex() {
        let subsets = subsets_popcount_lex(&[2, 6, 9]);
        let expect: Vec<VertexSet> = vec![
            VertexSet::empty(),
            VertexSet::from([2]),
            VertexSet::from([6]),
            VertexSet::from([9]),
            VertexSet::from([2, 6]),
            VertexSet::from([2, 9]),
            VertexSet::from([6, 9]),
            VertexSet::from([2, 6, 9]),
        ];
        assert_eq!(subsets, expect);
    }

    #[test]
    fn trace_reproduces_group_structure() {
        let m = fixtures::block_chain_7x7();
        let report = trace_terms(&m).unwrap();
        assert_eq!(report.grand_total, det_blockwise(&m));
        let qs: Vec<usize> = report.groups.iter().map(|g| g.q).collect();
        assert_eq!(qs, vec![0, 1, 1, 2]);
        assert_eq!(report.groups[0].terms.len(), 4);
        // q = 2: four coincident terms with coefficient -5 each
        let q2 = report.groups.last().unwrap();
        assert_eq!(q2.terms.len(), 4);
        for t in &q2.terms {
            assert_eq!(t.removal.value, Scalar::rational(-5, 1));
            assert_eq!(t.parts, q2.terms[0].parts);
        }
    }

    #[test]
    fn trace_single_block_and_errors() {
        let dense = Matrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let report = trace_terms(&dense).unwrap();
        assert_eq!(report.groups.len(), 1);
        assert_eq!(report.groups[0].terms.len(), 1);
        assert_eq!(report.grand_total, Scalar::from_i64(-2));

        let disconnected = Matrix::identity(2);
        assert!(matches!(
            trace_terms(&disconnected),
            Err(Error::Contract(_))
        ));
        let m = fixtures::block_chain_7x7();
        assert!(matches!(
            trace_terms_capped(&m, 3),
            Err(Error::Resource { .. })
        ));
        assert!(matches!(trace_terms(&m.to_float()), Err(Error::Contract(_))));
    }
}
