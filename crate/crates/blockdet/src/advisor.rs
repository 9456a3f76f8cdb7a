//! Parameterized cost model: when does the blockwise route beat the dense
//! kernels?
//!
//! With block sizes `n_i` and per-block cut-vertex counts `t_i`, the
//! blockwise determinant costs on the order of `sum_i 2^(t_i) n_i^eps`
//! against `n^eps` dense, and the permanent `sum_i 2^(t_i) 2^(n_i) n_i^2`
//! against `2^n n^2`. `eps` is the assumed exponent of fast matrix
//! multiplication (default 2.373), a model parameter independent of the
//! shipped `O(n^3)` kernels; [`fit_epsilon`] recovers an effective exponent
//! from measured kernel timings instead. The model deliberately ignores the
//! partition-enumeration and outer-subset overhead of the blockwise sum.
//!
//! Coarsening with `Gamma = max t_i` and `Delta = max n_i` gives closed-form
//! ceilings on `Gamma` below which the blockwise route wins; [`curve_points`]
//! tabulates that ceiling against the block count `k`.

use std::io::Write;

use crate::blocks::BlockDecomposition;
use crate::error::{Error, Result};

/// Default exponent for the dense determinant cost model.
pub const DEFAULT_EPSILON: f64 = 2.373;

/// Which route the model prefers for one operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Blockwise,
    Dense,
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Route::Blockwise => write!(f, "blockwise"),
            Route::Dense => write!(f, "dense"),
        }
    }
}

/// The size parameters the cost model consumes.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexityProfile {
    /// Total matrix order.
    pub n: usize,
    /// Number of blocks.
    pub k: usize,
    /// Block sizes `n_1..n_k`.
    pub sizes: Vec<usize>,
    /// Per-block cut-vertex counts `t_1..t_k`.
    pub cuts: Vec<usize>,
    /// `max t_i`.
    pub gamma: usize,
    /// `max n_i`.
    pub delta: usize,
    /// Dense-cost exponent.
    pub epsilon: f64,
}

impl ComplexityProfile {
    pub fn from_decomposition(d: &BlockDecomposition, epsilon: f64) -> ComplexityProfile {
        let sizes: Vec<usize> = d.blocks().iter().map(|b| b.len()).collect();
        let cuts: Vec<usize> = (0..d.block_count()).map(|i| d.block_cut_count(i)).collect();
        let profile = ComplexityProfile {
            n: d.vertex_count(),
            k: sizes.len(),
            gamma: cuts.iter().copied().max().unwrap_or(0),
            delta: sizes.iter().copied().max().unwrap_or(0),
            sizes,
            cuts,
            epsilon,
        };
        debug_assert!(profile.delta <= profile.n);
        profile
    }
}

/// Blockwise determinant work estimate: `sum_i 2^(t_i) n_i^eps`.
pub fn det_cost(p: &ComplexityProfile) -> f64 {
    p.sizes
        .iter()
        .zip(&p.cuts)
        .map(|(&n_i, &t_i)| (t_i as f64).exp2() * (n_i as f64).powf(p.epsilon))
        .sum()
}

/// Blockwise permanent work estimate: `sum_i 2^(t_i) 2^(n_i) n_i^2`.
pub fn per_cost(p: &ComplexityProfile) -> f64 {
    p.sizes
        .iter()
        .zip(&p.cuts)
        .map(|(&n_i, &t_i)| (t_i as f64).exp2() * (n_i as f64).exp2() * (n_i as f64).powi(2))
        .sum()
}

/// Dense reference costs: `n^eps` and `2^n n^2`.
pub fn det_dense_cost(p: &ComplexityProfile) -> f64 {
    (p.n as f64).powf(p.epsilon)
}

pub fn per_dense_cost(p: &ComplexityProfile) -> f64 {
    (p.n as f64).exp2() * (p.n as f64).powi(2)
}

/// Route recommendations for the determinant and the permanent. Blockwise
/// only on a strict win; ties go dense.
pub fn recommend(p: &ComplexityProfile) -> (Route, Route) {
    let det = if det_cost(p) < det_dense_cost(p) {
        Route::Blockwise
    } else {
        Route::Dense
    };
    let per = if per_cost(p) < per_dense_cost(p) {
        Route::Blockwise
    } else {
        Route::Dense
    };
    (det, per)
}

fn check_bound_args(n: usize, delta: usize, k: usize) -> Result<()> {
    if delta == 0 || k == 0 || n < delta {
        return Err(Error::Domain(format!(
            "gamma bound needs n >= delta >= 1 and k >= 1, got n={n}, delta={delta}, k={k}"
        )));
    }
    Ok(())
}

/// Largest `Gamma` for which the coarse bound `k 2^Gamma Delta^eps <= n^eps`
/// holds: `eps log2(n/Delta) - log2 k`. May be negative (bound vacuous).
pub fn gamma_bound_det(n: usize, delta: usize, k: usize, epsilon: f64) -> Result<f64> {
    check_bound_args(n, delta, k)?;
    Ok(epsilon * (n as f64 / delta as f64).log2() - (k as f64).log2())
}

/// Largest `Gamma` for which `k 2^Gamma 2^Delta Delta^2 <= 2^n n^2` holds:
/// `(n - Delta) + 2 log2(n/Delta) - log2 k`.
pub fn gamma_bound_per(n: usize, delta: usize, k: usize) -> Result<f64> {
    check_bound_args(n, delta, k)?;
    Ok((n - delta) as f64 + 2.0 * (n as f64 / delta as f64).log2() - (k as f64).log2())
}

/// One row of the determinant curve: the `Gamma` ceiling at block count `k`.
/// A negative bound is clamped to zero and flagged vacuous.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub k: usize,
    pub gamma_max: f64,
    pub vacuous: bool,
}

/// Tabulate [`gamma_bound_det`] over a range of block counts.
pub fn curve_points(
    n: usize,
    delta: usize,
    epsilon: f64,
    k_range: std::ops::RangeInclusive<usize>,
) -> Result<Vec<CurvePoint>> {
    k_range
        .map(|k| {
            let bound = gamma_bound_det(n, delta, k, epsilon)?;
            Ok(if bound < 0.0 {
                CurvePoint {
                    k,
                    gamma_max: 0.0,
                    vacuous: true,
                }
            } else {
                CurvePoint {
                    k,
                    gamma_max: bound,
                    vacuous: false,
                }
            })
        })
        .collect()
}

/// Emit curve rows as CSV with the header `k,gamma_max,vacuous`.
pub fn write_curve_csv<W: Write>(mut out: W, points: &[CurvePoint]) -> std::io::Result<()> {
    writeln!(out, "k,gamma_max,vacuous")?;
    for p in points {
        writeln!(out, "{},{},{}", p.k, p.gamma_max, p.vacuous)?;
    }
    Ok(())
}

/// Least-squares slope of `ln t` against `ln n`: the effective exponent of a
/// measured kernel. Needs at least two samples with distinct sizes and
/// positive times.
pub fn fit_epsilon(samples: &[(usize, f64)]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|&&(n, t)| n > 0 && t > 0.0)
        .map(|&(n, t)| ((n as f64).ln(), t.ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::Domain(
            "fit_epsilon needs at least two positive samples".into(),
        ));
    }
    let m = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = m * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return Err(Error::Domain(
            "fit_epsilon needs samples with distinct sizes".into(),
        ));
    }
    Ok((m * sxy - sx * sy) / denom)
}

/// Effective exponent of the exact determinant kernel, fitted from wall
/// times on seeded random dense matrices of the given orders.
pub fn measured_epsilon_det(orders: &[usize], seed: u64) -> Result<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(orders.len());
    for &n in orders {
        let m = crate::matrix::Matrix::from_fn(n, |_, _| {
            crate::scalar::Scalar::from_i64(rng.random_range(-9..=9))
        })?;
        let start = std::time::Instant::now();
        let _ = crate::kernels::det_bareiss(&m);
        samples.push((n, start.elapsed().as_secs_f64()));
    }
    fit_epsilon(&samples)
}
