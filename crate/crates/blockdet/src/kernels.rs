//! Dense determinant and permanent kernels over [`Scalar`], plus the
//! bordered (Schur) determinant update and the naive permutation-expansion
//! oracles used to cross-check everything else.
//!
//! Exact determinants use fraction-free Bareiss elimination, float
//! determinants partially pivoted LU. Permanents use Ryser's
//! inclusion-exclusion formula iterated in Gray-code order, with an
//! `i128`-chunked fast path for integer matrices and a data-parallel split
//! of the subset range behind the `parallel` feature.

use num::bigint::BigInt;
use num::traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::par;
use crate::scalar::{ArithmeticMode, Scalar};

/// Largest order accepted by the permanent kernels unless a caller raises it.
pub const DEFAULT_PERMANENT_CAP: usize = 30;
/// Largest order accepted by the permutation-expansion oracles.
pub const NAIVE_CAP: usize = 9;
/// Orders above 63 cannot be subset-indexed in a u64 and are always refused.
const HARD_SUBSET_CAP: usize = 63;
/// Below this order the parallel split costs more than it saves.
#[cfg(feature = "parallel")]
const PARALLEL_MIN_ORDER: usize = 16;
/// Fixed chunk count for the parallel subset walk. Constant so that results
/// (and float rounding) never depend on the machine's thread count.
const SUBSET_CHUNKS: u64 = 128;

/// Exact determinant by fraction-free Bareiss elimination with row pivoting.
/// The 0x0 determinant is 1. Panics on float-mode input.
pub fn det_bareiss(m: &Matrix) -> Scalar {
    assert!(
        m.mode() == ArithmeticMode::Exact,
        "det_bareiss requires exact-mode entries"
    );
    let n = m.order();
    if n == 0 {
        return Scalar::one();
    }
    let mut w: Vec<Vec<Scalar>> = m.rows().map(<[Scalar]>::to_vec).collect();
    let mut negate = false;
    let mut prev = Scalar::one();
    for k in 0..n {
        let Some(pivot_row) = (k..n).find(|&r| !w[r][k].is_zero()) else {
            return Scalar::zero();
        };
        if pivot_row != k {
            w.swap(k, pivot_row);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&w[k][k] * &w[i][j]) - &(&w[i][k] * &w[k][j]);
                w[i][j] = num.div_exact(&prev);
            }
            w[i][k] = Scalar::zero();
        }
        prev = w[k][k].clone();
    }
    let det = w[n - 1][n - 1].clone().canonical();
    if negate {
        -det
    } else {
        det
    }
}

/// Float determinant by LU with partial pivoting; sign tracked through the
/// row permutation. Entries are taken as binary64 (exact entries are
/// converted). A column with no usable pivot gives exactly 0.0.
pub fn det_lu(m: &Matrix) -> Scalar {
    let n = m.order();
    if n == 0 {
        return Scalar::F64(1.0);
    }
    let mut a: Vec<f64> = (0..n)
        .flat_map(|i| (0..n).map(move |j| m.get(i, j).to_f64()))
        .collect();
    let mut det = 1.0f64;
    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&r, &s| a[r * n + k].abs().total_cmp(&a[s * n + k].abs()))
            .unwrap();
        if a[pivot_row * n + k] == 0.0 {
            return Scalar::F64(0.0);
        }
        if pivot_row != k {
            for j in 0..n {
                a.swap(k * n + j, pivot_row * n + j);
            }
            det = -det;
        }
        let pivot = a[k * n + k];
        det *= pivot;
        for i in k + 1..n {
            let factor = a[i * n + k] / pivot;
            for j in k + 1..n {
                a[i * n + j] -= factor * a[k * n + j];
            }
        }
    }
    Scalar::F64(det)
}

/// Determinant through whichever dense kernel matches the matrix mode.
pub fn det_dense(m: &Matrix) -> Scalar {
    match m.mode() {
        ArithmeticMode::Exact => det_bareiss(m),
        ArithmeticMode::Float => det_lu(m),
    }
}

/// Permanent by Ryser's formula with the default order cap.
pub fn per_ryser(m: &Matrix) -> Result<Scalar> {
    per_ryser_capped(m, DEFAULT_PERMANENT_CAP)
}

/// Permanent by Ryser's formula, refusing orders above `cap` (and above 63
/// unconditionally). Splits the subset range across threads when the
/// `parallel` feature is on and the order makes it worthwhile.
pub fn per_ryser_capped(m: &Matrix, cap: usize) -> Result<Scalar> {
    let n = m.order();
    let cap = cap.min(HARD_SUBSET_CAP);
    if n > cap {
        return Err(Error::Resource {
            what: "Ryser permanent",
            n,
            cap,
        });
    }
    #[cfg(feature = "parallel")]
    if n >= PARALLEL_MIN_ORDER {
        return Ok(ryser_parallel(m));
    }
    Ok(ryser_sequential(m))
}

/// Sequential Ryser walk with the default cap; the reference path the
/// parallel split is benchmarked against.
pub fn per_ryser_seq(m: &Matrix) -> Result<Scalar> {
    let n = m.order();
    if n > DEFAULT_PERMANENT_CAP {
        return Err(Error::Resource {
            what: "Ryser permanent",
            n,
            cap: DEFAULT_PERMANENT_CAP,
        });
    }
    Ok(ryser_sequential(m))
}

fn ryser_sequential(m: &Matrix) -> Scalar {
    let n = m.order();
    if n == 0 {
        return Scalar::one_of(m.mode());
    }
    let end = 1u64 << n;
    match IntRyser::try_new(m) {
        Some(fast) => {
            let total = fast.range_sum(1, end);
            finish_exact(total, n)
        }
        None => {
            let total = ryser_range_generic(m, 1, end);
            finish_generic(total, n)
        }
    }
}

#[cfg(feature = "parallel")]
fn ryser_parallel(m: &Matrix) -> Scalar {
    let n = m.order();
    let end = 1u64 << n;
    let ranges = split_ranges(1, end, SUBSET_CHUNKS);
    match IntRyser::try_new(m) {
        Some(fast) => {
            let parts = par::map_vec(ranges, |(a, b)| fast.range_sum(a, b));
            let total = parts.into_iter().fold(BigInt::zero(), |acc, p| acc + p);
            finish_exact(total, n)
        }
        None => {
            let parts = par::map_vec(ranges, |(a, b)| ryser_range_generic(m, a, b));
            let total = parts
                .into_iter()
                .fold(Scalar::zero_of(m.mode()), |acc, p| &acc + &p);
            finish_generic(total, n)
        }
    }
}

#[cfg(feature = "parallel")]
fn split_ranges(from: u64, to: u64, chunks: u64) -> Vec<(u64, u64)> {
    let len = to - from;
    let chunks = chunks.min(len.max(1));
    (0..chunks)
        .map(|c| {
            (
                from + len * c / chunks,
                from + len * (c + 1) / chunks,
            )
        })
        .filter(|(a, b)| a < b)
        .collect()
}

fn finish_exact(total: BigInt, n: usize) -> Scalar {
    let signed = if n % 2 == 1 { -total } else { total };
    Scalar::Int(signed)
}

fn finish_generic(total: Scalar, n: usize) -> Scalar {
    if n % 2 == 1 {
        -total
    } else {
        total
    }
}

/// Sum of `(-1)^{|S|} prod_i sum_{j in S} a_ij` over the subsets with
/// Gray-code index in `[from, to)`. The subset for index `k` is
/// `k ^ (k >> 1)`; step `k` toggles column `trailing_zeros(k)` and the
/// subset parity equals the parity of `k`.
fn ryser_range_generic(m: &Matrix, from: u64, to: u64) -> Scalar {
    let n = m.order();
    let mode = m.mode();
    let start = from ^ (from >> 1);
    let mut row_sums: Vec<Scalar> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|j| start >> j & 1 == 1)
                .fold(Scalar::zero_of(mode), |acc, j| &acc + m.get(i, j))
        })
        .collect();
    let mut total = Scalar::zero_of(mode);
    let emit = |k: u64, row_sums: &[Scalar], total: &mut Scalar| {
        let mut prod = Scalar::one_of(mode);
        for s in row_sums {
            if s.is_zero() {
                return;
            }
            prod = &prod * s;
        }
        *total = if k & 1 == 1 { &*total - &prod } else { &*total + &prod };
    };
    emit(from, &row_sums, &mut total);
    for k in from + 1..to {
        let j = k.trailing_zeros() as usize;
        let gray = k ^ (k >> 1);
        let add = gray >> j & 1 == 1;
        for (i, s) in row_sums.iter_mut().enumerate() {
            *s = if add { &*s + m.get(i, j) } else { &*s - m.get(i, j) };
        }
        emit(k, &row_sums, &mut total);
    }
    total
}

/// Fast Ryser walker for integer matrices whose row sums fit in `i128`.
/// Rows are grouped so that each group's partial product provably fits in
/// `i128`; only the final cross-group multiply runs in `BigInt`.
struct IntRyser {
    n: usize,
    /// column-major entries
    cols: Vec<Vec<i128>>,
    /// half-open row ranges whose products stay within `i128`
    groups: Vec<(usize, usize)>,
}

impl IntRyser {
    const GROUP_LIMIT: u128 = 1 << 120;

    fn try_new(m: &Matrix) -> Option<IntRyser> {
        let n = m.order();
        let mut cols = vec![vec![0i128; n]; n];
        for (j, col) in cols.iter_mut().enumerate() {
            for (i, slot) in col.iter_mut().enumerate() {
                match m.get(i, j) {
                    Scalar::Int(v) => *slot = v.to_i128()?,
                    _ => return None,
                }
            }
        }
        // row bound: |row sum| <= sum of |entries|
        let mut bounds = Vec::with_capacity(n);
        for i in 0..n {
            let mut b: u128 = 1;
            for col in &cols {
                b = b.checked_add(col[i].unsigned_abs())?;
            }
            if b > Self::GROUP_LIMIT {
                return None;
            }
            bounds.push(b);
        }
        let mut groups = Vec::new();
        let mut start = 0;
        let mut acc: u128 = 1;
        for (i, &b) in bounds.iter().enumerate() {
            match acc.checked_mul(b) {
                Some(next) if next <= Self::GROUP_LIMIT => acc = next,
                _ => {
                    groups.push((start, i));
                    start = i;
                    acc = b;
                }
            }
        }
        if start < n || n == 0 {
            groups.push((start, n));
        }
        Some(IntRyser { n, cols, groups })
    }

    fn range_sum(&self, from: u64, to: u64) -> BigInt {
        let n = self.n;
        let start = from ^ (from >> 1);
        let mut row_sums = vec![0i128; n];
        for j in 0..n {
            if start >> j & 1 == 1 {
                for (s, &c) in row_sums.iter_mut().zip(&self.cols[j]) {
                    *s += c;
                }
            }
        }
        let mut total = BigInt::zero();
        let mut small: i128 = 0;
        let emit = |k: u64, row_sums: &[i128], total: &mut BigInt, small: &mut i128| {
            let mut term = match self.groups.first() {
                Some(&(a, b)) => group_product(&row_sums[a..b]),
                None => 1,
            };
            if self.groups.len() > 1 {
                let mut big = BigInt::from(term);
                for &(a, b) in &self.groups[1..] {
                    big *= group_product(&row_sums[a..b]);
                }
                if k & 1 == 1 {
                    *total -= big;
                } else {
                    *total += big;
                }
                return;
            }
            if k & 1 == 1 {
                term = -term;
            }
            match small.checked_add(term) {
                Some(v) => *small = v,
                None => {
                    *total += BigInt::from(*small);
                    *small = term;
                }
            }
        };
        emit(from, &row_sums, &mut total, &mut small);
        for k in from + 1..to {
            let j = k.trailing_zeros() as usize;
            let gray = k ^ (k >> 1);
            if gray >> j & 1 == 1 {
                for (s, &c) in row_sums.iter_mut().zip(&self.cols[j]) {
                    *s += c;
                }
            } else {
                for (s, &c) in row_sums.iter_mut().zip(&self.cols[j]) {
                    *s -= c;
                }
            }
            emit(k, &row_sums, &mut total, &mut small);
        }
        total + BigInt::from(small)
    }
}

fn group_product(values: &[i128]) -> i128 {
    let mut p: i128 = 1;
    for &v in values {
        if v == 0 {
            return 0;
        }
        p *= v;
    }
    p
}

/// Determinant by expansion over all permutations (Heap's algorithm, one
/// transposition per step). Oracle only: orders above [`NAIVE_CAP`] are
/// refused.
pub fn det_naive(m: &Matrix) -> Result<Scalar> {
    permutation_expansion(m, true)
}

/// Permanent by expansion over all permutations; same cap as [`det_naive`].
pub fn per_naive(m: &Matrix) -> Result<Scalar> {
    permutation_expansion(m, false)
}

fn permutation_expansion(m: &Matrix, signed: bool) -> Result<Scalar> {
    let n = m.order();
    if n > NAIVE_CAP {
        return Err(Error::Resource {
            what: "permutation expansion",
            n,
            cap: NAIVE_CAP,
        });
    }
    let mode = m.mode();
    if n == 0 {
        return Ok(Scalar::one_of(mode));
    }
    let term = |perm: &[usize]| -> Scalar {
        let mut p = Scalar::one_of(mode);
        for (i, &j) in perm.iter().enumerate() {
            let a = m.get(i, j);
            if a.is_zero() {
                return Scalar::zero_of(mode);
            }
            p = &p * a;
        }
        p
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    let mut negative = false;
    let mut total = term(&perm);
    let mut i = 0;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            negative = !negative;
            let t = term(&perm);
            total = if signed && negative { total - t } else { total + t };
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(total.canonical())
}

/// The partition of an `r x r` matrix into its leading principal submatrix
/// `a1` of order `r-1`, the last column `b`, the last row `c`, and the
/// corner entry `d`.
#[derive(Clone, Debug)]
pub struct BorderedMatrix {
    pub a1: Matrix,
    pub b: Vec<Scalar>,
    pub c: Vec<Scalar>,
    pub d: Scalar,
}

impl BorderedMatrix {
    pub fn new(a1: Matrix, b: Vec<Scalar>, c: Vec<Scalar>, d: Scalar) -> Result<Self> {
        let r1 = a1.order();
        if b.len() != r1 || c.len() != r1 {
            return Err(Error::Dimension(format!(
                "border vectors have lengths {} and {}, expected {r1}",
                b.len(),
                c.len()
            )));
        }
        Ok(BorderedMatrix { a1, b, c, d })
    }

    /// Split off the last row and column of `m` (order >= 1).
    pub fn split(m: &Matrix) -> Result<Self> {
        let r = m.order();
        if r == 0 {
            return Err(Error::Dimension("cannot border a 0x0 matrix".into()));
        }
        let a1 = Matrix::from_fn(r - 1, |i, j| m.get(i, j).clone())?;
        let b = (0..r - 1).map(|i| m.get(i, r - 1).clone()).collect();
        let c = (0..r - 1).map(|j| m.get(r - 1, j).clone()).collect();
        Ok(BorderedMatrix {
            a1,
            b,
            c,
            d: m.get(r - 1, r - 1).clone(),
        })
    }

    pub fn order(&self) -> usize {
        self.a1.order() + 1
    }

    /// Reassemble the full `r x r` matrix.
    pub fn assemble(&self) -> Matrix {
        let r1 = self.a1.order();
        Matrix::from_fn(r1 + 1, |i, j| match (i == r1, j == r1) {
            (false, false) => self.a1.get(i, j).clone(),
            (false, true) => self.b[i].clone(),
            (true, false) => self.c[j].clone(),
            (true, true) => self.d.clone(),
        })
        .expect("bordered dimensions are consistent")
    }
}

/// Determinant of a bordered matrix from the determinant (and, when
/// nonzero, the inverse) of its leading principal submatrix:
///
/// * `det(A1) != 0`: `det(A1) * (d - c A1^-1 b)` (Schur complement);
/// * `det(A1) == 0`, `d != 0`: `d * det(A1 - b c / d)`;
/// * `det(A1) == 0`, `d == 0`: `det(A1 - b c)`.
///
/// The first case requires `inv_a1`; omitting it is a contract error.
pub fn det_bordered(
    bm: &BorderedMatrix,
    det_a1: &Scalar,
    inv_a1: Option<&Matrix>,
) -> Result<Scalar> {
    let r1 = bm.a1.order();
    if !det_a1.is_zero() {
        let inv = inv_a1.ok_or_else(|| {
            Error::Contract("det_bordered needs inv_a1 when det(A1) is nonzero".into())
        })?;
        if inv.order() != r1 {
            return Err(Error::Dimension(format!(
                "inverse has order {}, expected {r1}",
                inv.order()
            )));
        }
        // d - c . (A1^-1 b)
        let mut schur = bm.d.clone();
        for i in 0..r1 {
            let mut inv_b_i = Scalar::zero();
            for j in 0..r1 {
                inv_b_i = &inv_b_i + &(inv.get(i, j) * &bm.b[j]);
            }
            schur = &schur - &(&bm.c[i] * &inv_b_i);
        }
        return Ok((det_a1 * &schur).canonical());
    }
    if !bm.d.is_zero() {
        let update = Matrix::from_fn(r1, |i, j| {
            bm.a1.get(i, j) - &(&bm.b[i] * &bm.c[j]).div(&bm.d)
        })?;
        return Ok((&bm.d * &det_dense(&update)).canonical());
    }
    let update = Matrix::from_fn(r1, |i, j| bm.a1.get(i, j) - &(&bm.b[i] * &bm.c[j]))?;
    Ok(det_dense(&update).canonical())
}

/// Inverse by Gauss-Jordan elimination, or `None` if singular. Exact
/// matrices invert over the rationals; float matrices use partial pivoting.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.order();
    let mode = m.mode();
    let float = mode == ArithmeticMode::Float;
    let mut a: Vec<Vec<Scalar>> = m.rows().map(<[Scalar]>::to_vec).collect();
    let mut inv: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Scalar::one_of(mode)
                    } else {
                        Scalar::zero_of(mode)
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        let pivot_row = if float {
            (k..n).max_by(|&r, &s| {
                a[r][k].to_f64().abs().total_cmp(&a[s][k].to_f64().abs())
            })?
        } else {
            (k..n).find(|&r| !a[r][k].is_zero())?
        };
        if a[pivot_row][k].is_zero() {
            return None;
        }
        a.swap(k, pivot_row);
        inv.swap(k, pivot_row);
        let pivot = a[k][k].clone();
        for j in 0..n {
            a[k][j] = a[k][j].div(&pivot);
            inv[k][j] = inv[k][j].div(&pivot);
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].clone();
            for j in 0..n {
                a[i][j] = &a[i][j] - &(&factor * &a[k][j]);
                inv[i][j] = &inv[i][j] - &(&factor * &inv[k][j]);
            }
        }
    }
    Some(Matrix::from_rows(inv).expect("inverse is square"))
}

/// Permanent through the capped Ryser kernel; mirror of [`det_dense`].
pub fn per_dense(m: &Matrix, cap: usize) -> Result<Scalar> {
    per_ryser_capped(m, cap)
}
