//! Dense square matrices over [`Scalar`] entries.
//!
//! Storage is row-major with 0-based `(row, col)` accessors; the digraph
//! layer addresses the same positions through 1-based vertex ids.

use crate::error::{Error, Result};
use crate::scalar::{ArithmeticMode, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    /// Build from row-major entries; `entries.len()` must equal `n * n` and
    /// all entries must belong to one arithmetic family.
    pub fn new(n: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Dimension(format!(
                "{} entries cannot fill a {n}x{n} matrix",
                entries.len()
            )));
        }
        let mut mode = None;
        for e in &entries {
            match mode {
                None => mode = Some(e.mode()),
                Some(m) if m == e.mode() => {}
                Some(_) => {
                    return Err(Error::Contract(
                        "matrix mixes exact and float entries".into(),
                    ))
                }
            }
        }
        Ok(Matrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
        }
        Matrix::new(n, rows.into_iter().flatten().collect())
    }

    /// Integer matrix from an i64 grid; panics on a ragged grid.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let entries = rows
            .iter()
            .inspect(|r| assert_eq!(r.len(), n, "ragged i64 grid"))
            .flat_map(|r| r.iter().map(|&v| Scalar::from_i64(v)))
            .collect();
        Matrix { n, entries }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Matrix::new(n, entries)
    }

    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            entries: vec![Scalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        self.entries[row * self.n + col] = value;
    }

    /// Arithmetic family of the entries; an empty matrix counts as exact.
    pub fn mode(&self) -> ArithmeticMode {
        self.entries
            .first()
            .map(Scalar::mode)
            .unwrap_or(ArithmeticMode::Exact)
    }

    pub fn is_all_int(&self) -> bool {
        self.entries.iter().all(Scalar::is_int)
    }

    /// Copy with every entry converted to binary64.
    pub fn to_float(&self) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(|e| Scalar::F64(e.to_f64())).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }
}
