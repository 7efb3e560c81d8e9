//! Perron roots of nonnegative operators by shifted power iteration.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// A nonnegative linear operator on `R^n`.
pub trait NonnegOperator: Sync {
    fn dim(&self) -> usize;
    /// `y = A x`
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

/// Row-major dense square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        DenseMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        self.apply(x, &mut y);
        y
    }

    pub fn vec_mul(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        for (i, &xi) in x.iter().enumerate() {
            for (yj, &a) in y.iter_mut().zip(self.row(i)) {
                *yj += xi * a;
            }
        }
        y
    }
}

impl NonnegOperator for DenseMatrix {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }
}

/// Compressed sparse row matrix.
#[derive(Clone, Debug, Default)]
pub struct CsrMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl CsrMatrix {
    /// Builds from rows given in order; each row is a list of `(column, value)`.
    pub fn from_rows(n: usize, rows: impl IntoIterator<Item = Vec<(u32, f64)>>) -> Self {
        let mut row_ptr = Vec::with_capacity(n + 1);
        row_ptr.push(0);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for row in rows {
            for (c, v) in row {
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        assert_eq!(row_ptr.len(), n + 1, "row count mismatch");
        CsrMatrix { n, row_ptr, cols, vals }
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[r.clone()].iter().map(|&c| c as usize).zip(self.vals[r].iter().copied())
    }

    pub fn row_len(&self, i: usize) -> usize {
        self.row_ptr[i + 1] - self.row_ptr[i]
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.row(i).map(|(_, v)| v).sum()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.n);
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                d.set(i, j, d.get(i, j) + v);
            }
        }
        d
    }
}

impl NonnegOperator for CsrMatrix {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let row = |(i, yi): (usize, &mut f64)| {
            let mut acc = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.vals[k] * x[self.cols[k] as usize];
            }
            *yi = acc;
        };
        if self.n >= 1 << 14 {
            y.par_iter_mut().enumerate().with_min_len(4096).for_each(row);
        } else {
            y.iter_mut().enumerate().for_each(row);
        }
    }
}

#[derive(Clone, Debug)]
pub struct PowerIterationOptions {
    /// Stop once `||A x - ρ x||_1 / ρ` falls below this (with `||x||_1 = 1`).
    pub tol: f64,
    pub max_iter: usize,
    /// Iterate with `A + shift * I`; a positive shift breaks periodicity.
    pub shift: f64,
}

impl Default for PowerIterationOptions {
    fn default() -> Self {
        PowerIterationOptions { tol: 1e-12, max_iter: 1_000_000, shift: 0.0 }
    }
}

#[derive(Clone, Debug)]
pub struct PerronResult {
    pub rho: f64,
    /// Nonnegative, `||v||_1 = 1`.
    pub vector: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Perron root and vector of `op` starting from `start` (uniform when `None`).
pub fn power_iteration(
    op: &impl NonnegOperator,
    start: Option<Vec<f64>>,
    opts: &PowerIterationOptions,
) -> Result<PerronResult> {
    let n = op.dim();
    if n == 0 {
        return Ok(PerronResult { rho: 0.0, vector: Vec::new(), iterations: 0, residual: 0.0 });
    }
    let mut x = start.unwrap_or_else(|| vec![1.0; n]);
    normalize_l1(&mut x);
    let mut y = vec![0.0; n];
    let mut best = f64::INFINITY;
    for it in 1..=opts.max_iter {
        op.apply(&x, &mut y);
        let raw: f64 = y.iter().sum();
        if raw <= f64::MIN_POSITIVE {
            // the iterate was annihilated: nilpotent on the reachable part
            return Ok(PerronResult { rho: 0.0, vector: x, iterations: it, residual: 0.0 });
        }
        let lam = raw + opts.shift;
        let mut diff = 0.0;
        for (yi, &xi) in y.iter_mut().zip(&x) {
            *yi = (*yi + opts.shift * xi) / lam;
            diff += (*yi - xi).abs();
        }
        // ||A x - ρ x||_1 = lam * ||y - x||_1 since (A + shift) x = lam * y
        let residual = lam * diff / raw;
        best = best.min(residual);
        std::mem::swap(&mut x, &mut y);
        if residual <= opts.tol {
            return Ok(PerronResult { rho: raw, vector: x, iterations: it, residual });
        }
    }
    Err(Error::NonConvergence { what: "power iteration", iterations: opts.max_iter, residual: best })
}

fn normalize_l1(x: &mut [f64]) {
    let s: f64 = x.iter().sum();
    if s > 0.0 {
        x.iter_mut().for_each(|v| *v /= s);
    }
}
