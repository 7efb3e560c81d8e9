use serde::Serialize;

use super::perron::{power_iteration, DenseMatrix, PowerIterationOptions};
use super::LinearGdmsSpec;
use crate::error::{Error, Result};
use crate::group::Letter;

/// `M(s)[v][w] = a(v, w) c(w)^s` with `a(v, w) = 1` iff `w != v^-1`.
///
/// Together with the initial vector `u(s)[v] = c(v)^s` this gives
/// `Σ_{|ω| = n} exp(s S_ω φ) = u^T M^{n-1} 1`.
#[derive(Clone, Debug)]
pub struct TransferMatrix {
    s: f64,
    matrix: DenseMatrix,
    initial: Vec<f64>,
    log_ratios: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralData {
    pub rho: f64,
    /// Right Perron vector, max entry 1.
    pub right: Vec<f64>,
    /// Left Perron vector, scaled so that `left · right = 1`.
    pub left: Vec<f64>,
    pub iterations: usize,
    /// Larger of the relative left and right eigen-residuals (sup norm).
    pub residual: f64,
}

/// Residual bound required of every dense Perron computation.
pub const SPECTRAL_TOL: f64 = 1e-12;

impl TransferMatrix {
    pub fn new(spec: &LinearGdmsSpec, s: f64) -> Self {
        let weights = spec.letter_weights(s);
        let n = spec.alphabet_size();
        let matrix = DenseMatrix::from_fn(n, |v, w| {
            if Letter::from_index(w) == Letter::from_index(v).inverse() {
                0.0
            } else {
                weights[w]
            }
        });
        let log_ratios = spec.ratios().iter().map(|c| c.ln()).collect();
        TransferMatrix { s, matrix, initial: weights, log_ratios }
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn initial(&self) -> &[f64] {
        &self.initial
    }

    /// `Z_n(s)`, the weighted count of admissible words of length `n >= 1`.
    pub fn partition_sum(&self, n: usize) -> f64 {
        if n > 60 {
            return self.log_partition_sum(n).exp();
        }
        if n == 0 {
            return 1.0;
        }
        let mut v = vec![1.0; self.matrix.dim()];
        for _ in 1..n {
            v = self.matrix.mul_vec(&v);
        }
        dot(&self.initial, &v)
    }

    /// `log Z_n(s)` with per-step renormalization, safe for long words.
    pub fn log_partition_sum(&self, n: usize) -> f64 {
        if n == 0 {
            return 0.0;
        }
        let mut v = vec![1.0; self.matrix.dim()];
        let mut log_scale = 0.0;
        for _ in 1..n {
            v = self.matrix.mul_vec(&v);
            let m = v.iter().copied().fold(0.0, f64::max);
            v.iter_mut().for_each(|x| *x /= m);
            log_scale += m.ln();
        }
        log_scale + dot(&self.initial, &v).ln()
    }

    /// `dM/ds`, entrywise `M[v][w] log c(w)`.
    fn derivative(&self) -> DenseMatrix {
        let n = self.matrix.dim();
        DenseMatrix::from_fn(n, |v, w| self.matrix.get(v, w) * self.log_ratios[w])
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Perron data of `M(s)`.
pub fn spectral_data(m: &TransferMatrix) -> Result<SpectralData> {
    let opts = PowerIterationOptions { tol: SPECTRAL_TOL / 10.0, ..Default::default() };
    let right = power_iteration(m.matrix(), None, &opts)?;
    let transpose = m.matrix().transpose();
    let left = power_iteration(&transpose, None, &opts)?;

    let rho = right.rho;
    let mut r = right.vector;
    let rmax = r.iter().copied().fold(0.0, f64::max);
    r.iter_mut().for_each(|x| *x /= rmax);
    let mut l = left.vector;
    let lr = dot(&l, &r);
    l.iter_mut().for_each(|x| *x /= lr);

    let res_r = sup_residual(&m.matrix().mul_vec(&r), &r, rho);
    let res_l = sup_residual(&m.matrix().vec_mul(&l), &l, rho);
    let residual = res_r.max(res_l);
    if residual > SPECTRAL_TOL {
        return Err(Error::NonConvergence {
            what: "transfer matrix Perron vector",
            iterations: right.iterations + left.iterations,
            residual,
        });
    }
    Ok(SpectralData { rho, right: r, left: l, iterations: right.iterations + left.iterations, residual })
}

fn sup_residual(mx: &[f64], x: &[f64], rho: f64) -> f64 {
    let scale = x.iter().copied().fold(0.0, f64::max) * rho;
    mx.iter().zip(x).map(|(a, b)| (a - rho * b).abs()).fold(0.0, f64::max) / scale
}

/// `P(sφ) = log ρ(M(s))`.
///
/// For the locally constant potential on the finite irreducible shift the
/// limsup defining the pressure is a limit and equals the log Perron root.
pub fn pressure(spec: &LinearGdmsSpec, s: f64) -> Result<f64> {
    Ok(spectral_data(&TransferMatrix::new(spec, s))?.rho.ln())
}

/// `(P(sφ), dP/ds)` via first-order eigenvalue perturbation
/// `dρ/ds = l^T (dM/ds) r / (l^T r)`.
pub fn pressure_with_derivative(spec: &LinearGdmsSpec, s: f64) -> Result<(f64, f64, SpectralData)> {
    let m = TransferMatrix::new(spec, s);
    let sd = spectral_data(&m)?;
    let drho = dot(&sd.left, &m.derivative().mul_vec(&sd.right));
    Ok((sd.rho.ln(), drho / sd.rho, sd))
}

#[derive(Clone, Debug, Serialize)]
pub struct BowenRoot {
    pub s: f64,
    pub pressure: f64,
    pub bisection_steps: usize,
    pub newton_steps: usize,
}

/// The unique `s*` with `P(s* φ) = 0`, i.e. `δ(F_d, Φ)`.
pub fn bowen_root(spec: &LinearGdmsSpec) -> Result<BowenRoot> {
    let d = spec.rank() as f64;
    let mut lo = 0.0;
    let mut hi = (2.0 * d - 1.0).ln() / -spec.max_ratio().ln() + 1.0;
    let mut bisection_steps = 0;
    while hi - lo > 1e-3 {
        let mid = 0.5 * (lo + hi);
        if pressure(spec, mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        bisection_steps += 1;
    }

    let mut s = 0.5 * (lo + hi);
    let mut newton_steps = 0;
    for _ in 0..100 {
        let (p, dp, _) = pressure_with_derivative(spec, s)?;
        if p == 0.0 {
            break;
        }
        if p > 0.0 {
            lo = lo.max(s);
        } else {
            hi = hi.min(s);
        }
        if p.abs() <= 1e-14 {
            break;
        }
        let mut next = s - p / dp;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
            bisection_steps += 1;
        } else {
            newton_steps += 1;
        }
        if (next - s).abs() <= 1e-16 * s.abs().max(1.0) {
            s = next;
            break;
        }
        s = next;
    }
    let p = pressure(spec, s)?;
    if p.abs() > 1e-12 {
        return Err(Error::NonConvergence { what: "Bowen root", iterations: newton_steps + bisection_steps, residual: p.abs() });
    }
    Ok(BowenRoot { s, pressure: p, bisection_steps, newton_steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn asym() -> LinearGdmsSpec {
        LinearGdmsSpec::symmetric(&[1.0 / 3.0, 0.2]).unwrap()
    }

    #[test]
    fn uniform_rows() {
        let spec = LinearGdmsSpec::uniform(2, 1.0 / 3.0).unwrap();
        let m = TransferMatrix::new(&spec, 1.0);
        for v in 0..4 {
            let row = m.matrix().row(v);
            assert_eq!(row.iter().filter(|&&x| x == 0.0).count(), 1);
            assert_eq!(row[v ^ 1], 0.0);
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        }
        assert!((m.partition_sum(2) - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn spectral_examples() {
        let spec = LinearGdmsSpec::uniform(2, 1.0 / 3.0).unwrap();
        let sd = spectral_data(&TransferMatrix::new(&spec, 1.0)).unwrap();
        assert!((sd.rho - 1.0).abs() < 1e-14);
        let sd = spectral_data(&TransferMatrix::new(&spec, 0.0)).unwrap();
        assert!((sd.rho - 3.0).abs() < 1e-14);
        assert!(sd.right.iter().chain(&sd.left).all(|&x| x > 0.0));
        assert!((sd.left.iter().zip(&sd.right).map(|(a, b)| a * b).sum::<f64>() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rho_matches_partial_sum_growth() {
        // ratio-of-partial-sums oracle: Z_31 / Z_30 from the matrix powers
        let m = TransferMatrix::new(&asym(), 1.0);
        let sd = spectral_data(&m).unwrap();
        let ratio = m.partition_sum(31) / m.partition_sum(30);
        assert!((sd.rho - ratio).abs() < 1e-6);
        assert!(sd.residual <= SPECTRAL_TOL);
    }

    #[test]
    fn log_domain_agrees() {
        let m = TransferMatrix::new(&asym(), 0.7);
        for n in [1, 5, 40, 60] {
            let a = m.partition_sum(n).ln();
            let b = m.log_partition_sum(n);
            assert!((a - b).abs() < 1e-12 * a.abs().max(1.0), "n={n}");
        }
        assert!(m.log_partition_sum(2000).is_finite());
    }

    #[test]
    fn pressure_closed_forms() {
        let spec = LinearGdmsSpec::uniform(2, 1.0 / 3.0).unwrap();
        assert!(pressure(&spec, 1.0).unwrap().abs() < 1e-14);
        let spec3 = LinearGdmsSpec::uniform(3, 0.2).unwrap();
        assert!((pressure(&spec3, 0.0).unwrap() - 5f64.ln()).abs() < 1e-14);
        for s in [0.3, 1.7] {
            let closed = (3.0 * (1.0f64 / 3.0).powf(s)).ln();
            assert!((pressure(&spec, s).unwrap() - closed).abs() < 1e-13);
        }
    }

    #[test]
    fn pressure_decreasing_and_convex() {
        let specs = [asym(), LinearGdmsSpec::new(2, vec![1.0 / 3.0, 0.25, 0.2, 0.15]).unwrap()];
        for spec in &specs {
            let grid: Vec<f64> = (0..=30).map(|i| i as f64 * 0.1).collect();
            let p: Vec<f64> = grid.iter().map(|&s| pressure(spec, s).unwrap()).collect();
            for i in 1..p.len() {
                assert!(p[i] < p[i - 1]);
            }
            for i in 1..p.len() - 1 {
                assert!(p[i - 1] + p[i + 1] - 2.0 * p[i] >= -1e-12);
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let spec = LinearGdmsSpec::new(2, vec![1.0 / 3.0, 0.25, 0.2, 0.15]).unwrap();
        let (_, dp, _) = pressure_with_derivative(&spec, 0.8).unwrap();
        let h = 1e-5;
        let fd = (pressure(&spec, 0.8 + h).unwrap() - pressure(&spec, 0.8 - h).unwrap()) / (2.0 * h);
        assert!((dp - fd).abs() < 1e-8);
    }

    #[test]
    fn bowen_closed_forms() {
        let r = bowen_root(&LinearGdmsSpec::uniform(2, 1.0 / 3.0).unwrap()).unwrap();
        assert!((r.s - 1.0).abs() < 1e-12);
        let r = bowen_root(&LinearGdmsSpec::uniform(3, 0.2).unwrap()).unwrap();
        assert!((r.s - 1.0).abs() < 1e-12);
        let r = bowen_root(&LinearGdmsSpec::uniform(2, 0.25).unwrap()).unwrap();
        assert!((r.s - 3f64.ln() / 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn bowen_root_brackets_partial_sums() {
        // partial Poincaré sums up to length 25 at s* ± 0.05
        let spec = asym();
        let root = bowen_root(&spec).unwrap().s;
        assert!(root.abs() > 0.0 && pressure(&spec, root).unwrap().abs() <= 1e-12);
        let term = |s: f64, n: usize| TransferMatrix::new(&spec, s).partition_sum(n);
        assert!(term(root - 0.05, 25) > term(root - 0.05, 24));
        assert!(term(root + 0.05, 25) < term(root + 0.05, 24));
    }
}
