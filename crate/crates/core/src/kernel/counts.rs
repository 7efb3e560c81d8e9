use serde::Serialize;

use super::walk::PrunedWalk;
use crate::caps::Caps;
use crate::error::Result;
use crate::group::{Ball, Letter, QuotientGroup};
use crate::symbolic::LinearGdmsSpec;

/// `a_n = Σ_{ω ∈ Σ^n, Ψ(ω) = id} exp(s S_ω φ)` for `n = 1..=n_max`, stored as logs.
#[derive(Clone, Debug, Serialize)]
pub struct KernelCountTable {
    pub s: f64,
    pub n_max: usize,
    /// `log_a[n - 1] = log a_n`, `-inf` when no kernel word of length `n` exists.
    pub log_a: Vec<f64>,
    /// Same for the supermultiplicative subsequence `b_n` of kernel words that start with
    /// `g1` and do not end with `g1^-1` (closed under concatenation).
    pub log_b: Vec<f64>,
    /// True when radius pruning guarantees no word was missed.
    pub exact: bool,
    pub ball_radius: usize,
    pub ball_size: usize,
}

impl KernelCountTable {
    pub fn a(&self, n: usize) -> f64 {
        self.log_a[n - 1].exp()
    }

    pub fn nonzero(&self) -> usize {
        self.log_a.iter().filter(|v| v.is_finite()).count()
    }

    /// CSV rows `n,log_a_n,exact_flag`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,log_a_n,exact_flag\n");
        for (i, v) in self.log_a.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", i + 1, fmt_log(*v), u8::from(self.exact)));
        }
        out
    }
}

pub(crate) fn fmt_log(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.15e}")
    } else {
        "-inf".into()
    }
}

/// Kernel counts with the ball radius chosen for exactness, shrunk to the cap if needed.
pub fn kernel_counts(spec: &LinearGdmsSpec, group: &QuotientGroup, s: f64, n_max: usize, caps: &Caps) -> Result<KernelCountTable> {
    let ball = kernel_ball(spec, group, n_max, caps)?;
    Ok(kernel_counts_in(spec, &ball, s, n_max, true))
}

pub(crate) fn kernel_ball(spec: &LinearGdmsSpec, group: &QuotientGroup, n_max: usize, caps: &Caps) -> Result<Ball> {
    let radius = n_max.div_ceil(2);
    Ball::within_cap(group, radius, caps.ball_for_states(spec.alphabet_size()))
}

pub(crate) fn kernel_counts_in(spec: &LinearGdmsSpec, ball: &Ball, s: f64, n_max: usize, with_b: bool) -> KernelCountTable {
    let alphabet = spec.alphabet_size();
    let walk = PrunedWalk::new(ball, spec.letter_weights(s));
    let at_identity = |x: &[f64], log_scale: f64, skip: Option<Letter>| {
        let total: f64 = Letter::alphabet(spec.rank())
            .filter(|&v| Some(v) != skip)
            .map(|v| x[v.index()])
            .sum();
        if total > 0.0 {
            total.ln() + log_scale
        } else {
            f64::NEG_INFINITY
        }
    };

    let mut log_a = vec![f64::NEG_INFINITY; n_max];
    walk.run(n_max, 0, None, |n, x, ls| log_a[n - 1] = at_identity(&x[..alphabet], ls, None));

    let mut log_b = vec![f64::NEG_INFINITY; n_max];
    if with_b {
        let first = Letter::from_index(0);
        walk.run(n_max, 0, Some(first), |n, x, ls| log_b[n - 1] = at_identity(&x[..alphabet], ls, Some(first.inverse())));
    }

    let exact = ball.is_exhaustive() || ball.radius() >= PrunedWalk::required_radius(n_max, 0);
    KernelCountTable { s, n_max, log_a, log_b, exact, ball_radius: ball.radius(), ball_size: ball.len() }
}
