use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{Ball, Letter, QuotientGroup};
use crate::symbolic::perron::{power_iteration, CsrMatrix, NonnegOperator, PerronResult, PowerIterationOptions};
use crate::symbolic::LinearGdmsSpec;

/// Transfer operator of the skew product `Σ × G` restricted to a ball of `G`.
///
/// State `i * 2d + v` is the pair `(v, elements[i])`. It moves to `(w, g Ψ(v))` for
/// every `w != v^-1` with weight `c(v)^s`; moves leaving the ball are dropped.
#[derive(Clone, Debug)]
pub struct SkewOperator {
    pub s: f64,
    pub rank: usize,
    pub radius: usize,
    /// The ball is the whole (finite) group, so nothing was truncated.
    pub exact: bool,
    pub ball_size: usize,
    pub matrix: CsrMatrix,
}

/// Builds the operator on `ball(G, radius)`; finite groups always use the whole group.
pub fn build_skew_operator(spec: &LinearGdmsSpec, group: &QuotientGroup, s: f64, radius: usize, caps: &Caps) -> Result<SkewOperator> {
    let radius = match group {
        QuotientGroup::Finite(fg) => fg.diameter(),
        _ => radius,
    };
    let ball = Ball::new(group, radius, caps.ball_for_states(spec.alphabet_size()))?;
    Ok(skew_on_ball(spec, &ball, s))
}

fn skew_on_ball(spec: &LinearGdmsSpec, ball: &Ball, s: f64) -> SkewOperator {
    let alphabet = spec.alphabet_size();
    let weights = spec.letter_weights(s);
    let rows = (0..ball.len() * alphabet).map(|state| {
        let (i, v) = (state / alphabet, Letter::from_index(state % alphabet));
        match ball.step(i, v) {
            Some(j) => Letter::alphabet(spec.rank())
                .filter(|&w| w != v.inverse())
                .map(|w| ((j * alphabet + w.index()) as u32, weights[v.index()]))
                .collect(),
            None => Vec::new(),
        }
    });
    SkewOperator {
        s,
        rank: spec.rank(),
        radius: ball.radius(),
        exact: ball.is_exhaustive(),
        ball_size: ball.len(),
        matrix: CsrMatrix::from_rows(ball.len() * alphabet, rows),
    }
}

impl SkewOperator {
    pub fn states(&self) -> usize {
        self.matrix.dim()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SkewRadius {
    pub rho: f64,
    pub iterations: usize,
    pub residual: f64,
    pub restarted: bool,
}

/// Perron root of the operator, starting from the uniform vector.
///
/// If that fails to converge the iteration is restarted from the vector supported on
/// the identity states, which lives in the component that carries the spectral radius.
pub fn skew_spectral_radius(op: &SkewOperator) -> Result<SkewRadius> {
    let n = op.states();
    let mean_row = (0..n).map(|i| op.matrix.row_sum(i)).sum::<f64>() / n.max(1) as f64;
    let opts = PowerIterationOptions { tol: 1e-12, max_iter: 200_000, shift: 0.5 * mean_row };
    let done = |r: PerronResult, restarted| SkewRadius { rho: r.rho, iterations: r.iterations, residual: r.residual, restarted };
    // nilpotent truncations (e.g. N trivial, where paths only move inward and then outward)
    // die within a few ball diameters; the shifted iteration would crawl towards the shift
    let probe = PowerIterationOptions { max_iter: 4 * op.radius + 64, shift: 0.0, ..opts.clone() };
    if let Ok(r) = power_iteration(&op.matrix, None, &probe) {
        return Ok(done(r, false));
    }
    match power_iteration(&op.matrix, None, &opts) {
        Ok(r) => Ok(done(r, false)),
        Err(Error::NonConvergence { .. }) => {
            let alphabet = 2 * op.rank;
            let mut start = vec![0.0; n];
            start[..alphabet].iter_mut().for_each(|x| *x = 1.0);
            power_iteration(&op.matrix, Some(start), &opts).map(|r| done(r, true))
        }
        Err(e) => Err(e),
    }
}
