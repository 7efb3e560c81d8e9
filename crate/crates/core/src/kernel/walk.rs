use crate::group::{Ball, Letter};

/// Forward dynamic program over `(element, last letter)` states restricted to a ball.
///
/// A state at word-metric distance `D` with `r` letters still to append can only end
/// within distance `target` of the identity if `D <= target + r`, because one letter
/// moves the group element by at most one. States violating this are dropped, so
/// every word ending in the target ball is counted as long as the ball has radius
/// `floor((target + n_max) / 2)`.
pub(crate) struct PrunedWalk<'a> {
    ball: &'a Ball,
    weights: Vec<f64>,
}

impl<'a> PrunedWalk<'a> {
    pub fn new(ball: &'a Ball, weights: Vec<f64>) -> Self {
        PrunedWalk { ball, weights }
    }

    /// Radius needed for exact counts of words of length `<= n_max` ending within `target`.
    pub fn required_radius(n_max: usize, target: usize) -> usize {
        (n_max + target) / 2
    }

    /// Runs lengths `1..=n_max`, calling `observe(n, states, log_scale)` after each length.
    ///
    /// `states[i * 2d + v]` times `exp(log_scale)` is the weighted sum of words of length
    /// `n` that end in letter `v` at ball element `i`. When `start` is set only words
    /// beginning with that letter are counted.
    pub fn run(&self, n_max: usize, target: usize, start: Option<Letter>, mut observe: impl FnMut(usize, &[f64], f64)) {
        let alphabet = self.weights.len();
        let ball = self.ball;
        let mut x = vec![0.0; ball.len() * alphabet];
        let mut y = vec![0.0; ball.len() * alphabet];
        let keep = |j: usize, len: usize| ball.distance(j) + len <= target + n_max;

        for l in Letter::alphabet(alphabet / 2) {
            if start.is_some_and(|s| s != l) {
                continue;
            }
            if let Some(j) = ball.step(0, l) {
                if keep(j, 1) {
                    x[j * alphabet + l.index()] = self.weights[l.index()];
                }
            }
        }
        let mut log_scale = 0.0;
        if n_max >= 1 {
            observe(1, &x, log_scale);
        }
        for n in 2..=n_max {
            y.iter_mut().for_each(|v| *v = 0.0);
            for (state, &val) in x.iter().enumerate() {
                if val == 0.0 {
                    continue;
                }
                let (i, v) = (state / alphabet, Letter::from_index(state % alphabet));
                for w in Letter::alphabet(alphabet / 2) {
                    if w == v.inverse() {
                        continue;
                    }
                    if let Some(j) = ball.step(i, w) {
                        if keep(j, n) {
                            y[j * alphabet + w.index()] += val * self.weights[w.index()];
                        }
                    }
                }
            }
            let m = y.iter().copied().fold(0.0, f64::max);
            if m > 0.0 {
                y.iter_mut().for_each(|v| *v /= m);
                log_scale += m.ln();
            }
            std::mem::swap(&mut x, &mut y);
            observe(n, &x, log_scale);
        }
    }
}
