use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{Ball, Letter, QuotientGroup};
use crate::symbolic::perron::{power_iteration, DenseMatrix, PowerIterationOptions};
use crate::symbolic::{bowen_root, LinearGdmsSpec};

/// A first-return loop: a kernel word none of whose proper prefixes is a kernel word.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Loop {
    pub word: Vec<Letter>,
    /// `log c(word)`
    pub log_weight: f64,
    pub first_letter: Letter,
    pub last_letter: Letter,
}

/// Finite truncation of the first-return induced system.
///
/// Loops are its edges; `ω` may be followed by `ω'` iff the last letter of `ω`
/// is not the inverse of the first letter of `ω'`.
#[derive(Clone, Debug, Serialize)]
pub struct InducedSystem {
    pub rank: usize,
    pub l_max: usize,
    pub loops: Vec<Loop>,
}

/// All first-return loops of length at most `l_max`, in lexicographic letter order.
pub fn induced_loops(spec: &LinearGdmsSpec, group: &QuotientGroup, l_max: usize, caps: &Caps) -> Result<InducedSystem> {
    let ball = Ball::new(group, l_max / 2, caps.ball_for_states(spec.alphabet_size()))?;
    let mut loops = Vec::new();
    let mut word = Vec::with_capacity(l_max);
    let log_ratios: Vec<f64> = spec.ratios().iter().map(|c| c.ln()).collect();
    dfs(&ball, &log_ratios, l_max, 0, &mut word, 0.0, &mut loops, caps.loops)?;
    Ok(InducedSystem { rank: spec.rank(), l_max, loops })
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    ball: &Ball,
    log_ratios: &[f64],
    l_max: usize,
    at: usize,
    word: &mut Vec<Letter>,
    log_weight: f64,
    loops: &mut Vec<Loop>,
    cap: usize,
) -> Result<()> {
    let len = word.len() + 1;
    for l in Letter::alphabet(ball.rank()) {
        if word.last() == Some(&l.inverse()) {
            continue;
        }
        let Some(next) = ball.step(at, l) else { continue };
        let w = log_weight + log_ratios[l.index()];
        word.push(l);
        if next == 0 {
            if loops.len() >= cap {
                return Err(Error::CapExceeded { what: "first-return loops", cap });
            }
            loops.push(Loop { word: word.clone(), log_weight: w, first_letter: word[0], last_letter: l });
        } else if ball.distance(next) + len <= l_max {
            dfs(ball, log_ratios, l_max, next, word, w, loops, cap)?;
        }
        word.pop();
    }
    Ok(())
}

impl InducedSystem {
    /// `K[x][y] = Σ c(ω)^s` over loops from first letter `x` to last letter `y`.
    fn endpoint_weights(&self, s: f64) -> DenseMatrix {
        let n = 2 * self.rank;
        let mut k = DenseMatrix::zeros(n);
        for lp in &self.loops {
            let (x, y) = (lp.first_letter.index(), lp.last_letter.index());
            k.set(x, y, k.get(x, y) + (s * lp.log_weight).exp());
        }
        k
    }

    /// Transfer matrix on last letters: `T[y][y'] = Σ_{x != y^-1} K[x][y']`.
    pub fn transfer(&self, s: f64) -> DenseMatrix {
        let n = 2 * self.rank;
        let k = self.endpoint_weights(s);
        DenseMatrix::from_fn(n, |y, y2| (0..n).filter(|&x| x != (y ^ 1)).map(|x| k.get(x, y2)).sum())
    }

    /// Weighted count of loop concatenations of total length `n`, for `n = 1..=n_max`.
    ///
    /// Every kernel word splits uniquely at its returns to the identity, so this
    /// equals the kernel count `a_n` whenever `n <= l_max`.
    pub fn composition_counts(&self, s: f64, n_max: usize) -> Vec<f64> {
        let alphabet = 2 * self.rank;
        // ends[n][y]: chains of total length n whose last letter is y
        let mut ends = vec![vec![0.0; alphabet]; n_max + 1];
        for n in 1..=n_max {
            for lp in self.loops.iter().filter(|lp| lp.word.len() <= n) {
                let len = lp.word.len();
                let w = (s * lp.log_weight).exp();
                let head = if len == n {
                    1.0
                } else {
                    let first_inv = lp.first_letter.inverse().index();
                    (0..alphabet).filter(|&y| y != first_inv).map(|y| ends[n - len][y]).sum()
                };
                ends[n][lp.last_letter.index()] += w * head;
            }
        }
        ends[1..].iter().map(|e| e.iter().sum()).collect()
    }
}

fn induced_rho(sys: &InducedSystem, s: f64) -> Result<f64> {
    let t = sys.transfer(s);
    let n = t.dim();
    let mean_row: f64 = (0..n).map(|i| t.row(i).iter().sum::<f64>()).sum::<f64>() / n as f64;
    let opts = PowerIterationOptions { tol: 1e-14, max_iter: 1_000_000, shift: 0.5 * mean_row };
    Ok(power_iteration(&t, None, &opts)?.rho)
}

#[derive(Clone, Debug, Serialize)]
pub struct InducedRoot {
    pub s: f64,
    pub l_max: usize,
    pub loop_count: usize,
}

/// Zero of the pressure of the truncated induced system, a lower bound for `δ(N, Φ)`.
pub fn induced_bowen_root(sys: &InducedSystem, spec: &LinearGdmsSpec) -> Result<InducedRoot> {
    if sys.loops.is_empty() {
        return Err(Error::InvalidInput(format!("no first-return loops up to length {}", sys.l_max)));
    }
    let (mut lo, mut hi) = (0.0, bowen_root(spec)?.s + 1.0);
    if induced_rho(sys, lo)? <= 1.0 || induced_rho(sys, hi)? >= 1.0 {
        return Err(Error::InvalidInput(format!(
            "induced pressure has no zero in [0, {hi}] at L_max = {}",
            sys.l_max
        )));
    }
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if induced_rho(sys, mid)? > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(InducedRoot { s: 0.5 * (lo + hi), l_max: sys.l_max, loop_count: sys.loops.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::kernel_counts;

    #[test]
    fn z2_loops_have_length_two() {
        let spec = LinearGdmsSpec::uniform(2, 1.0 / 3.0).unwrap();
        let sys = induced_loops(&spec, &QuotientGroup::cyclic(2, 2), 8, &Caps::default()).unwrap();
        assert_eq!(sys.loops.len(), 12);
        assert!(sys.loops.iter().all(|l| l.word.len() == 2));
        let root = induced_bowen_root(&sys, &spec).unwrap();
        assert!((root.s - 1.0).abs() < 1e-10);
    }

    #[test]
    fn trivial_group_loops_are_letters() {
        let spec = LinearGdmsSpec::new(2, vec![1.0 / 3.0, 0.25, 0.2, 0.15]).unwrap();
        let sys = induced_loops(&spec, &QuotientGroup::trivial(2), 3, &Caps::default()).unwrap();
        assert_eq!(sys.loops.len(), 4);
        let root = induced_bowen_root(&sys, &spec).unwrap();
        assert!((root.s - bowen_root(&spec).unwrap().s).abs() < 1e-10);
    }

    #[test]
    fn abelianization_commutator_loops() {
        let spec = LinearGdmsSpec::uniform(2, 1.0 / 3.0).unwrap();
        let sys = induced_loops(&spec, &QuotientGroup::abelianization(2), 4, &Caps::default()).unwrap();
        assert_eq!(sys.loops.len(), 8);
        assert!(sys.loops.iter().all(|l| l.word.len() == 4));
    }

    #[test]
    fn renewal_reproduces_kernel_counts() {
        let spec = LinearGdmsSpec::symmetric(&[1.0 / 3.0, 0.2]).unwrap();
        let groups = [QuotientGroup::cyclic(2, 3), QuotientGroup::abelianization(2)];
        for g in &groups {
            let sys = induced_loops(&spec, g, 10, &Caps::default()).unwrap();
            let counts = sys.composition_counts(0.8, 10);
            let table = kernel_counts(&spec, g, 0.8, 10, &Caps::default()).unwrap();
            for n in 1..=10 {
                let a = table.a(n);
                assert!((counts[n - 1] - a).abs() <= 1e-12 * a.max(1e-300), "{} n={n}", g.kind());
            }
        }
    }

    #[test]
    fn first_return_property() {
        let spec = LinearGdmsSpec::uniform(3, 0.2).unwrap();
        let g = QuotientGroup::free_quotient(3, &[2]);
        let sys = induced_loops(&spec, &g, 6, &Caps::default()).unwrap();
        for lp in &sys.loops {
            assert!(g.is_identity(&g.apply(&lp.word)));
            for k in 1..lp.word.len() {
                assert!(!g.is_identity(&g.apply(&lp.word[..k])));
            }
        }
    }
}
