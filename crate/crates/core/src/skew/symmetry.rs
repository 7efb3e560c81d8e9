use serde::Serialize;

use crate::caps::Caps;
use crate::error::Result;
use crate::group::{Ball, QuotientGroup};
use crate::kernel::walk::PrunedWalk;
use crate::symbolic::LinearGdmsSpec;

/// Largest relative difference accepted as exact equality of the `g` and `g^-1` sums.
pub const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryRow {
    pub n: usize,
    /// `max |S_n(g) - S_n(g^-1)| / max(S_n(g), S_n(g^-1))` over the ball
    pub max_relative_asymmetry: f64,
    /// extremes of `S_n(g) / S_n(g^-1)` over elements with nonzero sums
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub elements_compared: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub s: f64,
    pub n_max: usize,
    pub radius: usize,
    pub symmetric_spec: bool,
    pub rows: Vec<SymmetryRow>,
    pub max_relative_asymmetry: f64,
    /// The sums agree within [`SYMMETRY_TOL`] for every `n` and `g`.
    pub exact_equality: bool,
}

/// Compares `S_n(g) = Σ_{|ω|=n, Ψ(ω)=g} c(ω)^s` with `S_n(g^-1)` for `g` in `ball(G, radius)`.
pub fn check_asymptotic_symmetry(
    spec: &LinearGdmsSpec,
    group: &QuotientGroup,
    s: f64,
    n_max: usize,
    radius: usize,
    caps: &Caps,
) -> Result<SymmetryReport> {
    let ball_radius = match group {
        QuotientGroup::Finite(fg) => fg.diameter(),
        _ => PrunedWalk::required_radius(n_max, radius).max(radius.min(n_max)),
    };
    let ball = Ball::new(group, ball_radius, caps.ball_for_states(spec.alphabet_size()))?;
    let alphabet = spec.alphabet_size();
    let mut rows = Vec::with_capacity(n_max);
    PrunedWalk::new(&ball, spec.letter_weights(s)).run(n_max, radius, None, |n, states, _| {
        let sums: Vec<f64> = states.chunks(alphabet).map(|c| c.iter().sum()).collect();
        let mut row = SymmetryRow {
            n,
            max_relative_asymmetry: 0.0,
            min_ratio: f64::INFINITY,
            max_ratio: 0.0,
            elements_compared: 0,
        };
        for (i, &a) in sums.iter().enumerate() {
            if ball.distance(i) > radius {
                continue;
            }
            let b = sums[ball.inverse_index(i)];
            row.elements_compared += 1;
            let top = a.max(b);
            if top > 0.0 {
                row.max_relative_asymmetry = row.max_relative_asymmetry.max((a - b).abs() / top);
                row.min_ratio = row.min_ratio.min(a / b);
                row.max_ratio = row.max_ratio.max(a / b);
            }
        }
        rows.push(row);
    });
    let max_relative_asymmetry = rows.iter().map(|r| r.max_relative_asymmetry).fold(0.0, f64::max);
    Ok(SymmetryReport {
        s,
        n_max,
        radius,
        symmetric_spec: spec.is_symmetric(),
        rows,
        max_relative_asymmetry,
        exact_equality: max_relative_asymmetry <= SYMMETRY_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{tests_support::reduced_words, Letter};

    #[test]
    fn symmetric_specs_are_exact() {
        let spec = LinearGdmsSpec::symmetric(&[0.3, 0.15]).unwrap();
        for g in [QuotientGroup::cyclic(2, 5), QuotientGroup::abelianization(2), QuotientGroup::free_quotient(2, &[])] {
            let r = check_asymptotic_symmetry(&spec, &g, 0.9, 8, 3, &Caps::default()).unwrap();
            assert!(r.exact_equality, "{} {}", g.kind(), r.max_relative_asymmetry);
        }
    }

    #[test]
    fn asymmetric_spec_reports_ratios() {
        let spec = LinearGdmsSpec::new(2, vec![1.0 / 3.0, 0.25, 0.3, 0.3]).unwrap();
        let r = check_asymptotic_symmetry(&spec, &QuotientGroup::abelianization(2), 1.0, 6, 2, &Caps::default()).unwrap();
        assert!(!r.exact_equality);
        // the single-letter sum at g1 is c(g1), at g1^-1 it is c(g1^-1)
        assert!((r.rows[0].max_ratio - 4.0 / 3.0).abs() < 1e-14);
        assert!(r.rows.iter().all(|row| row.max_ratio.is_finite() && row.min_ratio > 0.0));
    }

    #[test]
    fn sums_match_enumeration() {
        // brute force over reduced words for one asymmetric spec
        let spec = LinearGdmsSpec::new(2, vec![0.4, 0.25, 0.3, 0.1]).unwrap();
        let g = QuotientGroup::abelianization(2);
        let words = reduced_words(2, 5);
        let target = g.apply(&[Letter::new(0, false), Letter::new(1, false)]);
        for n in 1..=5 {
            let sum = |t: &crate::group::GroupElem| -> f64 {
                words
                    .iter()
                    .filter(|w| w.len() == n && &g.apply(w.letters()) == t)
                    .map(|w| spec.ergodic_weight(w.letters(), 1.0))
                    .sum()
            };
            let (a, b) = (sum(&target), sum(&g.inverse(&target)));
            let r = check_asymptotic_symmetry(&spec, &g, 1.0, n, 2, &Caps::default()).unwrap();
            if a > 0.0 {
                let ratio = a / b;
                let row = &r.rows[n - 1];
                assert!(row.min_ratio <= ratio * (1.0 + 1e-12) && ratio <= row.max_ratio * (1.0 + 1e-12));
            } else {
                assert_eq!(b, 0.0);
            }
        }
    }
}
