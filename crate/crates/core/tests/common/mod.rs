//! Brute-force oracles shared by the integration tests: exhaustive depth-first
//! enumeration of reduced words, with no transfer matrices or pruned DPs involved.

#![allow(dead_code)]

use lgdms::group::{GroupElem, Letter, QuotientGroup};
use lgdms::symbolic::LinearGdmsSpec;

/// Calls `visit(word, group element)` for every reduced word of length `1..=n_max`.
pub fn enumerate(group: &QuotientGroup, n_max: usize, mut visit: impl FnMut(&[Letter], &GroupElem)) {
    fn rec(
        group: &QuotientGroup,
        n_max: usize,
        word: &mut Vec<Letter>,
        g: &GroupElem,
        visit: &mut dyn FnMut(&[Letter], &GroupElem),
    ) {
        for l in Letter::alphabet(group.rank()) {
            if word.last().is_some_and(|&p| p == l.inverse()) {
                continue;
            }
            let h = group.mul_letter(g, l);
            word.push(l);
            visit(word, &h);
            if word.len() < n_max {
                rec(group, n_max, word, &h, visit);
            }
            word.pop();
        }
    }
    let mut word = Vec::with_capacity(n_max);
    rec(group, n_max, &mut word, &group.identity(), &mut visit);
}

/// `Σ_{|ω| = n} c(ω)^s` for `n = 1..=n_max`, one vector per exponent.
pub fn partition_sums(spec: &LinearGdmsSpec, exponents: &[f64], n_max: usize) -> Vec<Vec<f64>> {
    let trivial = QuotientGroup::trivial(spec.rank());
    let mut sums = vec![vec![Neumaier::default(); n_max]; exponents.len()];
    enumerate(&trivial, n_max, |w, _| {
        let lw = spec.log_weight(w);
        for (k, &s) in exponents.iter().enumerate() {
            sums[k][w.len() - 1].add((s * lw).exp());
        }
    });
    sums.into_iter().map(|v| v.into_iter().map(|x| x.value()).collect()).collect()
}

/// `a_n = Σ_{|ω| = n, Ψ(ω) = id} c(ω)^s` for `n = 1..=n_max`.
pub fn kernel_sums(spec: &LinearGdmsSpec, group: &QuotientGroup, s: f64, n_max: usize) -> Vec<f64> {
    let mut a = vec![Neumaier::default(); n_max];
    let id = group.identity();
    enumerate(group, n_max, |w, g| {
        if *g == id {
            a[w.len() - 1].add(spec.ergodic_weight(w, s));
        }
    });
    a.into_iter().map(|x| x.value()).collect()
}

/// Neumaier compensated summation.
#[derive(Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(self) -> f64 {
        self.sum + self.comp
    }
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

pub fn s3_image() -> QuotientGroup {
    QuotientGroup::finite_perm(2, 3, vec![vec![1, 0, 2], vec![0, 2, 1]]).unwrap()
}

/// `g1, g2 -> 1` in `Z/n`.
pub fn cyclic(n: usize) -> QuotientGroup {
    QuotientGroup::cyclic(2, n)
}

pub fn f2_in_f3() -> QuotientGroup {
    QuotientGroup::free_quotient(3, &[2])
}
