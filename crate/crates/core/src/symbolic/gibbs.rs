use serde::Serialize;

use super::perron::DenseMatrix;
use super::transfer::{spectral_data, TransferMatrix};
use super::LinearGdmsSpec;
use crate::error::Result;
use crate::group::{is_admissible, Letter};

/// The σ-invariant Gibbs measure of `sφ`, as a Markov chain on letters.
#[derive(Clone, Debug, Serialize)]
pub struct GibbsMeasure {
    pub s: f64,
    /// Stationary distribution, `pi(v) ∝ l(v) r(v)`.
    pub pi: Vec<f64>,
    /// `phat[v][w] = M[v][w] r(w) / (ρ r(v))`, row-stochastic.
    #[serde(skip)]
    pub phat: DenseMatrix,
    pub pressure: f64,
    #[serde(skip)]
    log_ratios: Vec<f64>,
}

pub fn gibbs_measure(spec: &LinearGdmsSpec, s: f64) -> Result<GibbsMeasure> {
    let m = TransferMatrix::new(spec, s);
    let sd = spectral_data(&m)?;
    let n = spec.alphabet_size();
    let phat = DenseMatrix::from_fn(n, |v, w| m.matrix().get(v, w) * sd.right[w] / (sd.rho * sd.right[v]));
    let mut pi: Vec<f64> = sd.left.iter().zip(&sd.right).map(|(l, r)| l * r).collect();
    let total: f64 = pi.iter().sum();
    pi.iter_mut().for_each(|p| *p /= total);
    Ok(GibbsMeasure {
        s,
        pi,
        phat,
        pressure: sd.rho.ln(),
        log_ratios: spec.ratios().iter().map(|c| c.ln()).collect(),
    })
}

impl GibbsMeasure {
    /// `μ[w] = pi(w_1) Π phat[w_i][w_{i+1}]`; zero for non-admissible words.
    pub fn cylinder_mass(&self, word: &[Letter]) -> f64 {
        let Some(first) = word.first() else { return 1.0 };
        if !is_admissible(word) {
            return 0.0;
        }
        word.windows(2)
            .fold(self.pi[first.index()], |acc, p| acc * self.phat.get(p[0].index(), p[1].index()))
    }

    /// `μ[w] / exp(s S_w φ - |w| P)`, which the Gibbs property keeps in a fixed band.
    pub fn gibbs_ratio(&self, word: &[Letter]) -> f64 {
        let sw: f64 = word.iter().map(|l| self.log_ratios[l.index()]).sum();
        self.cylinder_mass(word) / (self.s * sw - word.len() as f64 * self.pressure).exp()
    }
}

/// Min and max of the Gibbs ratio over all admissible words of each length `1..=max_len`.
pub fn gibbs_band(g: &GibbsMeasure, rank: usize, max_len: usize) -> Vec<(f64, f64)> {
    let mut bands = vec![(f64::INFINITY, 0.0f64); max_len];
    let mut word = Vec::with_capacity(max_len);
    fn walk(g: &GibbsMeasure, rank: usize, word: &mut Vec<Letter>, max_len: usize, bands: &mut [(f64, f64)]) {
        if !word.is_empty() {
            let r = g.gibbs_ratio(word);
            let b = &mut bands[word.len() - 1];
            b.0 = b.0.min(r);
            b.1 = b.1.max(r);
        }
        if word.len() == max_len {
            return;
        }
        for l in Letter::alphabet(rank) {
            if word.last() == Some(&l.inverse()) {
                continue;
            }
            word.push(l);
            walk(g, rank, word, max_len, bands);
            word.pop();
        }
    }
    walk(g, rank, &mut word, max_len, &mut bands);
    bands
}
