use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::QuotientGroup;
use crate::kernel::{kernel_counts, log_add};
use crate::symbolic::{LinearGdmsSpec, TransferMatrix};

/// Which subgroup's elements the series runs over.
#[derive(Clone, Copy, Debug)]
pub enum SeriesSource<'a> {
    /// All of `F_d`, one term per reduced word.
    Full,
    /// The kernel of `F_d -> G`.
    Kernel(&'a QuotientGroup),
}

/// Partial sums of `Σ_h c(h)^s` grouped by word length; the identity is omitted.
#[derive(Clone, Debug, Serialize)]
pub struct PoincarePartial {
    pub s: f64,
    /// `log` of the length-`n` contribution, `n = 1..`
    pub log_terms: Vec<f64>,
    /// `log` of the partial sum through length `n`
    pub log_partial_sums: Vec<f64>,
    pub exact: bool,
}

impl PoincarePartial {
    pub fn partial_sum(&self, n: usize) -> f64 {
        self.log_partial_sums[n - 1].exp()
    }

    /// Last term over the one before; below 1 the tail is dominated by a geometric series.
    pub fn tail_ratio(&self) -> Option<f64> {
        let t = &self.log_terms;
        (t.len() >= 2).then(|| (t[t.len() - 1] - t[t.len() - 2]).exp())
    }
}

pub fn poincare_partial(spec: &LinearGdmsSpec, s: f64, source: SeriesSource, n: usize, caps: &Caps) -> Result<PoincarePartial> {
    if n > caps.length {
        return Err(Error::CapExceeded { what: "series length", cap: caps.length });
    }
    let (log_terms, exact) = match source {
        SeriesSource::Full => {
            let m = TransferMatrix::new(spec, s);
            let mut v = vec![1.0; spec.alphabet_size()];
            let mut log_scale = 0.0;
            let mut terms = Vec::with_capacity(n);
            for k in 1..=n {
                if k > 1 {
                    v = m.matrix().mul_vec(&v);
                    let top = v.iter().copied().fold(0.0, f64::max);
                    v.iter_mut().for_each(|x| *x /= top);
                    log_scale += top.ln();
                }
                let z: f64 = m.initial().iter().zip(&v).map(|(a, b)| a * b).sum();
                terms.push(log_scale + z.ln());
            }
            (terms, true)
        }
        SeriesSource::Kernel(group) => {
            let table = kernel_counts(spec, group, s, n, caps)?;
            (table.log_a.clone(), table.exact)
        }
    };
    let mut acc = f64::NEG_INFINITY;
    let log_partial_sums = log_terms
        .iter()
        .map(|&t| {
            acc = log_add(acc, t);
            acc
        })
        .collect();
    Ok(PoincarePartial { s, log_terms, log_partial_sums, exact })
}
