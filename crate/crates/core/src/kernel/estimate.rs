use std::collections::BTreeMap;

use serde::Serialize;

use super::counts::{kernel_ball, kernel_counts_in, KernelCountTable};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::QuotientGroup;
use crate::symbolic::{bowen_root, LinearGdmsSpec};

/// Minimum number of nonzero kernel counts needed for a growth-rate estimate.
pub const MIN_NONZERO: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Increasing,
    Decreasing,
    Mixed,
}

/// Estimate of `P(sφ, Ψ^-1{id} ∩ Σ*) = limsup (1/n) log a_n` with diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct KernelPressure {
    /// Last ratio estimate `(1/p) log(a_n / a_{n-p})`.
    pub estimate: f64,
    /// Stride `p`: 2 when every odd count vanishes, else 1.
    pub period: usize,
    /// `(n, (1/p) log(a_n / a_{n-p}))`.
    pub ratios: Vec<(usize, f64)>,
    /// `|last ratio - previous ratio|`, the dead band used for sign decisions.
    pub spread: f64,
    /// Direction of the last few ratio estimates.
    pub trend: Trend,
    /// `sup_n (1/n) log b_n`, a rigorous lower bound by Fekete's lemma.
    pub lower_bound: Option<f64>,
    pub exact_counts: bool,
}

pub fn kernel_pressure(table: &KernelCountTable) -> Result<KernelPressure> {
    let nonzero = table.nonzero();
    if nonzero == 0 {
        return Err(Error::InvalidInput("kernel not reached; increase n_max".into()));
    }
    if nonzero < MIN_NONZERO {
        return Err(Error::InvalidInput(format!(
            "only {nonzero} nonzero kernel counts up to n = {}; need at least {MIN_NONZERO}, increase n_max",
            table.n_max
        )));
    }
    let log_a = &table.log_a;
    let all_odd_zero = log_a.iter().step_by(2).all(|v| !v.is_finite());
    let period = if all_odd_zero { 2 } else { 1 };

    let ratios: Vec<(usize, f64)> = (period + 1..=table.n_max)
        .filter_map(|n| {
            let (cur, prev) = (log_a[n - 1], log_a[n - 1 - period]);
            (cur.is_finite() && prev.is_finite()).then(|| (n, (cur - prev) / period as f64))
        })
        .collect();
    let Some(&(_, estimate)) = ratios.last() else {
        return Err(Error::InvalidInput("no consecutive nonzero kernel counts; increase n_max".into()));
    };
    let spread = if ratios.len() >= 2 { (estimate - ratios[ratios.len() - 2].1).abs() } else { f64::INFINITY };

    let tail: Vec<f64> = ratios.iter().rev().take(6).rev().map(|r| r.1).collect();
    let trend = if tail.windows(2).all(|w| w[1] >= w[0]) {
        Trend::Increasing
    } else if tail.windows(2).all(|w| w[1] <= w[0]) {
        Trend::Decreasing
    } else {
        Trend::Mixed
    };

    let lower_bound = table
        .log_b
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_finite())
        .map(|(i, v)| v / (i + 1) as f64)
        .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))));

    Ok(KernelPressure { estimate, period, ratios, spread, trend, lower_bound, exact_counts: table.exact })
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaKernelParams {
    pub n_max: usize,
    /// Width at which each bisection stops.
    pub tol: f64,
}

impl Default for DeltaKernelParams {
    fn default() -> Self {
        DeltaKernelParams { n_max: 24, tol: 1e-4 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaKernel {
    /// Zero of the ratio estimate.
    pub estimate: f64,
    /// `[s_lo, s_hi]`: estimate minus its dead band is positive at `s_lo`, plus band negative at `s_hi`.
    pub bracket: (f64, f64),
    pub uncertainty: f64,
    pub delta_full: f64,
    /// `δ(N) / δ(F_d)` at the point estimate.
    pub ratio: f64,
    /// `"exact"` for the degenerate quotients, `"ratio-bisection"` otherwise.
    pub method: &'static str,
    pub evaluations: usize,
    pub exact_counts: bool,
    pub warnings: Vec<String>,
}

/// `δ(N, Φ)` as the zero of `s -> P(sφ, Ψ^-1{id} ∩ Σ*)`.
pub fn delta_kernel(spec: &LinearGdmsSpec, group: &QuotientGroup, params: &DeltaKernelParams, caps: &Caps) -> Result<DeltaKernel> {
    let delta_full = bowen_root(spec)?.s;
    let mut warnings = Vec::new();
    if !spec.is_symmetric() {
        warnings.push("spec is not symmetric; δ(N) < δ(F_d) does not characterize non-amenability".into());
    }
    if group.has_trivial_kernel() {
        // N = {id}: the Poincaré series has a single term
        return Ok(DeltaKernel {
            estimate: 0.0,
            bracket: (0.0, 0.0),
            uncertainty: 0.0,
            delta_full,
            ratio: 0.0,
            method: "exact",
            evaluations: 0,
            exact_counts: true,
            warnings,
        });
    }
    if group.is_trivial() {
        return Ok(DeltaKernel {
            estimate: delta_full,
            bracket: (delta_full, delta_full),
            uncertainty: 0.0,
            delta_full,
            ratio: 1.0,
            method: "exact",
            evaluations: 0,
            exact_counts: true,
            warnings,
        });
    }

    let ball = kernel_ball(spec, group, params.n_max, caps)?;
    let mut cache: BTreeMap<u64, (f64, f64)> = BTreeMap::new();
    let mut exact_counts = true;
    let mut eval = |s: f64| -> Result<(f64, f64)> {
        if let Some(&v) = cache.get(&s.to_bits()) {
            return Ok(v);
        }
        let table = kernel_counts_in(spec, &ball, s, params.n_max, false);
        exact_counts &= table.exact;
        let kp = kernel_pressure(&table)?;
        let v = (kp.estimate, kp.spread);
        cache.insert(s.to_bits(), v);
        Ok(v)
    };

    let (lo0, hi0) = (0.0, delta_full + 0.5);
    let (p_lo, band_lo) = eval(lo0)?;
    let (p_hi, band_hi) = eval(hi0)?;
    if p_lo - band_lo <= 0.0 || p_hi + band_hi >= 0.0 {
        return Err(Error::InvalidInput(format!(
            "kernel pressure sign is ambiguous at the initial bracket [{lo0}, {hi0}]; increase n_max"
        )));
    }

    // Each predicate holds at lo0 and fails at hi0; bisect for the switch point.
    let mut bisect = |pred: &dyn Fn(f64, f64) -> bool| -> Result<(f64, f64)> {
        let (mut lo, mut hi) = (lo0, hi0);
        while hi - lo > params.tol {
            let mid = 0.5 * (lo + hi);
            let (p, band) = eval(mid)?;
            if pred(p, band) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok((lo, hi))
    };
    let point = bisect(&|p, _| p > 0.0)?;
    let surely_positive = bisect(&|p, band| p - band > 0.0)?;
    let not_surely_negative = bisect(&|p, band| p + band >= 0.0)?;

    let estimate = 0.5 * (point.0 + point.1);
    let bracket = (surely_positive.0, not_surely_negative.1);
    if !exact_counts {
        warnings.push("ball cap forced truncated kernel counts (undercount); δ(N) is biased low".into());
    }
    Ok(DeltaKernel {
        estimate,
        bracket,
        uncertainty: 0.5 * (bracket.1 - bracket.0),
        delta_full,
        ratio: estimate / delta_full,
        method: "ratio-bisection",
        evaluations: cache.len(),
        exact_counts,
        warnings,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DivergenceReport {
    /// `δ(F_d, Φ) / 2`.
    pub s: f64,
    pub period: usize,
    /// `log a_n` at `s`.
    pub log_terms: Vec<f64>,
    /// Log of the partial sums `Σ_{k <= n} a_k`.
    pub log_partial_sums: Vec<f64>,
    /// Whether `a_n >= a_{n-p}` for every nonzero stride pair in the last third.
    pub nondecreasing_tail: bool,
    pub min_log_term_tail: f64,
    pub exact_counts: bool,
}

/// Kernel Poincaré series at `δ(F_d)/2`, whose terms must not decay.
pub fn divergence_check(spec: &LinearGdmsSpec, group: &QuotientGroup, n_max: usize, caps: &Caps) -> Result<DivergenceReport> {
    let s = bowen_root(spec)?.s / 2.0;
    let ball = kernel_ball(spec, group, n_max, caps)?;
    let table = kernel_counts_in(spec, &ball, s, n_max, false);
    let period = if table.log_a.iter().step_by(2).all(|v| !v.is_finite()) { 2 } else { 1 };

    let start = n_max - n_max / 3 + 1;
    let mut nondecreasing = true;
    let mut min_tail = f64::INFINITY;
    for n in start..=n_max {
        let cur = table.log_a[n - 1];
        if !cur.is_finite() {
            continue;
        }
        min_tail = min_tail.min(cur);
        if n > period {
            let prev = table.log_a[n - 1 - period];
            if prev.is_finite() && n - period >= start && cur < prev {
                nondecreasing = false;
            }
        }
    }
    let mut partial = Vec::with_capacity(n_max);
    let mut acc = f64::NEG_INFINITY;
    for &v in &table.log_a {
        acc = log_add(acc, v);
        partial.push(acc);
    }
    Ok(DivergenceReport {
        s,
        period,
        log_terms: table.log_a,
        log_partial_sums: partial,
        nondecreasing_tail: nondecreasing,
        min_log_term_tail: min_tail,
        exact_counts: table.exact,
    })
}

pub(crate) fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::kernel_counts;
    use crate::symbolic::pressure;

    #[test]
    fn z2_kernel_pressure_is_zero() {
        let spec = LinearGdmsSpec::uniform(2, 1.0 / 3.0).unwrap();
        let t = kernel_counts(&spec, &QuotientGroup::cyclic(2, 2), 1.0, 24, &Caps::default()).unwrap();
        let kp = kernel_pressure(&t).unwrap();
        assert_eq!(kp.period, 2);
        assert!(kp.estimate.abs() < 1e-12);
        assert!(kp.lower_bound.unwrap() <= 1e-12);
    }

    #[test]
    fn trivial_quotient_matches_full_pressure() {
        let spec = LinearGdmsSpec::symmetric(&[1.0 / 3.0, 0.2]).unwrap();
        for s in [0.5, 1.0, 1.5] {
            let t = kernel_counts(&spec, &QuotientGroup::trivial(2), s, 40, &Caps::default()).unwrap();
            let kp = kernel_pressure(&t).unwrap();
            assert!((kp.estimate - pressure(&spec, s).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn errors_without_kernel_words() {
        let spec = LinearGdmsSpec::uniform(2, 1.0 / 3.0).unwrap();
        let t = kernel_counts(&spec, &QuotientGroup::free_quotient(2, &[]), 1.0, 10, &Caps::default()).unwrap();
        assert!(kernel_pressure(&t).unwrap_err().to_string().contains("kernel not reached"));
        let t = kernel_counts(&spec, &QuotientGroup::abelianization(2), 1.0, 8, &Caps::default()).unwrap();
        assert!(kernel_pressure(&t).is_err());
    }

    #[test]
    fn delta_kernel_degenerate_cases() {
        let spec = LinearGdmsSpec::symmetric(&[1.0 / 3.0, 0.2]).unwrap();
        let full = bowen_root(&spec).unwrap().s;
        let d = delta_kernel(&spec, &QuotientGroup::trivial(2), &DeltaKernelParams::default(), &Caps::default()).unwrap();
        assert_eq!(d.estimate, full);
        let d = delta_kernel(&spec, &QuotientGroup::free_quotient(2, &[]), &DeltaKernelParams::default(), &Caps::default()).unwrap();
        assert_eq!(d.estimate, 0.0);
    }

    #[test]
    fn delta_kernel_finite_quotients() {
        let spec = LinearGdmsSpec::uniform(2, 1.0 / 3.0).unwrap();
        let s3 = QuotientGroup::finite_perm(2, 3, vec![vec![1, 0, 2], vec![0, 2, 1]]).unwrap();
        for g in [QuotientGroup::cyclic(2, 2), QuotientGroup::cyclic(2, 3), s3] {
            let d = delta_kernel(&spec, &g, &DeltaKernelParams::default(), &Caps::default()).unwrap();
            assert!((d.estimate - 1.0).abs() < 1e-3, "{} {:?}", g.kind(), d);
            assert!(d.bracket.0 <= d.estimate && d.estimate <= d.bracket.1);
        }
    }

    #[test]
    fn divergence_at_half_exponent() {
        let spec = LinearGdmsSpec::uniform(2, 1.0 / 3.0).unwrap();
        let r = divergence_check(&spec, &QuotientGroup::cyclic(2, 2), 24, &Caps::default()).unwrap();
        assert!(r.nondecreasing_tail);
        // a_{2k} at s = 1/2: 4 * 3^(2k-1) * 3^(-k), growing by 3 per period
        let growth = r.log_terms[23] - r.log_terms[21];
        assert!((growth - 3f64.ln()).abs() < 1e-12);
        let r = divergence_check(&spec, &QuotientGroup::abelianization(2), 24, &Caps::default()).unwrap();
        assert!(r.nondecreasing_tail);
    }

    #[test]
    fn log_add_basic() {
        assert!((log_add(1f64.ln(), 2f64.ln()) - 3f64.ln()).abs() < 1e-15);
        assert_eq!(log_add(f64::NEG_INFINITY, 0.5), 0.5);
    }
}
