use rayon::prelude::*;
use serde::Serialize;

use super::{build_skew_operator, skew_spectral_radius, SkewRadius};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::QuotientGroup;
use crate::kernel::{kernel_counts, kernel_pressure, KernelPressure};
use crate::ladder::{ladder_limit, LadderLimit, Verdict, PLATEAU_TOL, VERDICT_EPS};
use crate::symbolic::{bowen_root, pressure, LinearGdmsSpec};

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyReport {
    pub s_star: f64,
    /// `e^{P(s* φ)}`, equal to 1 up to the root tolerance
    pub rho_full: f64,
    pub group: &'static str,
    pub radii: Vec<usize>,
    pub rho: Vec<f64>,
    pub solves: Vec<SkewRadius>,
    /// Every truncation is the full finite group.
    pub exact: bool,
    pub ladder: LadderLimit,
    pub verdict: Verdict,
    /// `1 - max_R ρ_R`
    pub gap: f64,
    /// `1 - extrapolated limit`
    pub gap_extrapolated: f64,
    /// `ρ_R <= e^{P(s* φ)} + 1e-10` at every radius
    pub below_full_radius: bool,
    pub kernel_pressure_estimate: Option<KernelPressure>,
    /// The kernel estimate does not exceed `log ρ_{R_max}` beyond its own spread.
    pub kernel_consistent: Option<bool>,
    pub verdict_eps: f64,
    pub plateau_tol: f64,
}

/// Skew spectral radii at `s* = δ(F_d, Φ)` over `radii`, with the amenability verdict.
///
/// `kernel_n_max > 0` adds the kernel pressure at `s*` as an independent estimate.
pub fn amenability_report(
    spec: &LinearGdmsSpec,
    group: &QuotientGroup,
    radii: &[usize],
    kernel_n_max: usize,
    caps: &Caps,
) -> Result<DichotomyReport> {
    if !spec.is_symmetric() {
        return Err(Error::InvalidInput("dichotomy requires symmetric GDMS".into()));
    }
    let finite = matches!(group, QuotientGroup::Finite(_));
    let mut radii: Vec<usize> = if finite { vec![0] } else { radii.to_vec() };
    radii.sort_unstable();
    radii.dedup();
    if radii.is_empty() {
        return Err(Error::Config("amenability needs at least one radius".into()));
    }
    let root = bowen_root(spec)?;
    let s = root.s;
    let rho_full = pressure(spec, s)?.exp();
    let solves: Vec<(SkewRadius, bool)> = radii
        .par_iter()
        .map(|&r| {
            let op = build_skew_operator(spec, group, s, r, caps)?;
            Ok((skew_spectral_radius(&op)?, op.exact))
        })
        .collect::<Result<_>>()?;
    let exact = solves.iter().all(|(_, e)| *e);
    let solves: Vec<SkewRadius> = solves.into_iter().map(|(r, _)| r).collect();
    let rho: Vec<f64> = solves.iter().map(|r| r.rho).collect();
    let ladder = ladder_limit(&radii, &rho, rho_full, exact);
    let sup = rho.iter().copied().fold(0.0, f64::max);

    let kernel_pressure_estimate = if kernel_n_max > 0 {
        let table = kernel_counts(spec, group, s, kernel_n_max, caps)?;
        match kernel_pressure(&table) {
            Ok(k) => Some(k),
            Err(Error::InvalidInput(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let kernel_consistent =
        kernel_pressure_estimate.as_ref().map(|k| k.estimate <= rho.last().unwrap().ln() + k.spread + 1e-9);

    Ok(DichotomyReport {
        s_star: s,
        rho_full,
        group: group.kind(),
        verdict: ladder.verdict(),
        radii,
        rho,
        solves,
        exact,
        gap: 1.0 - sup,
        gap_extrapolated: 1.0 - ladder.limit,
        below_full_radius: ladder.values.iter().all(|&r| r <= rho_full + 1e-10),
        ladder,
        kernel_pressure_estimate,
        kernel_consistent,
        verdict_eps: VERDICT_EPS,
        plateau_tol: PLATEAU_TOL,
    })
}
