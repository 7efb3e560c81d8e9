//! Limits of Dirichlet truncation ladders and the amenability verdict built on them.
//!
//! A Dirichlet-truncated spectral radius on a ball of radius `R` approaches its
//! limit like `ρ_∞ - A / (R + c)^2` (the principal Dirichlet eigenvalue of a ball).
//! Three consecutive radii determine `(ρ_∞, A, c)`.

use serde::Serialize;

/// `ε` in "amenable iff the limit is at least `1 - ε`".
pub const VERDICT_EPS: f64 = 0.005;
/// Largest change of the limit between the last two windows that counts as a plateau.
pub const PLATEAU_TOL: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentWithAmenable,
    ConsistentWithNonAmenable,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitMethod {
    /// The ladder reached a finite group exactly.
    Exact,
    Extrapolated,
    /// The last three values do not fit the model; the last value is used.
    LastValue,
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderLimit {
    pub radii: Vec<usize>,
    pub values: Vec<f64>,
    /// Every consecutive pair is nondecreasing up to `1e-12`.
    pub monotone: bool,
    pub limit: f64,
    pub method: LimitMethod,
    /// `|limit - limit of the previous three-radius window|`, when there are four radii.
    pub plateau: Option<f64>,
}

/// Model fit on three points; `None` when the data do not decelerate fast enough.
pub fn extrapolate3(radii: [usize; 3], values: [f64; 3]) -> Option<f64> {
    let [r1, r2, r3] = radii.map(|r| r as f64);
    let [v1, v2, v3] = values;
    if !(v2 > v1 && v3 > v2 && r1 < r2 && r2 < r3) {
        return None;
    }
    let q = (v2 - v1) / (v3 - v2);
    let f = |r: f64, c: f64| 1.0 / ((r + c) * (r + c));
    let h = |c: f64| (f(r1, c) - f(r2, c)) / (f(r2, c) - f(r3, c));
    // h decreases from +inf (c -> -r1) to (r2 - r1) / (r3 - r2) (c -> inf)
    if q <= (r2 - r1) / (r3 - r2) * (1.0 + 1e-9) {
        return None;
    }
    let (mut lo, mut hi) = (-r1 + 1e-9, 1.0);
    while h(hi) > q {
        hi *= 2.0;
        if hi > 1e9 {
            return None;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) > q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c = 0.5 * (lo + hi);
    let a = (v3 - v2) / (f(r2, c) - f(r3, c));
    Some(v3 + a * f(r3, c))
}

/// Limit of a ladder of values at increasing radii, clamped to `[last value, upper]`.
pub fn ladder_limit(radii: &[usize], values: &[f64], upper: f64, exact: bool) -> LadderLimit {
    let n = values.len();
    let monotone = values.windows(2).all(|w| w[1] >= w[0] - 1e-12);
    let last = values.last().copied().unwrap_or(0.0);
    let window = |k: usize| -> Option<f64> {
        let r = [radii[k], radii[k + 1], radii[k + 2]];
        let v = [values[k], values[k + 1], values[k + 2]];
        extrapolate3(r, v).map(|x| x.clamp(v[2], upper.max(v[2])))
    };
    let (limit, method, plateau) = if exact {
        (last, LimitMethod::Exact, Some(0.0))
    } else if n >= 3 {
        let cur = window(n - 3);
        let prev = (n >= 4).then(|| window(n - 4).unwrap_or(values[n - 2]));
        match cur {
            Some(l) => (l, LimitMethod::Extrapolated, prev.map(|p| (l - p).abs())),
            None => (last, LimitMethod::LastValue, prev.map(|p| (last - p).abs())),
        }
    } else {
        (last, LimitMethod::LastValue, None)
    };
    LadderLimit { radii: radii.to_vec(), values: values.to_vec(), monotone, limit, method, plateau }
}

impl LadderLimit {
    /// Amenable when the limit reaches `1 - ε`; non-amenable when it stays below and has plateaued.
    pub fn verdict(&self) -> Verdict {
        if self.limit >= 1.0 - VERDICT_EPS {
            Verdict::ConsistentWithAmenable
        } else if self.plateau.is_some_and(|p| p < PLATEAU_TOL) {
            Verdict::ConsistentWithNonAmenable
        } else {
            Verdict::Inconclusive
        }
    }
}
