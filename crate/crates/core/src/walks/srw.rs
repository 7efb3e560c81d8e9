use rayon::prelude::*;
use serde::Serialize;

use super::{cayley_ball, generating_letters, TransitionMatrix};
use crate::caps::Caps;
use crate::error::Result;
use crate::group::QuotientGroup;
use crate::ladder::{ladder_limit, LadderLimit, Verdict};
use crate::symbolic::perron::{power_iteration, CsrMatrix, PowerIterationOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkMethod {
    /// Distance-to-identity chain of a regular tree; same spectral radius as the ball walk.
    RadialChain,
    Materialized,
    /// No non-trivial generator: the walk stands still.
    Trivial,
}

#[derive(Clone, Debug, Serialize)]
pub struct SrwLadder {
    pub group: &'static str,
    pub degree: usize,
    pub method: WalkMethod,
    pub radii: Vec<usize>,
    pub rho: Vec<f64>,
    /// The ball at the largest radius is the whole group.
    pub exact: bool,
    pub ladder: LadderLimit,
    pub verdict: Verdict,
    /// `sqrt(2k - 1) / k` for a free quotient of rank `k`
    pub kesten_value: Option<f64>,
}

fn perron(p: &CsrMatrix) -> Result<f64> {
    let opts = PowerIterationOptions { tol: 1e-13, max_iter: 1_000_000, shift: 0.5 };
    Ok(power_iteration(p, None, &opts)?.rho)
}

/// Dirichlet truncation of the distance chain of the `2k`-regular tree at radius `r`.
fn radial_chain(k: usize, r: usize) -> CsrMatrix {
    let out = (2 * k - 1) as f64 / (2 * k) as f64;
    let back = 1.0 / (2 * k) as f64;
    let rows = (0..=r).map(|i| {
        let mut row = Vec::new();
        if i > 0 {
            row.push(((i - 1) as u32, back));
        }
        if i < r {
            row.push(((i + 1) as u32, if i == 0 { 1.0 } else { out }));
        }
        row
    });
    CsrMatrix::from_rows(r + 1, rows)
}

/// Spectral radii of the simple random walk on `ball(G, R)` for each radius.
pub fn srw_spectral_radius(group: &QuotientGroup, radii: &[usize], caps: &Caps) -> Result<SrwLadder> {
    let mut radii = radii.to_vec();
    radii.sort_unstable();
    radii.dedup();
    let degree = generating_letters(group).len();
    let method = match group {
        _ if degree == 0 => WalkMethod::Trivial,
        QuotientGroup::FreeQuotient(_) => WalkMethod::RadialChain,
        _ => WalkMethod::Materialized,
    };
    let solved: Vec<(f64, bool)> = radii
        .par_iter()
        .map(|&r| match method {
            WalkMethod::Trivial => Ok((1.0, true)),
            WalkMethod::RadialChain => Ok((perron(&radial_chain(degree / 2, r))?, false)),
            WalkMethod::Materialized => {
                let cb = cayley_ball(group, r, caps)?;
                Ok((perron(&TransitionMatrix::simple_dirichlet(&cb).p)?, cb.ball.is_exhaustive()))
            }
        })
        .collect::<Result<_>>()?;
    let exact = solved.last().is_some_and(|s| s.1);
    let rho: Vec<f64> = solved.iter().map(|s| s.0).collect();
    let ladder = ladder_limit(&radii, &rho, 1.0, exact);
    let kesten_value = (method == WalkMethod::RadialChain).then(|| {
        let k = (degree / 2) as f64;
        (2.0 * k - 1.0).sqrt() / k
    });
    Ok(SrwLadder { group: group.kind(), degree, method, verdict: ladder.verdict(), radii, rho, exact, ladder, kesten_value })
}

impl SrwLadder {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("R,rho_R\n");
        for (r, v) in self.radii.iter().zip(&self.rho) {
            out.push_str(&format!("{r},{v:.15e}\n"));
        }
        out
    }
}
