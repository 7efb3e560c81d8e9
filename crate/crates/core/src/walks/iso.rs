use serde::Serialize;

use super::cayley_ball;
use crate::caps::Caps;
use crate::error::Result;
use crate::group::QuotientGroup;

#[derive(Clone, Debug, Serialize)]
pub struct IsoRow {
    pub r: usize,
    pub size: usize,
    /// vertices of `A = B(id, r)` with a neighbor outside `A`
    pub boundary: usize,
    pub ratio: f64,
}

/// Følner-type diagnostic `|dA| / |A|` over nested balls. Finite data cannot decide
/// amenability; a ratio tending to 0 is merely consistent with it.
#[derive(Clone, Debug, Serialize)]
pub struct IsoperimetricReport {
    pub group: &'static str,
    pub rows: Vec<IsoRow>,
    pub min_ratio: f64,
    pub diagnostic_only: bool,
}

pub fn isoperimetric_scan(group: &QuotientGroup, radius: usize, caps: &Caps) -> Result<IsoperimetricReport> {
    let cb = cayley_ball(group, radius + 1, caps)?;
    let ball = &cb.ball;
    let mut rows = Vec::with_capacity(radius + 1);
    for r in 0..=radius {
        let inside = |i: usize| ball.distance(i) <= r;
        let members: Vec<usize> = (0..ball.len()).filter(|&i| inside(i)).collect();
        let boundary = members
            .iter()
            .filter(|&&i| cb.graph.adjacency[i].iter().any(|&j| !inside(j as usize)))
            .count();
        rows.push(IsoRow { r, size: members.len(), boundary, ratio: boundary as f64 / members.len() as f64 });
    }
    let min_ratio = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    Ok(IsoperimetricReport { group: group.kind(), rows, min_ratio, diagnostic_only: true })
}
