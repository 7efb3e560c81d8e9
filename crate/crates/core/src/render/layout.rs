use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Letter;
use crate::symbolic::LinearGdmsSpec;

/// An interval (`D = 1`, `y = 0`) or a disk (`D = 2`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Cell {
    pub center: [f64; 2],
    pub radius: f64,
}

impl Cell {
    fn contains(&self, other: &Cell, tol: f64) -> bool {
        dist(self.center, other.center) + other.radius <= self.radius + tol
    }
}

pub(crate) fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// `gap(a, b) = |a - b| - r_a - r_b`; negative when the cells overlap.
pub fn cell_gap(a: &Cell, b: &Cell) -> f64 {
    dist(a.center, b.center) - a.radius - b.radius
}

/// Phase sets `X_v` and the similarities `φ_(v,w): X_w -> X_v`, `x ↦ sub[v][w] + c(v) (x - center_w)`.
#[derive(Clone, Debug, Serialize)]
pub struct GeometricRealization {
    pub dim: usize,
    pub rank: usize,
    pub ratios: Vec<f64>,
    pub cells: Vec<Cell>,
    /// `sub[v][w]`: center of `φ_(v,w)(X_w)` inside `X_v`; unused for `w = v^-1`
    pub sub_centers: Vec<Vec<[f64; 2]>>,
    /// smallest gap between sibling images, `0` for an exact packing
    pub min_gap: f64,
}

impl GeometricRealization {
    /// `φ_(v,w)` as `(scale, offset)` with `x ↦ scale * x + offset`.
    pub fn edge_map(&self, v: Letter, w: Letter) -> (f64, [f64; 2]) {
        let c = self.ratios[v.index()];
        let s = self.sub_centers[v.index()][w.index()];
        let o = self.cells[w.index()].center;
        (c, [s[0] - c * o[0], s[1] - c * o[1]])
    }

    /// `φ_ω(X_{ω_n})` for an admissible word.
    pub fn word_cell(&self, word: &[Letter]) -> Cell {
        let (mut scale, mut off) = (1.0, [0.0, 0.0]);
        for pair in word.windows(2) {
            let (a, b) = self.edge_map(pair[0], pair[1]);
            off = [off[0] + scale * b[0], off[1] + scale * b[1]];
            scale *= a;
        }
        let last = self.cells[word.last().expect("nonempty word").index()];
        Cell { center: [scale * last.center[0] + off[0], scale * last.center[1] + off[1]], radius: scale * last.radius }
    }

    /// Axis-aligned box around every phase set.
    pub fn bounds(&self) -> ([f64; 2], [f64; 2]) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for c in &self.cells {
            for k in 0..2 {
                let r = if k == 1 && self.dim == 1 { 0.0 } else { c.radius };
                lo[k] = lo[k].min(c.center[k] - r);
                hi[k] = hi[k].max(c.center[k] + r);
            }
        }
        (lo, hi)
    }
}

/// Places unit phase sets and packs the `2d - 1` sub-copies of each.
///
/// `D = 1`: intervals of length 1 on a line, each cut into `2d - 1` equal slots that
/// hold the images centered. Needs `(2d - 1) max c <= 1`.
/// `D = 2`: unit disks on a circle, images centered on an inner ring at equal angles.
/// Needs `c (1 + 1 / sin(π / (2d - 1))) < 1` so neighbors on the ring stay apart.
pub fn auto_layout(spec: &LinearGdmsSpec, dim: usize) -> Result<GeometricRealization> {
    let rank = spec.rank();
    let alphabet = spec.alphabet_size();
    let m = alphabet - 1;
    let c_max = spec.max_ratio();
    let mut cells = Vec::with_capacity(alphabet);
    let mut sub_centers = vec![vec![[0.0; 2]; alphabet]; alphabet];
    match dim {
        1 => {
            let load = m as f64 * c_max;
            if load > 1.0 + 1e-12 {
                return Err(Error::InvalidInput(format!(
                    "layout infeasible: (2d-1) * max c = {load:.6} > 1, δ would exceed ambient dimension 1"
                )));
            }
            for v in 0..alphabet {
                cells.push(Cell { center: [1.5 * v as f64, 0.0], radius: 0.5 });
            }
        }
        2 => {
            let spread = if m == 1 { 1.0 } else { 1.0 + 1.0 / (PI / m as f64).sin() };
            if c_max * spread >= 1.0 {
                return Err(Error::InvalidInput(format!(
                    "layout infeasible: max c * (1 + 1/sin(π/(2d-1))) = {:.6} >= 1, δ would exceed ambient dimension 2",
                    c_max * spread
                )));
            }
            let orbit = 1.25 / (PI / alphabet as f64).sin();
            for v in 0..alphabet {
                let t = 2.0 * PI * v as f64 / alphabet as f64;
                cells.push(Cell { center: [orbit * t.cos(), orbit * t.sin()], radius: 1.0 });
            }
        }
        _ => return Err(Error::Config(format!("render.dim must be 1 or 2, got {dim}"))),
    }
    for v in Letter::alphabet(rank) {
        let c = spec.ratio(v);
        let center = cells[v.index()].center;
        let followers = Letter::alphabet(rank).filter(|&w| w != v.inverse());
        for (k, w) in followers.enumerate() {
            sub_centers[v.index()][w.index()] = if dim == 1 {
                [center[0] - 0.5 + (k as f64 + 0.5) / m as f64, 0.0]
            } else if m == 1 {
                center
            } else {
                // ring radius halfway between the disjointness and containment limits
                let ring = 0.5 * (c / (PI / m as f64).sin() + 1.0 - c);
                let t = 2.0 * PI * k as f64 / m as f64;
                [center[0] + ring * t.cos(), center[1] + ring * t.sin()]
            };
        }
    }
    let mut real = GeometricRealization { dim, rank, ratios: spec.ratios().to_vec(), cells, sub_centers, min_gap: 0.0 };
    real.min_gap = validate_osc(&real)?;
    Ok(real)
}

/// Checks containment and disjointness of the first-level images; returns the smallest gap.
fn validate_osc(real: &GeometricRealization) -> Result<f64> {
    let rank = real.rank;
    let mut min_gap = f64::INFINITY;
    for (i, a) in real.cells.iter().enumerate() {
        for b in &real.cells[i + 1..] {
            if cell_gap(a, b) <= 0.0 {
                return Err(Error::Inconsistent("phase sets overlap".into()));
            }
        }
    }
    for v in Letter::alphabet(rank) {
        let images: Vec<Cell> = Letter::alphabet(rank)
            .filter(|&w| w != v.inverse())
            .map(|w| real.word_cell(&[v, w]))
            .collect();
        for (i, a) in images.iter().enumerate() {
            if !real.cells[v.index()].contains(a, 1e-12) {
                return Err(Error::Inconsistent(format!("image of a phase set leaves X_{v}")));
            }
            for b in &images[i + 1..] {
                let g = cell_gap(a, b);
                if g < -1e-12 {
                    return Err(Error::Inconsistent(format!("open set condition fails inside X_{v}")));
                }
                min_gap = min_gap.min(g.max(0.0));
            }
        }
    }
    Ok(if min_gap.is_finite() { min_gap } else { 0.0 })
}
