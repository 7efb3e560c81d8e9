//! wasm-bindgen bindings for the static demo page in `www/`.
//!
//! Each export is a thin wrapper over a plain function so the logic can be tested natively.

use lgdms::group::{QuotientGroup, QuotientSpec};
use lgdms::ladder::Verdict;
use lgdms::render::{attractor_points, auto_layout, box_counting, dyadic_scales, render_image, CloudSource};
use lgdms::skew::amenability_report;
use lgdms::symbolic::{bowen_root, pressure, LinearGdmsSpec};
use lgdms::walks::srw_spectral_radius;
use lgdms::Caps;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Browser-sized limits.
fn caps() -> Caps {
    Caps { ball: 200_000, states: 1_500_000, points: 600_000, ..Caps::default() }
}

/// `ratios` has one entry per generator (symmetric system) or one per letter.
pub fn spec_from(rank: usize, ratios: &[f64]) -> Result<LinearGdmsSpec, String> {
    let spec = if ratios.len() == rank {
        LinearGdmsSpec::symmetric(ratios)
    } else {
        LinearGdmsSpec::new(rank, ratios.to_vec())
    };
    spec.map_err(|e| e.to_string())
}

#[derive(Serialize)]
pub struct PressureCurve {
    pub bowen_root: f64,
    pub points: Vec<(f64, f64)>,
}

pub fn pressure_curve_inner(rank: usize, ratios: &[f64], s_max: f64, steps: usize) -> Result<PressureCurve, String> {
    let spec = spec_from(rank, ratios)?;
    if s_max.is_nan() || s_max <= 0.0 || steps < 2 {
        return Err("need s_max > 0 and at least 2 steps".into());
    }
    let points = (0..steps)
        .map(|i| {
            let s = s_max * i as f64 / (steps - 1) as f64;
            pressure(&spec, s).map(|p| (s, p)).map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    let bowen_root = bowen_root(&spec).map_err(|e| e.to_string())?.s;
    Ok(PressureCurve { bowen_root, points })
}

#[wasm_bindgen]
#[derive(Debug)]
pub struct Rendered {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
    slope: f64,
    bowen_root: f64,
    points: usize,
}

#[wasm_bindgen]
impl Rendered {
    #[wasm_bindgen(getter)]
    pub fn width(&self) -> usize {
        self.width
    }

    #[wasm_bindgen(getter)]
    pub fn height(&self) -> usize {
        self.height
    }

    /// Grayscale, row-major.
    #[wasm_bindgen(getter)]
    pub fn pixels(&self) -> Vec<u8> {
        self.pixels.clone()
    }

    /// Box-counting slope, `NaN` if the fit failed.
    #[wasm_bindgen(getter)]
    pub fn slope(&self) -> f64 {
        self.slope
    }

    #[wasm_bindgen(getter)]
    pub fn bowen_root(&self) -> f64 {
        self.bowen_root
    }

    #[wasm_bindgen(getter)]
    pub fn points(&self) -> usize {
        self.points
    }
}

pub fn render_inner(rank: usize, ratios: &[f64], dim: usize, depth: usize, resolution: usize) -> Result<Rendered, String> {
    let spec = spec_from(rank, ratios)?;
    let real = auto_layout(&spec, dim).map_err(|e| e.to_string())?;
    let cloud = attractor_points(&real, depth, CloudSource::Full, &caps()).map_err(|e| e.to_string())?;
    let img = render_image(&real, &cloud, resolution.clamp(16, 2048));
    let slope = box_counting(&cloud, &dyadic_scales(0.125, 8)).map(|b| b.slope).unwrap_or(f64::NAN);
    Ok(Rendered {
        width: img.width,
        height: img.height,
        pixels: img.pixels,
        slope,
        bowen_root: bowen_root(&spec).map_err(|e| e.to_string())?.s,
        points: cloud.len(),
    })
}

#[derive(Serialize)]
pub struct LadderSummary {
    pub s_star: f64,
    pub radii: Vec<usize>,
    pub skew_rho: Vec<f64>,
    pub skew_limit: f64,
    pub skew_verdict: Verdict,
    pub walk_rho: Vec<f64>,
    pub walk_limit: f64,
    pub walk_verdict: Verdict,
}

/// Skew and random-walk truncation ladders for `quotient` (config-file JSON).
pub fn ladder_inner(rank: usize, ratios: &[f64], quotient: &str, radii: &[usize]) -> Result<LadderSummary, String> {
    let spec = spec_from(rank, ratios)?;
    let q: QuotientSpec = serde_json::from_str(quotient).map_err(|e| format!("quotient: {e}"))?;
    let group: QuotientGroup = q.build(rank).map_err(|e| e.to_string())?;
    let caps = caps();
    let skew = amenability_report(&spec, &group, radii, 0, &caps).map_err(|e| e.to_string())?;
    let walk = srw_spectral_radius(&group, radii, &caps).map_err(|e| e.to_string())?;
    Ok(LadderSummary {
        s_star: skew.s_star,
        radii: skew.radii,
        skew_rho: skew.rho,
        skew_limit: skew.ladder.limit,
        skew_verdict: skew.verdict,
        walk_rho: walk.rho,
        walk_limit: walk.ladder.limit,
        walk_verdict: walk.verdict,
    })
}

fn to_json<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    r.and_then(|v| serde_json::to_string(&v).map_err(|e| e.to_string())).map_err(|e| JsError::new(&e))
}

/// `{bowen_root, points: [[s, P(s)], ...]}` as JSON.
#[wasm_bindgen]
pub fn pressure_curve(rank: usize, ratios: &[f64], s_max: f64, steps: usize) -> Result<String, JsError> {
    to_json(pressure_curve_inner(rank, ratios, s_max, steps))
}

#[wasm_bindgen]
pub fn render(rank: usize, ratios: &[f64], dim: usize, depth: usize, resolution: usize) -> Result<Rendered, JsError> {
    render_inner(rank, ratios, dim, depth, resolution).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn amenability_ladder(rank: usize, ratios: &[f64], quotient: &str, radii: &[usize]) -> Result<String, JsError> {
    to_json(ladder_inner(rank, ratios, quotient, radii))
}
