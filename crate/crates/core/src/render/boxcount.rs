use std::collections::HashSet;

use serde::Serialize;

use super::PointCloud;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct BoxCount {
    pub slope: f64,
    /// root mean square deviation of `log N` from the fitted line
    pub residual: f64,
    pub scales: Vec<f64>,
    pub counts: Vec<usize>,
    /// every cell of the cloud is smaller than a quarter of the smallest scale
    pub resolved: bool,
}

/// Least-squares slope of `log N(ε)` against `log(1/ε)`.
pub fn box_counting(cloud: &PointCloud, scales: &[f64]) -> Result<BoxCount> {
    if scales.len() < 3 || scales.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
        return Err(Error::InvalidInput("box counting needs at least 3 positive scales".into()));
    }
    let (lo, hi) = scales.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &e| (a.min(e), b.max(e)));
    if hi / lo < 4.0 {
        return Err(Error::InvalidInput("box counting scales must span at least 2 octaves".into()));
    }
    let counts: Vec<usize> = scales
        .iter()
        .map(|&eps| {
            let boxes: HashSet<(i64, i64)> = cloud
                .points
                .iter()
                .map(|p| ((p[0] / eps).floor() as i64, (p[1] / eps).floor() as i64))
                .collect();
            boxes.len()
        })
        .collect();
    let mut distinct = counts.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "degenerate box counts {counts:?}: fewer than 3 distinct values"
        )));
    }
    let xs: Vec<f64> = scales.iter().map(|e| -e.ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|&n| (n as f64).ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let residual = (xs.iter().zip(&ys).map(|(x, y)| (y - my - slope * (x - mx)).powi(2)).sum::<f64>() / k).sqrt();
    Ok(BoxCount { slope, residual, scales: scales.to_vec(), counts, resolved: cloud.max_cell_diameter() < lo / 4.0 })
}

/// `count` scales halving from `coarsest`.
pub fn dyadic_scales(coarsest: f64, count: usize) -> Vec<f64> {
    (0..count).map(|k| coarsest / f64::powi(2.0, k as i32)).collect()
}
