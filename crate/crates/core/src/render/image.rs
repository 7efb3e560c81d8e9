use super::{GeometricRealization, PointCloud};

pub const BACKGROUND: u8 = 255;
pub const INK: u8 = 0;

/// 8-bit grayscale raster; only [`BACKGROUND`] and [`INK`] are used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl GrayImage {
    /// Binary PGM (`P5`).
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }

    pub fn lit_count(&self) -> usize {
        self.pixels.iter().filter(|&&p| p == INK).count()
    }

    /// Number of 4-connected regions of ink.
    pub fn lit_regions(&self) -> usize {
        let mut seen = vec![false; self.pixels.len()];
        let mut regions = 0;
        for start in 0..self.pixels.len() {
            if self.pixels[start] != INK || seen[start] {
                continue;
            }
            regions += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let (x, y) = (i % self.width, i / self.width);
                let mut visit = |j: usize| {
                    if self.pixels[j] == INK && !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                };
                if x > 0 {
                    visit(i - 1);
                }
                if x + 1 < self.width {
                    visit(i + 1);
                }
                if y > 0 {
                    visit(i - self.width);
                }
                if y + 1 < self.height {
                    visit(i + self.width);
                }
            }
        }
        regions
    }
}

/// Rasterizes one pixel per point over the realization's bounding box.
///
/// Two-dimensional clouds give a `resolution`-wide image with the box's aspect ratio;
/// one-dimensional clouds give a strip whose lit columns span the full height.
pub fn render_image(real: &GeometricRealization, cloud: &PointCloud, resolution: usize) -> GrayImage {
    let width = resolution.max(1);
    let (mut lo, mut hi) = real.bounds();
    for k in 0..2 {
        let pad = 0.02 * (hi[0] - lo[0]);
        lo[k] -= pad;
        hi[k] += pad;
    }
    let span_x = hi[0] - lo[0];
    let height = if real.dim == 1 {
        (width / 16).max(8)
    } else {
        ((width as f64 * (hi[1] - lo[1]) / span_x).round() as usize).max(1)
    };
    let mut pixels = vec![BACKGROUND; width * height];
    let col = |x: f64| (((x - lo[0]) / span_x * width as f64) as usize).min(width - 1);
    for p in &cloud.points {
        let x = col(p[0]);
        if real.dim == 1 {
            (0..height).for_each(|y| pixels[y * width + x] = INK);
        } else {
            let y = (((hi[1] - p[1]) / (hi[1] - lo[1]) * height as f64) as usize).min(height - 1);
            pixels[y * width + x] = INK;
        }
    }
    GrayImage { width, height, pixels }
}
