use rayon::prelude::*;
use serde::Serialize;

use super::GeometricRealization;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::Letter;
use crate::kernel::InducedSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// admissible words of length `depth`
    Full,
    /// concatenations of `depth` first-return loops
    Induced { l_max: usize },
}

/// One representative point per word: the image of the center of its last phase set.
#[derive(Clone, Debug)]
pub struct PointCloud {
    pub dim: usize,
    pub depth: usize,
    pub provenance: Provenance,
    pub points: Vec<[f64; 2]>,
    /// radius of each word's cell `φ_ω(X_{ω_n})`
    pub radii: Vec<f64>,
    letters: Vec<Letter>,
    offsets: Vec<usize>,
}

impl PointCloud {
    pub fn empty(dim: usize) -> Self {
        PointCloud {
            dim,
            depth: 0,
            provenance: Provenance::Full,
            points: Vec::new(),
            radii: Vec::new(),
            letters: Vec::new(),
            offsets: vec![0],
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn word(&self, i: usize) -> &[Letter] {
        &self.letters[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn max_cell_diameter(&self) -> f64 {
        2.0 * self.radii.iter().copied().fold(0.0, f64::max)
    }

    /// `x[,y],word` rows, words in signed-generator notation joined by spaces.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(if self.dim == 1 { "x,word\n" } else { "x,y,word\n" });
        for (i, p) in self.points.iter().enumerate() {
            let word: Vec<String> = self.word(i).iter().map(|l| l.to_signed().to_string()).collect();
            if self.dim == 1 {
                out.push_str(&format!("{:.15e},{}\n", p[0], word.join(" ")));
            } else {
                out.push_str(&format!("{:.15e},{:.15e},{}\n", p[0], p[1], word.join(" ")));
            }
        }
        out
    }

    fn push(&mut self, real: &GeometricRealization, word: &[Letter]) {
        let cell = real.word_cell(word);
        self.points.push(cell.center);
        self.radii.push(cell.radius);
        self.letters.extend_from_slice(word);
        self.offsets.push(self.letters.len());
    }

    fn append(&mut self, other: PointCloud) {
        let base = self.letters.len();
        self.points.extend(other.points);
        self.radii.extend(other.radii);
        self.letters.extend(other.letters);
        self.offsets.extend(other.offsets[1..].iter().map(|o| o + base));
    }
}

#[derive(Clone, Copy, Debug)]
pub enum CloudSource<'a> {
    Full,
    Induced(&'a InducedSystem),
}

/// Points of all admissible words of length `depth`, or of all admissible chains of
/// `depth` loops, in lexicographic order.
pub fn attractor_points(real: &GeometricRealization, depth: usize, source: CloudSource, caps: &Caps) -> Result<PointCloud> {
    let alphabet = 2 * real.rank;
    let mut cloud = PointCloud::empty(real.dim);
    cloud.depth = depth;
    if depth == 0 {
        return Ok(cloud);
    }
    match source {
        CloudSource::Full => {
            let count = alphabet as f64 * ((alphabet - 1) as f64).powi(depth as i32 - 1);
            if count > caps.points as f64 {
                return Err(Error::CapExceeded { what: "attractor points", cap: caps.points });
            }
            let parts: Vec<PointCloud> = Letter::alphabet(real.rank)
                .collect::<Vec<_>>()
                .par_iter()
                .map(|&first| {
                    let mut part = PointCloud::empty(real.dim);
                    let mut word = vec![first];
                    full_words(real, depth, &mut word, &mut part);
                    part
                })
                .collect();
            parts.into_iter().for_each(|p| cloud.append(p));
        }
        CloudSource::Induced(sys) => {
            cloud.provenance = Provenance::Induced { l_max: sys.l_max };
            let mut word = Vec::new();
            loop_chains(real, sys, depth, &mut word, &mut cloud, caps.points)?;
        }
    }
    Ok(cloud)
}

fn full_words(real: &GeometricRealization, depth: usize, word: &mut Vec<Letter>, out: &mut PointCloud) {
    if word.len() == depth {
        out.push(real, word);
        return;
    }
    let last = *word.last().expect("nonempty");
    for w in Letter::alphabet(real.rank) {
        if w != last.inverse() {
            word.push(w);
            full_words(real, depth, word, out);
            word.pop();
        }
    }
}

fn loop_chains(
    real: &GeometricRealization,
    sys: &InducedSystem,
    depth: usize,
    word: &mut Vec<Letter>,
    out: &mut PointCloud,
    cap: usize,
) -> Result<()> {
    for lp in &sys.loops {
        if word.last().is_some_and(|&l| l == lp.first_letter.inverse()) {
            continue;
        }
        let before = word.len();
        word.extend_from_slice(&lp.word);
        if depth == 1 {
            if out.len() >= cap {
                return Err(Error::CapExceeded { what: "attractor points", cap });
            }
            out.push(real, word);
        } else {
            loop_chains(real, sys, depth - 1, word, out, cap)?;
        }
        word.truncate(before);
    }
    Ok(())
}
