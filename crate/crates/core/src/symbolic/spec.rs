use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Letter;

/// A linear GDMS associated to `F_d`: one contraction ratio per letter.
///
/// The edge `(v, w)` (with `w != v^-1`) carries a similarity of ratio `c(v)`,
/// so a word `w_1 ... w_n` has weight `c(w_1) ... c(w_n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearGdmsSpec {
    rank: usize,
    ratios: Vec<f64>,
}

/// Config-file form of [`LinearGdmsSpec`].
///
/// `ratios` holds either one value per generator (used for the generator and its
/// inverse) or one value per letter in the order `g1, g1^-1, g2, g2^-1, ...`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GdmsConfig {
    pub rank: usize,
    pub ratios: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<bool>,
    /// Only `"log_ratio"` (the locally constant potential `log c(v)`) is supported.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<String>,
}

impl LinearGdmsSpec {
    /// `ratios` is indexed by letter index (`2 * generator + inverse_bit`).
    pub fn new(rank: usize, ratios: Vec<f64>) -> Result<Self> {
        if rank < 2 {
            return Err(Error::Config(format!("gdms.rank must be at least 2, got {rank}")));
        }
        if ratios.len() != 2 * rank {
            return Err(Error::Config(format!(
                "gdms.ratios: expected {} letter ratios, got {}",
                2 * rank,
                ratios.len()
            )));
        }
        for (i, &c) in ratios.iter().enumerate() {
            if !(c > 0.0 && c < 1.0) {
                return Err(Error::Config(format!(
                    "gdms.ratios[{i}] = {c} violates 0 < c < 1 (ratios must be strict contractions)"
                )));
            }
        }
        Ok(LinearGdmsSpec { rank, ratios })
    }

    pub fn uniform(rank: usize, c: f64) -> Result<Self> {
        Self::new(rank, vec![c; 2 * rank])
    }

    /// Symmetric spec from one ratio per generator.
    pub fn symmetric(per_generator: &[f64]) -> Result<Self> {
        let ratios = per_generator.iter().flat_map(|&c| [c, c]).collect();
        Self::new(per_generator.len(), ratios)
    }

    pub fn from_config(cfg: &GdmsConfig) -> Result<Self> {
        if let Some(p) = &cfg.potential {
            if p != "log_ratio" {
                return Err(Error::Config(format!(
                    "gdms.potential: only the locally constant \"log_ratio\" potential is supported, got {p:?}"
                )));
            }
        }
        let spec = if cfg.ratios.len() == cfg.rank && cfg.rank >= 2 {
            Self::symmetric(&cfg.ratios)?
        } else {
            Self::new(cfg.rank, cfg.ratios.clone())?
        };
        if cfg.symmetric == Some(true) && !spec.is_symmetric() {
            return Err(Error::Config(
                "gdms.symmetric is true but c(g) != c(g^-1) for some generator".into(),
            ));
        }
        Ok(spec)
    }

    pub fn to_config(&self) -> GdmsConfig {
        GdmsConfig {
            rank: self.rank,
            ratios: self.ratios.clone(),
            symmetric: Some(self.is_symmetric()),
            potential: Some("log_ratio".into()),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn alphabet_size(&self) -> usize {
        2 * self.rank
    }

    pub fn ratio(&self, l: Letter) -> f64 {
        self.ratios[l.index()]
    }

    pub fn ratios(&self) -> &[f64] {
        &self.ratios
    }

    pub fn max_ratio(&self) -> f64 {
        self.ratios.iter().copied().fold(0.0, f64::max)
    }

    /// `c(g) == c(g^-1)` exactly for every generator.
    pub fn is_symmetric(&self) -> bool {
        self.ratios.chunks(2).all(|p| p[0] == p[1])
    }

    /// `c(v)^s` for every letter, by letter index.
    pub fn letter_weights(&self, s: f64) -> Vec<f64> {
        self.ratios.iter().map(|c| c.powf(s)).collect()
    }

    /// `exp(s * S_w φ) = Π c(w_i)^s`; the empty word has weight 1.
    pub fn ergodic_weight(&self, word: &[Letter], s: f64) -> f64 {
        word.iter().map(|&l| self.ratio(l).powf(s)).product()
    }

    /// `S_w φ = Σ log c(w_i)`.
    pub fn log_weight(&self, word: &[Letter]) -> f64 {
        word.iter().map(|&l| self.ratio(l).ln()).sum()
    }
}
