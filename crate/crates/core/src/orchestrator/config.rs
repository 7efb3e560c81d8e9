use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{QuotientGroup, QuotientSpec};
use crate::symbolic::{GdmsConfig, LinearGdmsSpec};

/// One experiment: a GDMS, an optional quotient, per-command parameters, caps and
/// the output directory. Every section has defaults, and the resolved config is
/// echoed into each report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub gdms: GdmsConfig,
    #[serde(default)]
    pub quotient: Option<QuotientSpec>,
    #[serde(default)]
    pub pressure: PressureParams,
    #[serde(default)]
    pub kernel: KernelParams,
    #[serde(default)]
    pub amenability: AmenabilityParams,
    #[serde(default)]
    pub symmetry: SymmetryParams,
    #[serde(default)]
    pub walks: WalkParams,
    #[serde(default)]
    pub render: RenderParams,
    #[serde(default)]
    pub caps: Caps,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PressureParams {
    pub s_min: f64,
    pub s_max: f64,
    pub steps: usize,
    /// Longest cylinder in the Gibbs band table.
    pub gibbs_max_len: usize,
}

impl Default for PressureParams {
    fn default() -> Self {
        PressureParams { s_min: 0.0, s_max: 2.0, steps: 41, gibbs_max_len: 8 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KernelParams {
    pub n_max: usize,
    pub tol: f64,
    pub divergence_n_max: usize,
    /// Loop-length cutoffs for the induced-system ladder; empty skips it.
    pub induced_l_max: Vec<usize>,
}

impl Default for KernelParams {
    fn default() -> Self {
        KernelParams { n_max: 24, tol: 1e-4, divergence_n_max: 24, induced_l_max: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AmenabilityParams {
    pub radii: Vec<usize>,
    pub walk_radii: Vec<usize>,
    /// Length of the kernel table behind the cross-estimate; 0 skips it.
    pub kernel_n_max: usize,
}

impl Default for AmenabilityParams {
    fn default() -> Self {
        AmenabilityParams { radii: vec![4, 6, 8, 10], walk_radii: vec![6, 8, 10, 12], kernel_n_max: 20 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SymmetryParams {
    /// Exponent; `null` means `δ(F_d, Φ)`.
    pub s: Option<f64>,
    pub n_max: usize,
    pub radius: usize,
}

impl Default for SymmetryParams {
    fn default() -> Self {
        SymmetryParams { s: None, n_max: 10, radius: 5 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WalkParams {
    pub radii: Vec<usize>,
    pub iso_radius: usize,
}

impl Default for WalkParams {
    fn default() -> Self {
        WalkParams { radii: vec![6, 8, 10, 12], iso_radius: 8 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RenderSource {
    Full,
    Induced,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RenderParams {
    pub dim: usize,
    pub source: RenderSource,
    /// Word length (full) or number of loops per chain (induced).
    pub depth: usize,
    /// Loop-length cutoff for the induced source.
    pub l_max: usize,
    pub resolution: usize,
    pub coarsest_scale: f64,
    pub scale_count: usize,
    pub write_points: bool,
}

impl Default for RenderParams {
    fn default() -> Self {
        RenderParams {
            dim: 1,
            source: RenderSource::Full,
            depth: 10,
            l_max: 2,
            resolution: 512,
            coarsest_scale: 0.125,
            scale_count: 8,
            write_points: false,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Field-level checks beyond what the types enforce.
    pub fn validate(&self) -> Result<()> {
        let spec = self.spec()?;
        if let Some(q) = &self.quotient {
            q.build(spec.rank())?;
        }
        let p = &self.pressure;
        if !(p.s_min.is_finite() && p.s_max.is_finite() && p.s_min < p.s_max) {
            return Err(Error::Config("pressure: need finite s_min < s_max".into()));
        }
        if p.steps < 2 {
            return Err(Error::Config("pressure.steps must be at least 2".into()));
        }
        if !(1..=16).contains(&p.gibbs_max_len) {
            return Err(Error::Config("pressure.gibbs_max_len must be in 1..=16".into()));
        }
        let k = &self.kernel;
        if k.n_max < 2 || k.divergence_n_max < 3 {
            return Err(Error::Config("kernel.n_max must be >= 2 and kernel.divergence_n_max >= 3".into()));
        }
        if !(k.tol > 0.0 && k.tol <= 0.1) {
            return Err(Error::Config(format!("kernel.tol = {} must be in (0, 0.1]", k.tol)));
        }
        if k.induced_l_max.contains(&0) {
            return Err(Error::Config("kernel.induced_l_max entries must be positive".into()));
        }
        if self.amenability.radii.is_empty() || self.walks.radii.is_empty() || self.amenability.walk_radii.is_empty() {
            return Err(Error::Config("radius lists must be nonempty".into()));
        }
        if let Some(s) = self.symmetry.s {
            if !(s.is_finite() && s >= 0.0) {
                return Err(Error::Config("symmetry.s must be a finite nonnegative number".into()));
            }
        }
        let r = &self.render;
        if !(r.dim == 1 || r.dim == 2) {
            return Err(Error::Config(format!("render.dim must be 1 or 2, got {}", r.dim)));
        }
        if r.depth == 0 || r.l_max == 0 || r.resolution == 0 || r.resolution > 8192 {
            return Err(Error::Config("render: depth, l_max must be positive and resolution in 1..=8192".into()));
        }
        if !(r.coarsest_scale > 0.0 && r.coarsest_scale.is_finite()) || r.scale_count < 3 {
            return Err(Error::Config("render: coarsest_scale must be positive and scale_count >= 3".into()));
        }
        let c = &self.caps;
        if [c.ball, c.states, c.points, c.loops, c.length].contains(&0) {
            return Err(Error::Config("caps must all be positive".into()));
        }
        Ok(())
    }

    pub fn spec(&self) -> Result<LinearGdmsSpec> {
        LinearGdmsSpec::from_config(&self.gdms)
    }

    pub fn quotient_group(&self, command: &str) -> Result<QuotientGroup> {
        let spec = self.spec()?;
        match &self.quotient {
            Some(q) => q.build(spec.rank()),
            None => Err(Error::Config(format!("quotient: required for {command}"))),
        }
    }

    /// Config caps with environment overrides applied.
    pub fn effective_caps(&self) -> Caps {
        self.caps.clone().with_env_overrides()
    }
}
