//! The non-backtracking shift over `{g1, g1^-1, ..., gd, gd^-1}`, the potential
//! `φ|[v] = log c(v)`, transfer matrices, pressure, Bowen roots and Gibbs measures.

mod gibbs;
mod poincare;
pub mod perron;
mod spec;
mod transfer;

pub use gibbs::{gibbs_band, gibbs_measure, GibbsMeasure};
pub use poincare::{poincare_partial, PoincarePartial, SeriesSource};
pub use spec::{GdmsConfig, LinearGdmsSpec};
pub use transfer::{
    bowen_root, pressure, pressure_with_derivative, spectral_data, BowenRoot, SpectralData, TransferMatrix,
    SPECTRAL_TOL,
};

pub use crate::group::is_admissible;
