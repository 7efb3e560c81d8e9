//! The group-extended system `(Σ × G, σ ⋊ Ψ)`: its transfer operator on letter-by-ball
//! states, spectral radii, the amenability report and the `g` / `g^-1` symmetry check.

mod operator;
mod report;
mod symmetry;

pub use operator::{build_skew_operator, skew_spectral_radius, SkewOperator, SkewRadius};
pub use report::{amenability_report, DichotomyReport};
pub use symmetry::{check_asymptotic_symmetry, SymmetryReport, SymmetryRow, SYMMETRY_TOL};
