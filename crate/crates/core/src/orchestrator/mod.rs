//! Experiment configs, the seven commands and their JSON/CSV/PGM outputs.

mod commands;
mod config;
mod report;

pub use commands::{cross_check, run, Command, CrossCheck};
pub use config::{
    AmenabilityParams, ExperimentConfig, KernelParams, PressureParams, RenderParams, RenderSource, SymmetryParams,
    WalkParams,
};
pub use report::{Kind, Quantity, RunOutput, RunReport, Status, Versions};
