//! Numerics for linear graph directed Markov systems associated to free groups:
//! pressure and Bowen roots, kernel growth of normal subgroups, group-extended
//! transfer operators, random walks on Cayley graphs and attractor rendering.

pub mod caps;
pub mod error;
pub mod group;
pub mod kernel;
pub mod ladder;
pub mod orchestrator;
pub mod render;
pub mod skew;
pub mod symbolic;
pub mod walks;

pub use caps::Caps;
pub use error::{Error, Result};
