//! Simple random walks on Cayley balls of `G`: graphs, transition matrices, spectral
//! radius ladders and the isoperimetric scan.

mod graph;
mod iso;
mod srw;

pub use graph::{cayley_ball, generating_letters, interior, CayleyBall, Graph, TransitionMatrix};
pub use iso::{isoperimetric_scan, IsoRow, IsoperimetricReport};
pub use srw::{srw_spectral_radius, SrwLadder, WalkMethod};
