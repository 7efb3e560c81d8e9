//! Weighted counting of kernel words `Ψ(ω) = id`, the kernel pressure, `δ(N, Φ)`,
//! the divergence check at `δ(F_d)/2` and the first-return induced system.

mod counts;
mod estimate;
mod induced;
pub(crate) mod walk;

pub use counts::{kernel_counts, KernelCountTable};
pub(crate) use counts::fmt_log;
pub use estimate::{
    delta_kernel, divergence_check, kernel_pressure, DeltaKernel, DeltaKernelParams, DivergenceReport, KernelPressure,
    Trend, MIN_NONZERO,
};
pub(crate) use estimate::log_add;
pub use induced::{induced_bowen_root, induced_loops, InducedRoot, InducedSystem, Loop};
