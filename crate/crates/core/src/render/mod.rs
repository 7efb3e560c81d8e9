//! Realizations of a linear GDMS by similarities of intervals or disks, point clouds
//! of its limit set and of induced subsystems, box counting and PGM rasters.

mod boxcount;
mod cloud;
mod image;
mod layout;

pub use boxcount::{box_counting, dyadic_scales, BoxCount};
pub use cloud::{attractor_points, CloudSource, PointCloud, Provenance};
pub use image::{render_image, GrayImage, BACKGROUND, INK};
pub use layout::{auto_layout, cell_gap, Cell, GeometricRealization};
