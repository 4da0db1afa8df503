//! The edge-difference map on F₂, its iterated tower, the tower kernel and the
//! affine cocycle relating sections of the tower.

mod affine;
mod kernel;
mod map;
mod tower;

pub use affine::{beta0, phi0, phi0_inverse, AffineWindowMap};
pub use kernel::{
    check_radius, kernel_basis, kernel_enumerate, max_radius, tower_constraints, KernelBasis, KernelWindow,
    DEFAULT_MAX_RADIUS, MAX_KERNEL_DIM,
};
pub use map::{ow_map, ow_section, p_support, q_support, PairImage};
pub use tower::{
    level_dependence, level_shape, section_exact_radius, tower_map, tower_section, tower_section_exact, TowerOutput, WindowSpec,
};
