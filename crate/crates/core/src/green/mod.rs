//! Lattice potential kernel and half-plane Green functions.

pub mod asympt;
pub mod fpm;
pub mod kernel;
pub mod quadrature;

pub use asympt::potential_kernel_asympt;
pub use fpm::{f_pm_sum, g_fin_closed_row1, green_open_row1, Sign};
pub use kernel::{
    green_closed, green_open, potential_kernel_exact, shared_table, PotentialKernelTable,
};
pub use quadrature::{potential_kernel_numeric, QuadratureError};

/// Site of ℤ².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }
}
