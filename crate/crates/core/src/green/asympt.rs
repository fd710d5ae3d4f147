//! Large-distance expansion of the potential kernel.

use std::f64::consts::{LN_2, PI};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `-(ln r)/(2π) - (γ/2 + (3/4) ln 2)/π + 1/(24π r²)`, the expansion of `g` at distance `r`
/// along a lattice axis.
pub fn potential_kernel_asympt(r: f64) -> f64 {
    assert!(r >= 1.0, "expansion needs r ≥ 1");
    -r.ln() / (2.0 * PI) - (EULER_GAMMA / 2.0 + 0.75 * LN_2) / PI + 1.0 / (24.0 * PI * r * r)
}
