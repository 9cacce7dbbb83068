//! Geometry, element factor, array response and radiation intensity for
//! parallel z-directed dipoles on the x-axis.
//!
//! All angles are radians. The far field follows the `exp(+jωt)` convention
//! shared with the impedance kernels in [`crate::network`]: element `n` at
//! `x_n` contributes `i_n·exp(+j·k·x_n·sin θ·cos φ)`, which is
//! `conj(a_n)·i_n` for the response vector returned by [`array_response`].

mod geometry;
mod pattern;

pub use geometry::{DipoleArray, Direction, Excitation};
pub use pattern::{
    array_response, cut_directions, element_factor, feed_element_factor, pattern_cut,
    radiation_intensity, weighted_array_sum, CutPlane, PatternModel,
};

/// Impedance of free space in ohms.
pub const FREE_SPACE_IMPEDANCE: f64 = 376.730_313_668;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Vacuum permeability, H/m.
pub const MU_0: f64 = 1.256_637_062_12e-6;
