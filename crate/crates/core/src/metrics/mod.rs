//! Power accounting, directivity, gain, realized gain and efficiencies.
//!
//! Directivity and gain use the impedance-matrix form of the radiated power.
//! [`quadrature_radiated_power`] integrates the far field directly and exists
//! to check that form.

mod gain;
mod power;

pub use gain::{
    directivity, directivity_linear, evaluate, from_db, gain, gain_linear, max_directivity_excitation,
    mismatch_efficiency, pattern_gains, realized_gain, to_db, GainSample, RadiationReport,
};
pub(crate) use gain::report_from_parts;
pub use power::{
    input_power, loss_power, passivity_breach, quadrature_radiated_power, radiated_power,
    PowerBudget, SphereGrid,
};
