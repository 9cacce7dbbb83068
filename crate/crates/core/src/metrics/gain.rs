use std::f64::consts::PI;

use num_complex::Complex64;

use super::power::{input_power, passivity_breach, PowerBudget};
use crate::em::{
    array_response, cut_directions, feed_element_factor, radiation_intensity, CutPlane, DipoleArray,
    Direction, Excitation, PatternModel,
};
use crate::error::{Error, Result};
use crate::network::NetworkMatrices;
use crate::numerics::{solve_complex_linear, CMatrix, CVector};

/// Converts a linear power ratio to decibels.
pub fn to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Converts decibels to a linear power ratio.
pub fn from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Everything known about an excited array in one direction.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiationReport {
    pub direction: Direction,
    pub directivity_dbi: f64,
    pub gain_dbi: f64,
    /// `None` when the mismatch efficiency is not positive, so the realized
    /// gain has no decibel value.
    pub realized_gain_dbi: Option<f64>,
    /// Linear realized gain; may be zero or negative for pathological feeds.
    pub realized_gain_linear: f64,
    pub radiation_efficiency: f64,
    pub mismatch_efficiency: f64,
    pub total_efficiency: f64,
    pub active_reflection: Vec<Option<Complex64>>,
    pub p_rad: f64,
    pub p_loss: f64,
    pub p_in: f64,
    pub warnings: Vec<String>,
}

/// Linear directivity `4π·U / P_rad`.
pub fn directivity_linear(
    array: &DipoleArray,
    net: &NetworkMatrices,
    exc: &Excitation,
    dir: Direction,
    model: PatternModel,
) -> Result<f64> {
    let budget = input_power(net, exc);
    ratio(array, exc, dir, model, budget.p_rad, "radiated")
}

/// Linear gain `4π·U / P_in`.
pub fn gain_linear(
    array: &DipoleArray,
    net: &NetworkMatrices,
    exc: &Excitation,
    dir: Direction,
    model: PatternModel,
) -> Result<f64> {
    let budget = input_power(net, exc);
    ratio(array, exc, dir, model, budget.p_in, "input")
}

/// Gain in dBi.
pub fn gain(
    array: &DipoleArray,
    net: &NetworkMatrices,
    exc: &Excitation,
    dir: Direction,
    model: PatternModel,
) -> Result<f64> {
    gain_linear(array, net, exc, dir, model).map(to_db)
}

/// Directivity in dBi.
pub fn directivity(
    array: &DipoleArray,
    net: &NetworkMatrices,
    exc: &Excitation,
    dir: Direction,
    model: PatternModel,
) -> Result<f64> {
    directivity_linear(array, net, exc, dir, model).map(to_db)
}

fn ratio(
    array: &DipoleArray,
    exc: &Excitation,
    dir: Direction,
    model: PatternModel,
    power: f64,
    what: &str,
) -> Result<f64> {
    if !(power > 0.0) {
        return Err(Error::DegenerateExcitation(format!(
            "{what} power is {power:.3e} W; gain is undefined"
        )));
    }
    Ok(4.0 * PI * radiation_intensity(array, exc, dir, model) / power)
}

/// Power-weighted aggregate of per-port mismatch:
/// `Σ_n w_n·(1 − |Γ_n|²)` with `w_n = |I_n|² / Σ|I_m|²` over excited ports.
///
/// Not clamped: active reflections above unity drive it below zero.
pub fn mismatch_efficiency(gamma: &[Option<Complex64>], exc: &Excitation) -> f64 {
    let (num, den) = gamma
        .iter()
        .zip(exc.currents())
        .filter_map(|(g, i)| g.map(|g| (g, i.norm_sqr())))
        .fold((0.0, 0.0), |(num, den), (g, w)| (num + w * (1.0 - g.norm_sqr()), den + w));
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

/// Full radiation report: directivity, gain, realized gain, efficiencies and
/// active reflection coefficients.
pub fn realized_gain(
    array: &DipoleArray,
    net: &NetworkMatrices,
    exc: &Excitation,
    dir: Direction,
    model: PatternModel,
) -> Result<RadiationReport> {
    let budget = input_power(net, exc);
    let gamma = net.active_reflection(exc)?;
    let e_ref = mismatch_efficiency(&gamma, exc);
    report_from_parts(array, exc, dir, model, budget, gamma, e_ref, passivity_breach(net, exc, budget.p_rad))
}

/// Builds the network for `array` with `z_ref` ports and reports on it.
pub fn evaluate(
    array: &DipoleArray,
    exc: &Excitation,
    z_ref: f64,
    dir: Direction,
    model: PatternModel,
) -> Result<RadiationReport> {
    let net = NetworkMatrices::build(array, z_ref)?;
    realized_gain(array, &net, exc, dir, model)
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn report_from_parts(
    array: &DipoleArray,
    exc: &Excitation,
    dir: Direction,
    model: PatternModel,
    budget: PowerBudget,
    gamma: Vec<Option<Complex64>>,
    e_ref: f64,
    passivity_lost: bool,
) -> Result<RadiationReport> {
    let mut warnings = Vec::new();
    if passivity_lost {
        warnings.push(format!(
            "radiated power {:.3e} W is negative: impedance matrix is not passive",
            budget.p_rad
        ));
    }
    let d = ratio(array, exc, dir, model, budget.p_rad, "radiated")?;
    let g = ratio(array, exc, dir, model, budget.p_in, "input")?;
    for (n, gm) in gamma.iter().enumerate() {
        if let Some(gm) = gm {
            if gm.norm() > 1.0 {
                warnings.push(format!(
                    "port {n}: |Γ| = {:.3} exceeds 1 (negative active resistance)",
                    gm.norm()
                ));
            }
        }
    }
    let realized = g * e_ref;
    let realized_db = if e_ref > 0.0 {
        Some(to_db(realized))
    } else {
        warnings.push(format!(
            "mismatch efficiency {e_ref:.3} is not positive; realized gain undefined in dB"
        ));
        None
    };
    let radiation_efficiency = budget.radiation_efficiency();
    Ok(RadiationReport {
        direction: dir,
        directivity_dbi: to_db(d),
        gain_dbi: to_db(g),
        realized_gain_dbi: realized_db,
        realized_gain_linear: realized,
        radiation_efficiency,
        mismatch_efficiency: e_ref,
        total_efficiency: radiation_efficiency * e_ref,
        active_reflection: gamma,
        p_rad: budget.p_rad,
        p_loss: budget.p_loss,
        p_in: budget.p_in,
        warnings,
    })
}

/// Directivity, gain and realized gain at one angle of a cut, in dBi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainSample {
    /// Radians: φ for an azimuth cut, θ for an elevation cut.
    pub angle: f64,
    pub directivity_dbi: f64,
    pub gain_dbi: f64,
    /// NaN when the mismatch efficiency is not positive.
    pub realized_gain_dbi: f64,
}

/// Samples a cut uniformly. Powers and mismatch do not depend on direction,
/// so only the radiation intensity is recomputed per sample.
pub fn pattern_gains(
    array: &DipoleArray,
    net: &NetworkMatrices,
    exc: &Excitation,
    plane: CutPlane,
    samples: usize,
    model: PatternModel,
) -> Result<Vec<GainSample>> {
    let dirs = cut_directions(plane, samples)?;
    let budget = input_power(net, exc);
    let gamma = net.active_reflection(exc)?;
    let e_ref = mismatch_efficiency(&gamma, exc);
    if !(budget.p_rad > 0.0 && budget.p_in > 0.0) {
        return Err(Error::DegenerateExcitation(format!(
            "radiated power {:.3e} W; gain is undefined",
            budget.p_rad
        )));
    }
    Ok(dirs
        .into_iter()
        .map(|(angle, dir)| {
            let four_pi_u = 4.0 * PI * radiation_intensity(array, exc, dir, model);
            let g = four_pi_u / budget.p_in;
            GainSample {
                angle,
                directivity_dbi: to_db(four_pi_u / budget.p_rad),
                gain_dbi: to_db(g),
                realized_gain_dbi: if e_ref > 0.0 { to_db(g * e_ref) } else { f64::NAN },
            }
        })
        .collect())
}

/// Currents maximising directivity in `dir`: `i ∝ Re{Z′}⁻¹·w` with
/// `w_n = F_n(θ)·a_n(θ, φ)`, the maximiser of `|wᴴi|² / iᴴ·Re{Z′}·i`.
///
/// Normalised so the largest current is exactly `1 + 0j`.
pub fn max_directivity_excitation(
    net: &NetworkMatrices,
    dir: Direction,
    array: &DipoleArray,
    model: PatternModel,
) -> Result<Excitation> {
    let n = array.len();
    if net.len() != n {
        return Err(Error::InvalidArgument(format!(
            "network has {} ports, array has {n} elements",
            net.len()
        )));
    }
    let re = CMatrix::from_fn(n, n, |r, c| Complex64::new(net.z[(r, c)].re, 0.0));
    let a = array_response(array, dir);
    let lambda = array.wavelength();
    let w = CVector::from_fn(n, |i, _| {
        let l = match model {
            PatternModel::SharedMeanLength => array.mean_length(),
            PatternModel::PerElement => array.lengths()[i],
        };
        a[i] * feed_element_factor(dir.theta, l, lambda)
    });
    let i = solve_complex_linear(&re, &w)?;
    let peak = i
        .iter()
        .copied()
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .unwrap_or(Complex64::new(0.0, 0.0));
    if peak.norm() == 0.0 {
        return Err(Error::DegenerateExcitation(
            "no radiation toward the requested direction".into(),
        ));
    }
    Excitation::new(i.iter().map(|c| c / peak).collect())
}
