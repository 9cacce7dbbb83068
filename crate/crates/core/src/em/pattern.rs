use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{DipoleArray, Direction, Excitation, FREE_SPACE_IMPEDANCE};
use crate::error::{Error, Result};
use crate::numerics::CVector;

/// How element patterns enter the array far field.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternModel {
    /// One element factor, evaluated at the mean element length, multiplies
    /// the array factor.
    #[default]
    SharedMeanLength,
    /// Each element radiates with the pattern of its own length.
    PerElement,
}

/// Angular cut through the far field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CutPlane {
    /// φ sweeps `[0, 2π)` at θ = π/2.
    Azimuth,
    /// θ sweeps `[0, π]` at the given φ.
    Elevation { phi: f64 },
}

/// Far-field element factor of a centre-fed dipole with sinusoidal current:
///
/// `[cos((kl/2)·cos θ) − cos(kl/2)] / sin θ`, taken as 0 at the poles.
pub fn element_factor(theta: f64, length: f64, wavelength: f64) -> f64 {
    let s = theta.sin();
    if s.abs() < 1e-12 {
        return 0.0;
    }
    let half_kl = PI * length / wavelength;
    ((half_kl * theta.cos()).cos() - half_kl.cos()) / s
}

/// Element factor referred to the feed-point current rather than the current
/// maximum, i.e. divided by `sin(kl/2)`. This is the normalisation under which
/// the induced-EMF impedance matrix and the far-field power integral agree.
pub fn feed_element_factor(theta: f64, length: f64, wavelength: f64) -> f64 {
    element_factor(theta, length, wavelength) / (PI * length / wavelength).sin()
}

/// Far-field array response `a_n = exp(−j·k·x_n·sin θ·cos φ)`.
pub fn array_response(array: &DipoleArray, dir: Direction) -> CVector {
    let kx = array.wavenumber() * dir.axial_cosine();
    CVector::from_iterator(
        array.len(),
        array
            .positions()
            .iter()
            .map(|&x| Complex64::from_polar(1.0, -kx * x)),
    )
}

/// Pattern-weighted array sum `Σ F_n(θ)·conj(a_n)·i_n`.
pub fn weighted_array_sum(
    array: &DipoleArray,
    exc: &Excitation,
    dir: Direction,
    model: PatternModel,
) -> Complex64 {
    let a = array_response(array, dir);
    let lambda = array.wavelength();
    match model {
        PatternModel::SharedMeanLength => {
            let f = feed_element_factor(dir.theta, array.mean_length(), lambda);
            let af: Complex64 = a.iter().zip(exc.currents()).map(|(an, i)| an.conj() * i).sum();
            af * f
        }
        PatternModel::PerElement => a
            .iter()
            .zip(exc.currents())
            .zip(array.lengths())
            .map(|((an, i), &l)| an.conj() * i * feed_element_factor(dir.theta, l, lambda))
            .sum(),
    }
}

/// Radiation intensity `U = η/(8π²)·|Σ F_n·conj(a_n)·i_n|²` in W/sr.
pub fn radiation_intensity(
    array: &DipoleArray,
    exc: &Excitation,
    dir: Direction,
    model: PatternModel,
) -> f64 {
    FREE_SPACE_IMPEDANCE / (8.0 * PI * PI) * weighted_array_sum(array, exc, dir, model).norm_sqr()
}

/// Uniform angular samples of a cut; returns `(angle_rad, direction)` pairs.
pub fn cut_directions(plane: CutPlane, samples: usize) -> Result<Vec<(f64, Direction)>> {
    if samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "a pattern cut needs at least 2 samples, got {samples}"
        )));
    }
    Ok(match plane {
        CutPlane::Azimuth => (0..samples)
            .map(|k| {
                let phi = TAU * k as f64 / samples as f64;
                (phi, Direction { theta: PI / 2.0, phi })
            })
            .collect(),
        CutPlane::Elevation { phi } => {
            let phi = phi.rem_euclid(TAU);
            (0..samples)
                .map(|k| {
                    let theta = PI * k as f64 / (samples - 1) as f64;
                    (theta, Direction { theta, phi })
                })
                .collect()
        }
    })
}

/// Radiation intensity sampled uniformly over a cut: `(angle_rad, U)`.
pub fn pattern_cut(
    array: &DipoleArray,
    exc: &Excitation,
    plane: CutPlane,
    samples: usize,
    model: PatternModel,
) -> Result<Vec<(f64, f64)>> {
    Ok(cut_directions(plane, samples)?
        .into_iter()
        .map(|(angle, dir)| (angle, radiation_intensity(array, exc, dir, model)))
        .collect())
}
