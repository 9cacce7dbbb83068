use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// N parallel z-directed dipoles centred on the x-axis.
///
/// Positions are x-coordinates in metres, strictly increasing. Every element
/// shares one wire radius and conductor conductivity.
#[derive(Debug, Clone, PartialEq)]
pub struct DipoleArray {
    wavelength: f64,
    positions: Vec<f64>,
    lengths: Vec<f64>,
    wire_radius: f64,
    conductivity: f64,
}

impl DipoleArray {
    pub fn new(
        wavelength: f64,
        positions: Vec<f64>,
        lengths: Vec<f64>,
        wire_radius: f64,
        conductivity: f64,
    ) -> Result<Self> {
        let array = Self {
            wavelength,
            positions,
            lengths,
            wire_radius,
            conductivity,
        };
        array.validate()?;
        Ok(array)
    }

    fn validate(&self) -> Result<()> {
        let geo = |msg: String| Err(Error::Geometry(msg));
        if !(self.wavelength > 0.0 && self.wavelength.is_finite()) {
            return geo(format!("wavelength must be positive, got {}", self.wavelength));
        }
        if self.positions.is_empty() {
            return geo("array needs at least one element".into());
        }
        if self.positions.len() != self.lengths.len() {
            return geo(format!(
                "{} positions but {} lengths",
                self.positions.len(),
                self.lengths.len()
            ));
        }
        if !(self.wire_radius > 0.0 && self.wire_radius.is_finite()) {
            return geo(format!("wire radius must be positive, got {}", self.wire_radius));
        }
        if !(self.conductivity > 0.0) {
            return geo(format!("conductivity must be positive, got {}", self.conductivity));
        }
        if self.positions.iter().any(|x| !x.is_finite()) {
            return geo("positions must be finite".into());
        }
        for (i, pair) in self.positions.windows(2).enumerate() {
            let gap = pair[1] - pair[0];
            if gap < 2.0 * self.wire_radius {
                return geo(format!(
                    "elements {i} and {} are {gap:.3e} m apart; need at least two wire radii ({:.3e} m) \
                     with positions strictly increasing",
                    i + 1,
                    2.0 * self.wire_radius
                ));
            }
        }
        for (i, &l) in self.lengths.iter().enumerate() {
            if !(l > 0.0 && l < self.wavelength) {
                return geo(format!(
                    "element {i} length {l:.4e} m outside (0, λ = {:.4e} m)",
                    self.wavelength
                ));
            }
            if self.wire_radius >= l / 50.0 {
                return geo(format!(
                    "wire radius {:.3e} m is not thin relative to element {i} length {l:.3e} m",
                    self.wire_radius
                ));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    /// Free-space wavenumber `2π/λ`.
    pub fn wavenumber(&self) -> f64 {
        TAU / self.wavelength
    }

    pub fn frequency(&self) -> f64 {
        super::SPEED_OF_LIGHT / self.wavelength
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn wire_radius(&self) -> f64 {
        self.wire_radius
    }

    pub fn conductivity(&self) -> f64 {
        self.conductivity
    }

    pub fn mean_length(&self) -> f64 {
        self.lengths.iter().sum::<f64>() / self.lengths.len() as f64
    }

    /// Returns a copy with every position shifted by `offset` metres.
    pub fn translated(&self, offset: f64) -> Self {
        Self {
            positions: self.positions.iter().map(|x| x + offset).collect(),
            ..self.clone()
        }
    }

    /// Returns a copy with new lengths, re-validated.
    pub fn with_lengths(&self, lengths: Vec<f64>) -> Result<Self> {
        Self::new(
            self.wavelength,
            self.positions.clone(),
            lengths,
            self.wire_radius,
            self.conductivity,
        )
    }

    /// Returns a copy with new positions, re-validated.
    pub fn with_positions(&self, positions: Vec<f64>) -> Result<Self> {
        Self::new(
            self.wavelength,
            positions,
            self.lengths.clone(),
            self.wire_radius,
            self.conductivity,
        )
    }
}

/// Complex feed currents in amperes, one per element.
#[derive(Debug, Clone, PartialEq)]
pub struct Excitation {
    currents: Vec<Complex64>,
}

impl Excitation {
    pub fn new(currents: Vec<Complex64>) -> Result<Self> {
        if currents.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::DegenerateExcitation("currents must be finite".into()));
        }
        if currents.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::DegenerateExcitation(
                "at least one current must be non-zero".into(),
            ));
        }
        Ok(Self { currents })
    }

    /// Builds currents from amplitudes and phases (radians).
    pub fn from_polar(amplitudes: &[f64], phases: &[f64]) -> Result<Self> {
        if amplitudes.len() != phases.len() {
            return Err(Error::InvalidArgument(format!(
                "{} amplitudes but {} phases",
                amplitudes.len(),
                phases.len()
            )));
        }
        Self::new(
            amplitudes
                .iter()
                .zip(phases)
                .map(|(&a, &p)| Complex64::from_polar(a, p))
                .collect(),
        )
    }

    /// Equal, co-phased unit currents.
    pub fn uniform(n: usize) -> Self {
        Self {
            currents: vec![Complex64::new(1.0, 0.0); n.max(1)],
        }
    }

    pub fn currents(&self) -> &[Complex64] {
        &self.currents
    }

    pub fn len(&self) -> usize {
        self.currents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.currents.is_empty()
    }

    /// `‖i‖²`.
    pub fn norm_sqr(&self) -> f64 {
        self.currents.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Multiplies every current by `factor`.
    pub fn scaled(&self, factor: Complex64) -> Result<Self> {
        Self::new(self.currents.iter().map(|c| c * factor).collect())
    }
}

/// Observation direction in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

impl Direction {
    /// Validates `theta ∈ [0, π]` and wraps `phi` into `[0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !phi.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "direction needs 0 ≤ θ ≤ π and finite φ, got θ = {theta}, φ = {phi}"
            )));
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Ok(Self { theta, phi })
    }

    pub fn from_degrees(theta_deg: f64, phi_deg: f64) -> Result<Self> {
        Self::new(theta_deg.to_radians(), phi_deg.to_radians())
    }

    /// Along +x in the azimuth plane.
    pub fn end_fire() -> Self {
        Self {
            theta: PI / 2.0,
            phi: 0.0,
        }
    }

    /// Along −x in the azimuth plane.
    pub fn back_fire() -> Self {
        Self {
            theta: PI / 2.0,
            phi: PI,
        }
    }

    /// Normal to the array axis in the azimuth plane.
    pub fn broadside() -> Self {
        Self {
            theta: PI / 2.0,
            phi: PI / 2.0,
        }
    }

    /// Projection of the unit direction vector onto the array axis.
    pub fn axial_cosine(&self) -> f64 {
        self.theta.sin() * self.phi.cos()
    }
}
