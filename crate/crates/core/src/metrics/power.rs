use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::em::{feed_element_factor, DipoleArray, Excitation, PatternModel, FREE_SPACE_IMPEDANCE};
use crate::error::{Error, Result};
use crate::network::NetworkMatrices;
use crate::numerics::{gauss_legendre, CMatrix};

/// Power accounting at the feed terminals, in watts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBudget {
    pub p_in: f64,
    pub p_loss: f64,
    pub p_rad: f64,
}

impl PowerBudget {
    /// `P_rad / P_in`.
    pub fn radiation_efficiency(&self) -> f64 {
        self.p_rad / self.p_in
    }
}

/// `½·iᴴ·M·i` for a real-part quadratic form.
fn real_quadratic_form(m: &CMatrix, i: &[Complex64]) -> f64 {
    let n = i.len();
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            acc += (i[r].conj() * m[(r, c)].re * i[c]).re;
        }
    }
    0.5 * acc
}

/// `P_rad = ½·iᴴ·Re{Z′}·i` from the lossless impedance matrix.
pub fn radiated_power(net: &NetworkMatrices, exc: &Excitation) -> f64 {
    real_quadratic_form(&net.z, exc.currents())
}

/// `P_loss = ½·iᴴ·diag(R_loss)·i`.
pub fn loss_power(net: &NetworkMatrices, exc: &Excitation) -> f64 {
    0.5 * net
        .r_loss
        .iter()
        .zip(exc.currents())
        .map(|(r, i)| r * i.norm_sqr())
        .sum::<f64>()
}

/// Input power split into its radiated and dissipated parts.
pub fn input_power(net: &NetworkMatrices, exc: &Excitation) -> PowerBudget {
    let p_rad = radiated_power(net, exc);
    let p_loss = loss_power(net, exc);
    PowerBudget {
        p_in: p_rad + p_loss,
        p_loss,
        p_rad,
    }
}

/// `true` when `P_rad` is negative beyond round-off, i.e. the impedance
/// matrix has lost passivity numerically.
pub fn passivity_breach(net: &NetworkMatrices, exc: &Excitation, p_rad: f64) -> bool {
    p_rad < -1e-8 * exc.norm_sqr() * net.z.norm()
}

/// Sphere grid used by [`quadrature_radiated_power`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphereGrid {
    /// Gauss–Legendre order in `cos θ`.
    pub theta_order: usize,
    /// Trapezoid points in `φ`.
    pub phi_points: usize,
}

impl Default for SphereGrid {
    fn default() -> Self {
        Self {
            theta_order: 64,
            phi_points: 128,
        }
    }
}

/// Radiated power by integrating the radiation intensity over the sphere:
/// Gauss–Legendre in `cos θ` times the periodic trapezoid rule in `φ`.
///
/// This does not touch the impedance matrix and serves as the independent
/// check on [`radiated_power`].
pub fn quadrature_radiated_power(
    array: &DipoleArray,
    exc: &Excitation,
    model: PatternModel,
    grid: SphereGrid,
) -> Result<f64> {
    if grid.phi_points < 2 {
        return Err(Error::InvalidArgument("need at least 2 azimuth points".into()));
    }
    let rule = gauss_legendre(grid.theta_order)?;
    let k = array.wavenumber();
    let lambda = array.wavelength();
    let currents = exc.currents();
    let x = array.positions();
    let mean = array.mean_length();
    let cos_phi: Vec<f64> = (0..grid.phi_points)
        .map(|p| (TAU * p as f64 / grid.phi_points as f64).cos())
        .collect();

    let mut total = 0.0;
    let mut weighted = vec![Complex64::new(0.0, 0.0); currents.len()];
    for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
        let theta = u.acos();
        let sin_theta = (1.0 - u * u).max(0.0).sqrt();
        for (n, slot) in weighted.iter_mut().enumerate() {
            let f = match model {
                PatternModel::SharedMeanLength => feed_element_factor(theta, mean, lambda),
                PatternModel::PerElement => feed_element_factor(theta, array.lengths()[n], lambda),
            };
            *slot = currents[n] * f;
        }
        let ring: f64 = cos_phi
            .iter()
            .map(|&cp| {
                let kx = k * sin_theta * cp;
                weighted
                    .iter()
                    .zip(x)
                    .map(|(wi, &xn)| wi * Complex64::from_polar(1.0, kx * xn))
                    .sum::<Complex64>()
                    .norm_sqr()
            })
            .sum();
        total += w * ring * TAU / grid.phi_points as f64;
    }
    Ok(FREE_SPACE_IMPEDANCE / (8.0 * PI * PI) * total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::DEFAULT_Z_REF;

    const LAMBDA: f64 = 0.03;

    fn half_wave() -> DipoleArray {
        DipoleArray::new(LAMBDA, vec![0.0], vec![0.5 * LAMBDA], LAMBDA / 2000.0, 5.8e7).unwrap()
    }

    #[test]
    fn single_half_wave_radiated_power() {
        let a = half_wave();
        let net = NetworkMatrices::build(&a, DEFAULT_Z_REF).unwrap();
        let exc = Excitation::uniform(1);
        let p = radiated_power(&net, &exc);
        assert!((p - 36.6).abs() < 0.8, "{p}");
        let q = quadrature_radiated_power(&a, &exc, PatternModel::default(), SphereGrid::default()).unwrap();
        assert!((q - p).abs() < 0.01 * p, "{q} vs {p}");
    }

    #[test]
    fn quadrature_converges_with_order() {
        let a = DipoleArray::new(
            LAMBDA,
            vec![-0.4 * LAMBDA, 0.0, 0.35 * LAMBDA],
            vec![0.45 * LAMBDA, 0.5 * LAMBDA, 0.4 * LAMBDA],
            LAMBDA / 2000.0,
            5.8e7,
        )
        .unwrap();
        let exc = Excitation::new(vec![
            Complex64::new(1.0, 0.0),
            Complex64::from_polar(0.8, 2.0),
            Complex64::from_polar(0.5, -1.0),
        ])
        .unwrap();
        let coarse = quadrature_radiated_power(&a, &exc, PatternModel::PerElement, SphereGrid::default()).unwrap();
        let fine = quadrature_radiated_power(
            &a,
            &exc,
            PatternModel::PerElement,
            SphereGrid { theta_order: 128, phi_points: 256 },
        )
        .unwrap();
        assert!((coarse - fine).abs() < 1e-3 * fine);
    }

    #[test]
    fn budget_is_additive_and_quadratic() {
        let a = DipoleArray::new(LAMBDA, vec![0.0, 0.3 * LAMBDA], vec![0.46 * LAMBDA; 2], LAMBDA / 2000.0, 5.8e7)
            .unwrap();
        let net = NetworkMatrices::build(&a, DEFAULT_Z_REF).unwrap();
        let exc = Excitation::new(vec![Complex64::new(0.7, 0.1), Complex64::new(-0.2, 0.9)]).unwrap();
        let b = input_power(&net, &exc);
        assert!((b.p_in - (b.p_rad + b.p_loss)).abs() <= 1e-12 * b.p_in);
        let b2 = input_power(&net, &exc.scaled(Complex64::new(2.0, 0.0)).unwrap());
        assert!((b2.p_in - 4.0 * b.p_in).abs() < 1e-12 * b2.p_in);
        assert!((b2.p_loss - 4.0 * b.p_loss).abs() < 1e-12 * b2.p_loss);
        assert!((b2.p_rad - 4.0 * b.p_rad).abs() < 1e-12 * b2.p_rad);
    }

    #[test]
    fn lossless_network_has_no_loss_power() {
        let a = half_wave();
        let z = crate::network::impedance_matrix(&a).unwrap();
        let net = NetworkMatrices::from_parts(z, vec![0.0], DEFAULT_Z_REF).unwrap();
        let b = input_power(&net, &Excitation::uniform(1));
        assert_eq!(b.p_loss, 0.0);
        assert_eq!(b.p_in, b.p_rad);
    }
}
