//! Induced-EMF self and mutual impedances of parallel, side-by-side,
//! centre-aligned thin dipoles carrying sinusoidal currents.
//!
//! Impedances are referred to the feed-point (input) currents. With half
//! lengths `h₁`, `h₂`, separation `d` and `k = 2π/λ`, the mutual impedance is
//!
//! ```text
//! Z₂₁ = jη / (4π sin kh₁ sin kh₂) ∫_{−h₂}^{h₂} K(z) sin k(h₂ − |z|) dz
//! K(z) = e^{−jkR₁}/R₁ + e^{−jkR₂}/R₂ − 2 cos kh₁ · e^{−jkR₀}/R₀
//! ```
//!
//! where `R₁,₂ = √(d² + (z ∓ h₁)²)` and `R₀ = √(d² + z²)`. `K` is the exact
//! near field of the first dipole. Every term of the integrand has the form
//! `e^{−jk(R ± w)}/R` after a shift of variable, which integrates to
//! `Ci(u) − j·Si(u)` with `u = k(R ± w)`; [`mutual_impedance`] uses that
//! closed form for any pair of lengths. [`mutual_impedance_numeric`]
//! integrates `K` directly and is kept as an independent cross-check.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::em::{DipoleArray, FREE_SPACE_IMPEDANCE, MU_0, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::numerics::{exp_integral_antiderivative, gauss_legendre, CMatrix, QuadratureRule};

fn check_inputs(length_m: f64, length_n: f64, separation: f64, wavelength: f64) -> Result<()> {
    if !(wavelength > 0.0) {
        return Err(Error::InvalidArgument(format!("wavelength must be positive, got {wavelength}")));
    }
    if !(separation > 0.0) || !separation.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "dipole separation must be positive and finite, got {separation}"
        )));
    }
    for l in [length_m, length_n] {
        if !(l > 0.0 && l < wavelength) {
            return Err(Error::InvalidArgument(format!(
                "dipole length {l} outside (0, {wavelength})"
            )));
        }
    }
    Ok(())
}

/// `R + s·w` with `R = √(d² + w²)`, free of cancellation when `s·w < 0`.
fn radius_plus(d: f64, w: f64, s: f64) -> f64 {
    let r = d.hypot(w);
    if s * w >= 0.0 {
        r + w.abs()
    } else {
        d * d / (r + w.abs())
    }
}

/// Induced-EMF mutual impedance in ohms, closed form.
pub fn mutual_impedance(
    length_m: f64,
    length_n: f64,
    separation: f64,
    wavelength: f64,
) -> Result<Complex64> {
    check_inputs(length_m, length_n, separation, wavelength)?;
    let k = 2.0 * PI / wavelength;
    let (h1, h2, d) = (0.5 * length_m, 0.5 * length_n, separation);
    let j = Complex64::i();

    // ∫₀^{h₂} e^{−jkR_ζ}/R_ζ · e^{−jskz} dz for a source point at z = ζ.
    let partial = |zeta: f64, s: f64| -> Complex64 {
        let w0 = -zeta;
        let w1 = h2 - zeta;
        let e1 = exp_integral_antiderivative(k * radius_plus(d, w1, s));
        let e0 = exp_integral_antiderivative(k * radius_plus(d, w0, s));
        (-j * s * k * zeta).exp() * s * (e1 - e0)
    };
    let term = |zeta: f64| -> Complex64 {
        (j * k * h2).exp() * partial(zeta, 1.0) - (-j * k * h2).exp() * partial(zeta, -1.0)
    };

    let sum = term(h1) + term(-h1) - 2.0 * (k * h1).cos() * term(0.0);
    let scale = FREE_SPACE_IMPEDANCE / (4.0 * PI * (k * h1).sin() * (k * h2).sin());
    Ok(sum * scale)
}

/// Induced-EMF mutual impedance by adaptive Gauss–Legendre integration of the
/// exact near-field kernel.
pub fn mutual_impedance_numeric(
    length_m: f64,
    length_n: f64,
    separation: f64,
    wavelength: f64,
) -> Result<Complex64> {
    check_inputs(length_m, length_n, separation, wavelength)?;
    let k = 2.0 * PI / wavelength;
    let (h1, h2, d) = (0.5 * length_m, 0.5 * length_n, separation);
    let j = Complex64::i();
    let spherical = |r: f64| Complex64::from_polar(1.0 / r, -k * r);
    let integrand = |z: f64| -> Complex64 {
        let r1 = d.hypot(z - h1);
        let r2 = d.hypot(z + h1);
        let r0 = d.hypot(z);
        let kernel = spherical(r1) + spherical(r2) - 2.0 * (k * h1).cos() * spherical(r0);
        kernel * (k * (h2 - z)).sin()
    };

    let rule = gauss_legendre(15)?;
    let coarse = gauss_legendre(7)?;
    let mut breaks = vec![0.0, h2];
    if h1 < h2 {
        breaks.insert(1, h1);
    }
    let tol = 1e-11 / wavelength;
    let integral: Complex64 = breaks
        .windows(2)
        .map(|w| adaptive(&integrand, w[0], w[1], &rule, &coarse, tol, 0))
        .sum();

    let scale = j * FREE_SPACE_IMPEDANCE / (4.0 * PI * (k * h1).sin() * (k * h2).sin());
    Ok(scale * 2.0 * integral)
}

fn panel(f: &impl Fn(f64) -> Complex64, a: f64, b: f64, rule: &QuadratureRule) -> Complex64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(x, w)| f(mid + half * x) * *w)
        .sum::<Complex64>()
        * half
}

fn adaptive(
    f: &impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    rule: &QuadratureRule,
    coarse: &QuadratureRule,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let fine = panel(f, a, b, rule);
    let rough = panel(f, a, b, coarse);
    if (fine - rough).norm() <= tol || depth >= 60 {
        return fine;
    }
    let m = 0.5 * (a + b);
    adaptive(f, a, m, rule, coarse, 0.5 * tol, depth + 1)
        + adaptive(f, m, b, rule, coarse, 0.5 * tol, depth + 1)
}

/// Self impedance: the mutual impedance of a dipole with an identical one
/// displaced by the wire radius.
pub fn self_impedance(length: f64, wire_radius: f64, wavelength: f64) -> Result<Complex64> {
    if !(wire_radius > 0.0 && wire_radius < length) {
        return Err(Error::InvalidArgument(format!(
            "wire radius {wire_radius} must be positive and much smaller than the length {length}"
        )));
    }
    mutual_impedance(length, length, wire_radius, wavelength)
}

/// Skin-effect conductor loss resistance in ohms:
/// `R_s · l / (2πρ)` with `R_s = √(π f μ₀ / σ)`.
pub fn loss_resistance(length: f64, wire_radius: f64, wavelength: f64, conductivity: f64) -> f64 {
    let f = SPEED_OF_LIGHT / wavelength;
    let surface = (PI * f * MU_0 / conductivity).sqrt();
    surface * length / (2.0 * PI * wire_radius)
}

/// Lossless impedance matrix of an array. Symmetric by construction.
pub fn impedance_matrix(array: &DipoleArray) -> Result<CMatrix> {
    let n = array.len();
    let (x, l, lambda) = (array.positions(), array.lengths(), array.wavelength());
    let mut z = CMatrix::zeros(n, n);
    for m in 0..n {
        z[(m, m)] = self_impedance(l[m], array.wire_radius(), lambda)?;
        for q in m + 1..n {
            let zmq = mutual_impedance(l[m], l[q], (x[q] - x[m]).abs(), lambda)?;
            z[(m, q)] = zmq;
            z[(q, m)] = zmq;
        }
    }
    Ok(z)
}
