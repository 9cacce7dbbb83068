//! Sine and cosine integrals.
//!
//! `Si(x) = ∫₀ˣ sin t / t dt` and `Ci(x) = γ + ln x + ∫₀ˣ (cos t − 1) / t dt`.
//!
//! Both are evaluated by their Maclaurin series for `|x| ≤ 4` and, beyond that,
//! through the continued fraction for the complex exponential integral
//! `E₁(ix)`, which converges for every `x > 0` and gives full double precision
//! at the switch point.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_LIMIT: f64 = 4.0;
const EPS: f64 = 1e-16;
const MAX_TERMS: usize = 200;

/// Sine integral `Si(x)`. Odd in `x`; total on finite reals.
pub fn sin_integral(x: f64) -> f64 {
    let ax = x.abs();
    let value = if ax == 0.0 {
        0.0
    } else if ax <= SERIES_LIMIT {
        si_series(ax)
    } else {
        let (_, si) = cisi_continued_fraction(ax);
        si
    };
    if x < 0.0 {
        -value
    } else {
        value
    }
}

/// Cosine integral `Ci(x)` for `x > 0`.
pub fn cos_integral(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "cosine integral requires a finite x > 0, got {x}"
        )));
    }
    Ok(ci_unchecked(x))
}

/// `Ci(u) − j·Si(u)` for `u > 0`: the antiderivative of `e^{−ju}/u`.
///
/// This is the building block of the closed-form induced-EMF impedance.
pub(crate) fn exp_integral_antiderivative(u: f64) -> Complex64 {
    debug_assert!(u > 0.0);
    if u <= SERIES_LIMIT {
        Complex64::new(ci_series(u), -si_series(u))
    } else {
        let (ci, si) = cisi_continued_fraction(u);
        Complex64::new(ci, -si)
    }
}

fn ci_unchecked(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        ci_series(x)
    } else {
        cisi_continued_fraction(x).0
    }
}

fn si_series(x: f64) -> f64 {
    // Σ (−1)ⁿ x^{2n+1} / ((2n+1)·(2n+1)!)
    let x2 = x * x;
    let mut term = x; // x^{2n+1}/(2n+1)!
    let mut sum = x;
    for n in 1..MAX_TERMS {
        let k = (2 * n) as f64;
        term *= -x2 / (k * (k + 1.0));
        let contrib = term / (k + 1.0);
        sum += contrib;
        if contrib.abs() < EPS * sum.abs() {
            break;
        }
    }
    sum
}

fn ci_series(x: f64) -> f64 {
    // γ + ln x + Σ_{n≥1} (−1)ⁿ x^{2n} / (2n·(2n)!)
    let x2 = x * x;
    let mut term = 1.0; // x^{2n}/(2n)!
    let mut sum = 0.0;
    for n in 1..MAX_TERMS {
        let k = (2 * n) as f64;
        term *= -x2 / ((k - 1.0) * k);
        let contrib = term / k;
        sum += contrib;
        if contrib.abs() < EPS * (sum.abs() + EPS) {
            break;
        }
    }
    EULER_GAMMA + x.ln() + sum
}

/// Modified Lentz evaluation of `E₁(ix)`; returns `(Ci(x), Si(x))`.
fn cisi_continued_fraction(x: f64) -> (f64, f64) {
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = Complex64::new(1.0, 0.0) / b;
    let mut h = d;
    for i in 2..MAX_TERMS {
        let a = -(((i - 1) * (i - 1)) as f64);
        b += Complex64::new(2.0, 0.0);
        d = Complex64::new(1.0, 0.0) / (d * a + b);
        c = b + Complex64::new(a, 0.0) / c;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < EPS {
            break;
        }
    }
    h *= Complex64::new(x.cos(), -x.sin());
    (-h.re, std::f64::consts::FRAC_PI_2 + h.im)
}
