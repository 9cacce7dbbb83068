//! Reference designs and simple array builders.

use num_complex::Complex64;

use crate::em::{DipoleArray, Direction, Excitation};
use crate::error::Result;

/// Copper, in S/m.
pub const COPPER_CONDUCTIVITY: f64 = 5.8e7;

/// An array, its feed and the direction it is meant to radiate toward.
#[derive(Debug, Clone, PartialEq)]
pub struct Design {
    pub array: DipoleArray,
    pub excitation: Excitation,
    pub direction: Direction,
}

/// The published four-element realized-gain design at λ = 30 mm, copper
/// wire of radius λ/2000.
///
/// Its main beam points along −x (`φ = 180°`) under this crate's phase
/// convention.
pub fn table_one() -> Design {
    let lambda = 0.03;
    let array = DipoleArray::new(
        lambda,
        vec![-16.13e-3, -6.24e-3, 5.78e-3, 16.13e-3],
        [0.44, 0.45, 0.45, 0.48].iter().map(|l| l * lambda).collect(),
        lambda / 2000.0,
        COPPER_CONDUCTIVITY,
    )
    .expect("reference geometry is valid");
    let excitation = Excitation::from_polar(
        &[0.95, 1.0, 0.96, 0.75],
        &[52.47f64, -156.37, 0.0, 149.11].map(f64::to_radians),
    )
    .expect("reference currents are valid");
    Design {
        array,
        excitation,
        direction: Direction::back_fire(),
    }
}

/// `n` equal dipoles at uniform `spacing`, centred on `centre`; all in
/// metres.
pub fn uniform_line(
    n: usize,
    spacing: f64,
    length: f64,
    centre: f64,
    like: &DipoleArray,
) -> Result<DipoleArray> {
    let positions = (0..n)
        .map(|i| centre + (i as f64 - 0.5 * (n as f64 - 1.0)) * spacing)
        .collect();
    DipoleArray::new(
        like.wavelength(),
        positions,
        vec![length; n],
        like.wire_radius(),
        like.conductivity(),
    )
}

/// Unit currents with the progressive phase `−k·x_n·sinθ·cosφ` that makes
/// every element add in phase toward `dir`.
pub fn steered_currents(array: &DipoleArray, dir: Direction) -> Excitation {
    let k = array.wavenumber();
    let u = dir.axial_cosine();
    Excitation::new(
        array
            .positions()
            .iter()
            .map(|x| Complex64::from_polar(1.0, -k * x * u))
            .collect(),
    )
    .expect("unit currents are non-zero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::em::{radiation_intensity, PatternModel};

    #[test]
    fn table_one_spans_about_a_wavelength() {
        let d = table_one();
        let x = d.array.positions();
        assert!(((x[3] - x[0]) - 32.26e-3).abs() < 1e-12);
        assert_eq!(d.excitation.len(), 4);
    }

    #[test]
    fn steering_maximises_the_array_factor() {
        let d = table_one();
        let a = uniform_line(4, 0.3 * 0.03, 0.015, 0.0, &d.array).unwrap();
        let dir = Direction::from_degrees(90.0, 40.0).unwrap();
        let exc = steered_currents(&a, dir);
        let u = radiation_intensity(&a, &exc, dir, PatternModel::default());
        for deg in [0.0, 20.0, 60.0, 90.0, 180.0] {
            let other = Direction::from_degrees(90.0, deg).unwrap();
            assert!(radiation_intensity(&a, &exc, other, PatternModel::default()) <= u + 1e-12);
        }
    }
}
