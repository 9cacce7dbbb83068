//! Impedance matrix construction, conductor loss, impedance-to-scattering
//! conversion and active reflection coefficients.

mod impedance;
mod scattering;

use num_complex::Complex64;

pub use impedance::{
    impedance_matrix, loss_resistance, mutual_impedance, mutual_impedance_numeric, self_impedance,
};
pub use scattering::{active_reflection, s_to_z, z_to_s};

use crate::em::{DipoleArray, Excitation};
use crate::error::Result;
use crate::numerics::CMatrix;

/// Default feed-line reference impedance in ohms.
pub const DEFAULT_Z_REF: f64 = 50.0;

/// Network description of an array at one frequency.
#[derive(Debug, Clone)]
pub struct NetworkMatrices {
    /// Lossless (radiation-only) impedance matrix `Z′`.
    pub z: CMatrix,
    /// Conductor loss resistance of each element; the loss matrix is
    /// `diag(r_loss)`.
    pub r_loss: Vec<f64>,
    /// Scattering matrix of the terminals, `Z′ + diag(r_loss)`, at `z_ref`.
    pub s: CMatrix,
    pub z_ref: f64,
}

impl NetworkMatrices {
    pub fn build(array: &DipoleArray, z_ref: f64) -> Result<Self> {
        let z = impedance_matrix(array)?;
        let r_loss = array
            .lengths()
            .iter()
            .map(|&l| loss_resistance(l, array.wire_radius(), array.wavelength(), array.conductivity()))
            .collect();
        Self::from_parts(z, r_loss, z_ref)
    }

    /// Assembles the matrices from a lossless `z` and per-element loss.
    pub fn from_parts(z: CMatrix, r_loss: Vec<f64>, z_ref: f64) -> Result<Self> {
        let mut net = Self {
            s: CMatrix::zeros(0, 0),
            z,
            r_loss,
            z_ref,
        };
        net.s = z_to_s(&net.terminal_impedance(), z_ref)?;
        Ok(net)
    }

    pub fn len(&self) -> usize {
        self.z.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.z.nrows() == 0
    }

    /// Impedance seen at the feed terminals: `Z′ + diag(R_loss)`.
    pub fn terminal_impedance(&self) -> CMatrix {
        let mut zt = self.z.clone();
        for (i, r) in self.r_loss.iter().enumerate() {
            zt[(i, i)] += Complex64::new(*r, 0.0);
        }
        zt
    }

    /// Combined active reflection coefficient of every port.
    pub fn active_reflection(&self, exc: &Excitation) -> Result<Vec<Option<Complex64>>> {
        active_reflection(&self.s, exc)
    }

    /// Active input impedances `(Z·i)_n / i_n` at the terminals.
    pub fn active_impedance(&self, exc: &Excitation) -> Vec<Option<Complex64>> {
        let zt = self.terminal_impedance();
        let i = exc.currents();
        (0..self.len())
            .map(|n| {
                if i[n].norm() == 0.0 {
                    None
                } else {
                    let v: Complex64 = zt.row(n).iter().zip(i).map(|(z, c)| z * c).sum();
                    Some(v / i[n])
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    const LAMBDA: f64 = 0.03;

    fn table_one() -> DipoleArray {
        DipoleArray::new(
            LAMBDA,
            vec![-16.13e-3, -6.24e-3, 5.78e-3, 16.13e-3],
            [0.44, 0.45, 0.45, 0.48].iter().map(|l| l * LAMBDA).collect(),
            LAMBDA / 2000.0,
            5.8e7,
        )
        .unwrap()
    }

    #[test]
    fn single_element_matrix_is_self_impedance() {
        let a = DipoleArray::new(LAMBDA, vec![0.0], vec![0.5 * LAMBDA], LAMBDA / 2000.0, 5.8e7).unwrap();
        let z = impedance_matrix(&a).unwrap();
        assert_eq!(z.shape(), (1, 1));
        assert_eq!(z[(0, 0)], self_impedance(0.5 * LAMBDA, LAMBDA / 2000.0, LAMBDA).unwrap());
    }

    #[test]
    fn identical_pair_is_symmetric() {
        let a = DipoleArray::new(LAMBDA, vec![0.0, 0.2 * LAMBDA], vec![0.47 * LAMBDA; 2], LAMBDA / 2000.0, 5.8e7)
            .unwrap();
        let z = impedance_matrix(&a).unwrap();
        assert_eq!(z[(0, 0)], z[(1, 1)]);
        assert_eq!(z[(0, 1)], z[(1, 0)]);
    }

    #[test]
    fn table_one_diagonal_resistances_positive() {
        let z = impedance_matrix(&table_one()).unwrap();
        assert!((0..4).all(|i| z[(i, i)].re > 0.0));
    }

    #[test]
    fn build_applies_loss_to_terminals() {
        let net = NetworkMatrices::build(&table_one(), DEFAULT_Z_REF).unwrap();
        assert!(net.r_loss.iter().all(|&r| r > 0.0));
        let back = s_to_z(&net.s, net.z_ref).unwrap();
        assert!((back - net.terminal_impedance()).norm() < 1e-9 * net.z.norm());
    }

    fn random_array(gaps: &[f64], lengths: &[f64]) -> Option<DipoleArray> {
        let mut x = 0.0;
        let positions = gaps.iter().map(|g| { x += g * LAMBDA; x }).collect();
        DipoleArray::new(LAMBDA, positions, lengths.iter().map(|l| l * LAMBDA).collect(), LAMBDA / 2000.0, 5.8e7).ok()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn reciprocal_and_passive(
            (gaps, lengths) in (1usize..7).prop_flat_map(|n| (
                prop::collection::vec(0.05f64..1.5, n),
                prop::collection::vec(0.2f64..0.9, n),
            ))
        ) {
            let array = random_array(&gaps, &lengths).unwrap();
            let z = impedance_matrix(&array).unwrap();
            let norm = z.norm();
            prop_assert!((&z - z.transpose()).norm() <= 1e-9 * norm);
            let re = DMatrix::<f64>::from_fn(z.nrows(), z.ncols(), |i, j| z[(i, j)].re);
            let min_eig = re.symmetric_eigen().eigenvalues.min();
            prop_assert!(min_eig >= -1e-8 * norm, "min eigenvalue {min_eig}");
        }
    }
}
