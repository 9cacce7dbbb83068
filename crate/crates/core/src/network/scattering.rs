use num_complex::Complex64;

use crate::em::Excitation;
use crate::error::{Error, Result};
use crate::numerics::{solve_complex_matrix, CMatrix};

/// `S = (Z − z₀I)(Z + z₀I)⁻¹` with the same real reference impedance on every
/// port.
pub fn z_to_s(z: &CMatrix, z_ref: f64) -> Result<CMatrix> {
    if !(z_ref > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "reference impedance must be positive, got {z_ref}"
        )));
    }
    let n = z.nrows();
    let shift = CMatrix::identity(n, n) * Complex64::new(z_ref, 0.0);
    // (Z + z₀I)⁻¹ commutes with (Z − z₀I), so solve from the left.
    solve_complex_matrix(&(z + &shift), &(z - &shift))
}

/// Inverse of [`z_to_s`]: `Z = z₀(I − S)⁻¹(I + S)`.
pub fn s_to_z(s: &CMatrix, z_ref: f64) -> Result<CMatrix> {
    if !(z_ref > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "reference impedance must be positive, got {z_ref}"
        )));
    }
    let n = s.nrows();
    let eye = CMatrix::identity(n, n);
    Ok(solve_complex_matrix(&(&eye - s), &(&eye + s))? * Complex64::new(z_ref, 0.0))
}

/// Combined active reflection coefficients `Γ_n = Σ_m S_nm·I_m / I_n`.
///
/// Ports with `I_n = 0` are unexcited and come back as `None`.
pub fn active_reflection(s: &CMatrix, exc: &Excitation) -> Result<Vec<Option<Complex64>>> {
    let currents = exc.currents();
    if s.nrows() != currents.len() || s.ncols() != currents.len() {
        return Err(Error::InvalidArgument(format!(
            "scattering matrix is {}×{} but the excitation has {} ports",
            s.nrows(),
            s.ncols(),
            currents.len()
        )));
    }
    if currents.iter().all(|c| c.norm() == 0.0) {
        return Err(Error::DegenerateExcitation("all ports are unexcited".into()));
    }
    Ok(currents
        .iter()
        .enumerate()
        .map(|(n, &i_n)| {
            if i_n.norm() == 0.0 {
                return None;
            }
            let b: Complex64 = s.row(n).iter().zip(currents).map(|(s_nm, i_m)| s_nm * i_m).sum();
            Some(b / i_n)
        })
        .collect())
}
