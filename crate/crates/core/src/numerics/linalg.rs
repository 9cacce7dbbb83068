use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Largest system the solver accepts.
pub const MAX_DIM: usize = 64;

/// Relative pivot threshold below which a matrix is declared singular.
const PIVOT_TOLERANCE: f64 = 1e-14;

/// Solves `A·x = b` by LU factorisation with partial pivoting.
///
/// A pivot smaller than `1e-14 · max row norm` of `A` is reported as
/// [`Error::Singular`].
pub fn solve_complex_linear(a: &CMatrix, b: &CVector) -> Result<CVector> {
    let mut x = b.clone();
    let lu = LuFactors::new(a)?;
    if b.len() != lu.n {
        return Err(Error::InvalidArgument(format!(
            "right-hand side has length {}, matrix is {}×{}",
            b.len(),
            lu.n,
            lu.n
        )));
    }
    lu.solve_in_place(x.as_mut_slice());
    Ok(x)
}

/// Solves `A·X = B` column by column, sharing one factorisation.
pub fn solve_complex_matrix(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    let lu = LuFactors::new(a)?;
    if b.nrows() != lu.n {
        return Err(Error::InvalidArgument("row count mismatch".into()));
    }
    let mut x = b.clone();
    for mut col in x.column_iter_mut() {
        lu.solve_in_place(col.as_mut_slice());
    }
    Ok(x)
}

struct LuFactors {
    n: usize,
    /// Row-major packed L (unit diagonal, below) and U (on and above).
    lu: Vec<Complex64>,
    perm: Vec<usize>,
}

impl LuFactors {
    fn new(a: &CMatrix) -> Result<Self> {
        let n = a.nrows();
        if n != a.ncols() {
            return Err(Error::InvalidArgument(format!(
                "matrix must be square, got {}×{}",
                a.nrows(),
                a.ncols()
            )));
        }
        if n == 0 || n > MAX_DIM {
            return Err(Error::InvalidArgument(format!(
                "matrix dimension must lie in 1..={MAX_DIM}, got {n}"
            )));
        }
        let max_row_norm = (0..n)
            .map(|i| a.row(i).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0, f64::max);
        let threshold = PIVOT_TOLERANCE * max_row_norm;

        let mut lu: Vec<Complex64> = (0..n * n).map(|k| a[(k / n, k % n)]).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let (pivot_row, pivot_mag) = (col..n)
                .map(|r| (r, lu[r * n + col].norm()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(pivot_mag >= threshold) || pivot_mag == 0.0 {
                return Err(Error::Singular {
                    pivot: pivot_mag,
                    threshold,
                });
            }
            if pivot_row != col {
                for k in 0..n {
                    lu.swap(col * n + k, pivot_row * n + k);
                }
                perm.swap(col, pivot_row);
            }
            let pivot = lu[col * n + col];
            for r in col + 1..n {
                let factor = lu[r * n + col] / pivot;
                lu[r * n + col] = factor;
                for k in col + 1..n {
                    let upper = lu[col * n + k];
                    lu[r * n + k] -= factor * upper;
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    fn solve_in_place(&self, x: &mut [Complex64]) {
        let n = self.n;
        let permuted: Vec<Complex64> = self.perm.iter().map(|&p| x[p]).collect();
        x.copy_from_slice(&permuted);
        for r in 0..n {
            let mut acc = x[r];
            for k in 0..r {
                acc -= self.lu[r * n + k] * x[k];
            }
            x[r] = acc;
        }
        for r in (0..n).rev() {
            let mut acc = x[r];
            for k in r + 1..n {
                acc -= self.lu[r * n + k] * x[k];
            }
            x[r] = acc / self.lu[r * n + r];
        }
    }
}
