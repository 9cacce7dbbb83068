//! Special functions, quadrature rules and a small dense complex solver.

mod linalg;
mod quadrature;
mod special;

pub use linalg::{solve_complex_linear, solve_complex_matrix, CMatrix, CVector, MAX_DIM};
pub use quadrature::{gauss_legendre, QuadratureRule, MAX_ORDER};
pub use special::{cos_integral, sin_integral, EULER_GAMMA};

pub(crate) use special::exp_integral_antiderivative;
