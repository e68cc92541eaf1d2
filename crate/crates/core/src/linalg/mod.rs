//! Small dense kernels: determinants, minors, wedge norms and the
//! coefficients of `det(H + tA)`.

mod eigen;
mod matrix;
mod minors;
mod poly;
pub mod vector;

pub use eigen::symmetric_eigen;
pub use matrix::SquareMatrix;
pub use minors::{
    binomial, laplace_coefficient, minor_det, minor_inequality_check, minor_square_sum, wedge_max_norm, MinorIndex,
};
pub use poly::{det_poly_coeffs, interpolation_nodes, CoefficientVector, MAX_POLY_DIM};
