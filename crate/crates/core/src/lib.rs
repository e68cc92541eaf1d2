//! Energy, bending, volume and curvature-integral functionals of unit vector
//! fields on closed hypersurfaces `M^{2n+1} ⊂ ℝ^{2n+2}`, with numerical checks
//! of the lower bounds that relate them to the degree of the Gauss map.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases at the
//! crate root fix the scalar to `f64`.

pub mod error;
pub mod fields;
pub mod functionals;
pub mod geometry;
pub mod linalg;
pub mod scalar;
pub mod sum;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Matrix = linalg::SquareMatrix<f64>;
pub type Coefficients = linalg::CoefficientVector<f64>;
pub type Surface = geometry::Hypersurface<f64>;
pub type Point = geometry::TangentPoint<f64>;
pub type Grid = geometry::QuadratureGrid<f64>;
pub type Frame = fields::PointFrame<f64>;
pub type Integrals = functionals::FieldIntegrals<f64>;
pub type Sups = functionals::SupConstants<f64>;
pub type Degree = functionals::DegreeEstimate<f64>;
pub type Check = verify::BoundCheck<f64>;
pub type Report = verify::VerificationReport<f64>;
