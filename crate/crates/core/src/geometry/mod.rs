//! Parametrized closed hypersurfaces: charts, Gauss map, shape operator,
//! adapted frames and quadrature grids.

mod catalog;
mod chart;
mod frame;
mod quadrature;
mod surface;

pub use catalog::{EllipsoidChart, SphereChart, TubeTorusChart};
pub use chart::{central_differences, generalized_cross, Axis, Chart, FD_STEP};
pub use frame::{
    adapted_frame, principal_frame, shape_operator, AdaptedFrame, PrincipalFrame, ShapeOperator, FRAME_INPUT_TOL,
};
pub use quadrature::{build_grid, gauss_legendre, AxisRule, GridNode, QuadratureGrid, MIN_NODES_PER_AXIS};
pub use surface::{Hypersurface, SurfaceKind, SurfaceMeta, TangentPoint, MIN_TANGENT_CONDITION};

use crate::scalar::Real;

/// `vol(S^{2n+1}) = 2π^{n+1} / n!`.
pub fn unit_sphere_volume<T: Real>(n: usize) -> T {
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    T::lit(2.0 * std::f64::consts::PI.powi(n as i32 + 1) / fact)
}
