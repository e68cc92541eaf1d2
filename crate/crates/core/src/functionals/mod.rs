//! Pointwise densities of a unit field and their integrals: energy, bending,
//! volume, the `η_k` curvature integrals and the shape-operator sup constants.

mod density;
mod integrals;
mod sup;

pub use density::{sample_density, DensitySample};
pub use integrals::{
    bending_k, degree_estimate, energy, eta2_minor_form, eta_integral, integrate, integrate_samples,
    phi_t_determinant_check, total_bending, volume_functional, DegreeEstimate, FieldIntegrals, DEGREE_RESIDUAL_WARN,
};
pub use sup::{sup_constants, sup_grid_factor, SupConstants};
