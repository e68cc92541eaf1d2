//! Smooth global unit tangent fields and their covariant derivatives.

mod catalog;

use std::cell::RefCell;
use std::fmt::Debug;

pub use catalog::{
    circle_field, hopf_field, natural_field, perturbed_field, projected_hopf_field, PerturbedField,
    ProjectedHopfField, RotationField,
};

use crate::error::{Error, Result};
use crate::geometry::{adapted_frame, central_differences, AdaptedFrame, Hypersurface, TangentPoint, FD_STEP};
use crate::linalg::{vector, SquareMatrix};
use crate::scalar::Real;

/// Tolerance on `|frame.last - v(x)|` accepted by [`covariant_matrix`].
pub const FRAME_MATCH_TOL: f64 = 1e-8;

/// A smooth unit tangent vector field on a hypersurface.
pub trait UnitField<T: Real>: Send + Sync + Debug {
    fn name(&self) -> String;

    /// `v(x)` in ambient coordinates.
    fn value(&self, p: &TangentPoint<T>) -> Result<Vec<T>>;

    /// `∂(v∘φ)/∂u_i` for each chart parameter `u_i`, i.e. the ambient
    /// directional derivative of `v` along the coordinate vector `∂_i`.
    ///
    /// The default differentiates [`UnitField::value`] by central differences
    /// over the chart parameters.
    fn param_derivatives(&self, surface: &Hypersurface<T>, p: &TangentPoint<T>) -> Result<Vec<Vec<T>>> {
        fd_param_derivatives(self, surface, p)
    }
}

/// Central-difference version of [`UnitField::param_derivatives`].
pub fn fd_param_derivatives<T: Real, F: UnitField<T> + ?Sized>(
    field: &F,
    surface: &Hypersurface<T>,
    p: &TangentPoint<T>,
) -> Result<Vec<Vec<T>>> {
    let chart = surface
        .charts()
        .get(p.chart)
        .ok_or_else(|| Error::input(format!("no chart with id {}", p.chart)))?;
    let steps: Vec<T> = chart.domain().iter().map(|a| a.extent() * T::lit(FD_STEP)).collect();
    let failure = RefCell::new(None);
    let derivs = central_differences(&p.params, &steps, |u| {
        match surface.eval_point_light(p.chart, u).and_then(|q| field.value(&q)) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                vec![T::zero(); p.position.len()]
            }
        }
    });
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(derivs),
    }
}

/// Adapted frame at a point together with the covariant-derivative matrix
/// `a_AB = ⟨∇_{e_B} v, e_A⟩`.
#[derive(Debug, Clone)]
pub struct PointFrame<T> {
    pub frame: AdaptedFrame<T>,
    pub a: SquareMatrix<T>,
}

impl<T: Real> PointFrame<T> {
    pub fn h(&self) -> &SquareMatrix<T> {
        &self.frame.h
    }
}

/// `a_AB = ⟨∇_{e_B} v, e_A⟩` in the given adapted frame.
///
/// `∇_X v` is the tangential part of the ambient derivative `D_X v`; since
/// every `e_A` is tangent the projection drops out of the inner products.
pub fn covariant_matrix<T: Real>(
    surface: &Hypersurface<T>,
    field: &dyn UnitField<T>,
    p: &TangentPoint<T>,
    frame: &AdaptedFrame<T>,
) -> Result<SquareMatrix<T>> {
    let v = field.value(p)?;
    let mismatch = vector::norm(&vector::sub(&v, frame.field_value()));
    if mismatch > T::lit(FRAME_MATCH_TOL) {
        return Err(Error::input(format!("frame does not end with the field value (off by {mismatch})")));
    }
    let derivs = field.param_derivatives(surface, p)?;
    let d = frame.dim();
    let along: Vec<Vec<T>> = frame
        .coords
        .iter()
        .map(|c| {
            let mut out = vec![T::zero(); v.len()];
            for (ci, dv) in c.iter().zip(&derivs) {
                vector::axpy(&mut out, *ci, dv);
            }
            out
        })
        .collect();
    Ok(SquareMatrix::from_fn(d, |a, b| vector::dot(&along[b], &frame.vectors[a])))
}

/// Adapted frame for `field` at `p` with both `h` and `a` filled in.
pub fn point_frame<T: Real>(
    surface: &Hypersurface<T>,
    field: &dyn UnitField<T>,
    p: &TangentPoint<T>,
) -> Result<PointFrame<T>> {
    let v = field.value(p)?;
    let frame = adapted_frame(p, &v)?;
    let a = covariant_matrix(surface, field, p, &frame)?;
    Ok(PointFrame { frame, a })
}
