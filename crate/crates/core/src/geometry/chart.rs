use std::fmt::Debug;

use serde::Serialize;

use crate::linalg::{vector, SquareMatrix};
use crate::scalar::Real;

/// Relative finite-difference step, scaled by each axis' extent.
pub const FD_STEP: f64 = 1e-5;

/// One coordinate axis of a chart's parameter box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis<T> {
    pub lo: T,
    pub hi: T,
    /// Periodic axes are sampled with equal weights; the others with Gauss–Legendre.
    pub periodic: bool,
}

impl<T: Real> Axis<T> {
    pub fn open(lo: T, hi: T) -> Self {
        Self { lo, hi, periodic: false }
    }

    pub fn periodic(lo: T, hi: T) -> Self {
        Self { lo, hi, periodic: true }
    }

    pub fn extent(&self) -> T {
        self.hi - self.lo
    }

    pub fn contains(&self, u: T) -> bool {
        if self.periodic {
            u.is_finite()
        } else {
            u > self.lo && u < self.hi
        }
    }
}

/// A smooth map from an open parameter box in `ℝ^m` into `ℝ^{m+1}`.
///
/// Only `position` is required. Catalog charts override the derivative
/// hooks with closed forms; the defaults use central differences.
pub trait Chart<T: Real>: Send + Sync + Debug {
    fn param_dim(&self) -> usize;

    fn domain(&self) -> Vec<Axis<T>>;

    fn position(&self, u: &[T]) -> Vec<T>;

    /// Coordinate tangent vectors `∂x/∂u_i`.
    fn tangents(&self, u: &[T]) -> Vec<Vec<T>> {
        let steps = fd_steps(&self.domain());
        central_differences(u, &steps, |v| self.position(v))
    }

    /// Unit normal in the chart's natural orientation. The default is the
    /// normalized generalized cross product of the tangents.
    fn normal(&self, u: &[T]) -> Vec<T> {
        let cross = generalized_cross(&self.tangents(u));
        vector::normalized(&cross).unwrap_or(cross)
    }

    /// Partial derivatives `∂N/∂u_i` of [`Chart::normal`].
    fn normal_partials(&self, u: &[T]) -> Vec<Vec<T>> {
        let steps = fd_steps(&self.domain());
        central_differences(u, &steps, |v| self.normal(v))
    }
}

pub(crate) fn fd_steps<T: Real>(domain: &[Axis<T>]) -> Vec<T> {
    domain.iter().map(|a| a.extent() * T::lit(FD_STEP)).collect()
}

/// Central differences of a vector-valued `f` along each parameter axis.
pub fn central_differences<T: Real>(u: &[T], steps: &[T], f: impl Fn(&[T]) -> Vec<T>) -> Vec<Vec<T>> {
    let mut probe = u.to_vec();
    (0..u.len())
        .map(|i| {
            let h = steps[i];
            probe[i] = u[i] + h;
            let plus = f(&probe);
            probe[i] = u[i] - h;
            let minus = f(&probe);
            probe[i] = u[i];
            let two_h = h + h;
            plus.iter().zip(&minus).map(|(&p, &m)| (p - m) / two_h).collect()
        })
        .collect()
}

/// The vector `N` with `N_i = det[t_1; …; t_m; e_i]`: orthogonal to all `m`
/// inputs in `ℝ^{m+1}` with `(t_1, …, t_m, N)` positively oriented.
pub fn generalized_cross<T: Real>(tangents: &[Vec<T>]) -> Vec<T> {
    let m = tangents.len();
    let d = m + 1;
    (0..d)
        .map(|i| {
            let mat = SquareMatrix::from_fn(d, |r, c| if r < m { tangents[r][c] } else if c == i { T::one() } else { T::zero() });
            mat.det()
        })
        .collect()
}
