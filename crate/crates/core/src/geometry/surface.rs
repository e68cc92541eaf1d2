use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::catalog::{EllipsoidChart, SphereChart, TubeTorusChart};
use super::chart::Chart;
use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigen, vector, SquareMatrix};
use crate::scalar::Real;

/// A chart point is singular when the smallest singular value of its tangent
/// basis falls below this fraction of the largest one.
///
/// The test is per direction rather than on `√det g`: deep in the corner of a
/// hyperspherical box the area element is a product of many small sines and
/// can drop below any fixed floor at perfectly regular points.
pub const MIN_TANGENT_CONDITION: f64 = 1e-12;

/// Which catalog family a surface belongs to.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SurfaceKind<T> {
    RoundSphere { radius: T },
    Ellipsoid { semi_axes: Vec<T> },
    TubeTorus { major: T, minor: T },
    Custom,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceMeta<T> {
    pub name: String,
    pub kind: SurfaceKind<T>,
    /// Known Gauss-map degree, when the family fixes it.
    pub expected_degree: Option<i64>,
}

/// Closed hypersurface `M^{2n+1} ⊂ ℝ^{2n+2}` given by an atlas of charts
/// whose images are disjoint up to measure zero.
#[derive(Clone)]
pub struct Hypersurface<T> {
    n: usize,
    charts: Vec<Arc<dyn Chart<T>>>,
    /// `+1` keeps each chart's normal, `-1` flips it.
    orientation: T,
    meta: SurfaceMeta<T>,
}

impl<T: fmt::Debug> fmt::Debug for Hypersurface<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypersurface")
            .field("n", &self.n)
            .field("charts", &self.charts.len())
            .field("orientation", &self.orientation)
            .field("meta", &self.meta)
            .finish()
    }
}

impl<T: Real> Hypersurface<T> {
    pub fn new(n: usize, charts: Vec<Arc<dyn Chart<T>>>, meta: SurfaceMeta<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("hypersurface dimension 2n+1 needs n >= 1"));
        }
        if charts.is_empty() {
            return Err(Error::input("a hypersurface needs at least one chart"));
        }
        if let Some(bad) = charts.iter().find(|c| c.param_dim() != 2 * n + 1 || c.domain().len() != 2 * n + 1) {
            return Err(Error::input(format!(
                "chart parameter dimension {} does not match 2n+1 = {}",
                bad.param_dim(),
                2 * n + 1
            )));
        }
        Ok(Self { n, charts, orientation: T::one(), meta })
    }

    /// `S^{2n+1}(r)` with the outward normal.
    pub fn round_sphere(n: usize, radius: T) -> Result<Self> {
        if !(radius > T::zero() && radius.is_finite()) {
            return Err(Error::input("sphere radius must be positive"));
        }
        let chart: Arc<dyn Chart<T>> = Arc::new(SphereChart::new(2 * n + 1, radius));
        Self::new(
            n,
            vec![chart],
            SurfaceMeta {
                name: format!("sphere(n={n}, r={radius})"),
                kind: SurfaceKind::RoundSphere { radius },
                expected_degree: Some(1),
            },
        )
    }

    /// Ellipsoid in `ℝ^{2n+2}` with the given semi-axes and outward normal.
    pub fn ellipsoid(semi_axes: Vec<T>) -> Result<Self> {
        let d = semi_axes.len();
        if d < 4 || d % 2 == 1 {
            return Err(Error::input("ellipsoid needs an even number (>= 4) of semi-axes"));
        }
        if semi_axes.iter().any(|&a| !(a > T::zero() && a.is_finite())) {
            return Err(Error::input("ellipsoid semi-axes must be positive"));
        }
        let name = format!(
            "ellipsoid({})",
            semi_axes.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
        );
        let chart: Arc<dyn Chart<T>> = Arc::new(EllipsoidChart::new(semi_axes.clone()));
        Self::new(
            d / 2 - 1,
            vec![chart],
            SurfaceMeta { name, kind: SurfaceKind::Ellipsoid { semi_axes }, expected_degree: Some(1) },
        )
    }

    /// Tube torus `S¹ × S²` in `ℝ⁴` (core radius `major`, tube radius `minor`).
    pub fn tube_torus(major: T, minor: T) -> Result<Self> {
        if !(minor > T::zero() && major > minor && major.is_finite()) {
            return Err(Error::input("tube torus needs 0 < rho < R"));
        }
        let chart: Arc<dyn Chart<T>> = Arc::new(TubeTorusChart::new(major, minor));
        Self::new(
            1,
            vec![chart],
            SurfaceMeta {
                name: format!("tube-torus(R={major}, rho={minor})"),
                kind: SurfaceKind::TubeTorus { major, minor },
                expected_degree: Some(0),
            },
        )
    }

    /// Same surface with the opposite normal.
    pub fn reversed(mut self) -> Self {
        self.orientation = -self.orientation;
        if let Some(d) = self.meta.expected_degree.as_mut() {
            // h ↦ -h has odd size, so ∫ det h changes sign
            *d = -*d;
        }
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Intrinsic dimension `m = 2n + 1`.
    #[inline]
    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        2 * self.n + 2
    }

    pub fn charts(&self) -> &[Arc<dyn Chart<T>>] {
        &self.charts
    }

    pub fn meta(&self) -> &SurfaceMeta<T> {
        &self.meta
    }

    pub fn name(&self) -> &str {
        &self.meta.name
    }

    pub fn orientation(&self) -> T {
        self.orientation
    }

    pub fn is_round_sphere(&self) -> bool {
        matches!(self.meta.kind, SurfaceKind::RoundSphere { .. })
    }

    pub fn sphere_radius(&self) -> Option<T> {
        match self.meta.kind {
            SurfaceKind::RoundSphere { radius } => Some(radius),
            _ => None,
        }
    }

    /// Evaluates position, tangent basis, metric, normal and `∂N/∂u_i`.
    pub fn eval_point(&self, chart: usize, params: &[T]) -> Result<TangentPoint<T>> {
        self.eval_impl(chart, params, true)
    }

    /// Like [`eval_point`](Self::eval_point) but leaves `normal_partials` empty.
    pub fn eval_point_light(&self, chart: usize, params: &[T]) -> Result<TangentPoint<T>> {
        self.eval_impl(chart, params, false)
    }

    fn eval_impl(&self, chart_id: usize, params: &[T], partials: bool) -> Result<TangentPoint<T>> {
        let chart = self
            .charts
            .get(chart_id)
            .ok_or_else(|| Error::input(format!("no chart with id {chart_id}")))?;
        let domain = chart.domain();
        if params.len() != domain.len() || !params.iter().zip(&domain).all(|(&u, ax)| ax.contains(u)) {
            return Err(Error::input(format!("parameters {params:?} outside chart {chart_id} domain")));
        }
        let position = chart.position(params);
        let tangents = chart.tangents(params);
        let m = tangents.len();
        let metric = SquareMatrix::from_fn(m, |i, j| vector::dot(&tangents[i], &tangents[j]));
        let det_g = metric.det();
        let area_element = if det_g > T::zero() { det_g.sqrt() } else { T::zero() };
        let (eig, _) = symmetric_eigen(&metric)?;
        let (hi, lo) = (eig[0].max(T::zero()).sqrt(), eig[m - 1].max(T::zero()).sqrt());
        if !(area_element > T::zero() && lo >= T::lit(MIN_TANGENT_CONDITION) * hi) {
            return Err(Error::ChartSingularity {
                chart: chart_id,
                params: params.iter().map(|u| u.to_f64_lossy()).collect(),
                area_element: area_element.to_f64_lossy(),
            });
        }
        let normal = vector::scaled(&chart.normal(params), self.orientation);
        let normal_partials = if partials {
            chart.normal_partials(params).iter().map(|d| vector::scaled(d, self.orientation)).collect()
        } else {
            Vec::new()
        };
        Ok(TangentPoint {
            chart: chart_id,
            params: params.to_vec(),
            position,
            tangents,
            normal,
            normal_partials,
            metric,
            area_element,
        })
    }
}

/// A point of `M` with its chart data.
#[derive(Debug, Clone)]
pub struct TangentPoint<T> {
    pub chart: usize,
    pub params: Vec<T>,
    pub position: Vec<T>,
    /// Coordinate tangent vectors `∂x/∂u_i` in ambient coordinates.
    pub tangents: Vec<Vec<T>>,
    /// Unit normal `N(x)`, the value of the Gauss map.
    pub normal: Vec<T>,
    /// `∂N/∂u_i`; empty for light evaluations.
    pub normal_partials: Vec<Vec<T>>,
    pub metric: SquareMatrix<T>,
    pub area_element: T,
}

impl<T: Real> TangentPoint<T> {
    /// Coordinates `c` of a tangent vector `x = Σ c_i ∂x/∂u_i`.
    pub fn coords(&self, x: &[T]) -> Result<Vec<T>> {
        let rhs: Vec<T> = self.tangents.iter().map(|t| vector::dot(t, x)).collect();
        self.metric.solve(&rhs)
    }

    /// Ambient vector with the given coordinates.
    pub fn from_coords(&self, c: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.position.len()];
        for (ci, t) in c.iter().zip(&self.tangents) {
            vector::axpy(&mut out, *ci, t);
        }
        out
    }

    /// Orthogonal projection of an ambient vector onto `T_xM`.
    pub fn project_tangent(&self, x: &[T]) -> Vec<T> {
        let mut out = x.to_vec();
        vector::reject_unit(&mut out, &self.normal);
        out
    }

    pub fn has_normal_partials(&self) -> bool {
        !self.normal_partials.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_point_is_radial() {
        let s = Hypersurface::round_sphere(1, 1.0_f64).unwrap();
        let p = s.eval_point(0, &[0.8, 2.1, 1.0]).unwrap();
        assert!((vector::norm(&p.position) - 1.0).abs() < 1e-14);
        for (x, nx) in p.position.iter().zip(&p.normal) {
            assert!((x - nx).abs() < 1e-14);
        }
    }

    #[test]
    fn scaled_sphere_metric() {
        let u = [0.8, 2.1, 1.0];
        let p1 = Hypersurface::round_sphere(1, 1.0_f64).unwrap().eval_point(0, &u).unwrap();
        let p2 = Hypersurface::round_sphere(1, 2.0_f64).unwrap().eval_point(0, &u).unwrap();
        for (x, n) in p2.position.iter().zip(&p2.normal) {
            assert!((x / 2.0 - n).abs() < 1e-14);
        }
        let diff = p2.metric.add_scaled(-4.0, &p1.metric).unwrap();
        assert!(diff.max_abs() < 1e-13);
        assert!((p2.area_element - 8.0 * p1.area_element).abs() < 1e-13);
    }

    #[test]
    fn torus_normal_is_unit_and_orthogonal() {
        let s = Hypersurface::tube_torus(3.0_f64, 1.0).unwrap();
        let p = s.eval_point(0, &[1.3, 0.4, 5.0]).unwrap();
        assert!((vector::norm(&p.normal) - 1.0).abs() < 1e-12);
        for t in &p.tangents {
            assert!(vector::dot(t, &p.normal).abs() < 1e-10);
        }
    }

    #[test]
    fn singular_and_out_of_domain_points() {
        let s = Hypersurface::round_sphere(1, 1.0_f64).unwrap();
        assert!(matches!(s.eval_point(0, &[0.0, 1.0, 1.0]), Err(Error::Input(_))));
        assert!(matches!(s.eval_point(0, &[1.0, 1.0]), Err(Error::Input(_))));
        assert!(matches!(s.eval_point(3, &[1.0, 1.0, 1.0]), Err(Error::Input(_))));
        // inside the open box but numerically on the pole
        assert!(matches!(s.eval_point(0, &[1e-300, 1.0, 1.0]), Err(Error::ChartSingularity { .. })));
    }

    #[test]
    fn constructor_validation() {
        assert!(Hypersurface::round_sphere(0, 1.0).is_err());
        assert!(Hypersurface::round_sphere(1, -1.0).is_err());
        assert!(Hypersurface::<f64>::ellipsoid(vec![1.0, 2.0, 3.0]).is_err());
        assert!(Hypersurface::tube_torus(1.0, 2.0).is_err());
    }
}
