//! Product quadrature over chart parameter boxes.

use serde::Serialize;

use super::chart::Axis;
use super::surface::{Hypersurface, TangentPoint};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sum::par_sum_channels;

/// Smallest accepted node count per axis.
pub const MIN_NODES_PER_AXIS: usize = 4;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(x) and P_n'(x) by the three-term recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// One-dimensional rule on an axis of a chart box.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxisRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> AxisRule<T> {
    /// Gauss–Legendre on open axes; equal weights at cell midpoints on periodic ones.
    pub fn for_axis(axis: &Axis<T>, count: usize) -> Self {
        let len = axis.extent();
        if axis.periodic {
            let h = len / T::from_usize_lossy(count);
            let nodes = (0..count).map(|j| axis.lo + (T::from_usize_lossy(j) + T::lit(0.5)) * h).collect();
            Self { nodes, weights: vec![h; count] }
        } else {
            let (x, w) = gauss_legendre(count);
            let half = len / T::lit(2.0);
            let mid = axis.lo + half;
            Self {
                nodes: x.iter().map(|&xi| mid + half * T::lit(xi)).collect(),
                weights: w.iter().map(|&wi| half * T::lit(wi)).collect(),
            }
        }
    }
}

/// A quadrature node: the evaluated point and its weight, which already
/// includes the Riemannian area element.
#[derive(Debug, Clone)]
pub struct GridNode<T> {
    pub point: TangentPoint<T>,
    pub weight: T,
}

/// Product-rule grid over every chart of a surface.
///
/// Nodes are generated on demand in a fixed order: chart by chart, then
/// row-major over the axes with the last axis fastest.
#[derive(Debug, Clone)]
pub struct QuadratureGrid<T> {
    surface: Hypersurface<T>,
    resolution: Vec<usize>,
    rules: Vec<Vec<AxisRule<T>>>,
    chart_sizes: Vec<usize>,
}

/// Product-rule grid with `resolution[i]` nodes on axis `i` of every chart.
pub fn build_grid<T: Real>(surface: &Hypersurface<T>, resolution: &[usize]) -> Result<QuadratureGrid<T>> {
    QuadratureGrid::new(surface, resolution)
}

impl<T: Real> QuadratureGrid<T> {
    pub fn new(surface: &Hypersurface<T>, resolution: &[usize]) -> Result<Self> {
        if resolution.len() != surface.dim() {
            return Err(Error::input(format!(
                "resolution has {} axes, surface has dimension {}",
                resolution.len(),
                surface.dim()
            )));
        }
        if let Some(&bad) = resolution.iter().find(|&&r| r < MIN_NODES_PER_AXIS) {
            return Err(Error::input(format!("resolution {bad} below the minimum of {MIN_NODES_PER_AXIS} per axis")));
        }
        let rules: Vec<Vec<AxisRule<T>>> = surface
            .charts()
            .iter()
            .map(|c| c.domain().iter().zip(resolution).map(|(ax, &k)| AxisRule::for_axis(ax, k)).collect())
            .collect();
        let per_chart: usize = resolution.iter().product();
        Ok(Self {
            surface: surface.clone(),
            resolution: resolution.to_vec(),
            chart_sizes: vec![per_chart; rules.len()],
            rules,
        })
    }

    /// Same surface with every axis count multiplied by `factor`.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        let res: Vec<usize> = self.resolution.iter().map(|r| r * factor.max(1)).collect();
        Self::new(&self.surface, &res)
    }

    pub fn surface(&self) -> &Hypersurface<T> {
        &self.surface
    }

    pub fn resolution(&self) -> &[usize] {
        &self.resolution
    }

    pub fn len(&self) -> usize {
        self.chart_sizes.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Chart id, parameters and product-rule weight (without area element) of node `i`.
    pub fn params(&self, mut i: usize) -> (usize, Vec<T>, T) {
        let mut chart = 0;
        while i >= self.chart_sizes[chart] {
            i -= self.chart_sizes[chart];
            chart += 1;
        }
        let rules = &self.rules[chart];
        let mut params = vec![T::zero(); rules.len()];
        let mut weight = T::one();
        for (axis, rule) in rules.iter().enumerate().rev() {
            let k = rule.nodes.len();
            let j = i % k;
            i /= k;
            params[axis] = rule.nodes[j];
            weight = weight * rule.weights[j];
        }
        (chart, params, weight)
    }

    pub fn node(&self, i: usize) -> Result<GridNode<T>> {
        let (chart, params, w) = self.params(i);
        let point = self.surface.eval_point(chart, &params)?;
        let weight = w * point.area_element;
        Ok(GridNode { point, weight })
    }

    /// Node without normal derivatives, for metric-only integrands.
    pub fn node_light(&self, i: usize) -> Result<GridNode<T>> {
        let (chart, params, w) = self.params(i);
        let point = self.surface.eval_point_light(chart, &params)?;
        let weight = w * point.area_element;
        Ok(GridNode { point, weight })
    }

    /// `Σ weights ≈ vol(M)`.
    pub fn total_weight(&self) -> Result<T> {
        let v = par_sum_channels(self.len(), 1, |i, out| {
            out[0] = self.node_light(i)?.weight;
            Ok(())
        })?;
        Ok(v[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in 1..12 {
            let (x, w) = gauss_legendre(n);
            for deg in 0..2 * n {
                let quad: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((quad - exact).abs() < 1e-14, "n={n} deg={deg}");
            }
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn periodic_rule_is_spectral() {
        let rule = AxisRule::for_axis(&Axis::periodic(0.0, std::f64::consts::TAU), 8);
        let q: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * (3.0 * x).cos().powi(2)).sum();
        assert!((q - std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn resolution_validation() {
        let s = Hypersurface::round_sphere(1, 1.0_f64).unwrap();
        assert!(build_grid(&s, &[8, 8]).is_err());
        assert!(build_grid(&s, &[8, 3, 8]).is_err());
        let g = build_grid(&s, &[4, 5, 6]).unwrap();
        assert_eq!(g.len(), 120);
        let (_, p, _) = g.params(119);
        assert!(p.iter().all(|x| x.is_finite()));
    }
}
