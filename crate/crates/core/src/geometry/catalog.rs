//! Closed-form charts for the built-in surfaces.

use super::chart::{Axis, Chart};
use crate::linalg::vector;
use crate::scalar::Real;

/// Hyperspherical coordinates on the unit sphere `S^m ⊂ ℝ^{m+1}`:
/// polar angles `θ_1 … θ_{m-1} ∈ (0, π)` and azimuth `φ ∈ [0, 2π)`.
///
/// `x_k = sin θ_1 ⋯ sin θ_{k-1} cos θ_k` for `k ≤ m` and
/// `x_{m+1} = sin θ_1 ⋯ sin θ_{m-1} sin φ`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Hyperspherical {
    pub m: usize,
}

impl Hyperspherical {
    /// Unit-sphere point, or its partial derivative along `wrt` when given.
    pub fn eval<T: Real>(&self, u: &[T], wrt: Option<usize>) -> Vec<T> {
        let m = self.m;
        let (s, c): (Vec<T>, Vec<T>) = u.iter().map(|a| (a.sin(), a.cos())).unzip();
        // factor j of the product for coordinate k, differentiated if j == wrt
        let sin_f = |j: usize| if Some(j) == wrt { c[j] } else { s[j] };
        let cos_f = |j: usize| if Some(j) == wrt { -s[j] } else { c[j] };
        let mut out = vec![T::zero(); m + 1];
        for (k, slot) in out.iter_mut().enumerate() {
            let last = k.min(m - 1);
            if let Some(w) = wrt {
                if w > last {
                    continue;
                }
            }
            let mut p = (0..last).fold(T::one(), |acc, j| acc * sin_f(j));
            p = p * if k < m { cos_f(last) } else { sin_f(last) };
            *slot = p;
        }
        out
    }

    pub fn domain<T: Real>(&self) -> Vec<Axis<T>> {
        let mut axes: Vec<Axis<T>> = (0..self.m - 1).map(|_| Axis::open(T::zero(), T::PI())).collect();
        axes.push(Axis::periodic(T::zero(), T::TAU()));
        axes
    }
}

/// Round sphere `S^m(r)` with outward normal.
#[derive(Debug, Clone)]
pub struct SphereChart<T> {
    pub(crate) coords: Hyperspherical,
    pub(crate) radius: T,
}

impl<T: Real> SphereChart<T> {
    pub fn new(m: usize, radius: T) -> Self {
        Self { coords: Hyperspherical { m }, radius }
    }
}

impl<T: Real> Chart<T> for SphereChart<T> {
    fn param_dim(&self) -> usize {
        self.coords.m
    }

    fn domain(&self) -> Vec<Axis<T>> {
        self.coords.domain()
    }

    fn position(&self, u: &[T]) -> Vec<T> {
        vector::scaled(&self.coords.eval(u, None), self.radius)
    }

    fn tangents(&self, u: &[T]) -> Vec<Vec<T>> {
        (0..self.coords.m).map(|i| vector::scaled(&self.coords.eval(u, Some(i)), self.radius)).collect()
    }

    fn normal(&self, u: &[T]) -> Vec<T> {
        self.coords.eval(u, None)
    }

    fn normal_partials(&self, u: &[T]) -> Vec<Vec<T>> {
        (0..self.coords.m).map(|i| self.coords.eval(u, Some(i))).collect()
    }
}

/// Ellipsoid `Σ x_i² / a_i² = 1`, parametrized as `x = a ∘ y` with `y` on the unit sphere.
#[derive(Debug, Clone)]
pub struct EllipsoidChart<T> {
    pub(crate) coords: Hyperspherical,
    pub(crate) semi_axes: Vec<T>,
}

impl<T: Real> EllipsoidChart<T> {
    pub fn new(semi_axes: Vec<T>) -> Self {
        Self { coords: Hyperspherical { m: semi_axes.len() - 1 }, semi_axes }
    }

    fn scaled(&self, y: &[T]) -> Vec<T> {
        y.iter().zip(&self.semi_axes).map(|(&yi, &a)| yi * a).collect()
    }

    fn unscaled(&self, y: &[T]) -> Vec<T> {
        y.iter().zip(&self.semi_axes).map(|(&yi, &a)| yi / a).collect()
    }
}

impl<T: Real> Chart<T> for EllipsoidChart<T> {
    fn param_dim(&self) -> usize {
        self.coords.m
    }

    fn domain(&self) -> Vec<Axis<T>> {
        self.coords.domain()
    }

    fn position(&self, u: &[T]) -> Vec<T> {
        self.scaled(&self.coords.eval(u, None))
    }

    fn tangents(&self, u: &[T]) -> Vec<Vec<T>> {
        (0..self.coords.m).map(|i| self.scaled(&self.coords.eval(u, Some(i)))).collect()
    }

    // Gradient of the defining function is x / a² = y / a.
    fn normal(&self, u: &[T]) -> Vec<T> {
        let g = self.unscaled(&self.coords.eval(u, None));
        vector::normalized(&g).unwrap_or(g)
    }

    fn normal_partials(&self, u: &[T]) -> Vec<Vec<T>> {
        let g = self.unscaled(&self.coords.eval(u, None));
        let len = vector::norm(&g);
        let n = vector::scaled(&g, len.recip());
        (0..self.coords.m)
            .map(|i| vector::normalize_derivative(&n, &self.unscaled(&self.coords.eval(u, Some(i))), len))
            .collect()
    }
}

/// Tube of radius `ρ` around the circle of radius `R` in the `x₁x₂`-plane of `ℝ⁴`,
/// diffeomorphic to `S¹ × S²`.
///
/// Parameters `(θ, φ, ψ)`: `θ` runs along the core circle, `(φ, ψ)` are polar
/// coordinates on the normal 2-sphere.
#[derive(Debug, Clone)]
pub struct TubeTorusChart<T> {
    pub(crate) major: T,
    pub(crate) minor: T,
}

impl<T: Real> TubeTorusChart<T> {
    pub fn new(major: T, minor: T) -> Self {
        Self { major, minor }
    }

    fn frame(u: &[T]) -> ([T; 4], [T; 4], [T; 4]) {
        let (st, ct) = u[0].sin_cos();
        let (sp, cp) = u[1].sin_cos();
        let (ss, cs) = u[2].sin_cos();
        let z = T::zero();
        // unit normal, its φ-derivative, and its ψ-derivative
        let n = [cp * ct, cp * st, sp * cs, sp * ss];
        let n_phi = [-sp * ct, -sp * st, cp * cs, cp * ss];
        let n_psi = [z, z, -sp * ss, sp * cs];
        (n, n_phi, n_psi)
    }
}

impl<T: Real> Chart<T> for TubeTorusChart<T> {
    fn param_dim(&self) -> usize {
        3
    }

    fn domain(&self) -> Vec<Axis<T>> {
        vec![Axis::periodic(T::zero(), T::TAU()), Axis::open(T::zero(), T::PI()), Axis::periodic(T::zero(), T::TAU())]
    }

    fn position(&self, u: &[T]) -> Vec<T> {
        let (st, ct) = u[0].sin_cos();
        let (n, _, _) = Self::frame(u);
        let core = [self.major * ct, self.major * st, T::zero(), T::zero()];
        (0..4).map(|i| core[i] + self.minor * n[i]).collect()
    }

    fn tangents(&self, u: &[T]) -> Vec<Vec<T>> {
        let (st, ct) = u[0].sin_cos();
        let cp = u[1].cos();
        let (_, n_phi, n_psi) = Self::frame(u);
        let w = self.major + self.minor * cp;
        vec![
            vec![-w * st, w * ct, T::zero(), T::zero()],
            vector::scaled(&n_phi, self.minor),
            vector::scaled(&n_psi, self.minor),
        ]
    }

    fn normal(&self, u: &[T]) -> Vec<T> {
        Self::frame(u).0.to_vec()
    }

    fn normal_partials(&self, u: &[T]) -> Vec<Vec<T>> {
        let (st, ct) = u[0].sin_cos();
        let cp = u[1].cos();
        let (_, n_phi, n_psi) = Self::frame(u);
        vec![vec![-cp * st, cp * ct, T::zero(), T::zero()], n_phi.to_vec(), n_psi.to_vec()]
    }
}

#[cfg(test)]
mod tests {
    use super::super::chart::{central_differences, fd_steps, generalized_cross};
    use super::*;

    fn check_chart(chart: &dyn Chart<f64>, u: &[f64]) {
        let steps = fd_steps(&chart.domain());
        let fd_t = central_differences(u, &steps, |v| chart.position(v));
        let fd_n = central_differences(u, &steps, |v| chart.normal(v));
        let t = chart.tangents(u);
        let dn = chart.normal_partials(u);
        let n = chart.normal(u);
        assert!((vector::norm(&n) - 1.0).abs() < 1e-14);
        for i in 0..chart.param_dim() {
            for k in 0..n.len() {
                assert!((t[i][k] - fd_t[i][k]).abs() < 1e-8, "tangent {i} {k}");
                assert!((dn[i][k] - fd_n[i][k]).abs() < 1e-8, "normal partial {i} {k}");
            }
            assert!(vector::dot(&t[i], &n).abs() < 1e-13);
        }
        // closed-form normal agrees with the oriented cross product
        let cross = vector::normalized(&generalized_cross(&t)).unwrap();
        let sign = vector::dot(&cross, &n);
        assert!((sign.abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_match_finite_differences() {
        check_chart(&SphereChart::new(3, 2.0), &[0.7, 1.9, 4.0]);
        check_chart(&SphereChart::new(5, 1.0), &[0.7, 1.9, 2.4, 0.3, 5.5]);
        check_chart(&EllipsoidChart::new(vec![1.0, 1.2, 1.4, 1.7]), &[1.1, 0.4, 2.0]);
        check_chart(&TubeTorusChart::new(3.0, 1.0), &[0.3, 1.2, 4.4]);
    }

    #[test]
    fn hyperspherical_is_unit() {
        let h = Hyperspherical { m: 5 };
        let y = h.eval(&[0.2_f64, 1.0, 2.9, 1.5, 3.3], None);
        assert!((vector::norm(&y) - 1.0).abs() < 1e-15);
    }
}
