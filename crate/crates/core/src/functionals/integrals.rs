use serde::Serialize;

use super::density::{sample_density, DensitySample};
use crate::error::{Error, Result};
use crate::fields::{point_frame, UnitField};
use crate::geometry::{shape_operator, unit_sphere_volume, GridNode, Hypersurface, QuadratureGrid, TangentPoint};
use crate::linalg::{det_poly_coeffs, SquareMatrix};
use crate::scalar::Real;
use crate::sum::{par_reduce_channels, par_sum_channels};

/// Residual `|raw - round(raw)|` above which a degree estimate is flagged.
pub const DEGREE_RESIDUAL_WARN: f64 = 0.05;

/// All integral functionals of one field on one grid, from a single pass.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldIntegrals<T> {
    pub n: usize,
    pub resolution: Vec<usize>,
    pub nodes: usize,
    /// `vol(M) = Σ w`.
    pub surface_volume: T,
    /// `∫ ‖∇v‖²`.
    pub grad_sq: T,
    /// `∫ η_k` for `k = 0 … 2n+1`.
    pub eta: Vec<T>,
    /// `∫ η_2` through the minor expansion.
    pub eta2_minor: T,
    /// `∫ |σ_{2n}(𝒱)|`.
    pub sigma_abs: T,
    /// `vol(v) = ∫ √det(I + aaᵀ)`.
    pub field_volume: T,
    /// `𝓑_k` for `k = 1 … 2n+1` at index `k - 1`.
    pub bending: Vec<T>,
    /// Node maximum of [`DensitySample::eta_top_excess`].
    pub max_eta_top_excess: T,
    /// Node maximum of [`DensitySample::bending_sigma_excess`].
    pub max_bending_sigma_excess: T,
    pub max_last_row: T,
    pub max_field_defect: T,
}

impl<T: Real> FieldIntegrals<T> {
    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    /// `E(v) = ½ ∫‖∇v‖² + (m/2) vol(M)`.
    pub fn energy(&self) -> T {
        let half = T::lit(0.5);
        half * self.grad_sq + half * T::from_usize_lossy(self.dim()) * self.surface_volume
    }

    /// `𝓑(v) = ∫‖∇v‖² / ((m - 1) vol(S^m))`.
    pub fn total_bending(&self) -> T {
        self.grad_sq / (T::from_usize_lossy(2 * self.n) * unit_sphere_volume::<T>(self.n))
    }

    pub fn volume_functional(&self) -> T {
        self.field_volume
    }

    /// `𝓑_k`, zero outside `1..=2n+1`.
    pub fn bending_k(&self, k: usize) -> T {
        k.checked_sub(1).and_then(|i| self.bending.get(i)).copied().unwrap_or_else(T::zero)
    }

    pub fn eta_integral(&self, k: usize) -> T {
        self.eta.get(k).copied().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> DegreeEstimate<T> {
        DegreeEstimate::from_integral(self.eta_integral(0), self.n)
    }
}

const SUMS_FIXED: usize = 5;
const MAXES: usize = 4;

/// Integrates the densities produced by `sampler` over every grid node.
///
/// [`integrate`] uses [`sample_density`]; other samplers inject synthetic
/// `h`/`a` matrices for testing.
pub fn integrate_samples<T, F>(grid: &QuadratureGrid<T>, sampler: F) -> Result<FieldIntegrals<T>>
where
    T: Real,
    F: Fn(&GridNode<T>) -> Result<DensitySample<T>> + Sync,
{
    let n = grid.surface().n();
    let d = 2 * n + 1;
    // sums: vol(M), ‖∇v‖², η₂ (minors), |σ|, vol(v) | η_0..η_d | 𝓑_1..𝓑_d
    let width = SUMS_FIXED + (d + 1) + d;
    let (sums, maxes) = par_reduce_channels(grid.len(), width, MAXES, |i, s, m| {
        let node = grid.node(i)?;
        let ds = sampler(&node)?;
        if ds.bending.len() != d {
            return Err(Error::input("sample dimension does not match the grid surface"));
        }
        let w = node.weight;
        s[0] = w;
        s[1] = w * ds.grad_sq;
        s[2] = w * ds.eta2_minor;
        s[3] = w * ds.sigma_2n.abs();
        s[4] = w * ds.vol_density;
        for k in 0..=d {
            s[SUMS_FIXED + k] = w * ds.eta.get(k);
        }
        for k in 0..d {
            s[SUMS_FIXED + d + 1 + k] = w * ds.bending[k];
        }
        m[0] = ds.eta_top_excess();
        m[1] = ds.bending_sigma_excess();
        m[2] = ds.last_row;
        m[3] = ds.field_defect;
        Ok(())
    })?;
    Ok(FieldIntegrals {
        n,
        resolution: grid.resolution().to_vec(),
        nodes: grid.len(),
        surface_volume: sums[0],
        grad_sq: sums[1],
        eta2_minor: sums[2],
        sigma_abs: sums[3],
        field_volume: sums[4],
        eta: sums[SUMS_FIXED..SUMS_FIXED + d + 1].to_vec(),
        bending: sums[SUMS_FIXED + d + 1..].to_vec(),
        max_eta_top_excess: maxes[0],
        max_bending_sigma_excess: maxes[1],
        max_last_row: maxes[2],
        max_field_defect: maxes[3],
    })
}

/// Every integral functional of `field` over `grid` in one pass.
pub fn integrate<T: Real>(grid: &QuadratureGrid<T>, field: &dyn UnitField<T>) -> Result<FieldIntegrals<T>> {
    integrate_samples(grid, |node| sample_density(grid.surface(), field, node))
}

pub fn energy<T: Real>(grid: &QuadratureGrid<T>, field: &dyn UnitField<T>) -> Result<T> {
    Ok(integrate(grid, field)?.energy())
}

pub fn total_bending<T: Real>(grid: &QuadratureGrid<T>, field: &dyn UnitField<T>) -> Result<T> {
    Ok(integrate(grid, field)?.total_bending())
}

pub fn volume_functional<T: Real>(grid: &QuadratureGrid<T>, field: &dyn UnitField<T>) -> Result<T> {
    Ok(integrate(grid, field)?.volume_functional())
}

pub fn bending_k<T: Real>(grid: &QuadratureGrid<T>, field: &dyn UnitField<T>, k: usize) -> Result<T> {
    let d = grid.surface().dim();
    if k == 0 || k > d {
        return Err(Error::input(format!("bending order {k} out of range 1..={d}")));
    }
    Ok(integrate(grid, field)?.bending_k(k))
}

pub fn eta_integral<T: Real>(grid: &QuadratureGrid<T>, field: &dyn UnitField<T>, k: usize) -> Result<T> {
    let d = grid.surface().dim();
    if k > d {
        return Err(Error::input(format!("eta index {k} out of range 0..={d}")));
    }
    Ok(integrate(grid, field)?.eta_integral(k))
}

/// `∫ η_2` through the sum of 2-minors of `a` times complementary minors of `h`.
pub fn eta2_minor_form<T: Real>(grid: &QuadratureGrid<T>, field: &dyn UnitField<T>) -> Result<T> {
    Ok(integrate(grid, field)?.eta2_minor)
}

/// `deg ν` read off `∫ η_0 / vol(S^{2n+1})`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeEstimate<T> {
    pub degree: i64,
    pub raw: T,
    pub residual: T,
    pub warning: Option<String>,
}

impl<T: Real> DegreeEstimate<T> {
    pub fn from_integral(eta0: T, n: usize) -> Self {
        let raw = eta0 / unit_sphere_volume::<T>(n);
        let rounded = raw.round();
        let residual = (raw - rounded).abs();
        let warning = (!(residual <= T::lit(DEGREE_RESIDUAL_WARN)))
            .then(|| format!("degree integral {raw} is {residual} away from an integer; refine the grid"));
        Self { degree: rounded.to_i64().unwrap_or(0), raw, residual, warning }
    }
}

/// Degree of the Gauss map from `∫ det S`, independent of any field.
pub fn degree_estimate<T: Real>(grid: &QuadratureGrid<T>) -> Result<DegreeEstimate<T>> {
    let sums = par_sum_channels(grid.len(), 1, |i, out| {
        let node = grid.node(i)?;
        out[0] = node.weight * shape_operator(&node.point)?.coord.det();
        Ok(())
    })?;
    Ok(DegreeEstimate::from_integral(sums[0], grid.surface().n()))
}

/// Both sides of `det(dφ_t) = √(1+t²) Σ η_k t^k` at one point.
///
/// The left side assembles the block matrix of `dφ_t` in the adapted frame:
/// rows `h_iB + t a_iB` for `i ≤ 2n` and the last row `√(1+t²) h_{2n+1,B}`.
pub fn phi_t_determinant_check<T: Real>(
    surface: &Hypersurface<T>,
    field: &dyn UnitField<T>,
    p: &TangentPoint<T>,
    t: T,
) -> Result<(T, T)> {
    let pf = point_frame(surface, field, p)?;
    let (h, a) = (pf.h(), &pf.a);
    let d = h.dim();
    let stretch = (T::one() + t * t).sqrt();
    let block = SquareMatrix::from_fn(d, |r, c| if r + 1 < d { h[(r, c)] + t * a[(r, c)] } else { stretch * h[(r, c)] });
    let eta = det_poly_coeffs(h, a)?;
    let poly = eta.as_slice()[..d].iter().rev().fold(T::zero(), |acc, &c| acc * t + c);
    Ok((block.det(), stretch * poly))
}
