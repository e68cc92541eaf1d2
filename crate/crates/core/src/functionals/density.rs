use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{point_frame, UnitField};
use crate::geometry::{GridNode, Hypersurface};
use crate::linalg::{binomial, det_poly_coeffs, laplace_coefficient, minor_square_sum, symmetric_eigen, vector};
use crate::linalg::{CoefficientVector, SquareMatrix};
use crate::scalar::Real;

/// Every pointwise integrand at one quadrature node.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensitySample<T> {
    /// Quadrature weight, area element included.
    pub weight: T,
    /// `‖∇v‖² = Σ a_AB²`.
    pub grad_sq: T,
    /// `η_0 … η_{2n+1}`, the coefficients of `det(h + t a)`.
    pub eta: CoefficientVector<T>,
    /// `η_2` recomputed through the 2-minor expansion.
    pub eta2_minor: T,
    /// Determinant of the upper-left `2n x 2n` block of `a`.
    pub sigma_2n: T,
    /// `√det(I + a aᵀ)`.
    pub vol_density: T,
    /// `bending[k - 1]` is the sum of squared `k`-minors of `a`.
    pub bending: Vec<T>,
    /// `‖S(v)‖`.
    pub shape_on_field: T,
    /// Principal curvatures, descending.
    pub curvatures: Vec<T>,
    /// Largest `|a_{2n+1,B}|`; zero in exact arithmetic.
    pub last_row: T,
    /// `max(| |v| - 1 |, |⟨v, N⟩|)` at the node.
    pub field_defect: T,
}

impl<T: Real> DensitySample<T> {
    /// Densities for given frame matrices `h` and `a` of odd size `2n+1`.
    pub fn from_matrices(h: &SquareMatrix<T>, a: &SquareMatrix<T>, weight: T) -> Result<Self> {
        let d = h.dim();
        if d < 3 || d.is_multiple_of(2) || a.dim() != d {
            return Err(Error::input(format!("frame matrices must share an odd size >= 3, got {d} and {}", a.dim())));
        }
        let n2 = d - 1;
        let eta = det_poly_coeffs(h, a)?;
        // The v-row of a is zero by construction; the expansion drops it.
        let mut a_trunc = a.clone();
        for b in 0..d {
            a_trunc[(n2, b)] = T::zero();
        }
        let eta2_minor = laplace_coefficient(h, &a_trunc, 2)?;
        let gram = SquareMatrix::identity(d).add_scaled(T::one(), &a.matmul(&a.transpose())?)?;
        let bending = (1..=d).map(|k| minor_square_sum(a, k)).collect::<Result<Vec<_>>>()?;
        let (curvatures, _) = symmetric_eigen(h)?;
        Ok(Self {
            weight,
            grad_sq: a.frobenius_sq(),
            eta,
            eta2_minor,
            sigma_2n: a.upper_left(n2).det(),
            vol_density: gram.det().max(T::one()).sqrt(),
            bending,
            shape_on_field: vector::norm(h.row(n2)),
            curvatures,
            last_row: a.row(n2).iter().fold(T::zero(), |m, x| m.max(x.abs())),
            field_defect: T::zero(),
        })
    }

    /// `n` with `2n + 1` the surface dimension.
    pub fn n(&self) -> usize {
        self.bending.len() / 2
    }

    pub fn bending_k(&self, k: usize) -> T {
        k.checked_sub(1).and_then(|i| self.bending.get(i)).copied().unwrap_or_else(T::zero)
    }

    /// `|η_{2n}| - ‖S(v)‖ (√det(I + aaᵀ) - 1)`; never positive.
    pub fn eta_top_excess(&self) -> T {
        let n2 = 2 * self.n();
        self.eta.get(n2).abs() - self.shape_on_field * (self.vol_density - T::one())
    }

    /// `C(2n, n) |σ_{2n}| - 𝓑_n density`; never positive.
    pub fn bending_sigma_excess(&self) -> T {
        let n = self.n();
        T::lit(binomial(2 * n, n) as f64) * self.sigma_2n.abs() - self.bending_k(n)
    }

    pub fn max_abs_curvature(&self) -> T {
        self.curvatures.iter().fold(T::zero(), |m, c| m.max(c.abs()))
    }
}

/// Builds the adapted frame at `node` and evaluates every density there.
pub fn sample_density<T: Real>(
    surface: &Hypersurface<T>,
    field: &dyn UnitField<T>,
    node: &GridNode<T>,
) -> Result<DensitySample<T>> {
    let p = &node.point;
    let v = field.value(p)?;
    let defect = (vector::norm(&v) - T::one()).abs().max(vector::dot(&v, &p.normal).abs());
    let pf = point_frame(surface, field, p)?;
    let mut s = DensitySample::from_matrices(pf.h(), &pf.a, node.weight)?;
    s.field_defect = defect;
    Ok(s)
}
