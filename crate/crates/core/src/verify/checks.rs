use serde::Serialize;

use crate::error::{Error, Result};
use crate::functionals::{DegreeEstimate, FieldIntegrals, SupConstants, DEGREE_RESIDUAL_WARN};
use crate::geometry::{unit_sphere_volume, Hypersurface};
use crate::linalg::binomial;
use crate::scalar::Real;

/// How a check's `pass` flag is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// `lhs ≥ rhs - tol`.
    Bound,
    /// `|lhs - rhs| ≤ tol`.
    Identity,
    /// `lhs ≥ rhs - tol` with `lhs = 0` and `rhs` a node maximum of a
    /// pointwise excess.
    Pointwise,
}

/// Tolerances for one surface family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative slack for bound checks, scaled by `max(1, |lhs|)`.
    pub pass_rel: f64,
    /// Relative window for equality flags, scaled by `max(1, |lhs|)`.
    pub eq_rel: f64,
    /// Relative window for identity checks, scaled by `max(|rhs|, vol(M))`.
    pub identity_rel: f64,
    /// Absolute slack for pointwise checks.
    pub pointwise_abs: f64,
}

impl Tolerances {
    pub const SPHERE: Self = Self { pass_rel: 1e-7, eq_rel: 1e-6, identity_rel: 1e-6, pointwise_abs: 1e-9 };
    pub const GENERAL: Self = Self { pass_rel: 1e-4, eq_rel: 1e-6, identity_rel: 1e-4, pointwise_abs: 1e-9 };

    pub fn for_surface<T: Real>(surface: &Hypersurface<T>) -> Self {
        if surface.is_round_sphere() {
            Self::SPHERE
        } else {
            Self::GENERAL
        }
    }
}

/// One inequality or identity evaluated on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck<T> {
    pub id: String,
    pub kind: CheckKind,
    pub lhs: T,
    pub rhs: T,
    pub gap: T,
    pub rel_gap: T,
    pub pass: bool,
    /// Set when `|gap|` sits inside the equality window (and the check passes).
    pub equality: bool,
    pub pass_tol: T,
    pub eq_tol: T,
    pub resolution: Vec<usize>,
}

impl<T: Real> BoundCheck<T> {
    pub fn bound(id: impl Into<String>, lhs: T, rhs: T, tol: &Tolerances, resolution: &[usize]) -> Self {
        let scale = T::one().max(lhs.abs());
        let pass_tol = T::lit(tol.pass_rel) * scale;
        Self::assemble(id.into(), CheckKind::Bound, lhs, rhs, pass_tol, T::lit(tol.eq_rel) * scale, resolution)
    }

    /// `lhs ≈ rhs`; `volume` sets the absolute scale when `rhs` is zero.
    pub fn identity(id: impl Into<String>, lhs: T, rhs: T, volume: T, tol: &Tolerances, resolution: &[usize]) -> Self {
        let t = T::lit(tol.identity_rel) * rhs.abs().max(volume.abs());
        Self::assemble(id.into(), CheckKind::Identity, lhs, rhs, t, t, resolution)
    }

    /// `|lhs - rhs| ≤ abs_tol`.
    pub fn within(id: impl Into<String>, lhs: T, rhs: T, abs_tol: T, resolution: &[usize]) -> Self {
        Self::assemble(id.into(), CheckKind::Identity, lhs, rhs, abs_tol, abs_tol, resolution)
    }

    /// Passes when the node maximum `excess` of a pointwise inequality is at
    /// most the absolute tolerance.
    pub fn pointwise(id: impl Into<String>, excess: T, tol: &Tolerances, resolution: &[usize]) -> Self {
        let t = T::lit(tol.pointwise_abs);
        Self::assemble(id.into(), CheckKind::Pointwise, T::zero(), excess, t, T::zero(), resolution)
    }

    fn assemble(id: String, kind: CheckKind, lhs: T, rhs: T, pass_tol: T, eq_tol: T, resolution: &[usize]) -> Self {
        let gap = lhs - rhs;
        let rel_gap = gap / T::one().max(lhs.abs());
        let pass = match kind {
            CheckKind::Bound | CheckKind::Pointwise => lhs >= rhs - pass_tol,
            CheckKind::Identity => gap.abs() <= pass_tol,
        };
        let equality = pass && kind != CheckKind::Pointwise && gap.abs() <= eq_tol;
        Self { id, kind, lhs, rhs, gap, rel_gap, pass, equality, pass_tol, eq_tol, resolution: resolution.to_vec() }
    }
}

fn binom<T: Real>(n: usize, k: usize) -> T {
    T::lit(binomial(n, k) as f64)
}

fn abs_degree<T: Real>(degree: &DegreeEstimate<T>) -> T {
    T::lit(degree.degree.unsigned_abs() as f64)
}

/// `E(v) ≥ C(n) |deg ν| vol(S^{2n+1}) / S^[2n-1] + (2n+1)/2 vol(M)`, with
/// `C(n) = n/(2n-1)` on round spheres and `½` otherwise.
pub fn check_energy_bound<T: Real>(
    surface: &Hypersurface<T>,
    integrals: &FieldIntegrals<T>,
    degree: &DegreeEstimate<T>,
    sups: &SupConstants<T>,
    tol: &Tolerances,
) -> Result<BoundCheck<T>> {
    let n = integrals.n;
    let c = if surface.is_round_sphere() {
        T::from_usize_lossy(n) / T::from_usize_lossy(2 * n - 1)
    } else {
        T::lit(0.5)
    };
    let topological = if degree.degree == 0 {
        T::zero()
    } else {
        let s = sups
            .bracket(2 * n - 1)
            .filter(|s| *s > T::zero())
            .ok_or_else(|| Error::input("sup constants lack a positive S^[2n-1]"))?;
        c * abs_degree(degree) * unit_sphere_volume::<T>(n) / s
    };
    let rhs = topological + T::from_usize_lossy(2 * n + 1) / T::lit(2.0) * integrals.surface_volume;
    Ok(BoundCheck::bound("energy-degree-bound", integrals.energy(), rhs, tol, &integrals.resolution))
}

/// `E(v) ≥ ((2n+1)/2 r^{2n+1} + n/(2n-1) r^{2n-1}) vol(S^{2n+1})` on `S^{2n+1}(r)`.
pub fn check_sphere_energy_bound<T: Real>(
    surface: &Hypersurface<T>,
    integrals: &FieldIntegrals<T>,
    tol: &Tolerances,
) -> Result<BoundCheck<T>> {
    let r = surface
        .sphere_radius()
        .ok_or_else(|| Error::input(format!("{} is not a round sphere", surface.name())))?;
    let n = integrals.n;
    let nf = T::from_usize_lossy(n);
    let rhs = (T::from_usize_lossy(2 * n + 1) / T::lit(2.0) * r.powi(2 * n as i32 + 1)
        + nf / (nf + nf - T::one()) * r.powi(2 * n as i32 - 1))
        * unit_sphere_volume::<T>(n);
    Ok(BoundCheck::bound("sphere-energy-bound", integrals.energy(), rhs, tol, &integrals.resolution))
}

/// `𝓑_n ≥ C(2n,n) ∫|σ_{2n}(𝒱)|` and `𝓑_n ≥ |deg ν| / 𝒮 · C(2n,n) vol(S^{2n+1})`.
pub fn check_bending_bounds<T: Real>(
    integrals: &FieldIntegrals<T>,
    degree: &DegreeEstimate<T>,
    sups: &SupConstants<T>,
    tol: &Tolerances,
) -> Result<(BoundCheck<T>, BoundCheck<T>)> {
    let n = integrals.n;
    let lhs = integrals.bending_k(n);
    let c: T = binom(2 * n, n);
    let sigma = BoundCheck::bound("bending-sigma-bound", lhs, c * integrals.sigma_abs, tol, &integrals.resolution);
    let rhs = if degree.degree == 0 {
        T::zero()
    } else {
        if !(sups.script_s > T::zero()) {
            return Err(Error::input("sup constants lack a positive curvature bound"));
        }
        abs_degree(degree) / sups.script_s * c * unit_sphere_volume::<T>(n)
    };
    let deg = BoundCheck::bound("bending-degree-bound", lhs, rhs, tol, &integrals.resolution);
    Ok((sigma, deg))
}

/// `vol(v) - vol(M) ≥ vol(S^{2n+1}) / 𝒮 · |deg ν|`.
pub fn check_volume_bound<T: Real>(
    integrals: &FieldIntegrals<T>,
    degree: &DegreeEstimate<T>,
    sups: &SupConstants<T>,
    tol: &Tolerances,
) -> Result<BoundCheck<T>> {
    let lhs = integrals.field_volume - integrals.surface_volume;
    let rhs = if degree.degree == 0 {
        T::zero()
    } else {
        if !(sups.script_s > T::zero()) {
            return Err(Error::input("sup constants lack a positive curvature bound"));
        }
        unit_sphere_volume::<T>(integrals.n) / sups.script_s * abs_degree(degree)
    };
    Ok(BoundCheck::bound("volume-degree-bound", lhs, rhs, tol, &integrals.resolution))
}

/// `∫ η_k = deg ν · C(n, k/2) · vol(S^{2n+1})` for even `k`, `0` for odd `k`,
/// one check per `k = 0 … 2n`.
pub fn check_degree_formula<T: Real>(
    integrals: &FieldIntegrals<T>,
    degree: &DegreeEstimate<T>,
    tol: &Tolerances,
) -> Vec<BoundCheck<T>> {
    let n = integrals.n;
    let deg = T::lit(degree.degree as f64);
    (0..=2 * n)
        .map(|k| {
            let rhs = if k % 2 == 0 { deg * binom(n, k / 2) * unit_sphere_volume::<T>(n) } else { T::zero() };
            BoundCheck::identity(
                format!("eta-integral-k{k}"),
                integrals.eta_integral(k),
                rhs,
                integrals.surface_volume,
                tol,
                &integrals.resolution,
            )
        })
        .collect()
}

/// The raw degree integral against its rounded value, with the warning
/// threshold as tolerance.
pub fn check_degree_estimate<T: Real>(integrals: &FieldIntegrals<T>, degree: &DegreeEstimate<T>) -> BoundCheck<T> {
    BoundCheck::within(
        "degree-estimate",
        degree.raw,
        T::lit(degree.degree as f64),
        T::lit(DEGREE_RESIDUAL_WARN),
        &integrals.resolution,
    )
}

/// Node-wise `|η_{2n}| ≤ ‖S(v)‖ (√det(I + aaᵀ) - 1)` and
/// `𝓑_n density ≥ C(2n,n) |σ_{2n}|`.
pub fn check_pointwise<T: Real>(integrals: &FieldIntegrals<T>, tol: &Tolerances) -> [BoundCheck<T>; 2] {
    [
        BoundCheck::pointwise("pointwise-eta-top", integrals.max_eta_top_excess, tol, &integrals.resolution),
        BoundCheck::pointwise("pointwise-bending-sigma", integrals.max_bending_sigma_excess, tol, &integrals.resolution),
    ]
}
