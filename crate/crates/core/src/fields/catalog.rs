use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{fd_param_derivatives, UnitField};
use crate::error::{Error, Result};
use crate::geometry::{Hypersurface, SurfaceKind, TangentPoint};
use crate::linalg::vector;
use crate::scalar::Real;

/// Smallest `|y|` accepted before normalizing `y` into a field value.
const MIN_UNNORMALIZED: f64 = 1e-10;

fn unit_or_err<T: Real>(y: &[T], what: &str) -> Result<(Vec<T>, T)> {
    let len = vector::norm(y);
    if len > T::lit(MIN_UNNORMALIZED) {
        Ok((vector::scaled(y, len.recip()), len))
    } else {
        Err(Error::Numerical(format!("{what} vanishes at this point")))
    }
}

/// `v = Kx / |Kx|` for a skew `K` that rotates the listed coordinate planes:
/// `(Kx)_a = -x_b`, `(Kx)_b = x_a` for each pair `(a, b)`.
///
/// `Kx` is a Killing field of `ℝ^{2n+2}`; the surface must be invariant under
/// the rotations it generates so that `v` is tangent.
#[derive(Debug, Clone)]
pub struct RotationField {
    name: String,
    planes: Vec<(usize, usize)>,
}

impl RotationField {
    fn apply<T: Real>(&self, x: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); x.len()];
        for &(a, b) in &self.planes {
            out[a] = -x[b];
            out[b] = x[a];
        }
        out
    }

    pub fn planes(&self) -> &[(usize, usize)] {
        &self.planes
    }
}

impl<T: Real> UnitField<T> for RotationField {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn value(&self, p: &TangentPoint<T>) -> Result<Vec<T>> {
        Ok(unit_or_err(&self.apply(&p.position), &self.name)?.0)
    }

    // ∂_i (Kx/|Kx|) = (I - vvᵀ) K ∂_i x / |Kx|
    fn param_derivatives(&self, _surface: &Hypersurface<T>, p: &TangentPoint<T>) -> Result<Vec<Vec<T>>> {
        let (v, len) = unit_or_err(&self.apply(&p.position), &self.name)?;
        Ok(p.tangents.iter().map(|t| vector::normalize_derivative(&v, &self.apply(t), len)).collect())
    }
}

/// Hopf field `v(x) = Jx / |x|` on a round sphere, `J` the standard complex
/// structure pairing `(x₁, x₂), (x₃, x₄), …`.
pub fn hopf_field<T: Real>(surface: &Hypersurface<T>) -> Result<RotationField> {
    if !surface.is_round_sphere() {
        return Err(Error::input(format!("the Hopf field needs a round sphere, got {}", surface.name())));
    }
    Ok(RotationField { name: "hopf".into(), planes: (0..=surface.n()).map(|k| (2 * k, 2 * k + 1)).collect() })
}

/// Unit tangent of the core-circle direction on the tube torus.
pub fn circle_field<T: Real>(surface: &Hypersurface<T>) -> Result<RotationField> {
    if !matches!(surface.meta().kind, SurfaceKind::TubeTorus { .. }) {
        return Err(Error::input(format!("the circle field needs the tube torus, got {}", surface.name())));
    }
    Ok(RotationField { name: "circle".into(), planes: vec![(0, 1)] })
}

/// `v = P(Jx) / |P(Jx)|` with `P` the tangential projection. Agrees with the
/// Hopf field on round spheres and stays smooth on ellipsoids centred at the
/// origin, where `Jx` is never normal.
#[derive(Debug, Clone)]
pub struct ProjectedHopfField {
    complex: RotationField,
}

pub fn projected_hopf_field<T: Real>(surface: &Hypersurface<T>) -> Result<ProjectedHopfField> {
    Ok(ProjectedHopfField {
        complex: RotationField {
            name: "projected-hopf".into(),
            planes: (0..=surface.n()).map(|k| (2 * k, 2 * k + 1)).collect(),
        },
    })
}

impl ProjectedHopfField {
    fn raw<T: Real>(&self, p: &TangentPoint<T>) -> Vec<T> {
        p.project_tangent(&self.complex.apply(&p.position))
    }
}

impl<T: Real> UnitField<T> for ProjectedHopfField {
    fn name(&self) -> String {
        self.complex.name.clone()
    }

    fn value(&self, p: &TangentPoint<T>) -> Result<Vec<T>> {
        Ok(unit_or_err(&self.raw(p), "projected Hopf field")?.0)
    }

    fn param_derivatives(&self, surface: &Hypersurface<T>, p: &TangentPoint<T>) -> Result<Vec<Vec<T>>> {
        if !p.has_normal_partials() {
            return fd_param_derivatives(self, surface, p);
        }
        // y = Jx - ⟨Jx, N⟩N
        let jx = self.complex.apply(&p.position);
        let (v, len) = unit_or_err(&self.raw(p), "projected Hopf field")?;
        let jx_n = vector::dot(&jx, &p.normal);
        Ok(p.tangents
            .iter()
            .zip(&p.normal_partials)
            .map(|(t, dn)| {
                let jt = self.complex.apply(t);
                let coeff = vector::dot(&jt, &p.normal) + vector::dot(&jx, dn);
                let mut dy = jt;
                vector::axpy(&mut dy, -coeff, &p.normal);
                vector::axpy(&mut dy, -jx_n, dn);
                vector::normalize_derivative(&v, &dy, len)
            })
            .collect())
    }
}

/// `v' = (v + ε q) / |v + ε q|` with `q = w - ⟨w,N⟩N - ⟨w,v⟩v` for a fixed
/// ambient unit vector `w` drawn from `seed`.
///
/// `q ⟂ v`, so `|v + εq| ≥ 1` and the normalization never degenerates.
#[derive(Debug, Clone)]
pub struct PerturbedField<T> {
    base: Arc<dyn UnitField<T>>,
    amplitude: T,
    seed: u64,
    direction: Vec<T>,
}

pub fn perturbed_field<T: Real>(
    surface: &Hypersurface<T>,
    base: Arc<dyn UnitField<T>>,
    amplitude: T,
    seed: u64,
) -> Result<PerturbedField<T>> {
    if !(amplitude >= T::zero() && amplitude < T::one()) {
        return Err(Error::input(format!("perturbation amplitude {amplitude} outside [0, 1)")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..surface.ambient_dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let direction = vector::normalized(&raw).unwrap_or_else(|| {
        let mut e = vec![0.0; raw.len()];
        e[0] = 1.0;
        e
    });
    Ok(PerturbedField { base, amplitude, seed, direction: direction.into_iter().map(T::lit).collect() })
}

impl<T: Real> PerturbedField<T> {
    pub fn direction(&self) -> &[T] {
        &self.direction
    }

    pub fn amplitude(&self) -> T {
        self.amplitude
    }

    fn offset(&self, p: &TangentPoint<T>, v: &[T]) -> Vec<T> {
        let mut q = self.direction.clone();
        vector::reject_unit(&mut q, &p.normal);
        vector::reject_unit(&mut q, v);
        q
    }
}

impl<T: Real> UnitField<T> for PerturbedField<T> {
    fn name(&self) -> String {
        format!("perturbed({}, amplitude={}, seed={})", self.base.name(), self.amplitude, self.seed)
    }

    fn value(&self, p: &TangentPoint<T>) -> Result<Vec<T>> {
        let v = self.base.value(p)?;
        if self.amplitude == T::zero() {
            return Ok(v);
        }
        let mut y = v.clone();
        vector::axpy(&mut y, self.amplitude, &self.offset(p, &v));
        Ok(unit_or_err(&y, "perturbed field")?.0)
    }

    fn param_derivatives(&self, surface: &Hypersurface<T>, p: &TangentPoint<T>) -> Result<Vec<Vec<T>>> {
        if self.amplitude == T::zero() {
            return self.base.param_derivatives(surface, p);
        }
        if !p.has_normal_partials() {
            return fd_param_derivatives(self, surface, p);
        }
        let v0 = self.base.value(p)?;
        let dv0 = self.base.param_derivatives(surface, p)?;
        let w = &self.direction;
        let (wn, wv) = (vector::dot(w, &p.normal), vector::dot(w, &v0));
        let mut y = v0.clone();
        vector::axpy(&mut y, self.amplitude, &self.offset(p, &v0));
        let (u, len) = unit_or_err(&y, "perturbed field")?;
        Ok(dv0
            .iter()
            .zip(&p.normal_partials)
            .map(|(dv, dn)| {
                // ∂q = -(⟨w,∂N⟩N + ⟨w,N⟩∂N) - (⟨w,∂v⟩v + ⟨w,v⟩∂v)
                let mut dq = vector::scaled(&p.normal, -vector::dot(w, dn));
                vector::axpy(&mut dq, -wn, dn);
                vector::axpy(&mut dq, -vector::dot(w, dv), &v0);
                vector::axpy(&mut dq, -wv, dv);
                let mut dy = dv.clone();
                vector::axpy(&mut dy, self.amplitude, &dq);
                vector::normalize_derivative(&u, &dy, len)
            })
            .collect())
    }
}

/// Default smooth field for each catalog surface: Hopf on spheres, the circle
/// field on the tube torus, the projected Hopf field elsewhere.
pub fn natural_field<T: Real>(surface: &Hypersurface<T>) -> Result<Arc<dyn UnitField<T>>> {
    Ok(match surface.meta().kind {
        SurfaceKind::RoundSphere { .. } => Arc::new(hopf_field(surface)?),
        SurfaceKind::TubeTorus { .. } => Arc::new(circle_field(surface)?),
        _ => Arc::new(projected_hopf_field(surface)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_preconditions() {
        let torus = Hypersurface::tube_torus(3.0_f64, 1.0).unwrap();
        let sphere = Hypersurface::round_sphere(1, 1.0_f64).unwrap();
        assert!(hopf_field(&torus).is_err());
        assert!(circle_field(&sphere).is_err());
        let base: Arc<dyn UnitField<f64>> = Arc::new(hopf_field(&sphere).unwrap());
        assert!(perturbed_field(&sphere, base.clone(), 1.0, 0).is_err());
        assert!(perturbed_field(&sphere, base.clone(), -0.1, 0).is_err());
        assert!(perturbed_field(&sphere, base, 0.5, 0).is_ok());
    }

    #[test]
    fn seeds_pick_reproducible_directions() {
        let sphere = Hypersurface::round_sphere(1, 1.0_f64).unwrap();
        let base: Arc<dyn UnitField<f64>> = Arc::new(hopf_field(&sphere).unwrap());
        let a = perturbed_field(&sphere, base.clone(), 0.1, 7).unwrap();
        let b = perturbed_field(&sphere, base.clone(), 0.1, 7).unwrap();
        let c = perturbed_field(&sphere, base, 0.1, 8).unwrap();
        assert_eq!(a.direction(), b.direction());
        assert_ne!(a.direction(), c.direction());
        assert!((vector::norm(a.direction()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn natural_fields() {
        let e = Hypersurface::ellipsoid(vec![1.0, 1.2, 1.4, 1.7]).unwrap();
        assert_eq!(natural_field(&e).unwrap().name(), "projected-hopf");
        let t = Hypersurface::tube_torus(3.0_f64, 1.0).unwrap();
        assert_eq!(natural_field(&t).unwrap().name(), "circle");
    }
}
