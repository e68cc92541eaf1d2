use super::surface::TangentPoint;
use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigen, vector, SquareMatrix};
use crate::scalar::Real;

/// Tolerance for the unit-length and tangency preconditions on frame inputs.
pub const FRAME_INPUT_TOL: f64 = 1e-8;

/// Shape operator `S_x(X) = D_X N` on `T_xM`, with `N` the surface's unit normal.
///
/// With the outward normal on `S^m(r)` this is `(1/r)·I`, and `det S` is the
/// Jacobian of the Gauss map.
#[derive(Debug, Clone)]
pub struct ShapeOperator<T> {
    /// Matrix in the coordinate basis: `S(∂_j) = Σ_i coord[(i, j)] ∂_i`.
    pub coord: SquareMatrix<T>,
    /// Second fundamental form `L_ij = ⟨S(∂_i), ∂_j⟩` in the coordinate basis.
    pub second_form: SquareMatrix<T>,
}

impl<T: Real> ShapeOperator<T> {
    /// `S(X)` for an ambient tangent vector `X`.
    pub fn apply(&self, p: &TangentPoint<T>, x: &[T]) -> Result<Vec<T>> {
        let c = p.coords(x)?;
        Ok(apply_coords(p, &c))
    }
}

/// `Σ c_i ∂N/∂u_i`.
fn apply_coords<T: Real>(p: &TangentPoint<T>, c: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); p.position.len()];
    for (ci, dn) in c.iter().zip(&p.normal_partials) {
        vector::axpy(&mut out, *ci, dn);
    }
    out
}

fn require_partials<T: Real>(p: &TangentPoint<T>) -> Result<()> {
    if p.has_normal_partials() {
        Ok(())
    } else {
        Err(Error::input("tangent point was evaluated without normal derivatives"))
    }
}

pub fn shape_operator<T: Real>(p: &TangentPoint<T>) -> Result<ShapeOperator<T>> {
    require_partials(p)?;
    let m = p.tangents.len();
    let second_form = SquareMatrix::from_fn(m, |i, j| vector::dot(&p.normal_partials[i], &p.tangents[j]));
    // S(∂_j) = ∂_j N; its coordinates solve g c = (⟨∂_j N, ∂_k⟩)_k
    let mut coord = SquareMatrix::zeros(m);
    for j in 0..m {
        let rhs: Vec<T> = (0..m).map(|k| second_form[(j, k)]).collect();
        let c = p.metric.solve(&rhs)?;
        for i in 0..m {
            coord[(i, j)] = c[i];
        }
    }
    Ok(ShapeOperator { coord, second_form })
}

/// Orthonormal tangent frame `{e_1, …, e_{2n}, e_{2n+1} = v}` with
/// `h_AB = ⟨S(e_A), e_B⟩`.
#[derive(Debug, Clone)]
pub struct AdaptedFrame<T> {
    /// Frame vectors in ambient coordinates; the last one is the field value.
    pub vectors: Vec<Vec<T>>,
    /// Chart coordinates of each frame vector.
    pub coords: Vec<Vec<T>>,
    pub h: SquareMatrix<T>,
}

impl<T: Real> AdaptedFrame<T> {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn field_value(&self) -> &[T] {
        self.vectors.last().expect("frame is never empty")
    }

    /// Replaces `e_1 … e_{2n}` by `e'_j = Σ_i q[(i, j)] e_i` for an orthogonal
    /// `2n x 2n` matrix `q`, keeping the last vector.
    pub fn rotated(&self, p: &TangentPoint<T>, q: &SquareMatrix<T>) -> Result<Self> {
        let k = self.dim() - 1;
        if q.dim() != k {
            return Err(Error::input(format!("rotation must be {k}x{k}")));
        }
        let mut vectors = Vec::with_capacity(k + 1);
        for j in 0..k {
            let mut e = vec![T::zero(); self.vectors[0].len()];
            for i in 0..k {
                vector::axpy(&mut e, q[(i, j)], &self.vectors[i]);
            }
            vectors.push(e);
        }
        vectors.push(self.field_value().to_vec());
        frame_with_h(p, vectors)
    }
}

fn frame_with_h<T: Real>(p: &TangentPoint<T>, vectors: Vec<Vec<T>>) -> Result<AdaptedFrame<T>> {
    let coords = vectors.iter().map(|e| p.coords(e)).collect::<Result<Vec<_>>>()?;
    let images: Vec<Vec<T>> = coords.iter().map(|c| apply_coords(p, c)).collect();
    let d = vectors.len();
    let h = SquareMatrix::from_fn(d, |a, b| vector::dot(&images[a], &vectors[b]));
    Ok(AdaptedFrame { vectors, coords, h })
}

/// Gram–Schmidt with pivoting: extends the orthonormal `seed` vectors by
/// chart tangents, always taking the candidate with the largest residual.
fn complete_orthonormal<T: Real>(seed: Vec<Vec<T>>, candidates: &[Vec<T>], total: usize) -> Result<Vec<Vec<T>>> {
    let mut basis = seed;
    let mut residuals: Vec<Vec<T>> = candidates.to_vec();
    while basis.len() < total {
        for r in residuals.iter_mut() {
            for b in &basis {
                vector::reject_unit(r, b);
            }
        }
        let (best, best_norm) = residuals
            .iter()
            .enumerate()
            .map(|(i, r)| (i, vector::norm(r)))
            .fold((usize::MAX, T::zero()), |acc, (i, nrm)| if nrm > acc.1 { (i, nrm) } else { acc });
        if best == usize::MAX || best_norm <= T::lit(1e-10) {
            return Err(Error::Numerical("tangent basis is degenerate; cannot complete frame".into()));
        }
        let mut e = residuals.swap_remove(best);
        // second pass against round-off
        for b in &basis {
            vector::reject_unit(&mut e, b);
        }
        basis.push(vector::normalized(&e).ok_or_else(|| Error::Numerical("zero frame vector".into()))?);
    }
    Ok(basis)
}

/// Adapted frame at `p` whose last vector is the unit tangent vector `v`.
pub fn adapted_frame<T: Real>(p: &TangentPoint<T>, v: &[T]) -> Result<AdaptedFrame<T>> {
    require_partials(p)?;
    let tol = T::lit(FRAME_INPUT_TOL);
    if v.len() != p.position.len() {
        return Err(Error::input("field vector has the wrong ambient dimension"));
    }
    if (vector::norm(v) - T::one()).abs() > tol {
        return Err(Error::input(format!("field vector is not unit (|v| = {})", vector::norm(v))));
    }
    if vector::dot(v, &p.normal).abs() > tol {
        return Err(Error::input("field vector is not tangent"));
    }
    let m = p.tangents.len();
    let mut basis = complete_orthonormal(vec![v.to_vec()], &p.tangents, m)?;
    basis.rotate_left(1);
    frame_with_h(p, basis)
}

/// Orthonormal eigenbasis of `S_x` ordered by descending principal curvature.
#[derive(Debug, Clone)]
pub struct PrincipalFrame<T> {
    pub vectors: Vec<Vec<T>>,
    pub curvatures: Vec<T>,
    /// `h` in this frame; diagonal up to round-off.
    pub h: SquareMatrix<T>,
}

pub fn principal_frame<T: Real>(p: &TangentPoint<T>) -> Result<PrincipalFrame<T>> {
    require_partials(p)?;
    let m = p.tangents.len();
    let base = complete_orthonormal(Vec::new(), &p.tangents, m)?;
    let frame = frame_with_h(p, base)?;
    let (curvatures, q) = symmetric_eigen(&frame.h)?;
    let mut vectors = Vec::with_capacity(m);
    for j in 0..m {
        let mut u = vec![T::zero(); p.position.len()];
        for i in 0..m {
            vector::axpy(&mut u, q[(i, j)], &frame.vectors[i]);
        }
        let tiny = T::lit(1e-12);
        if let Some(first) = u.iter().copied().find(|x| x.abs() > tiny) {
            if first < T::zero() {
                u.iter_mut().for_each(|x| *x = -*x);
            }
        }
        vectors.push(u);
    }
    let rotated = frame_with_h(p, vectors)?;
    Ok(PrincipalFrame { vectors: rotated.vectors, curvatures, h: rotated.h })
}
