//! Plain `&[T]` vector helpers for ambient and tangent vectors.

use crate::scalar::Real;

#[inline]
pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

#[inline]
pub fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

#[inline]
pub fn scaled<T: Real>(a: &[T], s: T) -> Vec<T> {
    a.iter().map(|&x| x * s).collect()
}

/// `y += s * x`
#[inline]
pub fn axpy<T: Real>(y: &mut [T], s: T, x: &[T]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = *yi + s * xi;
    }
}

#[inline]
pub fn sub<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

/// Returns `a / |a|`, or `None` when `|a|` is zero or not finite.
pub fn normalized<T: Real>(a: &[T]) -> Option<Vec<T>> {
    let n = norm(a);
    if n > T::zero() && n.is_finite() {
        Some(scaled(a, n.recip()))
    } else {
        None
    }
}

/// Removes the component of `a` along the unit vector `u`.
#[inline]
pub fn reject_unit<T: Real>(a: &mut [T], u: &[T]) {
    let c = dot(a, u);
    axpy(a, -c, u);
}

/// `(I - u uᵀ) a / scale` for a unit vector `u`: the derivative of `y / |y|`
/// applied to `a` when `u = y / |y|` and `scale = |y|`.
pub fn normalize_derivative<T: Real>(u: &[T], a: &[T], scale: T) -> Vec<T> {
    let mut out = a.to_vec();
    reject_unit(&mut out, u);
    out.iter_mut().for_each(|x| *x = *x / scale);
    out
}
