use super::matrix::SquareMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in descending order and the matching unit
/// eigenvectors as the columns of the second matrix.
pub fn symmetric_eigen<T: Real>(m: &SquareMatrix<T>) -> Result<(Vec<T>, SquareMatrix<T>)> {
    let d = m.dim();
    let scale = m.max_abs().max(T::min_positive_value());
    let mut a = SquareMatrix::from_fn(d, |i, j| (m[(i, j)] + m[(j, i)]) / T::lit(2.0));
    let mut v = SquareMatrix::<T>::identity(d);
    let tol = T::epsilon() * scale;

    let mut converged = d < 2;
    for _ in 0..MAX_SWEEPS {
        let off = (0..d)
            .flat_map(|p| (p + 1..d).map(move |q| (p, q)))
            .fold(T::zero(), |acc, (p, q)| acc.max(a[(p, q)].abs()));
        if off <= tol {
            converged = true;
            break;
        }
        for p in 0..d {
            for q in p + 1..d {
                let apq = a[(p, q)];
                if apq.abs() <= tol * T::lit(1e-3) {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = (t * t + T::one()).sqrt().recip();
                let s = t * c;
                for k in 0..d {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..d {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..d {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::Numerical("Jacobi eigen-solver did not converge".into()));
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[(j, j)].partial_cmp(&a[(i, i)]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = SquareMatrix::from_fn(d, |r, c| v[(r, order[c])]);
    Ok((values, vectors))
}
