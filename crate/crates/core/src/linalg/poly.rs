use std::sync::OnceLock;

use num_rational::Ratio;
use serde::Serialize;

use super::matrix::SquareMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sum::CompensatedSum;

/// Largest matrix dimension supported by [`det_poly_coeffs`].
pub const MAX_POLY_DIM: usize = 12;

/// Coefficients `c_0, …, c_d` of a polynomial in `t`; index is the degree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientVector<T>(pub Vec<T>);

impl<T: Real> CoefficientVector<T> {
    pub fn degree_bound(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn get(&self, k: usize) -> T {
        self.0.get(k).copied().unwrap_or_else(T::zero)
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    /// Horner evaluation.
    pub fn eval(&self, t: T) -> T {
        self.0.iter().rev().fold(T::zero(), |acc, &c| acc * t + c)
    }
}

/// Interpolation nodes `0, 1, -1, 2, -2, …` (`count` of them).
pub fn interpolation_nodes(count: usize) -> Vec<i128> {
    (0..count as i128).map(|j| if j % 2 == 1 { (j + 1) / 2 } else { -(j / 2) }).collect()
}

/// Exact inverse Vandermonde matrix for `interpolation_nodes(d + 1)`:
/// entry `[k][j]` is the `t^k` coefficient of the `j`-th Lagrange basis polynomial.
fn inverse_vandermonde(d: usize) -> &'static [Vec<Ratio<i128>>] {
    static TABLES: OnceLock<Vec<Vec<Vec<Ratio<i128>>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| (0..=MAX_POLY_DIM).map(build_inverse_vandermonde).collect());
    &tables[d]
}

fn build_inverse_vandermonde(d: usize) -> Vec<Vec<Ratio<i128>>> {
    let nodes = interpolation_nodes(d + 1);
    let mut out = vec![vec![Ratio::from_integer(0); d + 1]; d + 1];
    for (j, &tj) in nodes.iter().enumerate() {
        // numerator ∏_{m≠j} (t - t_m), low degree first
        let mut num = vec![1i128];
        let mut den = 1i128;
        for (m, &tm) in nodes.iter().enumerate() {
            if m == j {
                continue;
            }
            let mut next = vec![0i128; num.len() + 1];
            for (p, &c) in num.iter().enumerate() {
                next[p + 1] += c;
                next[p] -= tm * c;
            }
            num = next;
            den *= tj - tm;
        }
        for (k, &c) in num.iter().enumerate() {
            out[k][j] = Ratio::new(c, den);
        }
    }
    out
}

fn ratio_to<T: Real>(r: &Ratio<i128>) -> T {
    T::from_i128(*r.numer()).expect("numerator fits") / T::from_i128(*r.denom()).expect("denominator fits")
}

/// Coefficients of `det(H + tA)` as a polynomial in `t`.
///
/// The determinant is sampled at `d + 1` integer nodes and the samples are
/// mapped to coefficients through the exact rational inverse Vandermonde
/// matrix, accumulated with compensated sums.
pub fn det_poly_coeffs<T: Real>(h: &SquareMatrix<T>, a: &SquareMatrix<T>) -> Result<CoefficientVector<T>> {
    let d = h.dim();
    if a.dim() != d {
        return Err(Error::input(format!("det_poly_coeffs: dimension mismatch {} vs {}", d, a.dim())));
    }
    if d > MAX_POLY_DIM {
        return Err(Error::input(format!("det_poly_coeffs supports dimension <= {MAX_POLY_DIM}")));
    }
    let samples: Vec<T> = interpolation_nodes(d + 1)
        .into_iter()
        .map(|t| {
            let t = T::from_i128(t).expect("node fits");
            h.add_scaled(t, a).map(|m| m.det())
        })
        .collect::<Result<_>>()?;
    let inv = inverse_vandermonde(d);
    let coeffs = inv
        .iter()
        .enumerate()
        .map(|(k, row)| {
            if k == 0 {
                // node 0 is first, so c_0 is the sample there exactly
                return samples[0];
            }
            let mut acc = CompensatedSum::new();
            for (w, &y) in row.iter().zip(&samples) {
                acc.add(ratio_to::<T>(w) * y);
            }
            acc.value()
        })
        .collect();
    Ok(CoefficientVector(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_alternate() {
        assert_eq!(interpolation_nodes(6), vec![0, 1, -1, 2, -2, 3]);
    }

    #[test]
    fn inverse_vandermonde_is_exact() {
        for d in 0..=MAX_POLY_DIM {
            let nodes = interpolation_nodes(d + 1);
            let inv = build_inverse_vandermonde(d);
            for (i, &ti) in nodes.iter().enumerate() {
                for (j, _) in nodes.iter().enumerate() {
                    // Σ_k V[i][k] inv[k][j] = δ_ij
                    let mut s = Ratio::from_integer(0i128);
                    let mut p = 1i128;
                    for row in &inv {
                        s += row[j] * p;
                        p *= ti;
                    }
                    assert_eq!(s, Ratio::from_integer((i == j) as i128), "d={d} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn rotation_block_gives_one_plus_t_squared() {
        let h = SquareMatrix::<f64>::identity(3);
        let a = SquareMatrix::from_rows(&[vec![0.0, -1.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0; 3]]).unwrap();
        let c = det_poly_coeffs(&h, &a).unwrap();
        let expect = [1.0, 0.0, 1.0, 0.0];
        for (x, e) in c.as_slice().iter().zip(expect) {
            assert!((x - e).abs() < 1e-14, "{:?}", c);
        }
        assert!((c.eval(2.0) - 5.0).abs() < 1e-13);
    }

    #[test]
    fn zero_perturbation_is_constant() {
        let h = SquareMatrix::from_rows(&[vec![2.0, 1.0], vec![0.5, 3.0]]).unwrap();
        let c = det_poly_coeffs(&h, &SquareMatrix::zeros(2)).unwrap();
        assert_eq!(c.as_slice(), &[5.5, 0.0, 0.0]);
    }

    #[test]
    fn mismatch_is_rejected() {
        let err = det_poly_coeffs(&SquareMatrix::<f64>::identity(2), &SquareMatrix::identity(3));
        assert!(matches!(err, Err(Error::Input(_))));
    }
}
