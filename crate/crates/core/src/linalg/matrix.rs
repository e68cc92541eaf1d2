use std::fmt;
use std::ops::{Index, IndexMut};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense row-major square matrix; entry `(a, b)` is row `a`, column `b`.
#[derive(Clone, PartialEq, Serialize)]
pub struct SquareMatrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: Real> SquareMatrix<T> {
    /// Builds a matrix from row-major entries, rejecting ragged or non-finite input.
    pub fn new(dim: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::input(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::input("matrix entries must be finite"));
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::input("rows must all have length equal to the row count"));
        }
        Self::new(dim, rows.concat())
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                entries.push(f(a, b));
            }
        }
        Self { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![T::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |a, b| if a == b { T::one() } else { T::zero() })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[T] {
        &self.entries
    }

    pub fn row(&self, a: usize) -> &[T] {
        &self.entries[a * self.dim..(a + 1) * self.dim]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |a, b| self[(b, a)])
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.same_dim(rhs)?;
        let d = self.dim;
        Ok(Self::from_fn(d, |a, b| (0..d).fold(T::zero(), |acc, k| acc + self[(a, k)] * rhs[(k, b)])))
    }

    /// `self + s * rhs`
    pub fn add_scaled(&self, s: T, rhs: &Self) -> Result<Self> {
        self.same_dim(rhs)?;
        Ok(Self {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(&x, &y)| x + s * y).collect(),
        })
    }

    pub fn scaled(&self, s: T) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|&x| x * s).collect() }
    }

    /// Leading `k x k` block.
    pub fn upper_left(&self, k: usize) -> Self {
        Self::from_fn(k.min(self.dim), |a, b| self[(a, b)])
    }

    pub fn frobenius_sq(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, &x| acc + x * x)
    }

    pub fn max_abs(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, &x| acc.max(x.abs()))
    }

    pub fn max_asymmetry(&self) -> T {
        let mut worst = T::zero();
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                worst = worst.max((self[(a, b)] - self[(b, a)]).abs());
            }
        }
        worst
    }

    /// Determinant by LU factorization with partial pivoting.
    pub fn det(&self) -> T {
        let mut buf = self.entries.clone();
        det_in_place(&mut buf, self.dim)
    }

    /// Solves `self * x = b` by LU with partial pivoting.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        let d = self.dim;
        if b.len() != d {
            return Err(Error::input("right-hand side length does not match matrix"));
        }
        let mut m = self.entries.clone();
        let mut x = b.to_vec();
        for col in 0..d {
            let piv = (col..d)
                .max_by(|&i, &j| m[i * d + col].abs().partial_cmp(&m[j * d + col].abs()).unwrap())
                .unwrap_or(col);
            if m[piv * d + col] == T::zero() {
                return Err(Error::Numerical("singular linear system".into()));
            }
            if piv != col {
                for k in 0..d {
                    m.swap(piv * d + k, col * d + k);
                }
                x.swap(piv, col);
            }
            let p = m[col * d + col];
            for r in col + 1..d {
                let f = m[r * d + col] / p;
                if f != T::zero() {
                    for k in col..d {
                        m[r * d + k] = m[r * d + k] - f * m[col * d + k];
                    }
                    x[r] = x[r] - f * x[col];
                }
            }
        }
        for r in (0..d).rev() {
            let mut s = x[r];
            for k in r + 1..d {
                s = s - m[r * d + k] * x[k];
            }
            x[r] = s / m[r * d + r];
        }
        Ok(x)
    }

    fn same_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim == rhs.dim {
            Ok(())
        } else {
            Err(Error::input(format!("dimension mismatch: {} vs {}", self.dim, rhs.dim)))
        }
    }
}

impl<T> Index<(usize, usize)> for SquareMatrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (a, b): (usize, usize)) -> &T {
        &self.entries[a * self.dim + b]
    }
}

impl<T> IndexMut<(usize, usize)> for SquareMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (a, b): (usize, usize)) -> &mut T {
        &mut self.entries[a * self.dim + b]
    }
}

impl<T: fmt::Debug> fmt::Debug for SquareMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.entries.chunks(self.dim.max(1)).collect();
        f.debug_struct("SquareMatrix").field("dim", &self.dim).field("rows", &rows).finish()
    }
}

/// Determinant of the row-major `d x d` matrix in `m`, destroying `m`.
pub(crate) fn det_in_place<T: Real>(m: &mut [T], d: usize) -> T {
    match d {
        0 => return T::one(),
        1 => return m[0],
        2 => return m[0] * m[3] - m[1] * m[2],
        3 => {
            return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
                + m[2] * (m[3] * m[7] - m[4] * m[6])
        }
        _ => {}
    }
    let mut det = T::one();
    for col in 0..d {
        let mut piv = col;
        let mut best = m[col * d + col].abs();
        for r in col + 1..d {
            let v = m[r * d + col].abs();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == T::zero() {
            return T::zero();
        }
        if piv != col {
            for k in 0..d {
                m.swap(piv * d + k, col * d + k);
            }
            det = -det;
        }
        let p = m[col * d + col];
        det = det * p;
        for r in col + 1..d {
            let f = m[r * d + col] / p;
            if f != T::zero() {
                for k in col + 1..d {
                    m[r * d + k] = m[r * d + k] - f * m[col * d + k];
                }
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(SquareMatrix::<f64>::new(2, vec![1.0; 3]).is_err());
        assert!(SquareMatrix::new(1, vec![f64::NAN]).is_err());
        assert!(SquareMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
    }

    #[test]
    fn det_and_solve() {
        let m = SquareMatrix::from_rows(&[
            vec![2.0_f64, 1.0, 0.0, 3.0],
            vec![1.0, -1.0, 4.0, 0.0],
            vec![0.0, 2.0, 1.0, 1.0],
            vec![5.0, 0.0, 1.0, 2.0],
        ])
        .unwrap();
        assert!((m.det() - 74.0).abs() < 1e-12);
        let x = m.solve(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        let r: Vec<f64> = (0..4).map(|a| (0..4).map(|b| m[(a, b)] * x[b]).sum()).collect();
        for (ri, bi) in r.iter().zip([1.0, 2.0, 3.0, 4.0]) {
            assert!((ri - bi).abs() < 1e-12);
        }
        assert!(SquareMatrix::<f64>::zeros(3).solve(&[1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn small_and_lu_determinants_agree() {
        let m = SquareMatrix::from_rows(&[vec![1.0_f64, 2.0, 3.0], vec![0.5, -1.0, 2.0], vec![4.0, 0.0, 1.0]]).unwrap();
        let mut buf = m.as_slice().to_vec();
        // Force the LU path by embedding into 4x4 with a unit corner.
        let big = SquareMatrix::from_fn(4, |a, b| match (a, b) {
            (3, 3) => 1.0,
            (3, _) | (_, 3) => 0.0,
            _ => m[(a, b)],
        });
        let small = det_in_place(&mut buf, 3);
        assert!((small - big.det()).abs() < 1e-12);
        assert!((small - 26.0).abs() < 1e-12);
    }
}
