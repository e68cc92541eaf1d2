use itertools::Itertools;

use super::matrix::{det_in_place, SquareMatrix};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sum::CompensatedSum;

/// Largest sub-block gathered on the stack.
const STACK_DIM: usize = 8;

/// Row/column selector for a `k x k` sub-matrix. Indices are zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinorIndex {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorIndex {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::input("minor rows and columns differ in length"));
        }
        let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        if !increasing(&rows) || !increasing(&cols) {
            return Err(Error::input("minor indices must be strictly increasing"));
        }
        Ok(Self { rows, cols })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    fn check(&self, dim: usize) -> Result<()> {
        match self.rows.iter().chain(&self.cols).find(|&&i| i >= dim) {
            Some(i) => Err(Error::input(format!("minor index {i} out of range for dimension {dim}"))),
            None => Ok(()),
        }
    }
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Determinant of `m` restricted to the given rows and columns, unchecked.
pub(crate) fn gathered_det<T: Real>(m: &SquareMatrix<T>, rows: &[usize], cols: &[usize]) -> T {
    let k = rows.len();
    if k <= STACK_DIM {
        let mut buf = [T::zero(); STACK_DIM * STACK_DIM];
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                buf[i * k + j] = m[(r, c)];
            }
        }
        det_in_place(&mut buf[..k * k], k)
    } else {
        let mut buf: Vec<T> = rows.iter().flat_map(|&r| cols.iter().map(move |&c| m[(r, c)])).collect();
        det_in_place(&mut buf, k)
    }
}

/// Determinant of the sub-matrix selected by `idx`; the empty minor is 1.
pub fn minor_det<T: Real>(m: &SquareMatrix<T>, idx: &MinorIndex) -> Result<T> {
    idx.check(m.dim())?;
    Ok(gathered_det(m, &idx.rows, &idx.cols))
}

/// Sum of squares of all `k x k` minors of `m`, in lexicographic order.
pub fn minor_square_sum<T: Real>(m: &SquareMatrix<T>, k: usize) -> Result<T> {
    let d = m.dim();
    if k == 0 || k > d {
        return Err(Error::input(format!("minor order {k} out of range 1..={d}")));
    }
    let mut acc = CompensatedSum::new();
    for rows in (0..d).combinations(k) {
        for cols in (0..d).combinations(k) {
            let v = gathered_det(m, &rows, &cols);
            acc.add(v * v);
        }
    }
    Ok(acc.value())
}

/// Max-norm of `v_1 ∧ … ∧ v_A` in the coordinate basis of `Λ^A`: the largest
/// `|A x A minor|` of the matrix whose columns are the vectors.
pub fn wedge_max_norm<T: Real>(vectors: &[Vec<T>]) -> Result<T> {
    let count = vectors.len();
    let Some(first) = vectors.first() else {
        return Err(Error::input("wedge of an empty list of vectors"));
    };
    let d = first.len();
    if vectors.iter().any(|v| v.len() != d) {
        return Err(Error::input("wedge factors have different lengths"));
    }
    if count > d {
        return Ok(T::zero());
    }
    // Square padding whose leading columns are the vectors.
    let padded = SquareMatrix::from_fn(d, |a, b| if b < count { vectors[b][a] } else { T::zero() });
    let cols: Vec<usize> = (0..count).collect();
    Ok((0..d)
        .combinations(count)
        .map(|rows| gathered_det(&padded, &rows, &cols).abs())
        .fold(T::zero(), T::max))
}

/// Both sides of `Σ det²(n-minors of M) ≥ C(2n, n) |det M|` for a `2n x 2n` matrix.
pub fn minor_inequality_check<T: Real>(m: &SquareMatrix<T>) -> Result<(T, T)> {
    let d = m.dim();
    if d == 0 || d % 2 == 1 {
        return Err(Error::input(format!("minor inequality needs a positive even dimension, got {d}")));
    }
    let n = d / 2;
    let lhs = minor_square_sum(m, n)?;
    let rhs = T::from_u64(binomial(d, n)).expect("binomial fits") * m.det().abs();
    Ok((lhs, rhs))
}

/// Coefficient of `t^k` in `det(H + tA)` by the generalized Laplace expansion
/// `Σ_{|R|=|C|=k} ± det A[R, C] · det H[R̄, C̄]`.
///
/// This is the minor route to the coefficients, independent of the
/// interpolation route in [`det_poly_coeffs`](super::det_poly_coeffs).
pub fn laplace_coefficient<T: Real>(h: &SquareMatrix<T>, a: &SquareMatrix<T>, k: usize) -> Result<T> {
    let d = h.dim();
    if a.dim() != d {
        return Err(Error::input("laplace_coefficient: dimension mismatch"));
    }
    if k > d {
        return Ok(T::zero());
    }
    let mut acc = CompensatedSum::new();
    for rows in (0..d).combinations(k) {
        let rows_c: Vec<usize> = (0..d).filter(|i| !rows.contains(i)).collect();
        let a_rows_zero = rows.iter().all(|&r| a.row(r).iter().all(|x| x.is_zero()));
        if k > 0 && a_rows_zero {
            continue;
        }
        for cols in (0..d).combinations(k) {
            let cols_c: Vec<usize> = (0..d).filter(|j| !cols.contains(j)).collect();
            let sign_exp: usize = rows.iter().sum::<usize>() + cols.iter().sum::<usize>();
            let term = gathered_det(a, &rows, &cols) * gathered_det(h, &rows_c, &cols_c);
            acc.add(if sign_exp.is_multiple_of(2) { term } else { -term });
        }
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rot() -> SquareMatrix<f64> {
        SquareMatrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap()
    }

    #[test]
    fn identity_and_rotation_minors() {
        let id = SquareMatrix::<f64>::identity(4);
        let idx = MinorIndex::new(vec![0, 1], vec![0, 1]).unwrap();
        assert_eq!(minor_det(&id, &idx).unwrap(), 1.0);
        assert_eq!(minor_det(&rot(), &idx).unwrap(), 1.0);
        let empty = MinorIndex::new(vec![], vec![]).unwrap();
        assert_eq!(minor_det(&id, &empty).unwrap(), 1.0);
    }

    #[test]
    fn minor_index_validation() {
        assert!(MinorIndex::new(vec![0, 1], vec![0]).is_err());
        assert!(MinorIndex::new(vec![1, 0], vec![0, 1]).is_err());
        assert!(MinorIndex::new(vec![0, 0], vec![0, 1]).is_err());
        let idx = MinorIndex::new(vec![0, 4], vec![0, 1]).unwrap();
        assert!(matches!(minor_det(&SquareMatrix::<f64>::identity(4), &idx), Err(Error::Input(_))));
    }

    #[test]
    fn hopf_block_square_sum() {
        let hopf = SquareMatrix::from_rows(&[vec![0.0, -1.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0; 3]]).unwrap();
        assert_eq!(minor_square_sum(&hopf, 1).unwrap(), 2.0);
        assert_eq!(minor_square_sum(&hopf, 3).unwrap(), 0.0);
        let zero = SquareMatrix::<f64>::zeros(4);
        for k in 1..=4 {
            assert_eq!(minor_square_sum(&zero, k).unwrap(), 0.0);
        }
        assert!(minor_square_sum(&zero, 0).is_err());
        assert!(minor_square_sum(&zero, 5).is_err());
    }

    #[test]
    fn wedge_norms() {
        let e1 = vec![1.0, 0.0, 0.0];
        let e2 = vec![0.0, 1.0, 0.0];
        assert_eq!(wedge_max_norm(&[e1.clone(), e2.clone()]).unwrap(), 1.0);
        assert_eq!(wedge_max_norm(&[vec![2.0, 0.0, 0.0], vec![0.0, 3.0, 0.0]]).unwrap(), 6.0);
        let u = vec![0.3, -0.7, 0.2];
        assert_eq!(wedge_max_norm(&[u.clone(), u]).unwrap(), 0.0);
        assert!(wedge_max_norm::<f64>(&[]).is_err());
        assert!(wedge_max_norm(&[e1, vec![1.0]]).is_err());
    }

    #[test]
    fn inequality_examples() {
        assert_eq!(minor_inequality_check(&rot()).unwrap(), (2.0, 2.0));
        assert_eq!(minor_inequality_check(&SquareMatrix::<f64>::zeros(4)).unwrap(), (0.0, 0.0));
        assert!(minor_inequality_check(&SquareMatrix::<f64>::zeros(3)).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(2, 1), 2);
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn laplace_matches_closed_forms() {
        let h = SquareMatrix::<f64>::identity(3);
        let a = SquareMatrix::from_rows(&[vec![0.0, -1.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0; 3]]).unwrap();
        let c: Vec<f64> = (0..=3).map(|k| laplace_coefficient(&h, &a, k).unwrap()).collect();
        assert_eq!(c, vec![1.0, 0.0, 1.0, 0.0]);
    }
}
