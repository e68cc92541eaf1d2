//! Compensated accumulation and deterministic parallel reductions.
//!
//! Parallel reductions split the index range into fixed-size chunks that do
//! not depend on the number of worker threads. Each chunk is accumulated
//! in index order and the chunk partials are merged in chunk order, so the
//! result is bit-identical for any thread count.

use rayon::prelude::*;

use crate::error::Result;
use crate::scalar::Real;

/// Number of consecutive indices folded by one task.
pub const CHUNK: usize = 2048;

/// Neumaier (improved Kahan–Babuška) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    comp: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self { sum: T::zero(), comp: T::zero() }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    /// Folds another partial sum into this one.
    #[inline]
    pub fn merge(&mut self, other: &Self) {
        self.add(other.sum);
        self.add(other.comp);
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

impl<T: Real> FromIterator<T> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Self::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of a sequence, in iteration order.
pub fn compensated_sum<T: Real, I: IntoIterator<Item = T>>(iter: I) -> T {
    iter.into_iter().collect::<CompensatedSum<T>>().value()
}

/// Compensated dot product.
pub fn compensated_dot<T: Real>(a: &[T], b: &[T]) -> T {
    compensated_sum(a.iter().zip(b).map(|(&x, &y)| x * y))
}

/// Sums `width` parallel channels of `f(i)` over `0..count`.
///
/// `f` fills its output slice with the contribution of index `i`. The first
/// error encountered in index order is returned.
pub fn par_sum_channels<T, F>(count: usize, width: usize, f: F) -> Result<Vec<T>>
where
    T: Real,
    F: Fn(usize, &mut [T]) -> Result<()> + Sync,
{
    Ok(par_reduce_channels(count, width, 0, |i, sums, _| f(i, sums))?.0)
}

/// Channel-wise maximum of `f(i)` over `0..count`; channels start at `-inf`.
pub fn par_max_channels<T, F>(count: usize, width: usize, f: F) -> Result<Vec<T>>
where
    T: Real,
    F: Fn(usize, &mut [T]) -> Result<()> + Sync,
{
    Ok(par_reduce_channels(count, 0, width, |i, _, maxes| f(i, maxes))?.1)
}

/// Sum channels and max channels in one pass.
///
/// For each index `f` receives a zeroed sum buffer and a max buffer filled
/// with `-inf`. Returns `(sums, maxes)`.
pub fn par_reduce_channels<T, F>(count: usize, sum_width: usize, max_width: usize, f: F) -> Result<(Vec<T>, Vec<T>)>
where
    T: Real,
    F: Fn(usize, &mut [T], &mut [T]) -> Result<()> + Sync,
{
    let chunks = count.div_ceil(CHUNK);
    let partials: Vec<Result<(Vec<CompensatedSum<T>>, Vec<T>)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = vec![CompensatedSum::new(); sum_width];
            let mut best = vec![T::neg_infinity(); max_width];
            let mut sbuf = vec![T::zero(); sum_width];
            let mut mbuf = vec![T::zero(); max_width];
            for i in c * CHUNK..((c + 1) * CHUNK).min(count) {
                sbuf.iter_mut().for_each(|b| *b = T::zero());
                mbuf.iter_mut().for_each(|b| *b = T::neg_infinity());
                f(i, &mut sbuf, &mut mbuf)?;
                for (a, &b) in acc.iter_mut().zip(&sbuf) {
                    a.add(b);
                }
                for (m, &b) in best.iter_mut().zip(&mbuf) {
                    *m = m.max(b);
                }
            }
            Ok((acc, best))
        })
        .collect();

    let mut total = vec![CompensatedSum::new(); sum_width];
    let mut best = vec![T::neg_infinity(); max_width];
    for part in partials {
        let (sums, maxes) = part?;
        for (t, p) in total.iter_mut().zip(&sums) {
            t.merge(p);
        }
        for (m, p) in best.iter_mut().zip(maxes) {
            *m = m.max(p);
        }
    }
    Ok((total.iter().map(CompensatedSum::value).collect(), best))
}
