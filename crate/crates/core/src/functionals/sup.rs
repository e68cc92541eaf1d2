use std::cmp::Ordering;

use serde::Serialize;

use crate::error::Result;
use crate::geometry::{principal_frame, QuadratureGrid};
use crate::linalg::wedge_max_norm;
use crate::scalar::Real;
use crate::sum::par_max_channels;

/// Grid-maximum estimates of the shape-operator norms.
///
/// Maxima over finitely many nodes never exceed the true suprema, so these
/// are lower estimates; [`sup_grid_factor`] gives the refinement used by
/// the verification suites.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupConstants<T> {
    /// `𝒮 = max |λ_i|`.
    pub script_s: T,
    /// `s_bracket[A - 1] = S^[A]` for `A = 1 … 2n+1`.
    pub s_bracket: Vec<T>,
    pub resolution: Vec<usize>,
}

impl<T: Real> SupConstants<T> {
    /// `S^[A]`, or `None` outside `1..=2n+1`.
    pub fn bracket(&self, order: usize) -> Option<T> {
        order.checked_sub(1).and_then(|i| self.s_bracket.get(i)).copied()
    }
}

/// Per-axis refinement of the integration grid used for sup estimates.
pub const fn sup_grid_factor() -> usize {
    2
}

/// `𝒮` and every `S^[A]` as maxima over the nodes of `grid`.
///
/// At each node the shape operator is diagonalized, so `S(u_i) = λ_i u_i`
/// and the wedge of any `A` images has max-norm `∏ |λ_i|` over the tuple.
/// The largest tuple is therefore the one carrying the `A` largest `|λ_i|`;
/// only that tuple is passed to [`wedge_max_norm`].
pub fn sup_constants<T: Real>(grid: &QuadratureGrid<T>) -> Result<SupConstants<T>> {
    let m = grid.surface().dim();
    let maxes = par_max_channels(grid.len(), m + 1, |i, out| {
        let node = grid.node(i)?;
        let pf = principal_frame(&node.point)?;
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&x, &y| pf.curvatures[y].abs().partial_cmp(&pf.curvatures[x].abs()).unwrap_or(Ordering::Equal));
        out[0] = pf.curvatures[order[0]].abs();
        for a in 1..=m {
            let mut tuple = order[..a].to_vec();
            tuple.sort_unstable();
            // S(u_i) has coordinates h[i][·] in the principal frame.
            let images: Vec<Vec<T>> = tuple.iter().map(|&r| pf.h.row(r).to_vec()).collect();
            out[a] = wedge_max_norm(&images)?;
        }
        Ok(())
    })?;
    Ok(SupConstants { script_s: maxes[0], s_bracket: maxes[1..].to_vec(), resolution: grid.resolution().to_vec() })
}
