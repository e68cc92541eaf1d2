use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::UnitField;
use crate::functionals::{integrate, FieldIntegrals};
use crate::geometry::{build_grid, Hypersurface};
use crate::scalar::Real;

/// Relative differences at or below this are treated as converged.
pub const NOISE_FLOOR: f64 = 1e-10;

/// A row stalls when a difference above the noise floor shrinks by less
/// than this factor from one refinement to the next.
pub const STALL_RATIO: f64 = 0.9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow<T> {
    pub name: String,
    pub values: Vec<T>,
    /// `|v_{i+1} - v_i| / max(1, |v_{i+1}|)`.
    pub rel_diffs: Vec<T>,
    pub converged: bool,
}

impl<T: Real> ConvergenceRow<T> {
    fn new(name: String, values: Vec<T>) -> Self {
        let rel_diffs: Vec<T> =
            values.windows(2).map(|w| (w[1] - w[0]).abs() / T::one().max(w[1].abs())).collect();
        let floor = T::lit(NOISE_FLOOR);
        let stalled = rel_diffs.windows(2).any(|d| d[1] > floor && d[1] > T::lit(STALL_RATIO) * d[0]);
        let finite = values.iter().all(|v| v.is_finite());
        Self { name, values, rel_diffs, converged: finite && !stalled }
    }
}

/// Every integral functional at a sequence of resolutions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable<T> {
    pub resolutions: Vec<Vec<usize>>,
    pub rows: Vec<ConvergenceRow<T>>,
}

impl<T: Real> ConvergenceTable<T> {
    pub fn from_integrals(runs: &[FieldIntegrals<T>]) -> Result<Self> {
        let Some(first) = runs.first() else {
            return Err(Error::input("convergence table needs at least one run"));
        };
        let d = first.dim();
        let mut named: Vec<(String, Box<dyn Fn(&FieldIntegrals<T>) -> T>)> = vec![
            ("energy".into(), Box::new(|i: &FieldIntegrals<T>| i.energy())),
            ("total-bending".into(), Box::new(|i: &FieldIntegrals<T>| i.total_bending())),
            ("field-volume".into(), Box::new(|i: &FieldIntegrals<T>| i.field_volume)),
            ("surface-volume".into(), Box::new(|i: &FieldIntegrals<T>| i.surface_volume)),
            ("sigma-abs".into(), Box::new(|i: &FieldIntegrals<T>| i.sigma_abs)),
            ("eta2-minor".into(), Box::new(|i: &FieldIntegrals<T>| i.eta2_minor)),
        ];
        for k in 1..=d {
            named.push((format!("bending-k{k}"), Box::new(move |i: &FieldIntegrals<T>| i.bending_k(k))));
        }
        for k in 0..=d {
            named.push((format!("eta-k{k}"), Box::new(move |i: &FieldIntegrals<T>| i.eta_integral(k))));
        }
        let rows = named.into_iter().map(|(name, f)| ConvergenceRow::new(name, runs.iter().map(&f).collect())).collect();
        Ok(Self { resolutions: runs.iter().map(|r| r.resolution.clone()).collect(), rows })
    }

    pub fn converged(&self) -> bool {
        self.rows.iter().all(|r| r.converged)
    }

    pub fn row(&self, name: &str) -> Option<&ConvergenceRow<T>> {
        self.rows.iter().find(|r| r.name == name)
    }
}

/// Integrates `field` at each resolution; returns the runs and their table.
pub fn convergence_suite<T: Real>(
    surface: &Hypersurface<T>,
    field: &dyn UnitField<T>,
    resolutions: &[Vec<usize>],
) -> Result<(Vec<FieldIntegrals<T>>, ConvergenceTable<T>)> {
    let runs = resolutions
        .iter()
        .map(|r| integrate(&build_grid(surface, r)?, field))
        .collect::<Result<Vec<_>>>()?;
    let table = ConvergenceTable::from_integrals(&runs)?;
    Ok((runs, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stall_detection() {
        let shrinking = ConvergenceRow::new("x".into(), vec![1.0, 1.1, 1.11, 1.111]);
        assert!(shrinking.converged);
        let stalled = ConvergenceRow::new("x".into(), vec![1.0, 1.1, 1.2, 1.3]);
        assert!(!stalled.converged);
        let at_floor = ConvergenceRow::new("x".into(), vec![1.0, 1.0 + 1e-13, 1.0 + 2e-13]);
        assert!(at_floor.converged);
    }
}
