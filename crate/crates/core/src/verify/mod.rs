//! Bound checks, equality detection and convergence diagnostics assembled
//! into a single report per (surface, field) pair.

mod checks;
mod convergence;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use checks::{
    check_bending_bounds, check_degree_estimate, check_degree_formula, check_energy_bound, check_pointwise, check_sphere_energy_bound,
    check_volume_bound, BoundCheck, CheckKind, Tolerances,
};
pub use convergence::{convergence_suite, ConvergenceRow, ConvergenceTable, NOISE_FLOOR, STALL_RATIO};

use crate::error::{Error, Result};
use crate::fields::UnitField;
use crate::functionals::{sup_constants, sup_grid_factor, DegreeEstimate, FieldIntegrals, SupConstants};
use crate::geometry::{build_grid, Hypersurface, SurfaceKind, SurfaceMeta, MIN_NODES_PER_AXIS};
use crate::scalar::Real;

/// Version of the serialized report layout.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Which group of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Energy,
    Bending,
    Volume,
    Degree,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["energy", "bending", "volume", "degree", "all"];

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "energy" => Ok(Suite::Energy),
            "bending" => Ok(Suite::Bending),
            "volume" => Ok(Suite::Volume),
            "degree" => Ok(Suite::Degree),
            "all" => Ok(Suite::All),
            other => Err(Error::input(format!("unknown suite '{other}' (expected one of {:?})", Suite::NAMES))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Energy => "energy",
            Suite::Bending => "bending",
            Suite::Volume => "volume",
            Suite::Degree => "degree",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

/// Integration resolution used when none is given.
pub fn default_resolution<T: Real>(surface: &Hypersurface<T>) -> Vec<usize> {
    let m = surface.dim();
    match (&surface.meta().kind, surface.n()) {
        (SurfaceKind::TubeTorus { .. }, _) => vec![64, 24, 32],
        (SurfaceKind::RoundSphere { .. } | SurfaceKind::Ellipsoid { .. }, 1) => vec![48, 48, 64],
        (SurfaceKind::RoundSphere { .. } | SurfaceKind::Ellipsoid { .. }, 2) => vec![10, 10, 10, 10, 8],
        _ => vec![8; m],
    }
}

/// A coarser companion resolution for convergence tables.
pub fn coarse_resolution(resolution: &[usize]) -> Vec<usize> {
    resolution.iter().map(|&r| (r / 2).max(MIN_NODES_PER_AXIS)).collect()
}

/// Everything computed for one (surface, field, suite) run.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport<T> {
    pub schema_version: u32,
    pub surface: SurfaceMeta<T>,
    pub field: String,
    pub suite: Suite,
    pub tolerances: Tolerances,
    /// Resolution of the grid the checks use.
    pub resolution: Vec<usize>,
    pub integrals: FieldIntegrals<T>,
    pub energy: T,
    pub total_bending: T,
    pub degree: DegreeEstimate<T>,
    pub sups: Option<SupConstants<T>>,
    pub checks: Vec<BoundCheck<T>>,
    pub convergence: ConvergenceTable<T>,
}

impl<T: Real> VerificationReport<T> {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn converged(&self) -> bool {
        self.convergence.converged()
    }

    pub fn check(&self, id: &str) -> Option<&BoundCheck<T>> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Ids of bound checks whose equality flag is set.
    pub fn equalities(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| c.kind == CheckKind::Bound && c.equality).map(|c| c.id.as_str()).collect()
    }
}

/// Runs `suite` for `field` on `surface`.
///
/// `resolutions` lists the grids of the convergence table, coarse to fine;
/// the last one carries the checks. With a single entry a coarser companion
/// is added. Sup constants come from a grid [`sup_grid_factor`] times finer.
pub fn verify<T: Real>(
    surface: &Hypersurface<T>,
    field: &dyn UnitField<T>,
    resolutions: &[Vec<usize>],
    suite: Suite,
) -> Result<VerificationReport<T>> {
    let mut resolutions = resolutions.to_vec();
    if resolutions.is_empty() {
        resolutions.push(default_resolution(surface));
    }
    if resolutions.len() == 1 {
        resolutions.insert(0, coarse_resolution(&resolutions[0]));
    }
    let fine = resolutions.last().expect("non-empty").clone();
    let grid = build_grid(surface, &fine)?;
    let tol = Tolerances::for_surface(surface);

    let (mut runs, convergence) = convergence_suite(surface, field, &resolutions)?;
    let integrals = runs.pop().expect("one run per resolution");
    let degree = integrals.degree();

    let needs_sups = suite != Suite::Degree;
    let sups = if needs_sups { Some(sup_constants(&grid.refined(sup_grid_factor())?)?) } else { None };

    let mut checks = Vec::new();
    if let Some(s) = sups.as_ref() {
        if suite.includes(Suite::Energy) {
            checks.push(check_energy_bound(surface, &integrals, &degree, s, &tol)?);
            if surface.is_round_sphere() {
                checks.push(check_sphere_energy_bound(surface, &integrals, &tol)?);
            }
        }
        let pointwise = check_pointwise(&integrals, &tol);
        if suite.includes(Suite::Bending) {
            let (sigma, deg) = check_bending_bounds(&integrals, &degree, s, &tol)?;
            checks.push(sigma);
            checks.push(deg);
            checks.push(pointwise[1].clone());
        }
        if suite.includes(Suite::Volume) {
            checks.push(check_volume_bound(&integrals, &degree, s, &tol)?);
            checks.push(pointwise[0].clone());
        }
    }
    if suite.includes(Suite::Degree) {
        checks.push(check_degree_estimate(&integrals, &degree));
        checks.extend(check_degree_formula(&integrals, &degree, &tol));
    }

    Ok(VerificationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        surface: surface.meta().clone(),
        field: field.name(),
        suite,
        tolerances: tol,
        resolution: fine,
        energy: integrals.energy(),
        total_bending: integrals.total_bending(),
        integrals,
        degree,
        sups,
        checks,
        convergence,
    })
}
