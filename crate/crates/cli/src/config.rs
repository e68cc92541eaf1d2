use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use unitfield_core::fields::{circle_field, hopf_field, natural_field, perturbed_field, projected_hopf_field, UnitField};
use unitfield_core::geometry::MIN_NODES_PER_AXIS;
use unitfield_core::verify::Suite;
use unitfield_core::Surface;

use crate::CliError;

pub const SURFACE_NAMES: [&str; 3] = ["sphere", "ellipsoid", "tube-torus"];
pub const FIELD_NAMES: [&str; 5] = ["hopf", "circle", "projected-hopf", "perturbed", "natural"];

pub const DEFAULT_N: usize = 1;
pub const DEFAULT_RADIUS: f64 = 1.0;
pub const DEFAULT_SEMI_AXES: [f64; 4] = [1.0, 1.2, 1.4, 1.7];
pub const DEFAULT_MAJOR: f64 = 3.0;
pub const DEFAULT_MINOR: f64 = 1.0;
pub const DEFAULT_AMPLITUDE: f64 = 0.1;
pub const DEFAULT_SEED: u64 = 0;

/// One experiment, as read from a JSON file and/or command-line flags.
///
/// Every field is optional so that a file and the flags can be layered;
/// [`ExperimentConfig::merge`] lets the flags win.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ExperimentConfig {
    pub surface: Option<String>,
    pub n: Option<usize>,
    pub radius: Option<f64>,
    pub semi_axes: Option<Vec<f64>>,
    #[serde(rename = "R")]
    pub major: Option<f64>,
    pub rho: Option<f64>,
    pub field: Option<String>,
    pub amplitude: Option<f64>,
    pub seed: Option<u64>,
    pub resolution: Option<Vec<Vec<usize>>>,
    pub suite: Option<String>,
    pub out_json: Option<PathBuf>,
    pub out_csv: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("bad config {}: {e}", path.display())))
    }

    /// `self` with every value set in `over` replaced.
    pub fn merge(self, over: ExperimentConfig) -> Self {
        Self {
            surface: over.surface.or(self.surface),
            n: over.n.or(self.n),
            radius: over.radius.or(self.radius),
            semi_axes: over.semi_axes.or(self.semi_axes),
            major: over.major.or(self.major),
            rho: over.rho.or(self.rho),
            field: over.field.or(self.field),
            amplitude: over.amplitude.or(self.amplitude),
            seed: over.seed.or(self.seed),
            resolution: over.resolution.or(self.resolution),
            suite: over.suite.or(self.suite),
            out_json: over.out_json.or(self.out_json),
            out_csv: over.out_csv.or(self.out_csv),
        }
    }

    /// Checks names and ranges, then builds the surface and field.
    pub fn resolve(&self) -> Result<Experiment, CliError> {
        let surface = self.build_surface()?;
        let field = self.build_field(&surface)?;
        let suite = Suite::from_str(self.suite.as_deref().unwrap_or("all")).map_err(|e| CliError::Config(e.to_string()))?;
        let resolutions = self.resolution.clone().unwrap_or_default();
        for r in &resolutions {
            if r.len() != surface.dim() {
                return Err(CliError::Config(format!(
                    "resolution {r:?} has {} axes, the surface needs {}",
                    r.len(),
                    surface.dim()
                )));
            }
            if r.iter().any(|&c| c < MIN_NODES_PER_AXIS) {
                return Err(CliError::Config(format!("resolution {r:?} has fewer than {MIN_NODES_PER_AXIS} nodes on an axis")));
            }
        }
        Ok(Experiment { surface, field, suite, resolutions })
    }

    fn build_surface(&self) -> Result<Surface, CliError> {
        let name = self.surface.as_deref().ok_or_else(|| CliError::Config("no surface given".into()))?;
        let built = match name {
            "sphere" => Surface::round_sphere(self.n.unwrap_or(DEFAULT_N), self.radius.unwrap_or(DEFAULT_RADIUS)),
            "ellipsoid" => {
                let axes = self.semi_axes.clone().unwrap_or_else(|| DEFAULT_SEMI_AXES.to_vec());
                if let Some(n) = self.n {
                    if axes.len() != 2 * n + 2 {
                        return Err(CliError::Config(format!("n = {n} needs {} semi-axes, got {}", 2 * n + 2, axes.len())));
                    }
                }
                Surface::ellipsoid(axes)
            }
            "tube-torus" => {
                if self.n.is_some_and(|n| n != 1) {
                    return Err(CliError::Config("the tube torus exists only for n = 1".into()));
                }
                Surface::tube_torus(self.major.unwrap_or(DEFAULT_MAJOR), self.rho.unwrap_or(DEFAULT_MINOR))
            }
            other => {
                return Err(CliError::Config(format!("unknown surface '{other}' (expected one of {SURFACE_NAMES:?})")));
            }
        };
        built.map_err(|e| CliError::Config(e.to_string()))
    }

    fn build_field(&self, surface: &Surface) -> Result<Arc<dyn UnitField<f64>>, CliError> {
        let name = self.field.as_deref().unwrap_or("natural");
        let built: unitfield_core::Result<Arc<dyn UnitField<f64>>> = match name {
            "hopf" => hopf_field(surface).map(|f| Arc::new(f) as _),
            "circle" => circle_field(surface).map(|f| Arc::new(f) as _),
            "projected-hopf" => projected_hopf_field(surface).map(|f| Arc::new(f) as _),
            "natural" => natural_field(surface),
            "perturbed" => natural_field(surface).and_then(|base| {
                perturbed_field(
                    surface,
                    base,
                    self.amplitude.unwrap_or(DEFAULT_AMPLITUDE),
                    self.seed.unwrap_or(DEFAULT_SEED),
                )
                .map(|f| Arc::new(f) as _)
            }),
            other => return Err(CliError::Config(format!("unknown field '{other}' (expected one of {FIELD_NAMES:?})"))),
        };
        built.map_err(|e| CliError::Config(e.to_string()))
    }
}

/// A validated configuration, ready to run.
pub struct Experiment {
    pub surface: Surface,
    pub field: Arc<dyn UnitField<f64>>,
    pub suite: Suite,
    /// Empty means the default resolution for the surface.
    pub resolutions: Vec<Vec<usize>>,
}

/// Parses `48,48,64` or `48x48x64`.
pub fn parse_resolution(s: &str) -> Result<Vec<usize>, String> {
    s.split([',', 'x'])
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("bad resolution '{s}': {e}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_values() {
        let file: ExperimentConfig =
            serde_json::from_str(r#"{"surface": "sphere", "radius": 2.0, "R": 5.0, "resolution": [[8, 8, 8]]}"#).unwrap();
        let flags = ExperimentConfig { radius: Some(0.5), ..Default::default() };
        let merged = file.merge(flags);
        assert_eq!(merged.surface.as_deref(), Some("sphere"));
        assert_eq!(merged.radius, Some(0.5));
        assert_eq!(merged.major, Some(5.0));
        assert_eq!(merged.resolution, Some(vec![vec![8, 8, 8]]));
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"surfce": "sphere"}"#).is_err());
    }

    #[test]
    fn resolution_syntax() {
        assert_eq!(parse_resolution("48,48,64").unwrap(), vec![48, 48, 64]);
        assert_eq!(parse_resolution("8x8x8").unwrap(), vec![8, 8, 8]);
        assert!(parse_resolution("8,,8").is_err());
    }

    #[test]
    fn validation_errors() {
        let base = ExperimentConfig { surface: Some("sphere".into()), ..Default::default() };
        assert!(base.resolve().is_ok());
        let bad = |c: ExperimentConfig| matches!(c.resolve(), Err(CliError::Config(_)));
        assert!(bad(ExperimentConfig { surface: Some("cube".into()), ..Default::default() }));
        assert!(bad(ExperimentConfig { field: Some("circle".into()), ..base.clone() }));
        assert!(bad(ExperimentConfig { field: Some("perturbed".into()), amplitude: Some(1.0), ..base.clone() }));
        assert!(bad(ExperimentConfig { resolution: Some(vec![vec![3, 8, 8]]), ..base.clone() }));
        assert!(bad(ExperimentConfig { resolution: Some(vec![vec![8, 8]]), ..base.clone() }));
        assert!(bad(ExperimentConfig { suite: Some("most".into()), ..base.clone() }));
        assert!(bad(ExperimentConfig { radius: Some(-1.0), ..base }));
    }
}
