//! Scenario configuration: a single TOML document describing the potential,
//! the comparison problem, the energy grid, solver settings, and output.
//! Unknown keys are hard errors so a mistyped tolerance cannot silently
//! weaken a verification run.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::comparison::ComparisonSolution;
use crate::error::{Error, Result};
use crate::potential::Potential;
use crate::solver::SolverSettings;

fn default_quad_tol() -> f64 {
    1e-10
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub potential: Potential,
    pub comparison: ComparisonConfig,
    pub energies: EnergyGrid,
    #[serde(default)]
    pub solver: SolverSettings,
    #[serde(default = "default_quad_tol")]
    pub quad_tol: f64,
    /// Epsilon ladder for perturbation runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputConfig>,
}

/// Which exactly solvable problem to expand on. Parameters are fixed; the
/// energy comes from the sweep grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ComparisonConfig {
    Free,
    SquareBarrier { v0: f64, width: f64 },
    Delta { strength: f64 },
    Step { v_plus: f64 },
}

impl ComparisonConfig {
    pub fn build(&self, energy: f64) -> Result<ComparisonSolution> {
        match *self {
            ComparisonConfig::Free => ComparisonSolution::free(energy),
            ComparisonConfig::SquareBarrier { v0, width } => {
                ComparisonSolution::square_barrier(v0, width, energy)
            }
            ComparisonConfig::Delta { strength } => ComparisonSolution::delta(strength, energy),
            ComparisonConfig::Step { v_plus } => ComparisonSolution::step(v_plus, energy),
        }
    }

    /// The potential the comparison solves, for structural checks.
    pub fn potential(&self) -> Potential {
        match *self {
            ComparisonConfig::Free => Potential::Free,
            ComparisonConfig::SquareBarrier { v0, width } => {
                Potential::square_barrier(v0, width, 0.0)
            }
            ComparisonConfig::Delta { strength } => Potential::delta(strength, 0.0),
            ComparisonConfig::Step { v_plus } => Potential::step(v_plus),
        }
    }
}

/// Either an inclusive linear range (`min`, `max`, `count`) or an explicit
/// `values` list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct EnergyGrid {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
}

impl EnergyGrid {
    pub fn from_values(values: Vec<f64>) -> Self {
        EnergyGrid {
            values: Some(values),
            ..Default::default()
        }
    }

    /// Expands to an ascending energy list.
    pub fn expand(&self) -> Result<Vec<f64>> {
        let mut energies = match (&self.values, self.min, self.max, self.count) {
            (Some(v), None, None, None) => v.clone(),
            (None, Some(min), Some(max), Some(count)) => {
                if count < 1 {
                    return Err(Error::Config("energies.count must be >= 1".into()));
                }
                if count == 1 {
                    vec![min]
                } else {
                    (0..count)
                        .map(|i| min + (max - min) * i as f64 / (count - 1) as f64)
                        .collect()
                }
            }
            _ => {
                return Err(Error::Config(
                    "energies requires either `values` or all of `min`, `max`, `count`".into(),
                ))
            }
        };
        if energies.is_empty() {
            return Err(Error::Config("energy list is empty".into()));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::Config("energies must be finite".into()));
        }
        energies.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(energies)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let config: ScenarioConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        self.potential
            .validate()
            .map_err(|e| Error::Config(e.to_string()))?;
        self.solver.validate()?;
        if self.quad_tol <= 0.0 {
            return Err(Error::Config("quad_tol must be positive".into()));
        }
        let energies = self.energies.expand()?;
        let ceiling = self
            .potential
            .max_asymptote()
            .max(self.comparison.potential().max_asymptote());
        if let Some(bad) = energies.iter().find(|&&e| e <= ceiling) {
            return Err(Error::Config(format!(
                "energy {bad} does not exceed the highest asymptote {ceiling}"
            )));
        }
        if let Some(eps) = &self.epsilon {
            if eps.is_empty() {
                return Err(Error::Config("epsilon ladder is empty".into()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"
quad_tol = 1e-10

[potential]
kind = "square_barrier"
v0 = 1.0
width = 1.0

[comparison]
kind = "free"

[energies]
min = 1.5
max = 3.0
count = 4

[solver]
rel_tol = 1e-10
"#;

    #[test]
    fn parses_and_round_trips() {
        let cfg = ScenarioConfig::parse(EXAMPLE).unwrap();
        assert_eq!(cfg.energies.expand().unwrap().len(), 4);
        let text = cfg.to_toml();
        let again = ScenarioConfig::parse(&text).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let bad = EXAMPLE.replace("quad_tol = 1e-10", "quad_tol = 1e-10\nrel_tolerance = 1e-3");
        let err = ScenarioConfig::parse(&bad).unwrap_err();
        assert!(err.is_config(), "{err}");
        let bad2 = EXAMPLE.replace("rel_tol", "rel_tolll");
        assert!(ScenarioConfig::parse(&bad2).is_err());
    }

    #[test]
    fn empty_energies_rejected() {
        let bad = EXAMPLE.replace(
            "min = 1.5\nmax = 3.0\ncount = 4",
            "values = []",
        );
        assert!(ScenarioConfig::parse(&bad).is_err());
    }

    #[test]
    fn energies_below_asymptote_rejected() {
        let bad = EXAMPLE.replace("min = 1.5", "min = -0.5");
        let err = ScenarioConfig::parse(&bad).unwrap_err();
        assert!(err.is_config());
    }

    #[test]
    fn explicit_values_expand_sorted() {
        let grid = EnergyGrid::from_values(vec![3.0, 1.5, 2.0]);
        assert_eq!(grid.expand().unwrap(), vec![1.5, 2.0, 3.0]);
    }

    #[test]
    fn shifted_potential_parses_nested() {
        let text = r#"
epsilon = [0.02, 0.01, 0.005]

[potential]
kind = "shifted"
epsilon = 0.01

[potential.base]
kind = "square_barrier"
v0 = 1.0
width = 1.0

[potential.delta_v]
kind = "gaussian"
v0 = 0.5
sigma = 0.5
center = 0.2

[comparison]
kind = "square_barrier"
v0 = 1.0
width = 1.0

[energies]
values = [2.0]
"#;
        let cfg = ScenarioConfig::parse(text).unwrap();
        assert!(matches!(cfg.potential, Potential::Shifted { .. }));
        assert_eq!(cfg.epsilon.as_deref(), Some(&[0.02, 0.01, 0.005][..]));
    }
}
