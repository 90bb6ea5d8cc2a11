use std::path::PathBuf;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Terminal tolerance for homotopy checks.
    pub path_tol: f64,
    /// Matrix distance for development comparisons.
    pub equiv_tol: f64,
    /// Quadrature and consistency tolerance.
    pub quad_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            path_tol: 1e-5,
            equiv_tol: 1e-6,
            quad_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RunConfig {
    /// Command path such as `["homotopy", "check"]`.
    pub command: Vec<String>,
    /// Files or inline values, in the order given.
    pub inputs: Vec<String>,
    pub preset: Option<String>,
    pub tol: Tolerances,
    /// Grid sizes; single-grid commands use the first.
    pub grid: Vec<usize>,
    pub seed: u64,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub pretty: bool,
}

impl RunConfig {
    pub fn new(command: &[&str]) -> Self {
        Self {
            command: command.iter().map(|s| s.to_string()).collect(),
            ..Self::default()
        }
    }

    pub fn with_preset(mut self, preset: &str) -> Self {
        self.preset = Some(preset.to_string());
        self
    }

    pub fn with_input(mut self, input: &str) -> Self {
        self.inputs.push(input.to_string());
        self
    }

    pub fn with_grid(mut self, grid: &[usize]) -> Self {
        self.grid = grid.to_vec();
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn grid_or(&self, default: usize) -> usize {
        self.grid.first().copied().unwrap_or(default)
    }

    pub fn grids_or(&self, default: &[usize]) -> Vec<usize> {
        if self.grid.is_empty() {
            default.to_vec()
        } else {
            self.grid.clone()
        }
    }

    /// The part of the configuration that determines the result.
    pub fn echo(&self) -> Value {
        serde_json::to_value(self).expect("config serialises")
    }
}
