//! Run configuration for `queig solve`.
//!
//! The file is TOML. Every key is optional; missing keys take the defaults
//! below, unknown keys are rejected.
//!
//! ```toml
//! hamiltonian = "h2"          # "h2", "heisenberg", or a Hamiltonian file path
//! lambda0 = -0.8837           # 0.0
//! epsilon = 0.01              # 0.01, half-width of the window
//! delta = 0.01                # 0.01
//! r = 7                       # 7 register qubits
//! strategy = "basis"          # "basis" | "random"
//! trials = 11                 # 11
//! p_floor = 0.0625            # unset: 1/N
//! seed = 0                    # 0
//! max_epsilon_doublings = 10  # 10
//! mode = "circuit"            # "circuit" | "ideal"
//! out = "trials.csv"          # unset: stdout
//!
//! [heisenberg]                # used when hamiltonian = "heisenberg"
//! sites = 4
//! jx = 0.2365
//! jy = 0.8237
//! jz = 0.3689
//! h = 0.7326
//! boundary = "periodic"       # "periodic" | "open"
//! field = "all-but-last"      # "all" | "all-but-last"
//! ```
//!
//! A relative Hamiltonian path is resolved against the directory of the
//! config file.

use std::path::{Path, PathBuf};

use queig_core::{
    build_h2_jw, Boundary, FieldSites, HeisenbergModel, InitialStrategy, OracleMode, PauliSum,
    SolverConfig,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Basis,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Circuit,
    Ideal,
}

impl From<Strategy> for InitialStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Basis => InitialStrategy::Basis,
            Strategy::Random => InitialStrategy::Random,
        }
    }
}

impl From<Mode> for OracleMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Circuit => OracleMode::Circuit,
            Mode::Ideal => OracleMode::Ideal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainBoundary {
    Periodic,
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainField {
    All,
    AllButLast,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChainConfig {
    pub sites: usize,
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub h: f64,
    pub boundary: ChainBoundary,
    pub field: ChainField,
}

impl Default for ChainConfig {
    fn default() -> Self {
        Self {
            sites: 4,
            jx: 0.2365,
            jy: 0.8237,
            jz: 0.3689,
            h: 0.7326,
            boundary: ChainBoundary::Periodic,
            field: ChainField::AllButLast,
        }
    }
}

impl ChainConfig {
    pub fn model(&self) -> HeisenbergModel {
        HeisenbergModel {
            sites: self.sites,
            jx: self.jx,
            jy: self.jy,
            jz: self.jz,
            h: self.h,
            boundary: match self.boundary {
                ChainBoundary::Periodic => Boundary::Periodic,
                ChainBoundary::Open => Boundary::Open,
            },
            field: match self.field {
                ChainField::All => FieldSites::All,
                ChainField::AllButLast => FieldSites::AllButLast,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub hamiltonian: String,
    pub lambda0: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub r: usize,
    pub strategy: Strategy,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_floor: Option<f64>,
    pub seed: u64,
    pub max_epsilon_doublings: usize,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub heisenberg: ChainConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        let s = SolverConfig::default();
        Self {
            hamiltonian: "h2".into(),
            lambda0: s.lambda0,
            epsilon: s.epsilon,
            delta: s.delta,
            r: s.r,
            strategy: Strategy::Basis,
            trials: s.trials,
            p_floor: s.p_floor,
            seed: s.seed,
            max_epsilon_doublings: s.max_epsilon_doublings,
            mode: Mode::Circuit,
            out: None,
            heisenberg: ChainConfig::default(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Malformed { path: PathBuf, message: String },
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string().trim_end().to_string())
    }

    /// Reads a config file and resolves a relative Hamiltonian path against
    /// its directory.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let mut config = Self::parse(&text).map_err(|message| ConfigError::Malformed {
            path: path.to_path_buf(),
            message,
        })?;
        if config.hamiltonian_file().is_some_and(Path::is_relative) {
            let base = path.parent().unwrap_or(Path::new(""));
            config.hamiltonian = base.join(&config.hamiltonian).to_string_lossy().into_owned();
        }
        Ok(config)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config always serializes")
    }

    pub fn hamiltonian_file(&self) -> Option<&Path> {
        match self.hamiltonian.as_str() {
            "h2" | "heisenberg" => None,
            other => Some(Path::new(other)),
        }
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            lambda0: self.lambda0,
            epsilon: self.epsilon,
            delta: self.delta,
            r: self.r,
            strategy: self.strategy.into(),
            trials: self.trials,
            p_floor: self.p_floor,
            seed: self.seed,
            max_epsilon_doublings: self.max_epsilon_doublings,
            mode: self.mode.into(),
        }
    }

    pub fn build_hamiltonian(&self) -> Result<PauliSum, String> {
        match self.hamiltonian.as_str() {
            "h2" => Ok(build_h2_jw()),
            "heisenberg" => self.heisenberg.model().build().map_err(|e| e.to_string()),
            path => {
                let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
                text.parse().map_err(|e| format!("{path}: {e}"))
            }
        }
    }
}
