use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest accepted dense-matrix limit (4096×4096).
pub const MAX_DENSE_LIMIT: u32 = 12;
/// Largest walk length for dense walk counting.
pub const MAX_WALK_LENGTH: u32 = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("dense limit {0} exceeds {MAX_DENSE_LIMIT}")]
    DenseLimit(u32),
    #[error("ell_max must be odd and in 3..={MAX_WALK_LENGTH}, got {0}")]
    EllMax(u32),
}

/// Knobs shared by the analysis pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    /// Largest `n` for which `2ⁿ × 2ⁿ` adjacency matrices are materialized.
    pub dense_limit: u32,
    /// Largest odd walk length certified.
    pub ell_max: u32,
    /// Seed for sampled character checks above the dense limit.
    pub seed: u64,
    /// Number of characters sampled above the dense limit.
    pub character_samples: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            dense_limit: 8,
            ell_max: 7,
            seed: 0,
            character_samples: 64,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.dense_limit > MAX_DENSE_LIMIT {
            return Err(ConfigError::DenseLimit(self.dense_limit));
        }
        if self.ell_max < 3 || self.ell_max > MAX_WALK_LENGTH || self.ell_max % 2 == 0 {
            return Err(ConfigError::EllMax(self.ell_max));
        }
        Ok(())
    }
}
