//! TOML weight configuration shared by the command-line tool and tests.
//!
//! ```toml
//! [problem]
//! d = 1
//! p = 2.0
//! a = 0.0
//! b = 1.25
//!
//! [[piece]]
//! kind = "constant"
//! value = 1.0
//! interval = [0.0, 1.0]
//!
//! [[piece]]
//! kind = "power-bump"
//! m = 1.0
//! alpha = 3.0
//! interval = [0.25, 0.75]
//! radial_compensation = false
//!
//! [[piece]]
//! kind = "tabulated"
//! grid = [0.1, 0.2, 0.3]
//! values = [1.0, 0.5, 2.0]
//! ```

use crate::error::{Error, Result};
use crate::params::ProblemParams;
use crate::weight::{RadialWeightSpec, WeightPiece};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemSection {
    pub d: u32,
    pub p: f64,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PieceSection {
    Constant {
        value: f64,
        interval: [f64; 2],
    },
    PowerBump {
        m: f64,
        alpha: f64,
        interval: [f64; 2],
        #[serde(default)]
        radial_compensation: bool,
    },
    Tabulated {
        grid: Vec<f64>,
        values: Vec<f64>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightConfig {
    pub problem: ProblemSection,
    #[serde(rename = "piece")]
    pub pieces: Vec<PieceSection>,
}

impl WeightConfig {
    /// Validate and convert into the runtime types.
    pub fn build(&self) -> Result<(ProblemParams, RadialWeightSpec)> {
        let params = ProblemParams::new(self.problem.d, self.problem.p, self.problem.a, self.problem.b)?;
        let pieces: Vec<WeightPiece> = self
            .pieces
            .iter()
            .map(|p| match p {
                PieceSection::Constant { value, interval } => WeightPiece::Constant {
                    value: *value,
                    lo: interval[0],
                    hi: interval[1],
                },
                PieceSection::PowerBump {
                    m,
                    alpha,
                    interval,
                    radial_compensation,
                } => WeightPiece::PowerBump {
                    m: *m,
                    alpha: *alpha,
                    lo: interval[0],
                    hi: interval[1],
                    radial_compensation: *radial_compensation,
                },
                PieceSection::Tabulated { grid, values } => WeightPiece::Tabulated {
                    grid: grid.clone(),
                    values: values.clone(),
                },
            })
            .collect();
        let spec = RadialWeightSpec::new(pieces, &params)?;
        Ok((params, spec))
    }
}

pub fn parse_weight_config(text: &str) -> Result<(ProblemParams, RadialWeightSpec)> {
    let cfg: WeightConfig =
        toml::from_str(text).map_err(|e| Error::InvalidConfig(format!("weight config: {e}")))?;
    cfg.build()
}

pub fn load_weight_config(path: &Path) -> Result<(ProblemParams, RadialWeightSpec)> {
    let text = std::fs::read_to_string(path)?;
    parse_weight_config(&text)
}
