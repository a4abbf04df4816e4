use bz_core::Weight;

use crate::format::{parse_algebra, parse_weight};
use crate::CliError;

#[derive(
    Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Multiplicity,
    Decompose,
    Triangles,
    Nonvanishing,
    Threshold,
    Polytope,
    Crosscheck,
}

impl Mode {
    fn weight_count(self) -> usize {
        match self {
            Mode::Decompose => 2,
            Mode::Crosscheck => 0,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Multiplicity => "multiplicity",
            Mode::Decompose => "decompose",
            Mode::Triangles => "triangles",
            Mode::Nonvanishing => "nonvanishing",
            Mode::Threshold => "threshold",
            Mode::Polytope => "polytope",
            Mode::Crosscheck => "crosscheck",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Output {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuerySpec {
    pub rank: usize,
    pub weights: Vec<Weight>,
    pub mode: Mode,
    pub k: Option<u64>,
    pub output: Output,
}

impl QuerySpec {
    pub fn new(
        algebra: &str,
        mode: Mode,
        weights: &[&str],
        k: Option<u64>,
        output: Output,
    ) -> Result<Self, CliError> {
        let rank = parse_algebra(algebra)?;
        let expected = mode.weight_count();
        if weights.len() != expected {
            return Err(CliError::Usage(format!(
                "{} takes {expected} weights, got {}",
                mode.name(),
                weights.len()
            )));
        }
        let weights = weights
            .iter()
            .map(|w| parse_weight(w))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(w) = weights.iter().find(|w| w.rank() != rank) {
            return Err(CliError::Usage(format!(
                "weight {w} has {} labels but {algebra} needs {rank}",
                w.rank()
            )));
        }
        match (mode, k) {
            (Mode::Threshold, None) => return Err(CliError::Usage("threshold needs K".into())),
            (Mode::Threshold, Some(_)) | (_, None) => {}
            (_, Some(_)) => {
                return Err(CliError::Usage("K is only meaningful for threshold".into()))
            }
        }
        let supported = match mode {
            Mode::Nonvanishing => matches!(rank, 2 | 3),
            Mode::Threshold => rank == 2,
            _ => true,
        };
        if !supported {
            return Err(CliError::Usage(format!(
                "{} is not available for {algebra}",
                mode.name()
            )));
        }
        Ok(Self {
            rank,
            weights,
            mode,
            k,
            output,
        })
    }

    pub fn algebra(&self) -> String {
        format!("su{}", self.rank + 1)
    }
}

/// Flags that do not change what is computed, only what is reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub oracle: bool,
    pub emit_polytope: bool,
    pub max_label: i64,
    pub order_check: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            oracle: false,
            emit_polytope: false,
            max_label: 2,
            order_check: false,
        }
    }
}
