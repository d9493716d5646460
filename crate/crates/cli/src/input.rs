//! Diagram files, optionally carrying a custom realization.
//!
//! ```json
//! {"n": 4, "b": [[0,1,1,1],[-1,0,1,1],[-1,-1,0,1],[-1,-1,-1,0]],
//!  "realization": {"group": "A4",
//!                  "roots": [[1,1,1,1],[0,1,1,1],[0,0,1,1],[0,0,0,1]],
//!                  "extra": ["rel 1 2 3 2 ^ 2"]}}
//! ```
//!
//! Extra relators use the `rel` lines of the presentation grammar.

use serde::{Deserialize, Serialize};

use coxmut::coxeter::TypeLabel;
use coxmut::exchange::ExchangeMatrix;
use coxmut::manifold::Realization;
use coxmut::presentation::{parse_presentation, ExtraRelator};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CustomRealization {
    pub group: String,
    pub roots: Vec<Vec<i64>>,
    #[serde(default)]
    pub extra: Vec<String>,
}

impl CustomRealization {
    pub fn build(&self, rank: usize) -> Result<Realization, CliError> {
        let label = TypeLabel::parse(&self.group)
            .filter(|l| !l.affine)
            .ok_or_else(|| CliError::Invalid(format!("unknown finite group {:?}", self.group)))?;
        if self.roots.len() != rank {
            return Err(CliError::Invalid(format!("{} roots for a diagram of rank {rank}", self.roots.len())));
        }
        let extra = parse_extra(rank, &self.extra.join("\n"))?;
        Realization::from_roots(label, self.roots.clone(), extra).map_err(|e| CliError::Invalid(e.to_string()))
    }
}

#[derive(Deserialize)]
struct Realized {
    realization: Option<CustomRealization>,
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Input {
    pub matrix: ExchangeMatrix,
    pub realization: Option<CustomRealization>,
}

impl Input {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let matrix = ExchangeMatrix::from_json(text).map_err(|e| CliError::Invalid(e.to_string()))?;
        let extra: Realized =
            serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("json: {e}")))?;
        Ok(Input { matrix, realization: extra.realization })
    }

    pub fn read(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Parses `rel` lines for a diagram of the given rank.
pub fn parse_extra(rank: usize, text: &str) -> Result<Vec<ExtraRelator>, CliError> {
    let body: String = text.lines().map(|l| format!("{l}\n")).collect();
    let p = parse_presentation(&format!("gens {rank}\n{body}"))
        .map_err(|mut e| {
            e.line -= 1;
            CliError::Invalid(format!("extra relators: {e}"))
        })?;
    if !p.power_relators().is_empty() || !p.cycle_relators().is_empty() {
        return Err(CliError::Invalid("extra relators must be given as `rel` lines".into()));
    }
    Ok(p.extra_relators().to_vec())
}
