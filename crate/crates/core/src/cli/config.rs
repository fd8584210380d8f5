use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::group::{GroupDescriptor, GroupModel};
use crate::order::{OrderDescriptor, OrderOracle};
use crate::regular::ConeDfa;

/// An automaton given inline or as a path relative to the config file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DfaSource {
    Path(PathBuf),
    Inline(serde_json::Value),
}

/// Command parameters. Every field is optional; commands fill in defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_radius: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lmax: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub group: GroupDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dfa: Option<DfaSource>,
    #[serde(default)]
    pub params: Params,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

/// A config with its group, order and automaton built and validated.
pub struct Experiment {
    pub config: ExperimentConfig,
    pub model: GroupModel,
    pub order: Option<OrderOracle>,
    pub dfa: Option<ConeDfa>,
}

impl Experiment {
    pub fn load(path: &Path) -> Result<Experiment, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let config: ExperimentConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Experiment::from_config(config, base)
    }

    pub fn from_config(config: ExperimentConfig, base: &Path) -> Result<Experiment, CliError> {
        let model = config.group.build().map_err(|e| CliError::Usage(e.to_string()))?;
        let order = match &config.order {
            Some(d) => Some(d.build(&model).map_err(|e| CliError::Usage(e.to_string()))?),
            None => None,
        };
        let dfa = match &config.dfa {
            Some(DfaSource::Path(p)) => {
                let full = base.join(p);
                let text =
                    std::fs::read_to_string(&full).map_err(|e| CliError::Usage(format!("{}: {e}", full.display())))?;
                Some(ConeDfa::from_json(&text).map_err(|e| CliError::Usage(e.to_string()))?)
            }
            Some(DfaSource::Inline(v)) => Some(ConeDfa::from_json(&v.to_string()).map_err(|e| CliError::Usage(e.to_string()))?),
            None => None,
        };
        Ok(Experiment {
            config,
            model,
            order,
            dfa,
        })
    }

    pub fn order(&self) -> Result<&OrderOracle, CliError> {
        self.order
            .as_ref()
            .ok_or_else(|| CliError::Usage("this command needs an \"order\" in the config".into()))
    }

    pub fn dfa(&self) -> Result<&ConeDfa, CliError> {
        self.dfa
            .as_ref()
            .ok_or_else(|| CliError::Usage("this command needs a \"dfa\" in the config".into()))
    }
}
