//! Scenario configuration files: a JSON document mirroring the model's
//! `Scenario`, with a homogeneous shorthand for core paths and an optional
//! link-budget form for the radio legs. Parse errors carry the offending
//! field path.

use crate::CliError;
use dcrel::gauss::{self, LinkBudget, ShadowingCorrelation};
use dcrel::model::{
    Architecture, CnPathSpec, Correlation, PointFailures, RanPairSpec, Scenario,
};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Name of the built-in baseline preset.
pub const PRESET_NAME: &str = "paper-defaults";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigFile {
    pub architecture: ArchitectureConfig,
    pub ran: RanConfig,
    pub cn_paths: CnPathsConfig,
    pub points: PointsConfig,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArchitectureConfig {
    RanSplit,
    CnSplit,
}

impl From<ArchitectureConfig> for Architecture {
    fn from(a: ArchitectureConfig) -> Self {
        match a {
            ArchitectureConfig::RanSplit => Architecture::RanSplit,
            ArchitectureConfig::CnSplit => Architecture::CnSplit,
        }
    }
}

impl From<Architecture> for ArchitectureConfig {
    fn from(a: Architecture) -> Self {
        match a {
            Architecture::RanSplit => ArchitectureConfig::RanSplit,
            Architecture::CnSplit => ArchitectureConfig::CnSplit,
        }
    }
}

/// Radio legs: either explicit error rates with a correlation, or a pair
/// of link budgets with a shadowing cross-correlation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RanConfig {
    Rates {
        eps_ran_1: f64,
        eps_ran_2: f64,
        correlation: CorrelationConfig,
    },
    Budgets {
        link_budget_1: BudgetConfig,
        link_budget_2: BudgetConfig,
        shadowing: ShadowingConfig,
    },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CorrelationConfig {
    Event { value: f64 },
    Shadowing { value: f64 },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BudgetConfig {
    pub transmit_power_dbm: f64,
    pub path_loss_db: f64,
    pub threshold_dbm: f64,
    pub shadowing_stddev_db: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ShadowingConfig {
    pub rho_h: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CnPathsConfig {
    Explicit(Vec<PathConfig>),
    Homogeneous { homogeneous: HomogeneousConfig },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathConfig {
    pub node_errors: Vec<f64>,
    pub link_errors: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct HomogeneousConfig {
    pub n_nodes: usize,
    pub eps_node: f64,
    pub eps_link: f64,
    pub n_paths: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointsConfig {
    pub eps_ue: f64,
    pub eps_upf: f64,
    pub eps_mgnb: f64,
    pub eps_gnb: Vec<f64>,
    pub eps_sgnb: f64,
    pub eps_xn: f64,
}

impl ConfigFile {
    /// The built-in baseline parameter set.
    pub fn preset() -> Self {
        Self {
            architecture: ArchitectureConfig::RanSplit,
            ran: RanConfig::Rates {
                eps_ran_1: dcrel::defaults::RAN_ERROR,
                eps_ran_2: dcrel::defaults::RAN_ERROR,
                correlation: CorrelationConfig::Event { value: 0.0 },
            },
            cn_paths: CnPathsConfig::Homogeneous {
                homogeneous: HomogeneousConfig {
                    n_nodes: dcrel::defaults::INTERMEDIATE_NODES,
                    eps_node: dcrel::defaults::NODE_ERROR,
                    eps_link: dcrel::defaults::LINK_ERROR,
                    n_paths: dcrel::defaults::CN_PATHS,
                },
            },
            points: PointsConfig {
                eps_ue: dcrel::defaults::ENDPOINT_ERROR,
                eps_upf: dcrel::defaults::ENDPOINT_ERROR,
                eps_mgnb: dcrel::defaults::ENDPOINT_ERROR,
                eps_gnb: vec![dcrel::defaults::ENDPOINT_ERROR; dcrel::defaults::CN_PATHS],
                eps_sgnb: dcrel::defaults::ENDPOINT_ERROR,
                eps_xn: dcrel::defaults::XN_ERROR,
            },
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Input(format!("cannot read config {}: {e}", path.display()))
        })?;
        let de = &mut serde_json::Deserializer::from_str(&text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            CliError::Input(format!(
                "config {}: {} (at {})",
                path.display(),
                e.inner(),
                e.path()
            ))
        })
    }

    /// Resolve the document into a validated scenario.
    pub fn to_scenario(&self) -> Result<Scenario, CliError> {
        let ran = match &self.ran {
            RanConfig::Rates { eps_ran_1, eps_ran_2, correlation } => {
                let correlation = match correlation {
                    CorrelationConfig::Event { value } => Correlation::Event(*value),
                    CorrelationConfig::Shadowing { value } => {
                        Correlation::Shadowing(ShadowingCorrelation::new(*value)?)
                    }
                };
                RanPairSpec::new(*eps_ran_1, *eps_ran_2, correlation)?
            }
            RanConfig::Budgets { link_budget_1, link_budget_2, shadowing } => {
                let to_budget = |b: &BudgetConfig| {
                    LinkBudget::new(
                        b.transmit_power_dbm,
                        b.path_loss_db,
                        b.threshold_dbm,
                        b.shadowing_stddev_db,
                    )
                };
                let eps1 = gauss::ran_error_from_budget(&to_budget(link_budget_1)?);
                let eps2 = gauss::ran_error_from_budget(&to_budget(link_budget_2)?);
                RanPairSpec::new(
                    eps1,
                    eps2,
                    Correlation::Shadowing(ShadowingCorrelation::new(shadowing.rho_h)?),
                )?
            }
        };

        let cn_paths = match &self.cn_paths {
            CnPathsConfig::Explicit(paths) => paths
                .iter()
                .map(|p| CnPathSpec::new(p.node_errors.clone(), p.link_errors.clone()))
                .collect::<Result<Vec<_>, _>>()?,
            CnPathsConfig::Homogeneous { homogeneous } => {
                let path = CnPathSpec::homogeneous(
                    homogeneous.n_nodes,
                    homogeneous.eps_node,
                    homogeneous.eps_link,
                )?;
                vec![path; homogeneous.n_paths]
            }
        };

        let mut eps_gnb = self.points.eps_gnb.clone();
        // A homogeneous path count may differ from the preset's gNB list;
        // pad with the last entry so shorthand configs stay convenient.
        if eps_gnb.len() < cn_paths.len() {
            let pad = eps_gnb.last().copied().unwrap_or(0.0);
            eps_gnb.resize(cn_paths.len(), pad);
        }
        let points = PointFailures::new(
            self.points.eps_ue,
            self.points.eps_upf,
            self.points.eps_mgnb,
            eps_gnb,
            self.points.eps_sgnb,
            self.points.eps_xn,
        )?;

        Ok(Scenario::new(self.architecture.into(), ran, cn_paths, points)?)
    }

    /// The explicit (fully resolved) document for a scenario, as written
    /// by `dump-config`.
    pub fn from_scenario(scenario: &Scenario) -> Self {
        let correlation = match scenario.ran.correlation {
            Correlation::Event(value) => CorrelationConfig::Event { value },
            Correlation::Shadowing(rho_h) => {
                CorrelationConfig::Shadowing { value: rho_h.value() }
            }
        };
        Self {
            architecture: scenario.architecture.into(),
            ran: RanConfig::Rates {
                eps_ran_1: scenario.ran.eps_ran_1,
                eps_ran_2: scenario.ran.eps_ran_2,
                correlation,
            },
            cn_paths: CnPathsConfig::Explicit(
                scenario
                    .cn_paths
                    .iter()
                    .map(|p| PathConfig {
                        node_errors: p.node_errors.clone(),
                        link_errors: p.link_errors.clone(),
                    })
                    .collect(),
            ),
            points: PointsConfig {
                eps_ue: scenario.points.eps_ue,
                eps_upf: scenario.points.eps_upf,
                eps_mgnb: scenario.points.eps_mgnb,
                eps_gnb: scenario.points.eps_gnb_per_path.clone(),
                eps_sgnb: scenario.points.eps_sgnb,
                eps_xn: scenario.points.eps_xn,
            },
        }
    }
}
