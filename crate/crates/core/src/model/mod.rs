//! Domain types for the fog infrastructure and the SFC workload.
//!
//! The infrastructure is a list of node categories; the workload is an
//! ordered list of service function chains (SFCs), each a sequence of VNFs
//! with a CPU load, a deadline, a reliability target and a backup strategy.

mod dataset;
mod generator;
mod solution;

pub use dataset::{load_dataset, paper_instance, save_dataset, Dataset};
pub use generator::{generate_dataset, GeneratorSpec, Range};
pub use solution::Solution;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// One class of identical fog servers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeCategory {
    pub node_count: usize,
    /// CPU cycles per unit time.
    pub clock: f64,
    /// Cost per node per holding period when active.
    pub cost_active: f64,
    pub cost_standby: f64,
    /// Failures per unit time when active.
    pub fail_active: f64,
    pub fail_standby: f64,
}

impl NodeCategory {
    fn validate(&self, index: usize) -> Result<(), ModelError> {
        let field = |name: &str| format!("infrastructure[{index}].{name}");
        if self.node_count == 0 {
            return Err(ModelError::invalid(field("node_count"), "must be at least 1"));
        }
        if !(self.clock.is_finite() && self.clock > 0.0) {
            return Err(ModelError::invalid(field("clock"), "must be positive"));
        }
        for (name, value) in [
            ("cost_active", self.cost_active),
            ("cost_standby", self.cost_standby),
            ("fail_active", self.fail_active),
            ("fail_standby", self.fail_standby),
        ] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(ModelError::invalid(field(name), "must be non-negative"));
            }
        }
        if self.fail_standby > self.fail_active {
            return Err(ModelError::invalid(
                field("fail_standby"),
                format!(
                    "{} exceeds fail_active {} in category {index}",
                    self.fail_standby, self.fail_active
                ),
            ));
        }
        if self.cost_standby > self.cost_active {
            return Err(ModelError::invalid(
                field("cost_standby"),
                format!(
                    "{} exceeds cost_active {} in category {index}",
                    self.cost_standby, self.cost_active
                ),
            ));
        }
        Ok(())
    }
}

/// The set of node categories, in a fixed order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Infrastructure {
    pub categories: Vec<NodeCategory>,
}

impl Infrastructure {
    pub fn new(categories: Vec<NodeCategory>) -> Result<Self, ModelError> {
        let infra = Infrastructure { categories };
        infra.validate()?;
        Ok(infra)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.categories.is_empty() {
            return Err(ModelError::invalid("infrastructure", "needs at least one category"));
        }
        for (i, c) in self.categories.iter().enumerate() {
            c.validate(i)?;
        }
        Ok(())
    }

    pub fn num_categories(&self) -> usize {
        self.categories.len()
    }

    pub fn total_nodes(&self) -> usize {
        self.categories.iter().map(|c| c.node_count).sum()
    }

    pub fn category(&self, i: usize) -> &NodeCategory {
        &self.categories[i]
    }

    /// Start offset of each category's block in a node-indexed genome.
    pub fn node_offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.categories
            .iter()
            .map(|c| {
                let start = acc;
                acc += c.node_count;
                start
            })
            .collect()
    }
}

/// Backup provisioning scheme requested by an SFC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum BackupStrategy {
    DedicatedActive = 1,
    DedicatedStandby = 2,
    SharedActive = 3,
    SharedStandby = 4,
}

impl BackupStrategy {
    pub const ALL: [BackupStrategy; 4] = [
        BackupStrategy::DedicatedActive,
        BackupStrategy::DedicatedStandby,
        BackupStrategy::SharedActive,
        BackupStrategy::SharedStandby,
    ];

    pub fn is_dedicated(self) -> bool {
        matches!(self, BackupStrategy::DedicatedActive | BackupStrategy::DedicatedStandby)
    }

    pub fn is_shared(self) -> bool {
        !self.is_dedicated()
    }

    pub fn is_standby(self) -> bool {
        matches!(self, BackupStrategy::DedicatedStandby | BackupStrategy::SharedStandby)
    }

    pub fn code(self) -> u8 {
        self as u8
    }
}

impl TryFrom<u8> for BackupStrategy {
    type Error = String;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        match value {
            1 => Ok(BackupStrategy::DedicatedActive),
            2 => Ok(BackupStrategy::DedicatedStandby),
            3 => Ok(BackupStrategy::SharedActive),
            4 => Ok(BackupStrategy::SharedStandby),
            other => Err(format!("backup strategy must be 1-4, got {other}")),
        }
    }
}

impl From<BackupStrategy> for u8 {
    fn from(s: BackupStrategy) -> u8 {
        s.code()
    }
}

impl std::fmt::Display for BackupStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            BackupStrategy::DedicatedActive => "dedicated-active",
            BackupStrategy::DedicatedStandby => "dedicated-standby",
            BackupStrategy::SharedActive => "shared-active",
            BackupStrategy::SharedStandby => "shared-standby",
        };
        f.write_str(name)
    }
}

/// A single service function chain request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SfcRequest {
    /// CPU cycles per VNF, in chain order.
    pub loads: Vec<f64>,
    pub deadline: f64,
    pub reliability_target: f64,
    pub strategy: BackupStrategy,
}

impl SfcRequest {
    pub fn len(&self) -> usize {
        self.loads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.loads.is_empty()
    }

    fn validate(&self, index: usize) -> Result<(), ModelError> {
        let field = |name: &str| format!("workload[{index}].{name}");
        if self.loads.is_empty() {
            return Err(ModelError::invalid(field("loads"), "chain must contain at least one VNF"));
        }
        for (j, &load) in self.loads.iter().enumerate() {
            if !(load.is_finite() && load > 0.0) {
                return Err(ModelError::invalid(
                    format!("workload[{index}].loads[{j}]"),
                    format!("load must be positive, got {load}"),
                ));
            }
        }
        if !(self.deadline.is_finite() && self.deadline > 0.0) {
            return Err(ModelError::invalid(field("deadline"), "must be positive"));
        }
        if !(self.reliability_target > 0.0 && self.reliability_target < 1.0) {
            return Err(ModelError::invalid(
                field("reliability_target"),
                format!("must lie in (0, 1), got {}", self.reliability_target),
            ));
        }
        Ok(())
    }
}

/// Location of one VNF: SFC index and position within the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VnfRef {
    pub sfc: usize,
    pub pos: usize,
}

/// The ordered set of SFCs to place.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Workload {
    pub sfcs: Vec<SfcRequest>,
}

impl Workload {
    pub fn new(sfcs: Vec<SfcRequest>) -> Result<Self, ModelError> {
        let w = Workload { sfcs };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.sfcs.is_empty() {
            return Err(ModelError::invalid("workload", "needs at least one SFC"));
        }
        for (k, s) in self.sfcs.iter().enumerate() {
            s.validate(k)?;
        }
        Ok(())
    }

    pub fn num_sfcs(&self) -> usize {
        self.sfcs.len()
    }

    /// Total number of VNFs across all chains.
    pub fn total_vnfs(&self) -> usize {
        self.sfcs.iter().map(SfcRequest::len).sum()
    }

    /// Global VNF index of the first VNF of each SFC (zero-based).
    pub fn vnf_offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.sfcs
            .iter()
            .map(|s| {
                let start = acc;
                acc += s.len();
                start
            })
            .collect()
    }

    /// Maps zero-based global VNF indices to (sfc, position) pairs, in workload order.
    pub fn vnf_refs(&self) -> Vec<VnfRef> {
        self.sfcs
            .iter()
            .enumerate()
            .flat_map(|(sfc, s)| (0..s.len()).map(move |pos| VnfRef { sfc, pos }))
            .collect()
    }

    pub fn with_strategy(&self, strategy: BackupStrategy) -> Workload {
        let sfcs = self
            .sfcs
            .iter()
            .map(|s| SfcRequest { strategy, ..s.clone() })
            .collect();
        Workload { sfcs }
    }
}

fn default_gamma() -> f64 {
    1000.0
}

fn default_holding_time() -> f64 {
    1.0
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// Objective weights, penalty weight and holding time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveConfig {
    pub alpha: f64,
    pub beta: f64,
    #[serde(default = "default_gamma")]
    pub penalty_weight: f64,
    #[serde(default = "default_holding_time")]
    pub holding_time: f64,
    /// Use raw cost/delay totals in the fitness instead of normalized terms.
    #[serde(default, skip_serializing_if = "is_false")]
    pub raw_fitness: bool,
}

impl Default for ObjectiveConfig {
    fn default() -> Self {
        ObjectiveConfig {
            alpha: 0.65,
            beta: 0.35,
            penalty_weight: default_gamma(),
            holding_time: default_holding_time(),
            raw_fitness: false,
        }
    }
}

impl ObjectiveConfig {
    pub fn validate(&self) -> Result<(), ModelError> {
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(ModelError::invalid(format!("objective.{name}"), "must lie in [0, 1]"));
            }
        }
        if (self.alpha + self.beta - 1.0).abs() > 1e-9 {
            return Err(ModelError::invalid(
                "objective",
                format!("alpha + beta must equal 1, got {}", self.alpha + self.beta),
            ));
        }
        if !(self.penalty_weight.is_finite() && self.penalty_weight > 0.0) {
            return Err(ModelError::invalid("objective.penalty_weight", "must be positive"));
        }
        if !(self.holding_time.is_finite() && self.holding_time > 0.0) {
            return Err(ModelError::invalid("objective.holding_time", "must be positive"));
        }
        Ok(())
    }
}
