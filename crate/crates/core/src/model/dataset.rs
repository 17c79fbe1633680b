use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{BackupStrategy, Infrastructure, NodeCategory, ObjectiveConfig, SfcRequest, Workload};
use crate::error::ModelError;

/// A complete problem instance as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dataset {
    pub infrastructure: Infrastructure,
    pub workload: Workload,
    #[serde(default)]
    pub objective: ObjectiveConfig,
}

impl Dataset {
    pub fn validate(&self) -> Result<(), ModelError> {
        self.infrastructure.validate()?;
        self.workload.validate()?;
        self.objective.validate()
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("dataset serializes")
    }
}

/// Parses and validates a dataset document.
pub fn load_dataset<R: Read>(source: R) -> Result<Dataset, ModelError> {
    let dataset: Dataset = serde_json::from_reader(source)?;
    dataset.validate()?;
    Ok(dataset)
}

pub fn save_dataset<W: Write>(dataset: &Dataset, mut sink: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut sink, dataset)?;
    sink.write_all(b"\n")
}

/// The published three-category instance with ten SFCs.
///
/// Node parameters are the published values. Per-SFC entries that were not
/// published are filled with fixed values consistent with the published
/// first and last chains. `node_scale` multiplies every category's node
/// count (rounded, at least 1), e.g. 0.2 gives the 160-node profile.
pub fn paper_instance(node_scale: f64) -> Dataset {
    let scale = |n: usize| ((n as f64 * node_scale).round() as usize).max(1);
    let category = |n, clock, pa, ps, fa, fs| NodeCategory {
        node_count: scale(n),
        clock,
        cost_active: pa,
        cost_standby: ps,
        fail_active: fa,
        fail_standby: fs,
    };
    let infrastructure = Infrastructure {
        categories: vec![
            category(200, 5.0, 25.0, 2.5, 0.008, 0.0008),
            category(300, 4.0, 20.0, 2.0, 0.01, 0.001),
            category(300, 1.0, 5.0, 0.5, 0.04, 0.004),
        ],
    };
    use BackupStrategy::*;
    let sfc = |loads: &[f64], deadline, target, strategy| SfcRequest {
        loads: loads.to_vec(),
        deadline,
        reliability_target: target,
        strategy,
    };
    let workload = Workload {
        sfcs: vec![
            sfc(&[10.0, 20.0, 15.0, 30.0, 9.0], 80.0, 0.99, DedicatedActive),
            sfc(&[4.0, 6.0, 8.0, 5.0, 7.0], 10.0, 0.999, SharedActive),
            sfc(&[12.0, 25.0, 18.0], 40.0, 0.9999, DedicatedStandby),
            sfc(&[8.0, 16.0, 24.0, 10.0], 30.0, 0.99999, SharedStandby),
            sfc(&[30.0, 15.0], 60.0, 0.999, DedicatedActive),
            sfc(&[5.0, 10.0, 20.0, 15.0], 25.0, 0.999999, SharedStandby),
            sfc(&[22.0, 11.0, 33.0], 50.0, 0.9999, SharedActive),
            sfc(&[6.0, 12.0, 9.0, 15.0, 18.0], 20.0, 0.99, DedicatedStandby),
            sfc(&[25.0, 35.0], 70.0, 0.99999, SharedActive),
            sfc(&[20.0, 40.0, 30.0, 35.0, 45.0], 100.0, 0.999, DedicatedActive),
        ],
    };
    Dataset { infrastructure, workload, objective: ObjectiveConfig::default() }
}
