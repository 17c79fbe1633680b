use serde::{Deserialize, Serialize};

use super::{Infrastructure, Workload};
use crate::error::ModelError;

/// A placement of every VNF onto a node category plus backup counts.
///
/// `assignment[k][j]` is the zero-based category hosting VNF `j` of SFC `k`
/// (`None` when a decoder could not place it). Dedicated backups live in the
/// same category as their primary, so `dedicated_backups[k][j]` carries no
/// category of its own. `shared_backups[k][i]` is the pool size of SFC `k`
/// in category `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Solution {
    pub assignment: Vec<Vec<Option<usize>>>,
    pub dedicated_backups: Vec<Vec<usize>>,
    pub shared_backups: Vec<Vec<usize>>,
}

impl Solution {
    /// An all-unplaced, zero-backup solution shaped for the given instance.
    pub fn empty(infra: &Infrastructure, workload: &Workload) -> Self {
        Solution {
            assignment: workload.sfcs.iter().map(|s| vec![None; s.len()]).collect(),
            dedicated_backups: workload.sfcs.iter().map(|s| vec![0; s.len()]).collect(),
            shared_backups: vec![vec![0; infra.num_categories()]; workload.num_sfcs()],
        }
    }

    /// Zero-backup solution from a complete per-SFC category assignment.
    pub fn from_assignment(
        infra: &Infrastructure,
        workload: &Workload,
        assignment: Vec<Vec<usize>>,
    ) -> Self {
        let mut sol = Solution::empty(infra, workload);
        sol.assignment = assignment
            .into_iter()
            .map(|row| row.into_iter().map(Some).collect())
            .collect();
        sol
    }

    pub fn is_complete(&self) -> bool {
        self.assignment.iter().flatten().all(Option::is_some)
    }

    pub fn missing_vnfs(&self) -> usize {
        self.assignment.iter().flatten().filter(|c| c.is_none()).count()
    }

    /// Number of VNFs of SFC `k` placed in each category (`N_{i,k}`).
    pub fn vnfs_per_category(&self, k: usize, num_categories: usize) -> Vec<usize> {
        let mut counts = vec![0; num_categories];
        for c in self.assignment[k].iter().flatten() {
            counts[*c] += 1;
        }
        counts
    }

    /// Checks shape and structural invariants against an instance.
    pub fn validate(&self, infra: &Infrastructure, workload: &Workload) -> Result<(), ModelError> {
        let m = infra.num_categories();
        let k_count = workload.num_sfcs();
        for (name, len) in [
            ("assignment", self.assignment.len()),
            ("dedicated_backups", self.dedicated_backups.len()),
            ("shared_backups", self.shared_backups.len()),
        ] {
            if len != k_count {
                return Err(ModelError::invalid(
                    name,
                    format!("expected {k_count} SFC entries, found {len}"),
                ));
            }
        }
        for (k, sfc) in workload.sfcs.iter().enumerate() {
            if self.assignment[k].len() != sfc.len() {
                return Err(ModelError::invalid(
                    format!("assignment[{k}]"),
                    format!("expected {} VNFs, found {}", sfc.len(), self.assignment[k].len()),
                ));
            }
            if self.dedicated_backups[k].len() != sfc.len() {
                return Err(ModelError::invalid(
                    format!("dedicated_backups[{k}]"),
                    format!(
                        "expected {} VNFs, found {}",
                        sfc.len(),
                        self.dedicated_backups[k].len()
                    ),
                ));
            }
            if self.shared_backups[k].len() != m {
                return Err(ModelError::invalid(
                    format!("shared_backups[{k}]"),
                    format!("expected {m} categories, found {}", self.shared_backups[k].len()),
                ));
            }
            for (j, c) in self.assignment[k].iter().enumerate() {
                if let Some(c) = c {
                    if *c >= m {
                        return Err(ModelError::invalid(
                            format!("assignment[{k}][{j}]"),
                            format!("category index {c} out of range (M = {m})"),
                        ));
                    }
                }
            }
            let counts = self.vnfs_per_category(k, m);
            if sfc.strategy.is_dedicated() {
                if let Some(i) = self.shared_backups[k].iter().position(|&b| b > 0) {
                    return Err(ModelError::invalid(
                        format!("shared_backups[{k}][{i}]"),
                        "shared backups on an SFC with a dedicated strategy",
                    ));
                }
            } else {
                if let Some(j) = self.dedicated_backups[k].iter().position(|&b| b > 0) {
                    return Err(ModelError::invalid(
                        format!("dedicated_backups[{k}][{j}]"),
                        "dedicated backups on an SFC with a shared strategy",
                    ));
                }
                for i in 0..m {
                    if counts[i] == 0 && self.shared_backups[k][i] > 0 {
                        return Err(ModelError::invalid(
                            format!("shared_backups[{k}][{i}]"),
                            "shared pool in a category hosting none of the SFC's VNFs",
                        ));
                    }
                }
            }
            for (j, (c, &b)) in
                self.assignment[k].iter().zip(&self.dedicated_backups[k]).enumerate()
            {
                if c.is_none() && b > 0 {
                    return Err(ModelError::invalid(
                        format!("dedicated_backups[{k}][{j}]"),
                        "backups for an unplaced VNF",
                    ));
                }
            }
        }
        Ok(())
    }
}
