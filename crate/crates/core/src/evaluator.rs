//! Constraint checks, normalization and fitness for candidate solutions.

use serde::{Deserialize, Serialize};

use crate::error::SolveError;
use crate::model::{Dataset, Infrastructure, ObjectiveConfig, Solution, Workload};
use crate::reliability::{sfc_cost, sfc_reliability};

/// Absolute slack on reliability and deadline comparisons.
pub const COMPARISON_TOLERANCE: f64 = 1e-12;

/// Constants used to normalize total delay and total cost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizationBounds {
    pub tau_min: f64,
    pub tau_max: f64,
    pub p_min: f64,
    pub p_max: f64,
}

/// Analytic bounds valid for every placement.
///
/// Delay is bracketed by running every VNF on the fastest and the slowest
/// category. Cost is bracketed below by zero-backup placement on the
/// cheapest category and above by activating every node.
pub fn normalization_bounds(
    infra: &Infrastructure,
    workload: &Workload,
) -> Result<NormalizationBounds, SolveError> {
    let vnfs = workload.total_vnfs();
    let nodes = infra.total_nodes();
    if vnfs > nodes {
        return Err(SolveError::InsufficientNodes { vnfs, nodes });
    }
    let total_load: f64 = workload.sfcs.iter().flat_map(|s| s.loads.iter()).sum();
    let cats = &infra.categories;
    let fastest = cats.iter().map(|c| c.clock).fold(f64::MIN, f64::max);
    let slowest = cats.iter().map(|c| c.clock).fold(f64::MAX, f64::min);
    let cheapest = cats.iter().map(|c| c.cost_active).fold(f64::MAX, f64::min);
    Ok(NormalizationBounds {
        tau_min: total_load / fastest,
        tau_max: total_load / slowest,
        p_min: vnfs as f64 * cheapest,
        p_max: cats.iter().map(|c| c.node_count as f64 * c.cost_active).sum(),
    })
}

/// Execution delay `τ_k`: sum of load over clock of each placed VNF.
pub fn sfc_delay(solution: &Solution, k: usize, infra: &Infrastructure, workload: &Workload) -> f64 {
    workload.sfcs[k]
        .loads
        .iter()
        .zip(&solution.assignment[k])
        .filter_map(|(load, c)| c.map(|c| load / infra.category(c).clock))
        .sum()
}

/// Nodes consumed per category by primaries and backups, and whether every
/// category stays within its node count.
pub fn capacity_usage(
    solution: &Solution,
    infra: &Infrastructure,
    workload: &Workload,
) -> (Vec<usize>, bool) {
    let m = infra.num_categories();
    let mut usage = vec![0usize; m];
    for (k, sfc) in workload.sfcs.iter().enumerate() {
        let counts = solution.vnfs_per_category(k, m);
        for i in 0..m {
            usage[i] += counts[i];
            if sfc.strategy.is_shared() && counts[i] > 0 {
                usage[i] += solution.shared_backups[k][i];
            }
        }
        if sfc.strategy.is_dedicated() {
            for (c, b) in solution.assignment[k].iter().zip(&solution.dedicated_backups[k]) {
                if let Some(c) = c {
                    usage[*c] += b;
                }
            }
        }
    }
    let ok = usage.iter().zip(&infra.categories).all(|(u, c)| *u <= c.node_count);
    (usage, ok)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SfcReport {
    pub reliability: f64,
    pub delay: f64,
    pub cost: f64,
    pub reliability_ok: bool,
    pub deadline_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub per_sfc: Vec<SfcReport>,
    pub per_category_usage: Vec<usize>,
    pub capacity_ok: bool,
    /// Nodes used beyond capacity, summed over categories.
    pub capacity_excess: usize,
    pub placement_complete: bool,
    pub missing_vnfs: usize,
    pub penalty_count: usize,
    pub total_cost: f64,
    pub total_delay: f64,
    pub normalized_cost: f64,
    pub normalized_delay: f64,
    pub objective: f64,
    pub fitness: f64,
}

impl EvaluationReport {
    pub fn is_feasible(&self) -> bool {
        self.penalty_count == 0
    }
}

/// Full evaluation of one candidate.
///
/// The penalty count adds one per missing VNF, per SFC below its reliability
/// target, per SFC past its deadline and per node used beyond a category's
/// capacity. Infeasible candidates are scored, never rejected.
pub fn evaluate(
    solution: &Solution,
    infra: &Infrastructure,
    workload: &Workload,
    cfg: &ObjectiveConfig,
    bounds: &NormalizationBounds,
) -> EvaluationReport {
    let per_sfc: Vec<SfcReport> = workload
        .sfcs
        .iter()
        .enumerate()
        .map(|(k, sfc)| {
            let reliability = sfc_reliability(solution, k, infra, workload, cfg.holding_time);
            let delay = sfc_delay(solution, k, infra, workload);
            SfcReport {
                reliability,
                delay,
                cost: sfc_cost(solution, k, infra, workload),
                reliability_ok: reliability >= sfc.reliability_target - COMPARISON_TOLERANCE,
                deadline_ok: delay <= sfc.deadline + COMPARISON_TOLERANCE,
            }
        })
        .collect();
    let (per_category_usage, capacity_ok) = capacity_usage(solution, infra, workload);
    let capacity_excess = per_category_usage
        .iter()
        .zip(&infra.categories)
        .map(|(u, c)| u.saturating_sub(c.node_count))
        .sum();
    let missing_vnfs = solution.missing_vnfs();
    let penalty_count = missing_vnfs
        + per_sfc.iter().filter(|r| !r.reliability_ok).count()
        + per_sfc.iter().filter(|r| !r.deadline_ok).count()
        + capacity_excess;

    let total_cost: f64 = per_sfc.iter().map(|r| r.cost).sum();
    let total_delay: f64 = per_sfc.iter().map(|r| r.delay).sum();
    let normalized_cost = (total_cost - bounds.p_min) / bounds.p_max;
    let normalized_delay = (total_delay - bounds.tau_min) / bounds.tau_max;
    let objective = cfg.alpha * normalized_cost + cfg.beta * normalized_delay;
    let base = if cfg.raw_fitness {
        cfg.alpha * total_cost + cfg.beta * total_delay
    } else {
        objective
    };
    EvaluationReport {
        per_sfc,
        per_category_usage,
        capacity_ok,
        capacity_excess,
        placement_complete: missing_vnfs == 0,
        missing_vnfs,
        penalty_count,
        total_cost,
        total_delay,
        normalized_cost,
        normalized_delay,
        objective,
        fitness: base + cfg.penalty_weight * penalty_count as f64,
    }
}

/// A validated instance together with its normalization bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub infra: Infrastructure,
    pub workload: Workload,
    pub objective: ObjectiveConfig,
    pub bounds: NormalizationBounds,
}

impl Problem {
    pub fn new(
        infra: Infrastructure,
        workload: Workload,
        objective: ObjectiveConfig,
    ) -> Result<Self, SolveError> {
        infra.validate()?;
        workload.validate()?;
        objective.validate()?;
        let bounds = normalization_bounds(&infra, &workload)?;
        Ok(Problem { infra, workload, objective, bounds })
    }

    pub fn from_dataset(dataset: &Dataset) -> Result<Self, SolveError> {
        Problem::new(
            dataset.infrastructure.clone(),
            dataset.workload.clone(),
            dataset.objective.clone(),
        )
    }

    pub fn evaluate(&self, solution: &Solution) -> EvaluationReport {
        evaluate(solution, &self.infra, &self.workload, &self.objective, &self.bounds)
    }

    /// Reliability of SFC `k` alone, used by incremental backup assignment.
    pub fn sfc_reliability(&self, solution: &Solution, k: usize) -> f64 {
        sfc_reliability(solution, k, &self.infra, &self.workload, self.objective.holding_time)
    }
}
