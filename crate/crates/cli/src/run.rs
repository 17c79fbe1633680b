use std::fs;
use std::path::Path;

use serde::Serialize;
use sfc_core::evaluator::Problem;
use sfc_core::model::{load_dataset, BackupStrategy, Dataset, ObjectiveConfig};
use sfc_core::solvers::{
    exhaustive_solve, random_baseline, run_ga, Encoding, ExhaustiveLimits, GaConfig, SolveResult,
};
use sfc_core::SolveError;

use crate::args::{Algorithm, SolverArgs};
use crate::error::CliError;
use crate::output::sha256_hex;

pub struct LoadedDataset {
    pub dataset: Dataset,
    pub sha256: String,
}

pub fn read_dataset(path: &Path) -> Result<LoadedDataset, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let dataset =
        load_dataset(bytes.as_slice()).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    Ok(LoadedDataset { dataset, sha256: sha256_hex(&bytes) })
}

pub fn build_problem(
    dataset: &Dataset,
    objective: ObjectiveConfig,
    strategy: Option<BackupStrategy>,
) -> Result<Problem, SolveError> {
    let workload = match strategy {
        Some(s) => dataset.workload.with_strategy(s),
        None => dataset.workload.clone(),
    };
    Problem::new(dataset.infrastructure.clone(), workload, objective)
}

/// Settings that, with the dataset digest, determine a run's output.
#[derive(Debug, Clone, Serialize)]
pub struct RunSettings {
    pub algorithm: Algorithm,
    pub strategy_override: Option<u8>,
    pub ga: GaConfig,
    pub objective: ObjectiveConfig,
    pub random_attempts: usize,
    pub exact_cap: u128,
}

pub fn run_algorithm(
    problem: &Problem,
    algorithm: Algorithm,
    args: &SolverArgs,
    seed: u64,
) -> Result<SolveResult, SolveError> {
    match algorithm {
        Algorithm::GapGaba => run_ga(Encoding::Gaba, problem, &args.ga_config(seed)),
        Algorithm::GapRaba => run_ga(Encoding::Raba, problem, &args.ga_config(seed)),
        Algorithm::Random => random_baseline(problem, args.random_attempts, seed),
        Algorithm::Exact => {
            let mut r = exhaustive_solve(problem, ExhaustiveLimits { max_candidates: args.exact_cap })?;
            r.seed = seed;
            Ok(r)
        }
    }
}

/// File stem shared by a run's result, history and timing files.
pub fn run_stem(algorithm: Algorithm, strategy: Option<BackupStrategy>, seed: u64) -> String {
    match strategy {
        Some(s) => format!("{}-s{}-seed{seed}", algorithm.name(), s.code()),
        None => format!("{}-seed{seed}", algorithm.name()),
    }
}

#[derive(Serialize)]
pub struct HistoryRow {
    pub generation: usize,
    pub best_fitness: f64,
}

pub fn history_rows(result: &SolveResult) -> impl Iterator<Item = HistoryRow> + '_ {
    result
        .fitness_history
        .iter()
        .enumerate()
        .map(|(generation, &best_fitness)| HistoryRow { generation, best_fitness })
}
