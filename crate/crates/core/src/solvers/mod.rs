//! Search procedures over placements and backup counts.

mod baseline;
mod exhaustive;
mod ga;
pub mod gaba;
pub mod operators;
pub mod raba;

pub use baseline::random_baseline;
pub use exhaustive::{exhaustive_solve, search_space_size, ExhaustiveLimits};
pub use ga::{run_ga, Encoding};
pub use gaba::DuplicateResolution;

use serde::{Deserialize, Serialize};

use crate::error::SolveError;
use crate::evaluator::EvaluationReport;
use crate::model::Solution;

/// Genetic algorithm hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub generations: usize,
    pub population: usize,
    /// Offspring bred per generation.
    pub crossovers_per_generation: usize,
    pub elites: usize,
    /// Probability that an offspring undergoes one swap.
    pub mutation_rate: f64,
    pub tournament_size: usize,
    pub seed: u64,
    #[serde(default)]
    pub duplicate_resolution: DuplicateResolution,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            generations: 2000,
            population: 400,
            crossovers_per_generation: 380,
            elites: 100,
            mutation_rate: 0.1,
            tournament_size: 3,
            seed: 0,
            duplicate_resolution: DuplicateResolution::Random,
        }
    }
}

impl GaConfig {
    /// Keeps the default offspring and elite shares (95 % and 25 % of the
    /// population) at another population size.
    pub fn scaled(population: usize, generations: usize, seed: u64) -> Self {
        GaConfig {
            generations,
            population,
            crossovers_per_generation: ((population as f64 * 0.95).round() as usize).max(1),
            elites: ((population as f64 * 0.25).round() as usize).max(1),
            seed,
            ..GaConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        let fail = |msg: &str| Err(SolveError::Config(msg.into()));
        if self.population == 0 {
            return fail("population must be positive");
        }
        if self.elites == 0 || self.elites > self.population {
            return fail("elites must lie in [1, population]");
        }
        if self.elites + self.crossovers_per_generation < self.population {
            return fail("elites plus offspring must fill the population");
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return fail("mutation rate must lie in [0, 1]");
        }
        if self.tournament_size < 2 {
            return fail("tournament size must be at least 2");
        }
        Ok(())
    }
}

/// Outcome of one solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub best_solution: Solution,
    pub best_report: EvaluationReport,
    /// Best fitness after initialization and after each generation.
    pub fitness_history: Vec<f64>,
    /// Not serialized, so result documents stay reproducible.
    #[serde(skip)]
    pub wall_time: f64,
    pub seed: u64,
    pub evaluations: u64,
    /// Set only by the exhaustive solver.
    pub optimal: bool,
}

#[cfg(test)]
mod tests;
