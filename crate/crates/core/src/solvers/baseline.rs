use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ga::slot_rng;
use super::raba::{raba_decode_and_backup, raba_random};
use super::SolveResult;
use crate::error::SolveError;
use crate::evaluator::{EvaluationReport, Problem};

/// Rejection sampler standing in for "any feasible solution uniformly at random".
///
/// Draws uniformly random placements with randomized backup allocation and
/// returns the first feasible draw. If none of `attempts` draws is feasible,
/// returns the draw with fewest penalties (then lowest fitness); its report
/// is then infeasible.
pub fn random_baseline(problem: &Problem, attempts: usize, seed: u64) -> Result<SolveResult, SolveError> {
    if attempts == 0 {
        return Err(SolveError::Config("random baseline needs at least one attempt".into()));
    }
    let start = Instant::now();
    let mut placement_rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<((usize, f64), _, EvaluationReport)> = None;
    let mut history = Vec::new();
    let mut evaluations = 0;
    for attempt in 0..attempts {
        let genes = raba_random(problem, &mut placement_rng);
        let mut backup_rng = slot_rng(seed, 0, attempt as u64);
        let placement = raba_decode_and_backup(&genes, problem, &mut backup_rng);
        let report = problem.evaluate(&placement.solution);
        evaluations += 1;
        let key = (report.penalty_count, report.fitness);
        let better = match &best {
            None => true,
            Some((k, _, _)) => key.0 < k.0 || (key.0 == k.0 && key.1 < k.1),
        };
        if better {
            best = Some((key, placement.solution, report));
        }
        history.push(best.as_ref().unwrap().2.fitness);
        if best.as_ref().unwrap().2.is_feasible() {
            break;
        }
    }
    let (_, best_solution, best_report) = best.expect("at least one attempt");
    Ok(SolveResult {
        best_solution,
        best_report,
        fitness_history: history,
        wall_time: start.elapsed().as_secs_f64(),
        seed,
        evaluations,
        optimal: false,
    })
}
