use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::gaba::{gaba_decode, gaba_random, DuplicateResolution, GabaChromosome};
use super::operators::{swap_mutation, tournament_select, two_point_crossover};
use super::raba::{raba_decode_and_backup, raba_random, RabaChromosome};
use super::{GaConfig, SolveResult};
use crate::error::SolveError;
use crate::evaluator::{EvaluationReport, Problem};
use crate::model::Solution;

/// Which genome the GA evolves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Encoding {
    /// Node-indexed genome; backups are evolved.
    Gaba,
    /// VNF-indexed genome; backups are assigned at random during decoding.
    Raba,
}

/// Generator for decoding the candidate in `slot` of `generation`, derived
/// from the run seed alone so results do not depend on scheduling.
pub(crate) fn slot_rng(seed: u64, generation: u64, slot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((generation + 1) << 32) | slot);
    rng
}

#[derive(Clone)]
struct Individual {
    genes: Vec<usize>,
    solution: Solution,
    report: EvaluationReport,
}

impl Individual {
    fn fitness(&self) -> f64 {
        self.report.fitness
    }
}

fn random_genes(encoding: Encoding, problem: &Problem, rng: &mut ChaCha8Rng) -> Vec<usize> {
    match encoding {
        Encoding::Gaba => gaba_random(problem, rng).genes,
        Encoding::Raba => raba_random(problem, rng).genes,
    }
}

fn decode(
    encoding: Encoding,
    genes: Vec<usize>,
    problem: &Problem,
    resolution: DuplicateResolution,
    rng: &mut ChaCha8Rng,
) -> Individual {
    let (genes, solution) = match encoding {
        Encoding::Gaba => {
            let c = GabaChromosome { genes };
            let placement = gaba_decode(&c, problem, resolution, rng);
            (c.genes, placement.solution)
        }
        Encoding::Raba => {
            let c = RabaChromosome { genes };
            let placement = raba_decode_and_backup(&c, problem, rng);
            (c.genes, placement.solution)
        }
    };
    let report = problem.evaluate(&solution);
    Individual { genes, solution, report }
}

fn evaluate_batch(
    encoding: Encoding,
    batch: Vec<Vec<usize>>,
    problem: &Problem,
    cfg: &GaConfig,
    generation: u64,
) -> Vec<Individual> {
    batch
        .into_par_iter()
        .enumerate()
        .map(|(slot, genes)| {
            let mut rng = slot_rng(cfg.seed, generation, slot as u64);
            decode(encoding, genes, problem, cfg.duplicate_resolution, &mut rng)
        })
        .collect()
}

fn rank(population: &mut [Individual]) {
    population.sort_by(|a, b| a.fitness().total_cmp(&b.fitness()));
}

/// Runs the genetic algorithm with the given encoding.
///
/// Each generation keeps the `elites` best members, breeds
/// `crossovers_per_generation` offspring from tournament-selected parents
/// (two-point crossover, then swap mutation), and keeps the best
/// `population` of elites and offspring together.
pub fn run_ga(
    encoding: Encoding,
    problem: &Problem,
    cfg: &GaConfig,
) -> Result<SolveResult, SolveError> {
    cfg.validate()?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let initial: Vec<Vec<usize>> =
        (0..cfg.population).map(|_| random_genes(encoding, problem, &mut rng)).collect();
    let mut population = evaluate_batch(encoding, initial, problem, cfg, 0);
    rank(&mut population);
    let mut history = vec![population[0].fitness()];
    let mut evaluations = cfg.population as u64;

    for generation in 1..=cfg.generations as u64 {
        let fitnesses: Vec<f64> = population.iter().map(Individual::fitness).collect();
        let target = cfg.crossovers_per_generation;
        let mut offspring = Vec::with_capacity(target);
        while offspring.len() < target {
            let a = tournament_select(&fitnesses, cfg.tournament_size, &mut rng);
            let b = tournament_select(&fitnesses, cfg.tournament_size, &mut rng);
            let (mut c1, mut c2) =
                two_point_crossover(&population[a].genes, &population[b].genes, &mut rng)?;
            swap_mutation(&mut c1, cfg.mutation_rate, &mut rng);
            offspring.push(c1);
            if offspring.len() < target {
                swap_mutation(&mut c2, cfg.mutation_rate, &mut rng);
                offspring.push(c2);
            }
        }
        evaluations += offspring.len() as u64;
        let offspring = evaluate_batch(encoding, offspring, problem, cfg, generation);

        let elites = cfg.elites.min(population.len());
        let mut next: Vec<Individual> = population.drain(..elites).collect();
        next.extend(offspring);
        if next.len() < cfg.population {
            let shortfall = cfg.population - next.len();
            next.extend(population.drain(..shortfall.min(population.len())));
        }
        rank(&mut next);
        next.truncate(cfg.population);
        population = next;
        history.push(population[0].fitness());
    }

    let best = population.swap_remove(0);
    Ok(SolveResult {
        best_solution: best.solution,
        best_report: best.report,
        fitness_history: history,
        wall_time: start.elapsed().as_secs_f64(),
        seed: cfg.seed,
        evaluations,
        optimal: false,
    })
}

