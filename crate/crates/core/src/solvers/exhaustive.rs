//! Brute-force search for tiny instances.
//!
//! Enumerates every placement that fits category capacity and, for each,
//! every backup vector that fits the remaining free nodes. A VNF may also
//! stay unplaced, as in a node-indexed genome that never mentions it; on
//! instances with no feasible solution that can be the fitness minimizer.
//! Placements that overflow a category are skipped: the node-indexed genome
//! cannot express them.

use std::time::Instant;

use rayon::prelude::*;

use super::SolveResult;
use crate::error::SolveError;
use crate::evaluator::{EvaluationReport, Problem};
use crate::model::Solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveLimits {
    /// Largest number of candidate solutions to evaluate.
    pub max_candidates: u128,
}

impl Default for ExhaustiveLimits {
    fn default() -> Self {
        ExhaustiveLimits { max_candidates: 10_000_000 }
    }
}

/// Placement number `index` read as a base-`(m + 1)` odometer, first VNF
/// most significant; digit `m` leaves the VNF unplaced.
fn placement(index: u64, m: usize, vnfs: usize) -> Vec<usize> {
    let mut genes = vec![0; vnfs];
    let mut rest = index;
    for g in genes.iter_mut().rev() {
        *g = (rest % (m as u64 + 1)) as usize;
        rest /= m as u64 + 1;
    }
    genes
}

/// Backup slots of a placement: which category each one draws from.
/// Dedicated SFCs get one slot per VNF, shared SFCs one per hosting category.
struct Slots {
    category: Vec<usize>,
    free: Vec<usize>,
}

fn slots(problem: &Problem, genes: &[usize]) -> Option<(Solution, Slots)> {
    let infra = &problem.infra;
    let workload = &problem.workload;
    let m = infra.num_categories();
    let mut solution = Solution::empty(infra, workload);
    let mut used = vec![0usize; m];
    for (r, &c) in workload.vnf_refs().iter().zip(genes) {
        if c < m {
            solution.assignment[r.sfc][r.pos] = Some(c);
            used[c] += 1;
        }
    }
    let mut free = Vec::with_capacity(m);
    for (cat, &u) in infra.categories.iter().zip(&used) {
        free.push(cat.node_count.checked_sub(u)?);
    }
    let mut category = Vec::new();
    for (k, sfc) in workload.sfcs.iter().enumerate() {
        if sfc.strategy.is_dedicated() {
            category.extend(solution.assignment[k].iter().flatten());
        } else {
            let counts = solution.vnfs_per_category(k, m);
            category.extend((0..m).filter(|&i| counts[i] > 0));
        }
    }
    Some((solution, Slots { category, free }))
}

/// Number of (placement, backup vector) candidates, counting stops once it
/// passes `stop_above`. `None` when there are more placements to scan than
/// that.
pub fn search_space_size(problem: &Problem, stop_above: u128) -> Option<u128> {
    let m = problem.infra.num_categories();
    let vnfs = problem.workload.total_vnfs();
    let placements = (m as u128 + 1).checked_pow(vnfs as u32).filter(|&p| p <= stop_above)?;
    let mut total: u128 = 0;
    for index in 0..placements as u64 {
        let Some((_, s)) = slots(problem, &placement(index, m, vnfs)) else { continue };
        let mut count: u128 = 1;
        for i in 0..m {
            let n = s.category.iter().filter(|&&c| c == i).count();
            count = count.saturating_mul(binomial(s.free[i] + n, n));
        }
        total = total.saturating_add(count);
        if total > stop_above {
            break;
        }
    }
    Some(total)
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

struct Best {
    fitness: f64,
    order: (u64, u64),
    solution: Solution,
    report: EvaluationReport,
    evaluations: u64,
}

fn better(a: Best, b: Best) -> Best {
    let evaluations = a.evaluations + b.evaluations;
    let b_first = b.fitness.total_cmp(&a.fitness).then(b.order.cmp(&a.order)).is_lt();
    let mut winner = if b_first { b } else { a };
    winner.evaluations = evaluations;
    winner
}

/// Best backup vector for one placement, visiting vectors in lexicographic order.
fn best_for_placement(problem: &Problem, index: u64, genes: &[usize]) -> Option<Best> {
    let (mut solution, s) = slots(problem, genes)?;
    let mut counts = vec![0usize; s.category.len()];
    let mut free = s.free.clone();
    let mut best: Option<Best> = None;
    let mut rank = 0u64;
    loop {
        write_backups(problem, &mut solution, &counts);
        let report = problem.evaluate(&solution);
        let candidate = Best {
            fitness: report.fitness,
            order: (index, rank),
            solution: solution.clone(),
            report,
            evaluations: 1,
        };
        best = Some(match best {
            None => candidate,
            Some(b) => better(b, candidate),
        });
        rank += 1;
        // Odometer step, last slot fastest, respecting per-category room.
        let mut pos = counts.len();
        loop {
            if pos == 0 {
                return best;
            }
            pos -= 1;
            let c = s.category[pos];
            if free[c] > 0 {
                free[c] -= 1;
                counts[pos] += 1;
                break;
            }
            free[c] += counts[pos];
            counts[pos] = 0;
        }
    }
}

fn write_backups(problem: &Problem, solution: &mut Solution, counts: &[usize]) {
    let m = problem.infra.num_categories();
    let mut it = counts.iter();
    for (k, sfc) in problem.workload.sfcs.iter().enumerate() {
        if sfc.strategy.is_dedicated() {
            for (b, c) in solution.dedicated_backups[k].iter_mut().zip(&solution.assignment[k]) {
                *b = if c.is_some() { *it.next().unwrap() } else { 0 };
            }
        } else {
            let hosted = solution.vnfs_per_category(k, m);
            for i in 0..m {
                solution.shared_backups[k][i] = if hosted[i] > 0 { *it.next().unwrap() } else { 0 };
            }
        }
    }
}

/// Exact minimum-fitness solution; ties go to the first candidate in
/// enumeration order. Refuses instances with more candidates (or more
/// placements) than the cap.
pub fn exhaustive_solve(problem: &Problem, limits: ExhaustiveLimits) -> Result<SolveResult, SolveError> {
    let cap = limits.max_candidates;
    let too_large = |size| SolveError::SearchSpaceTooLarge { size, cap };
    let size = search_space_size(problem, cap).ok_or_else(|| {
        let m = problem.infra.num_categories() as u128 + 1;
        too_large(m.checked_pow(problem.workload.total_vnfs() as u32).unwrap_or(u128::MAX))
    })?;
    if size > cap {
        return Err(too_large(size));
    }
    let start = Instant::now();
    let m = problem.infra.num_categories();
    let vnfs = problem.workload.total_vnfs();
    let placements = (m as u64 + 1).pow(vnfs as u32);
    let best = (0..placements)
        .into_par_iter()
        .filter_map(|index| best_for_placement(problem, index, &placement(index, m, vnfs)))
        .reduce_with(better)
        .ok_or_else(|| SolveError::Config("no placement fits the node capacity".into()))?;
    Ok(SolveResult {
        fitness_history: vec![best.fitness],
        best_solution: best.solution,
        best_report: best.report,
        wall_time: start.elapsed().as_secs_f64(),
        seed: 0,
        evaluations: best.evaluations,
        optimal: true,
    })
}
