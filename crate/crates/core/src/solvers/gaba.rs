//! Node-indexed genome with GA-driven backup allocation.
//!
//! One gene per physical node, grouped by category in infrastructure order.
//! Gene `0` leaves the node inactive; gene `v ≥ 1` makes it host global VNF
//! `v` (1-based, in workload order), either as primary or as a backup.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::raba::{raba_decode_and_backup, raba_random};
use crate::evaluator::Problem;
use crate::model::{Solution, VnfRef};

/// How a VNF carried by nodes of several categories is pinned to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DuplicateResolution {
    /// Uniformly among the categories carrying it.
    #[default]
    Random,
    /// Always the lowest-index category.
    LowestCategory,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GabaChromosome {
    pub genes: Vec<usize>,
}

impl GabaChromosome {
    pub fn is_valid_for(&self, problem: &Problem) -> bool {
        let max = problem.workload.total_vnfs();
        self.genes.len() == problem.infra.total_nodes() && self.genes.iter().all(|&g| g <= max)
    }
}

/// Result of decoding a GABA genome.
#[derive(Debug, Clone, PartialEq)]
pub struct GabaPlacement {
    pub solution: Solution,
    /// VNFs that no node carries.
    pub missing: Vec<VnfRef>,
}

/// Random genome for the initial population.
///
/// Draws a uniformly random placement with randomized backup allocation
/// (the same distribution the random baseline samples) and writes it onto
/// uniformly drawn nodes of each category. A primary whose category is full
/// moves to a uniformly drawn category with room; backups that do not fit
/// are dropped. A shared pool is written as extra copies of uniformly drawn
/// VNFs of that SFC in the pool's category.
pub fn gaba_random<R: Rng + ?Sized>(problem: &Problem, rng: &mut R) -> GabaChromosome {
    let infra = &problem.infra;
    let workload = &problem.workload;
    let m = infra.num_categories();
    let drawn = raba_random(problem, rng);
    let solution = raba_decode_and_backup(&drawn, problem, rng).solution;

    let mut genes = vec![0; infra.total_nodes()];
    let mut free: Vec<Vec<usize>> = infra
        .categories
        .iter()
        .zip(infra.node_offsets())
        .map(|(c, start)| {
            let mut pool: Vec<usize> = (start..start + c.node_count).collect();
            pool.shuffle(rng);
            pool
        })
        .collect();

    let offsets = workload.vnf_offsets();
    let mut home: Vec<Vec<Option<usize>>> = Vec::with_capacity(workload.num_sfcs());
    let mut open = Vec::with_capacity(m);
    for (k, row) in solution.assignment.iter().enumerate() {
        let mut placed = Vec::with_capacity(row.len());
        for (j, c) in row.iter().enumerate() {
            let mut c = c.expect("random placements are complete");
            if free[c].is_empty() {
                open.clear();
                open.extend((0..m).filter(|&i| !free[i].is_empty()));
                if open.is_empty() {
                    placed.push(None);
                    continue;
                }
                c = open[rng.random_range(0..open.len())];
            }
            genes[free[c].pop().unwrap()] = offsets[k] + j + 1;
            placed.push(Some(c));
        }
        home.push(placed);
    }

    for (k, placed) in home.iter().enumerate() {
        for (j, c) in placed.iter().enumerate() {
            let Some(c) = *c else { continue };
            for _ in 0..solution.dedicated_backups[k][j] {
                let Some(node) = free[c].pop() else { break };
                genes[node] = offsets[k] + j + 1;
            }
        }
        for i in 0..m {
            let hosted: Vec<usize> = (0..placed.len()).filter(|&j| placed[j] == Some(i)).collect();
            if hosted.is_empty() {
                continue;
            }
            for _ in 0..solution.shared_backups[k][i] {
                let Some(node) = free[i].pop() else { break };
                genes[node] = offsets[k] + hosted[rng.random_range(0..hosted.len())] + 1;
            }
        }
    }
    GabaChromosome { genes }
}

/// Reads placement and backups off a genome.
///
/// A VNF carried in several categories is pinned to one of them and its
/// nodes elsewhere are treated as inactive. Within the chosen category one
/// node is the primary and every other is a backup, dedicated to the VNF or
/// pooled for its SFC according to the SFC's strategy.
pub fn gaba_decode<R: Rng + ?Sized>(
    chromosome: &GabaChromosome,
    problem: &Problem,
    resolution: DuplicateResolution,
    rng: &mut R,
) -> GabaPlacement {
    let infra = &problem.infra;
    let workload = &problem.workload;
    let m = infra.num_categories();
    let refs = workload.vnf_refs();
    let mut counts = vec![0usize; refs.len() * m];
    let mut node = 0;
    for (i, cat) in infra.categories.iter().enumerate() {
        for &g in &chromosome.genes[node..node + cat.node_count] {
            if g > 0 {
                counts[(g - 1) * m + i] += 1;
            }
        }
        node += cat.node_count;
    }

    let mut solution = Solution::empty(infra, workload);
    let mut missing = Vec::new();
    let mut carriers = Vec::with_capacity(m);
    for (v, r) in refs.iter().enumerate() {
        let row = &counts[v * m..(v + 1) * m];
        carriers.clear();
        carriers.extend((0..m).filter(|&i| row[i] > 0));
        let chosen = match (carriers.len(), resolution) {
            (0, _) => {
                missing.push(*r);
                continue;
            }
            (1, _) | (_, DuplicateResolution::LowestCategory) => carriers[0],
            (n, DuplicateResolution::Random) => carriers[rng.random_range(0..n)],
        };
        let spares = row[chosen] - 1;
        solution.assignment[r.sfc][r.pos] = Some(chosen);
        if workload.sfcs[r.sfc].strategy.is_dedicated() {
            solution.dedicated_backups[r.sfc][r.pos] = spares;
        } else {
            solution.shared_backups[r.sfc][chosen] += spares;
        }
    }
    GabaPlacement { solution, missing }
}

/// Decodes and scores a genome.
pub fn gaba_fitness<R: Rng + ?Sized>(
    chromosome: &GabaChromosome,
    problem: &Problem,
    resolution: DuplicateResolution,
    rng: &mut R,
) -> f64 {
    let placement = gaba_decode(chromosome, problem, resolution, rng);
    let report = problem.evaluate(&placement.solution);
    debug_assert!(report.capacity_ok, "node-indexed genomes cannot exceed capacity");
    report.fitness
}
