//! VNF-indexed genome with randomized backup allocation.
//!
//! One gene per VNF in workload order; the gene is the zero-based category
//! hosting that VNF. Backups are not encoded: after placement they are added
//! one at a time at random until each SFC meets its reliability target or
//! runs out of eligible free nodes.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::evaluator::{Problem, COMPARISON_TOLERANCE};
use crate::model::Solution;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RabaChromosome {
    pub genes: Vec<usize>,
}

impl RabaChromosome {
    pub fn is_valid_for(&self, problem: &Problem) -> bool {
        let m = problem.infra.num_categories();
        self.genes.len() == problem.workload.total_vnfs() && self.genes.iter().all(|&g| g < m)
    }
}

/// Uniformly random category for every VNF.
pub fn raba_random<R: Rng + ?Sized>(problem: &Problem, rng: &mut R) -> RabaChromosome {
    let m = problem.infra.num_categories();
    RabaChromosome {
        genes: (0..problem.workload.total_vnfs()).map(|_| rng.random_range(0..m)).collect(),
    }
}

/// Decoded placement plus the SFCs left below their reliability target.
#[derive(Debug, Clone, PartialEq)]
pub struct RabaPlacement {
    pub solution: Solution,
    pub unmet_reliability: usize,
    /// Free nodes per category after backup allocation.
    pub free_capacity: Vec<usize>,
}

/// Places VNFs as encoded, then allocates backups SFC by SFC in a random order.
///
/// For each SFC, a category that hosts at least one of its VNFs and still
/// has a free node is drawn uniformly; the node joins the SFC's shared pool
/// there, or becomes a dedicated backup of a uniformly drawn VNF of the SFC
/// placed in that category. Reliability is re-evaluated after every
/// addition.
pub fn raba_decode_and_backup<R: Rng + ?Sized>(
    chromosome: &RabaChromosome,
    problem: &Problem,
    rng: &mut R,
) -> RabaPlacement {
    let infra = &problem.infra;
    let workload = &problem.workload;
    let m = infra.num_categories();

    let mut solution = Solution::empty(infra, workload);
    let mut used = vec![0usize; m];
    for (r, &c) in workload.vnf_refs().iter().zip(&chromosome.genes) {
        solution.assignment[r.sfc][r.pos] = Some(c);
        used[c] += 1;
    }
    let mut free: Vec<usize> =
        infra.categories.iter().zip(&used).map(|(c, u)| c.node_count.saturating_sub(*u)).collect();

    let mut order: Vec<usize> = (0..workload.num_sfcs()).collect();
    order.shuffle(rng);

    let mut unmet = 0;
    let mut eligible = Vec::with_capacity(m);
    let mut hosts = Vec::new();
    for k in order {
        let sfc = &workload.sfcs[k];
        let counts = solution.vnfs_per_category(k, m);
        loop {
            let reliability = problem.sfc_reliability(&solution, k);
            if reliability >= sfc.reliability_target - COMPARISON_TOLERANCE {
                break;
            }
            eligible.clear();
            eligible.extend((0..m).filter(|&i| counts[i] > 0 && free[i] > 0));
            if eligible.is_empty() {
                unmet += 1;
                break;
            }
            let i = eligible[rng.random_range(0..eligible.len())];
            if sfc.strategy.is_shared() {
                solution.shared_backups[k][i] += 1;
            } else {
                hosts.clear();
                hosts.extend(
                    solution.assignment[k]
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| **c == Some(i))
                        .map(|(j, _)| j),
                );
                let j = hosts[rng.random_range(0..hosts.len())];
                solution.dedicated_backups[k][j] += 1;
            }
            free[i] -= 1;
        }
    }
    RabaPlacement { solution, unmet_reliability: unmet, free_capacity: free }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::model::{
        BackupStrategy, Infrastructure, NodeCategory, ObjectiveConfig, SfcRequest, Workload,
    };

    fn problem(nodes: [usize; 2], target: f64, loads: usize, strategy: BackupStrategy) -> Problem {
        let cat = |n, fa: f64| NodeCategory {
            node_count: n,
            clock: 2.0,
            cost_active: 10.0,
            cost_standby: 1.0,
            fail_active: fa,
            fail_standby: fa / 10.0,
        };
        Problem::new(
            Infrastructure::new(vec![cat(nodes[0], 0.01), cat(nodes[1], 0.04)]).unwrap(),
            Workload::new(vec![SfcRequest {
                loads: vec![1.0; loads],
                deadline: 100.0,
                reliability_target: target,
                strategy,
            }])
            .unwrap(),
            ObjectiveConfig::default(),
        )
        .unwrap()
    }

    #[test]
    fn met_targets_consume_no_backups() {
        let p = problem([3, 3], 0.5, 2, BackupStrategy::DedicatedActive);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let d = raba_decode_and_backup(&RabaChromosome { genes: vec![0, 1] }, &p, &mut rng);
        assert_eq!(d.unmet_reliability, 0);
        assert_eq!(d.free_capacity, vec![2, 2]);
        assert!(d.solution.dedicated_backups[0].iter().all(|&b| b == 0));
    }

    #[test]
    fn stops_at_the_first_backup_that_meets_the_target() {
        // One VNF on category 0 (F ≈ 0.00995); one active backup reaches 1 − F² ≈ 0.9999.
        let p = problem([3, 1], 0.9999, 1, BackupStrategy::DedicatedActive);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let d = raba_decode_and_backup(&RabaChromosome { genes: vec![0] }, &p, &mut rng);
        assert_eq!(d.solution.dedicated_backups[0], vec![1]);
        assert_eq!(d.free_capacity, vec![1, 1]);
        assert_eq!(d.unmet_reliability, 0);
        assert!(p.sfc_reliability(&d.solution, 0) >= 0.9999);
    }

    #[test]
    fn unreachable_target_exhausts_eligible_nodes_and_counts_once() {
        let p = problem([3, 3], 0.999999, 1, BackupStrategy::SharedActive);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let d = raba_decode_and_backup(&RabaChromosome { genes: vec![1] }, &p, &mut rng);
        // Only category 1 hosts the VNF; its 2 free nodes both join the pool.
        assert_eq!(d.solution.shared_backups[0], vec![0, 2]);
        assert_eq!(d.free_capacity, vec![3, 0]);
        assert_eq!(d.unmet_reliability, 1);
        let report = p.evaluate(&d.solution);
        assert_eq!(report.penalty_count, 1);
    }

    #[test]
    fn backups_stay_in_categories_hosting_the_sfc() {
        let p = problem([6, 6], 0.999999, 3, BackupStrategy::DedicatedStandby);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let genes = raba_random(&p, &mut rng);
            assert!(genes.is_valid_for(&p));
            let d = raba_decode_and_backup(&genes, &p, &mut rng);
            d.solution.validate(&p.infra, &p.workload).unwrap();
            assert!(p.evaluate(&d.solution).capacity_ok);
        }
    }

    #[test]
    fn primary_overflow_is_penalized_per_node() {
        let p = problem([1, 4], 0.5, 3, BackupStrategy::SharedActive);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let d = raba_decode_and_backup(&RabaChromosome { genes: vec![0, 0, 0] }, &p, &mut rng);
        let report = p.evaluate(&d.solution);
        assert!(!report.capacity_ok);
        assert_eq!(report.capacity_excess, 2);
        assert_eq!(report.penalty_count, 2);
    }
}
