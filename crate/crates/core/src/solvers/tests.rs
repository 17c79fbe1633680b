use super::*;
use crate::evaluator::Problem;
use crate::model::{generate_dataset, GeneratorSpec, ObjectiveConfig};

fn tiny(seed: u64) -> Problem {
    let (infra, workload) = generate_dataset(&GeneratorSpec::tiny(), seed).unwrap();
    Problem::new(infra, workload, ObjectiveConfig::default()).unwrap()
}

fn small_ga(seed: u64) -> GaConfig {
    GaConfig::scaled(50, 200, seed)
}

#[test]
fn default_config_is_valid_and_scaling_keeps_shares() {
    GaConfig::default().validate().unwrap();
    let c = GaConfig::scaled(400, 10, 3);
    assert_eq!((c.crossovers_per_generation, c.elites), (380, 100));
    c.validate().unwrap();
    GaConfig::scaled(1, 1, 0).validate().unwrap();
}

#[test]
fn invalid_configs_are_rejected() {
    let base = GaConfig::default();
    let cases = [
        GaConfig { population: 0, ..base.clone() },
        GaConfig { elites: 0, ..base.clone() },
        GaConfig { elites: 10, crossovers_per_generation: 10, ..base.clone() },
        GaConfig { mutation_rate: 1.5, ..base.clone() },
        GaConfig { tournament_size: 1, ..base.clone() },
    ];
    for c in cases {
        assert!(matches!(c.validate(), Err(SolveError::Config(_))), "{c:?}");
    }
}

#[test]
fn history_never_increases() {
    let p = tiny(1);
    for encoding in [Encoding::Gaba, Encoding::Raba] {
        let r = run_ga(encoding, &p, &GaConfig::scaled(30, 40, 5)).unwrap();
        assert_eq!(r.fitness_history.len(), 41);
        assert!(r.fitness_history.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(*r.fitness_history.last().unwrap(), r.best_report.fitness);
        assert_eq!(r.best_report, p.evaluate(&r.best_solution));
    }
}

#[test]
fn zero_generations_returns_best_initial_member() {
    let p = tiny(2);
    let r = run_ga(Encoding::Gaba, &p, &GaConfig::scaled(20, 0, 1)).unwrap();
    assert_eq!(r.fitness_history.len(), 1);
    assert_eq!(r.evaluations, 20);
}

#[test]
fn same_seed_same_result() {
    let p = tiny(3);
    for encoding in [Encoding::Gaba, Encoding::Raba] {
        let a = run_ga(encoding, &p, &GaConfig::scaled(30, 30, 9)).unwrap();
        let b = run_ga(encoding, &p, &GaConfig::scaled(30, 30, 9)).unwrap();
        assert_eq!(a.best_solution, b.best_solution);
        assert_eq!(a.fitness_history, b.fitness_history);
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let p = tiny(4);
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| run_ga(Encoding::Raba, &p, &GaConfig::scaled(40, 25, 7)).unwrap())
    };
    let (a, b) = (run(1), run(4));
    assert_eq!(a.best_solution, b.best_solution);
    assert_eq!(a.fitness_history, b.fitness_history);
}

#[test]
fn exhaustive_counts_every_candidate() {
    let p = tiny(5);
    let size = search_space_size(&p, u128::MAX).unwrap();
    let r = exhaustive_solve(&p, ExhaustiveLimits::default()).unwrap();
    assert_eq!(r.evaluations as u128, size);
    assert!(r.optimal);
    r.best_solution.validate(&p.infra, &p.workload).unwrap();
}

#[test]
fn exhaustive_refuses_over_the_cap() {
    let p = tiny(6);
    let err = exhaustive_solve(&p, ExhaustiveLimits { max_candidates: 1 }).unwrap_err();
    assert!(matches!(err, SolveError::SearchSpaceTooLarge { cap: 1, .. }));
}

#[test]
fn exhaustive_is_a_lower_bound_for_every_solver() {
    for seed in 0..5 {
        let p = tiny(seed);
        let exact = exhaustive_solve(&p, ExhaustiveLimits::default()).unwrap();
        let best = exact.best_report.fitness;
        for encoding in [Encoding::Gaba, Encoding::Raba] {
            let r = run_ga(encoding, &p, &GaConfig::scaled(20, 10, seed)).unwrap();
            assert!(r.best_report.fitness >= best - 1e-12);
        }
        let r = random_baseline(&p, 100, seed).unwrap();
        assert!(r.best_report.fitness >= best - 1e-12);
    }
}

#[test]
fn gaba_finds_the_tiny_optimum() {
    let hits = (0..10)
        .filter(|&seed| {
            let p = tiny(100 + seed);
            let exact = exhaustive_solve(&p, ExhaustiveLimits::default()).unwrap();
            let ga = run_ga(Encoding::Gaba, &p, &small_ga(seed)).unwrap();
            (ga.best_report.fitness - exact.best_report.fitness).abs() <= 1e-9
        })
        .count();
    assert!(hits >= 9, "{hits}/10");
}

#[test]
fn baseline_stops_at_the_first_feasible_draw() {
    let p = tiny(7);
    let r = random_baseline(&p, 10_000, 0).unwrap();
    if r.best_report.is_feasible() {
        assert_eq!(r.fitness_history.len() as u64, r.evaluations);
    } else {
        assert_eq!(r.evaluations, 10_000);
    }
    assert!(matches!(random_baseline(&p, 0, 0), Err(SolveError::Config(_))));
}
