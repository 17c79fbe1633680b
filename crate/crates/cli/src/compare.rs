//! Multi-configuration comparison: every (algorithm, strategy override)
//! pair runs over the shared seed list.

use rayon::prelude::*;
use serde::Serialize;
use sfc_core::model::BackupStrategy;
use sfc_core::solvers::SolveResult;

use crate::args::{Algorithm, CompareArgs};
use crate::error::CliError;
use crate::output::{write_csv, write_json};
use crate::run::{build_problem, read_dataset, run_algorithm};

const METRICS: [&str; 5] = ["objective", "normalized_cost", "normalized_delay", "total_cost", "total_delay"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub mean: f64,
    pub stddev: f64,
}

/// Mean and sample standard deviation (zero for a single value).
pub fn summarize(values: &[f64]) -> Summary {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let stddev = if values.len() > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    Summary { mean, stddev }
}

/// `(baseline - candidate) / baseline`; `None` for a zero baseline.
pub fn relative_reduction(baseline: f64, candidate: f64) -> Option<f64> {
    (baseline != 0.0).then(|| (baseline - candidate) / baseline)
}

#[derive(Serialize)]
struct RunRecord {
    seed: u64,
    feasible: bool,
    penalty_count: usize,
    objective: f64,
    normalized_cost: f64,
    normalized_delay: f64,
    total_cost: f64,
    total_delay: f64,
    fitness: f64,
}

impl RunRecord {
    fn new(seed: u64, r: &SolveResult) -> Self {
        let rep = &r.best_report;
        RunRecord {
            seed,
            feasible: rep.is_feasible(),
            penalty_count: rep.penalty_count,
            objective: rep.objective,
            normalized_cost: rep.normalized_cost,
            normalized_delay: rep.normalized_delay,
            total_cost: rep.total_cost,
            total_delay: rep.total_delay,
            fitness: rep.fitness,
        }
    }

    fn metric(&self, name: &str) -> f64 {
        match name {
            "objective" => self.objective,
            "normalized_cost" => self.normalized_cost,
            "normalized_delay" => self.normalized_delay,
            "total_cost" => self.total_cost,
            "total_delay" => self.total_delay,
            _ => unreachable!("unknown metric {name}"),
        }
    }
}

#[derive(Serialize)]
struct ConfigurationReport {
    label: String,
    algorithm: Algorithm,
    strategy_override: Option<u8>,
    feasible_runs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    summary: Vec<(String, Summary)>,
    runs: Vec<RunRecord>,
}

#[derive(Serialize)]
struct ReductionRow {
    baseline: String,
    candidate: String,
    metric: String,
    reduction: Option<f64>,
}

#[derive(Serialize)]
struct SummaryRow<'a> {
    configuration: &'a str,
    metric: &'a str,
    mean: f64,
    stddev: f64,
}

#[derive(Serialize)]
struct SeriesRow {
    generation: usize,
    seed: u64,
    best_fitness: f64,
}

#[derive(Serialize)]
struct ComparisonDocument<'a> {
    dataset: String,
    dataset_sha256: &'a str,
    seeds: &'a [u64],
    ga: serde_json::Value,
    objective: &'a sfc_core::model::ObjectiveConfig,
    random_attempts: usize,
    configurations: &'a [ConfigurationReport],
    reductions: &'a [ReductionRow],
}

fn label(algorithm: Algorithm, strategy: Option<BackupStrategy>) -> String {
    match strategy {
        Some(s) => format!("{}-s{}", algorithm.name(), s.code()),
        None => algorithm.name().to_string(),
    }
}

pub fn compare(args: &CompareArgs) -> Result<(), CliError> {
    let overrides: Vec<Option<BackupStrategy>> = if args.strategy_override.is_empty() {
        vec![None]
    } else {
        args.strategy_override.iter().copied().map(Some).collect()
    };
    let configs: Vec<(Algorithm, Option<BackupStrategy>)> = args
        .algorithm
        .iter()
        .flat_map(|&a| overrides.iter().map(move |&s| (a, s)))
        .collect();
    if configs.len() < 2 {
        return Err(CliError::Usage("compare needs at least two configurations".into()));
    }
    if args.seeds.is_empty() {
        return Err(CliError::Usage("at least one seed is required".into()));
    }
    let solver = &args.solver;
    let loaded = read_dataset(&solver.dataset)?;
    let objective = solver.objective(&loaded.dataset.objective);
    solver.ga_config(0).validate()?;

    let mut reports = Vec::with_capacity(configs.len());
    let mut series = Vec::with_capacity(configs.len());
    for &(algorithm, strategy) in &configs {
        let label = label(algorithm, strategy);
        let outcome = build_problem(&loaded.dataset, objective.clone(), strategy).and_then(|problem| {
            args.seeds
                .par_iter()
                .map(|&seed| run_algorithm(&problem, algorithm, solver, seed).map(|r| (seed, r)))
                .collect::<Result<Vec<_>, _>>()
        });
        let mut report = ConfigurationReport {
            label: label.clone(),
            algorithm,
            strategy_override: strategy.map(|s| s.code()),
            feasible_runs: 0,
            error: None,
            summary: Vec::new(),
            runs: Vec::new(),
        };
        match outcome {
            Ok(results) => {
                let runs: Vec<RunRecord> = results.iter().map(|(s, r)| RunRecord::new(*s, r)).collect();
                report.feasible_runs = runs.iter().filter(|r| r.feasible).count();
                report.summary = METRICS
                    .iter()
                    .map(|m| {
                        let values: Vec<f64> = runs.iter().map(|r| r.metric(m)).collect();
                        (m.to_string(), summarize(&values))
                    })
                    .collect();
                report.runs = runs;
                let rows: Vec<SeriesRow> = results
                    .iter()
                    .flat_map(|(seed, r)| {
                        r.fitness_history.iter().enumerate().map(move |(generation, &best_fitness)| {
                            SeriesRow { generation, seed: *seed, best_fitness }
                        })
                    })
                    .collect();
                series.push((label, rows));
            }
            Err(e) => {
                eprintln!("{label}: {e}");
                report.error = Some(e.to_string());
            }
        }
        reports.push(report);
    }

    let ok: Vec<&ConfigurationReport> = reports.iter().filter(|r| r.error.is_none()).collect();
    let mut reductions = Vec::new();
    for a in &ok {
        for b in &ok {
            if a.label == b.label {
                continue;
            }
            for (i, metric) in METRICS.iter().enumerate() {
                reductions.push(ReductionRow {
                    baseline: a.label.clone(),
                    candidate: b.label.clone(),
                    metric: metric.to_string(),
                    reduction: relative_reduction(a.summary[i].1.mean, b.summary[i].1.mean),
                });
            }
        }
    }

    let out = &solver.out;
    let mut ga = serde_json::to_value(solver.ga_config(0))?;
    if let Some(map) = ga.as_object_mut() {
        map.remove("seed");
    }
    write_json(
        &out.join("comparison.json"),
        &ComparisonDocument {
            dataset: solver.dataset.display().to_string(),
            dataset_sha256: &loaded.sha256,
            seeds: &args.seeds,
            ga,
            objective: &objective,
            random_attempts: solver.random_attempts,
            configurations: &reports,
            reductions: &reductions,
        },
    )?;
    write_csv(
        &out.join("comparison.csv"),
        ok.iter().flat_map(|r| {
            r.summary.iter().map(|(metric, s)| SummaryRow {
                configuration: &r.label,
                metric,
                mean: s.mean,
                stddev: s.stddev,
            })
        }),
    )?;
    write_csv(&out.join("reductions.csv"), &reductions)?;
    for (label, rows) in &series {
        write_csv(&out.join(format!("series-{label}.csv")), rows)?;
    }

    println!("{:<16} {:>22} {:>22} {:>22} {:>9}", "configuration", "objective", "norm. cost", "norm. delay", "feasible");
    for r in &reports {
        match &r.error {
            Some(e) => println!("{:<16} error: {e}", r.label),
            None => {
                let cell = |i: usize| format!("{:.4} ± {:.4}", r.summary[i].1.mean, r.summary[i].1.stddev);
                println!(
                    "{:<16} {:>22} {:>22} {:>22} {:>5}/{}",
                    r.label,
                    cell(0),
                    cell(1),
                    cell(2),
                    r.feasible_runs,
                    r.runs.len()
                );
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_uses_sample_stddev() {
        let s = summarize(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.stddev - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(summarize(&[7.0]).stddev, 0.0);
    }

    #[test]
    fn reductions_are_relative_to_the_baseline() {
        assert_eq!(relative_reduction(0.5, 0.1), Some(0.8));
        assert_eq!(relative_reduction(0.3, 0.3), Some(0.0));
        assert_eq!(relative_reduction(0.0, 0.3), None);
    }
}
