use std::fs;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;
use sfc_core::evaluator::EvaluationReport;
use sfc_core::model::{
    generate_dataset, paper_instance, save_dataset, Dataset, GeneratorSpec, ObjectiveConfig, Solution,
};
use sfc_core::ModelError;

use crate::args::{EvaluateArgs, GenerateArgs, SolveArgs};
use crate::error::CliError;
use crate::output::{write_atomic, write_csv, write_json};
use crate::run::{build_problem, history_rows, read_dataset, run_algorithm, run_stem, RunSettings};

pub fn generate(args: &GenerateArgs) -> Result<(), CliError> {
    let dataset = if args.paper_instance {
        if !(args.node_scale > 0.0 && args.node_scale.is_finite()) {
            return Err(CliError::Usage("--node-scale must be positive".into()));
        }
        paper_instance(args.node_scale)
    } else {
        let mut spec = if args.tiny { GeneratorSpec::tiny() } else { GeneratorSpec::default() };
        macro_rules! set {
            ($($flag:ident => $field:ident),*) => {
                $(if let Some(r) = args.$flag { spec.$field = r; })*
            };
        }
        set!(categories => categories, nodes => node_count, clock => clock, fail_active => fail_active,
             cost_active => cost_active, sfcs => sfcs, chain_length => chain_length, load => load,
             deadline => deadline);
        let (infrastructure, workload) = generate_dataset(&spec, args.seed).map_err(|e| match e {
            ModelError::Range { .. } => CliError::Usage(e.to_string()),
            other => CliError::Data(other.to_string()),
        })?;
        Dataset { infrastructure, workload, objective: ObjectiveConfig::default() }
    };

    let mut bytes = Vec::new();
    save_dataset(&dataset, &mut bytes)?;
    let summary = format!(
        "M={} N={} K={} VNFs={}",
        dataset.infrastructure.num_categories(),
        dataset.infrastructure.total_nodes(),
        dataset.workload.num_sfcs(),
        dataset.workload.total_vnfs()
    );
    match &args.out {
        Some(path) => {
            write_atomic(path, &bytes)?;
            println!("{summary} -> {}", path.display());
        }
        None => {
            std::io::stdout().write_all(&bytes)?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Manifest<'a> {
    dataset: String,
    dataset_sha256: &'a str,
    seed: u64,
    #[serde(flatten)]
    settings: &'a RunSettings,
}

#[derive(Serialize)]
struct ResultDocument<'a> {
    manifest: Manifest<'a>,
    feasible: bool,
    optimal: bool,
    evaluations: u64,
    report: &'a EvaluationReport,
    solution: &'a Solution,
    fitness_history: &'a [f64],
}

#[derive(Serialize)]
struct Timing {
    wall_time_seconds: f64,
}

pub fn solve(args: &SolveArgs) -> Result<(), CliError> {
    if args.seeds.is_empty() {
        return Err(CliError::Usage("at least one seed is required".into()));
    }
    let loaded = read_dataset(&args.solver.dataset)?;
    let objective = args.solver.objective(&loaded.dataset.objective);
    let problem = build_problem(&loaded.dataset, objective.clone(), args.strategy_override)?;
    let out = &args.solver.out;
    fs::create_dir_all(out).map_err(|e| CliError::Data(format!("{}: {e}", out.display())))?;

    for &seed in &args.seeds {
        let settings = RunSettings {
            algorithm: args.algorithm,
            strategy_override: args.strategy_override.map(|s| s.code()),
            ga: args.solver.ga_config(seed),
            objective: objective.clone(),
            random_attempts: args.solver.random_attempts,
            exact_cap: args.solver.exact_cap,
        };
        let result = run_algorithm(&problem, args.algorithm, &args.solver, seed)?;
        let doc = ResultDocument {
            manifest: Manifest {
                dataset: args.solver.dataset.display().to_string(),
                dataset_sha256: &loaded.sha256,
                seed,
                settings: &settings,
            },
            feasible: result.best_report.is_feasible(),
            optimal: result.optimal,
            evaluations: result.evaluations,
            report: &result.best_report,
            solution: &result.best_solution,
            fitness_history: &result.fitness_history,
        };
        let stem = run_stem(args.algorithm, args.strategy_override, seed);
        write_json(&out.join(format!("{stem}.json")), &doc)?;
        write_csv(&out.join(format!("{stem}.history.csv")), history_rows(&result))?;
        write_json(
            &out.join(format!("{stem}.timing.json")),
            &Timing { wall_time_seconds: result.wall_time },
        )?;
        println!(
            "{stem}: objective {:.6} fitness {:.6} penalties {}{}",
            result.best_report.objective,
            result.best_report.fitness,
            result.best_report.penalty_count,
            if result.optimal { " (optimal)" } else { "" }
        );
    }
    Ok(())
}

/// Accepts a bare solution or a result document holding one under `solution`.
fn read_solution(bytes: &[u8]) -> Result<Solution, CliError> {
    let value: Value = serde_json::from_slice(bytes)?;
    let inner = match value.get("solution") {
        Some(s) => s.clone(),
        None => value,
    };
    Ok(serde_json::from_value(inner)?)
}

pub fn evaluate(args: &EvaluateArgs) -> Result<(), CliError> {
    let loaded = read_dataset(&args.dataset)?;
    let bytes = fs::read(&args.solution)
        .map_err(|e| CliError::Data(format!("{}: {e}", args.solution.display())))?;
    let solution = read_solution(&bytes)
        .map_err(|e| CliError::Data(format!("{}: {e}", args.solution.display())))?;
    let mut objective = loaded.dataset.objective.clone();
    if let Some(g) = args.gamma {
        objective.penalty_weight = g;
    }
    objective.raw_fitness |= args.raw_fitness;
    let problem = build_problem(&loaded.dataset, objective, args.strategy_override)?;
    solution
        .validate(&problem.infra, &problem.workload)
        .map_err(|e| CliError::Data(format!("{}: {e}", args.solution.display())))?;
    let report = problem.evaluate(&solution);
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    match std::io::stdout().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}
