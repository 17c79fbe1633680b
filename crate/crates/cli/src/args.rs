use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sfc_core::model::{BackupStrategy, ObjectiveConfig, Range};
use sfc_core::solvers::GaConfig;

#[derive(Debug, Parser)]
#[command(name = "sfc", version, about = "Reliability-aware SFC placement on heterogeneous fog nodes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a dataset: the reference instance, a tiny instance, or a random one.
    Generate(GenerateArgs),
    /// Solve a dataset once per seed and write one result document per seed.
    Solve(SolveArgs),
    /// Evaluate a solution file against a dataset and print the report.
    Evaluate(EvaluateArgs),
    /// Run several algorithms and/or strategy overrides over shared seeds.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    GapGaba,
    GapRaba,
    Random,
    Exact,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::GapGaba => "gap-gaba",
            Algorithm::GapRaba => "gap-raba",
            Algorithm::Random => "random",
            Algorithm::Exact => "exact",
        }
    }
}

/// `LO:HI` or a single value for both ends.
fn parse_range<T: FromStr + Copy + PartialOrd + std::fmt::Display>(s: &str) -> Result<Range<T>, String>
where
    T::Err: std::fmt::Display,
{
    let parse = |x: &str| x.trim().parse::<T>().map_err(|e| format!("{x:?}: {e}"));
    match s.split_once(':') {
        Some((lo, hi)) => Ok(Range::new(parse(lo)?, parse(hi)?)),
        None => {
            let v = parse(s)?;
            Ok(Range::new(v, v))
        }
    }
}

fn parse_strategy(s: &str) -> Result<BackupStrategy, String> {
    let code: u8 = s.parse().map_err(|_| format!("expected 1, 2, 3 or 4, got {s:?}"))?;
    BackupStrategy::try_from(code)
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Emit the reference instance (3 categories, 800 nodes, 10 SFCs).
    #[arg(long, conflicts_with = "tiny")]
    pub paper_instance: bool,
    /// Scale every category's node count of the reference instance.
    #[arg(long, default_value_t = 1.0, requires = "paper_instance")]
    pub node_scale: f64,
    /// Oracle-scale instance: 2 categories of 2-4 nodes, one SFC of 1-2 VNFs.
    #[arg(long)]
    pub tiny: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_parser = parse_range::<usize>)]
    pub categories: Option<Range<usize>>,
    #[arg(long, value_parser = parse_range::<usize>)]
    pub nodes: Option<Range<usize>>,
    #[arg(long, value_parser = parse_range::<u32>)]
    pub clock: Option<Range<u32>>,
    #[arg(long, value_parser = parse_range::<f64>)]
    pub fail_active: Option<Range<f64>>,
    #[arg(long, value_parser = parse_range::<u32>)]
    pub cost_active: Option<Range<u32>>,
    #[arg(long, value_parser = parse_range::<usize>)]
    pub sfcs: Option<Range<usize>>,
    #[arg(long, value_parser = parse_range::<usize>)]
    pub chain_length: Option<Range<usize>>,
    #[arg(long, value_parser = parse_range::<u32>)]
    pub load: Option<Range<u32>>,
    #[arg(long, value_parser = parse_range::<u32>)]
    pub deadline: Option<Range<u32>>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Solver and objective settings shared by `solve` and `compare`.
#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    #[arg(long)]
    pub dataset: PathBuf,
    #[arg(long, default_value_t = GaConfig::default().generations)]
    pub generations: usize,
    #[arg(long, default_value_t = GaConfig::default().population)]
    pub population: usize,
    /// Offspring bred per generation; 95% of the population when omitted.
    #[arg(long)]
    pub crossovers: Option<usize>,
    /// Survivors carried over unchanged; 25% of the population when omitted.
    #[arg(long)]
    pub elites: Option<usize>,
    #[arg(long, default_value_t = GaConfig::default().mutation_rate)]
    pub mutation_rate: f64,
    #[arg(long, default_value_t = GaConfig::default().tournament_size)]
    pub tournament_size: usize,
    /// Draws tried by the random baseline before giving up on feasibility.
    #[arg(long, default_value_t = 10_000)]
    pub random_attempts: usize,
    /// Largest candidate count the exact solver accepts.
    #[arg(long, default_value_t = 10_000_000)]
    pub exact_cap: u128,
    /// Penalty weight per violated constraint.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Score raw totals instead of normalized ones.
    #[arg(long)]
    pub raw_fitness: bool,
    #[arg(long)]
    pub out: PathBuf,
}

impl SolverArgs {
    pub fn ga_config(&self, seed: u64) -> GaConfig {
        let scaled = GaConfig::scaled(self.population, self.generations, seed);
        GaConfig {
            crossovers_per_generation: self.crossovers.unwrap_or(scaled.crossovers_per_generation),
            elites: self.elites.unwrap_or(scaled.elites),
            mutation_rate: self.mutation_rate,
            tournament_size: self.tournament_size,
            ..scaled
        }
    }

    pub fn objective(&self, base: &ObjectiveConfig) -> ObjectiveConfig {
        let mut cfg = base.clone();
        if let Some(g) = self.gamma {
            cfg.penalty_weight = g;
        }
        cfg.raw_fitness |= self.raw_fitness;
        cfg
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, value_enum, default_value = "gap-gaba")]
    pub algorithm: Algorithm,
    /// Seeds to run, comma separated.
    #[arg(long, visible_alias = "seed", value_delimiter = ',', default_value = "0")]
    pub seeds: Vec<u64>,
    /// Force one backup strategy (1-4) on every SFC.
    #[arg(long, value_parser = parse_strategy)]
    pub strategy_override: Option<BackupStrategy>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub dataset: PathBuf,
    /// A solution document, or a result document written by `solve`.
    #[arg(long)]
    pub solution: PathBuf,
    #[arg(long, value_parser = parse_strategy)]
    pub strategy_override: Option<BackupStrategy>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub raw_fitness: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "gap-gaba,gap-raba,random")]
    pub algorithm: Vec<Algorithm>,
    #[arg(long, visible_alias = "seed", value_delimiter = ',', default_value = "0,1,2,3,4,5,6,7,8,9")]
    pub seeds: Vec<u64>,
    /// Strategy overrides (1-4), comma separated; each one is crossed with every algorithm.
    #[arg(long, value_parser = parse_strategy, value_delimiter = ',')]
    pub strategy_override: Vec<BackupStrategy>,
}
