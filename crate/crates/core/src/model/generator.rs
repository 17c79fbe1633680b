use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{BackupStrategy, Infrastructure, NodeCategory, SfcRequest, Workload};
use crate::error::ModelError;

/// Inclusive range `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: PartialOrd + Copy + std::fmt::Display> Range<T> {
    pub fn new(lo: T, hi: T) -> Self {
        Range { lo, hi }
    }

    fn check(&self, name: &str) -> Result<(), ModelError> {
        if self.lo > self.hi {
            return Err(ModelError::Range {
                name: name.into(),
                reason: format!("empty range [{}, {}]", self.lo, self.hi),
            });
        }
        Ok(())
    }
}

/// Sampling ranges for random instances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub categories: Range<usize>,
    /// Integer clock rates.
    pub clock: Range<u32>,
    pub node_count: Range<usize>,
    pub fail_active: Range<f64>,
    /// fail_standby = ratio * fail_active.
    pub standby_fail_ratio: f64,
    /// Integer active costs.
    pub cost_active: Range<u32>,
    /// cost_standby = ratio * cost_active.
    pub standby_cost_ratio: f64,
    pub sfcs: Range<usize>,
    pub chain_length: Range<usize>,
    /// Integer VNF loads.
    pub load: Range<u32>,
    /// Integer deadlines; raised when needed so the fastest category meets them.
    pub deadline: Range<u32>,
    /// Minimum ratio of deadline to the chain's delay on the fastest category.
    pub deadline_slack: f64,
    pub reliability_levels: Vec<f64>,
    pub strategies: Vec<BackupStrategy>,
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        GeneratorSpec {
            categories: Range::new(2, 3),
            clock: Range::new(1, 5),
            node_count: Range::new(50, 700),
            fail_active: Range::new(0.008, 0.04),
            standby_fail_ratio: 0.1,
            cost_active: Range::new(5, 25),
            standby_cost_ratio: 0.1,
            sfcs: Range::new(5, 15),
            chain_length: Range::new(2, 5),
            load: Range::new(1, 50),
            deadline: Range::new(10, 100),
            deadline_slack: 1.2,
            reliability_levels: vec![0.99, 0.999, 0.9999, 0.99999, 0.999999],
            strategies: BackupStrategy::ALL.to_vec(),
        }
    }
}

impl GeneratorSpec {
    /// Two categories of 2-4 nodes and a single chain of 1-2 VNFs: small
    /// enough for exhaustive enumeration.
    pub fn tiny() -> Self {
        GeneratorSpec {
            categories: Range::new(2, 2),
            node_count: Range::new(2, 4),
            sfcs: Range::new(1, 1),
            chain_length: Range::new(1, 2),
            ..GeneratorSpec::default()
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        self.categories.check("categories")?;
        self.clock.check("clock")?;
        self.node_count.check("node_count")?;
        self.fail_active.check("fail_active")?;
        self.cost_active.check("cost_active")?;
        self.sfcs.check("sfcs")?;
        self.chain_length.check("chain_length")?;
        self.load.check("load")?;
        self.deadline.check("deadline")?;
        let bad = |name: &str, reason: &str| {
            Err(ModelError::Range { name: name.into(), reason: reason.into() })
        };
        if self.categories.lo == 0 {
            return bad("categories", "need at least one category");
        }
        if self.clock.lo == 0 {
            return bad("clock", "clock rates must be positive");
        }
        if self.node_count.lo == 0 {
            return bad("node_count", "categories need at least one node");
        }
        if self.sfcs.lo == 0 {
            return bad("sfcs", "need at least one SFC");
        }
        if self.chain_length.lo == 0 {
            return bad("chain_length", "chains need at least one VNF");
        }
        if self.load.lo == 0 {
            return bad("load", "loads must be positive");
        }
        if self.deadline.lo == 0 {
            return bad("deadline", "deadlines must be positive");
        }
        if !(self.fail_active.lo >= 0.0 && self.fail_active.hi.is_finite()) {
            return bad("fail_active", "rates must be finite and non-negative");
        }
        if !(0.0..=1.0).contains(&self.standby_fail_ratio) {
            return bad("standby_fail_ratio", "must lie in [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.standby_cost_ratio) {
            return bad("standby_cost_ratio", "must lie in [0, 1]");
        }
        if !(self.deadline_slack.is_finite() && self.deadline_slack >= 1.0) {
            return bad("deadline_slack", "must be at least 1");
        }
        if self.reliability_levels.is_empty()
            || self.reliability_levels.iter().any(|&r| !(r > 0.0 && r < 1.0))
        {
            return bad("reliability_levels", "need at least one level in (0, 1)");
        }
        if self.strategies.is_empty() {
            return bad("strategies", "need at least one backup strategy");
        }
        Ok(())
    }
}

fn round_to(x: f64, decimals: i32) -> f64 {
    let f = 10f64.powi(decimals);
    (x * f).round() / f
}

/// Draws a random instance. Identical `(spec, seed)` pairs give identical output.
pub fn generate_dataset(
    spec: &GeneratorSpec,
    seed: u64,
) -> Result<(Infrastructure, Workload), ModelError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let m = rng.random_range(spec.categories.lo..=spec.categories.hi);
    let categories: Vec<NodeCategory> = (0..m)
        .map(|_| {
            let fail_active =
                round_to(rng.random_range(spec.fail_active.lo..=spec.fail_active.hi), 5);
            let fail_standby =
                round_to(fail_active * spec.standby_fail_ratio, 7).min(fail_active);
            let cost_active = rng.random_range(spec.cost_active.lo..=spec.cost_active.hi) as f64;
            NodeCategory {
                node_count: rng.random_range(spec.node_count.lo..=spec.node_count.hi),
                clock: rng.random_range(spec.clock.lo..=spec.clock.hi) as f64,
                cost_active,
                cost_standby: round_to(cost_active * spec.standby_cost_ratio, 6).min(cost_active),
                fail_active,
                fail_standby,
            }
        })
        .collect();
    let fastest = categories.iter().map(|c| c.clock).fold(0.0, f64::max);

    let k = rng.random_range(spec.sfcs.lo..=spec.sfcs.hi);
    let sfcs = (0..k)
        .map(|_| {
            let n = rng.random_range(spec.chain_length.lo..=spec.chain_length.hi);
            let loads: Vec<f64> = (0..n)
                .map(|_| rng.random_range(spec.load.lo..=spec.load.hi) as f64)
                .collect();
            let drawn = rng.random_range(spec.deadline.lo..=spec.deadline.hi) as f64;
            let floor = (spec.deadline_slack * loads.iter().sum::<f64>() / fastest).ceil();
            SfcRequest {
                loads,
                deadline: drawn.max(floor),
                reliability_target: *spec.reliability_levels.choose(&mut rng).unwrap(),
                strategy: *spec.strategies.choose(&mut rng).unwrap(),
            }
        })
        .collect();

    Ok((Infrastructure::new(categories)?, Workload::new(sfcs)?))
}
