//! Reliability and cost of an SFC under the four backup strategies.
//!
//! Node lifetimes are exponential. Active redundancy (dedicated or shared)
//! reduces to binomial k-out-of-n survival. Standby redundancy is a
//! hypoexponential survival: with `N` primaries and `b` warm spares the
//! group dies at the `(b+1)`-th failure, and while `m` failures have been
//! absorbed the failure rate is `N·f_a + (b − m)·f_s`.

mod ddouble;
mod markov;
mod montecarlo;

pub use markov::markov_group_survival;
pub use montecarlo::{mc_reliability_oracle, mc_standard_error};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{BackupStrategy, Infrastructure, Solution, Workload};
use ddouble::DDouble;

#[derive(Debug, Error, PartialEq)]
pub enum ReliabilityError {
    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Active,
    Standby,
}

/// Exponential failure law of one node in one operating mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FailureLaw {
    pub rate: f64,
    pub mode: Mode,
}

/// `1 − exp(−rate·t)`.
pub fn failure_cdf(law: FailureLaw, t: f64) -> Result<f64, ReliabilityError> {
    if t < 0.0 || t.is_nan() {
        return Err(ReliabilityError::NegativeTime(t));
    }
    Ok(cdf(law.rate, t))
}

#[inline]
fn cdf(rate: f64, t: f64) -> f64 {
    -(-rate * t).exp_m1()
}

/// A redundant group: `primaries` working nodes backed by `backups` spares
/// of one category, observed over `horizon`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub primaries: usize,
    pub backups: usize,
    pub fail_active: f64,
    pub fail_standby: f64,
    pub horizon: f64,
}

impl GroupSpec {
    pub fn failure_probability(&self) -> f64 {
        cdf(self.fail_active, self.horizon)
    }
}

/// One VNF with `b` dedicated active backups, each failing with probability `f`.
pub fn rel_dedicated_active(backups: usize, f: f64) -> f64 {
    1.0 - f.powi(backups as i32 + 1)
}

/// Probability that at least `primaries` of `primaries + backups` active
/// nodes survive, each failing independently with probability `f`.
pub fn shared_active_from_cdf(primaries: usize, backups: usize, f: f64) -> f64 {
    if f <= 0.0 {
        return 1.0;
    }
    if f >= 1.0 {
        return if primaries == 0 { 1.0 } else { 0.0 };
    }
    let n = primaries + backups;
    let ln_f = f.ln();
    let ln_s = (-f).ln_1p();
    // log of C(n, m) s^m f^(n-m), advanced term by term
    let mut log_term = n as f64 * ln_f;
    let mut fail = 0.0;
    let mut survive = 0.0;
    for m in 0..=n {
        if m > 0 {
            log_term += ((n - m + 1) as f64 / m as f64).ln() + ln_s - ln_f;
        }
        let term = log_term.exp();
        if m < primaries {
            fail += term;
        } else {
            survive += term;
        }
    }
    // Sum the smaller tail directly and take the complement of it.
    if survive < fail {
        survive
    } else {
        1.0 - fail
    }
}

pub fn rel_shared_active(spec: &GroupSpec) -> f64 {
    shared_active_from_cdf(spec.primaries, spec.backups, spec.failure_probability())
}

/// Largest spare count evaluated with the closed-form sum.
pub const CLOSED_FORM_MAX_BACKUPS: usize = 12;
/// Largest tolerated ratio of summed term magnitudes to the sum.
const MAX_CANCELLATION: f64 = 1e17;

/// Closed-form warm-standby group reliability:
///
/// ```text
///            1      b              b                                b
///   Ω = ────────  Σ (−1)^n C(b,n) e^{−(N f_a + n f_s) t}   Π   (N f_a + m f_s)
///       b! f_s^b  n=0                                    m=0, m≠n
/// ```
///
/// The alternating sum cancels to `O(f_s^b)` from terms of order `(N f_a)^b`,
/// so it is accumulated in double-double precision. Returns `None` when
/// the formula does not apply (`f_s = 0`, more than
/// [`CLOSED_FORM_MAX_BACKUPS`] spares) or when the cancellation exceeds what
/// double-double can absorb.
pub fn standby_closed_form(spec: &GroupSpec) -> Option<f64> {
    let b = spec.backups;
    let t = spec.horizon;
    let fs = spec.fail_standby;
    if b == 0 {
        return Some((-(spec.primaries as f64) * spec.fail_active * t).exp());
    }
    if b > CLOSED_FORM_MAX_BACKUPS || !(fs > 0.0) {
        return None;
    }
    let base = DDouble::new(spec.primaries as f64) * DDouble::new(spec.fail_active);
    let step = DDouble::new(fs);
    let rates: Vec<DDouble> = (0..=b).map(|m| base + DDouble::new(m as f64) * step).collect();
    // e^{-n f_s t} = q^n with q = 1 − u and u = 1 − e^{−f_s t} accurate to an ulp.
    let u = -(-fs * t).exp_m1();
    let q = DDouble::ONE - DDouble::new(u);

    let mut sum = DDouble::ZERO;
    let mut magnitude = 0.0;
    let mut q_pow = DDouble::ONE;
    let mut binom = 1.0f64;
    for n in 0..=b {
        let mut term = DDouble::new(binom) * q_pow;
        for (m, rate) in rates.iter().enumerate() {
            if m != n {
                term = term * *rate;
            }
        }
        if n % 2 == 1 {
            term = -term;
        }
        magnitude += term.abs().to_f64();
        sum = sum + term;
        q_pow = q_pow * q;
        binom = binom * (b - n) as f64 / (n + 1) as f64;
    }
    let sum_f = sum.to_f64();
    if !(sum_f > 0.0) || magnitude / sum_f > MAX_CANCELLATION {
        return None;
    }
    let mut denom = DDouble::ONE;
    for m in 1..=b {
        denom = denom * DDouble::new(m as f64) * step;
    }
    let value = (sum / denom).to_f64() * (-base.to_f64() * t).exp();
    if !(0.0..=1.0 + 1e-9).contains(&value) {
        return None;
    }
    Some(value.min(1.0))
}

/// Cold-standby limit `f_s → 0`: Poisson probability of at most `b` failures.
fn cold_standby(primaries: usize, backups: usize, fail_active: f64, horizon: f64) -> f64 {
    let mean = primaries as f64 * fail_active * horizon;
    let mut term = (-mean).exp();
    let mut total = term;
    for n in 1..=backups {
        term *= mean / n as f64;
        total += term;
    }
    total.min(1.0)
}

/// Warm-standby group reliability: closed form when it is numerically sound,
/// the failure-count chain otherwise.
pub fn rel_shared_standby(spec: &GroupSpec) -> f64 {
    if spec.backups > 0 && spec.fail_standby == 0.0 {
        return cold_standby(spec.primaries, spec.backups, spec.fail_active, spec.horizon);
    }
    standby_closed_form(spec).unwrap_or_else(|| {
        markov_group_survival(
            spec.primaries,
            spec.backups,
            spec.fail_active,
            spec.fail_standby,
            spec.horizon,
        )
    })
}

/// One VNF with `backups` dedicated warm-standby spares.
pub fn rel_dedicated_standby(backups: usize, fail_active: f64, fail_standby: f64, horizon: f64) -> f64 {
    rel_shared_standby(&GroupSpec { primaries: 1, backups, fail_active, fail_standby, horizon })
}

/// Reliability `Ω_k` of SFC `k`. Unplaced VNFs are skipped.
pub fn sfc_reliability(
    solution: &Solution,
    k: usize,
    infra: &Infrastructure,
    workload: &Workload,
    horizon: f64,
) -> f64 {
    let strategy = workload.sfcs[k].strategy;
    if strategy.is_dedicated() {
        solution.assignment[k]
            .iter()
            .zip(&solution.dedicated_backups[k])
            .filter_map(|(c, &b)| c.map(|c| (c, b)))
            .map(|(c, b)| {
                let cat = infra.category(c);
                match strategy {
                    BackupStrategy::DedicatedActive => {
                        rel_dedicated_active(b, cdf(cat.fail_active, horizon))
                    }
                    _ => rel_dedicated_standby(b, cat.fail_active, cat.fail_standby, horizon),
                }
            })
            .product()
    } else {
        let counts = solution.vnfs_per_category(k, infra.num_categories());
        counts
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(i, &n)| {
                let cat = infra.category(i);
                let spec = GroupSpec {
                    primaries: n,
                    backups: solution.shared_backups[k][i],
                    fail_active: cat.fail_active,
                    fail_standby: cat.fail_standby,
                    horizon,
                };
                match strategy {
                    BackupStrategy::SharedActive => rel_shared_active(&spec),
                    _ => rel_shared_standby(&spec),
                }
            })
            .product()
    }
}

/// Deployment cost `P_k` of SFC `k` including its backups.
pub fn sfc_cost(solution: &Solution, k: usize, infra: &Infrastructure, workload: &Workload) -> f64 {
    let strategy = workload.sfcs[k].strategy;
    if strategy.is_dedicated() {
        solution.assignment[k]
            .iter()
            .zip(&solution.dedicated_backups[k])
            .filter_map(|(c, &b)| c.map(|c| (infra.category(c), b as f64)))
            .map(|(cat, b)| match strategy {
                BackupStrategy::DedicatedActive => (b + 1.0) * cat.cost_active,
                _ => cat.cost_active + b * cat.cost_standby,
            })
            .sum()
    } else {
        let counts = solution.vnfs_per_category(k, infra.num_categories());
        counts
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(i, &n)| {
                let cat = infra.category(i);
                let pool = solution.shared_backups[k][i] as f64;
                match strategy {
                    BackupStrategy::SharedActive => (n as f64 + pool) * cat.cost_active,
                    _ => n as f64 * cat.cost_active + pool * cat.cost_standby,
                }
            })
            .sum()
    }
}

#[cfg(test)]
mod tests;
