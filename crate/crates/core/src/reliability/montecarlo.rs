//! Node-level Monte-Carlo simulation of a redundant group.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};

use super::GroupSpec;

fn sample(rng: &mut ChaCha8Rng, rate: f64) -> f64 {
    if rate > 0.0 {
        Exp::new(rate).expect("positive rate").sample(rng)
    } else {
        f64::INFINITY
    }
}

/// Estimates the probability that `primaries` nodes stay operational over
/// `[0, horizon]`, simulating individual lifetimes.
///
/// Primaries fail at `fail_active`. Spares idle at `fail_standby` and, once
/// promoted to replace a failed primary, draw a fresh lifetime at
/// `fail_active`. The group fails when a primary dies and no spare is alive.
/// Pass `fail_standby == fail_active` for an active pool.
pub fn mc_reliability_oracle(spec: &GroupSpec, trials: u64, seed: u64) -> f64 {
    assert!(trials >= 1, "need at least one trial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let horizon = spec.horizon;
    let mut actives = vec![0.0; spec.primaries];
    let mut spares: Vec<f64> = Vec::with_capacity(spec.backups);
    let mut survived = 0u64;
    for _ in 0..trials {
        for a in actives.iter_mut() {
            *a = sample(&mut rng, spec.fail_active);
        }
        spares.clear();
        let mut alive = true;
        loop {
            let (idx, &death) = actives
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .expect("at least one primary");
            if death > horizon {
                break;
            }
            // Spare lifetimes are independent of the primaries, so drawing
            // them at the first failure is equivalent to drawing them at 0.
            if spares.is_empty() && spec.backups > 0 {
                spares.extend((0..spec.backups).map(|_| sample(&mut rng, spec.fail_standby)));
            }
            // First spare alive at `death`, by index (never by value, which
            // would bias the survivors).
            match spares.iter().position(|&s| s > death) {
                Some(s) => {
                    spares[s] = f64::NEG_INFINITY;
                    actives[idx] = death + sample(&mut rng, spec.fail_active);
                }
                None => {
                    alive = false;
                    break;
                }
            }
        }
        if alive {
            survived += 1;
        }
    }
    survived as f64 / trials as f64
}

/// Standard error of a Monte-Carlo proportion estimate around `p`.
pub fn mc_standard_error(p: f64, trials: u64) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, b: usize, fa: f64, fs: f64, t: f64) -> GroupSpec {
        GroupSpec { primaries: n, backups: b, fail_active: fa, fail_standby: fs, horizon: t }
    }

    #[test]
    fn deterministic_per_seed() {
        let g = group(2, 2, 0.3, 0.05, 1.0);
        assert_eq!(mc_reliability_oracle(&g, 10_000, 9), mc_reliability_oracle(&g, 10_000, 9));
    }

    #[test]
    fn zero_rates_always_survive() {
        assert_eq!(mc_reliability_oracle(&group(3, 1, 0.0, 0.0, 5.0), 1000, 1), 1.0);
    }

    #[test]
    fn no_backups_matches_exponential() {
        let g = group(2, 0, 0.4, 0.0, 1.0);
        let trials = 200_000;
        let est = mc_reliability_oracle(&g, trials, 3);
        let exact = (-0.8f64).exp();
        assert!((est - exact).abs() < 3.0 * mc_standard_error(exact, trials) + 1e-12);
    }
}
