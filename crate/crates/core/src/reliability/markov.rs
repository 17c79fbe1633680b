//! Transient analysis of the failure-count chain of a redundant group.
//!
//! State `m` counts failures absorbed so far (`0..=b`); one more failure
//! with no spare left is absorbing. From state `m` the only transition is to
//! `m + 1`, at rate `N·f_a + (b − m)·f_spare`. Transient probabilities are
//! computed by uniformization, splitting the horizon so that each step has a
//! Poisson mean of at most `MAX_STEP_MEAN`.

const MAX_STEP_MEAN: f64 = 32.0;
const WEIGHT_CUTOFF: f64 = 1e-22;

/// Probability that the group never runs out of spares over `[0, horizon]`.
///
/// `spare_rate` is the failure rate of an idle spare: `f_s` for standby
/// pools, `f_a` for active ones.
pub fn markov_group_survival(
    primaries: usize,
    backups: usize,
    fail_active: f64,
    spare_rate: f64,
    horizon: f64,
) -> f64 {
    let states = backups + 1;
    let rates: Vec<f64> = (0..states)
        .map(|m| primaries as f64 * fail_active + (backups - m) as f64 * spare_rate)
        .collect();
    let uniform_rate = rates.iter().cloned().fold(0.0, f64::max);
    if uniform_rate == 0.0 || horizon == 0.0 {
        return 1.0;
    }
    let jump: Vec<f64> = rates.iter().map(|r| r / uniform_rate).collect();

    let total_mean = uniform_rate * horizon;
    let steps = (total_mean / MAX_STEP_MEAN).ceil().max(1.0) as usize;
    let mean = total_mean / steps as f64;

    let mut dist = vec![0.0; states];
    dist[0] = 1.0;
    let mut term = vec![0.0; states];
    let mut next = vec![0.0; states];
    for _ in 0..steps {
        term.copy_from_slice(&dist);
        let mut weight = (-mean).exp();
        let mut acc: Vec<f64> = term.iter().map(|p| weight * p).collect();
        let mut k = 0usize;
        loop {
            k += 1;
            next[0] = term[0] * (1.0 - jump[0]);
            for m in 1..states {
                next[m] = term[m] * (1.0 - jump[m]) + term[m - 1] * jump[m - 1];
            }
            std::mem::swap(&mut term, &mut next);
            weight *= mean / k as f64;
            for (a, p) in acc.iter_mut().zip(&term) {
                *a += weight * p;
            }
            if k as f64 > mean && weight < WEIGHT_CUTOFF {
                break;
            }
        }
        dist = acc;
    }
    dist.iter().sum::<f64>().clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// exp(Q t) by scaling and squaring a truncated Taylor series.
    fn dense_expm(q: &[Vec<f64>], t: f64) -> Vec<Vec<f64>> {
        let n = q.len();
        let norm: f64 = q
            .iter()
            .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
            * t;
        let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
        let scale = t / 2f64.powi(squarings as i32);
        let a: Vec<Vec<f64>> = q.iter().map(|r| r.iter().map(|x| x * scale).collect()).collect();
        let matmul = |x: &Vec<Vec<f64>>, y: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
            (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|l| x[i][l] * y[l][j]).sum()).collect())
                .collect()
        };
        let mut result: Vec<Vec<f64>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        let mut power = result.clone();
        for k in 1..30 {
            power = matmul(&power, &a);
            for i in 0..n {
                for j in 0..n {
                    power[i][j] /= k as f64;
                    result[i][j] += power[i][j];
                }
            }
        }
        for _ in 0..squarings {
            result = matmul(&result, &result);
        }
        result
    }

    fn chain_generator(n: usize, b: usize, fa: f64, fs: f64) -> Vec<Vec<f64>> {
        let size = b + 2;
        let mut q = vec![vec![0.0; size]; size];
        for m in 0..=b {
            let r = n as f64 * fa + (b - m) as f64 * fs;
            q[m][m] = -r;
            q[m][m + 1] = r;
        }
        q
    }

    #[test]
    fn matches_dense_matrix_exponential() {
        for &(n, b, fa, fs, t) in &[
            (1, 2, 0.04, 0.004, 1.0),
            (3, 4, 0.01, 0.001, 5.0),
            (5, 5, 0.04, 0.004, 5.0),
            (2, 3, 0.008, 0.008, 0.1),
            (2, 1, 1.5, 0.5, 3.0),
        ] {
            let e = dense_expm(&chain_generator(n, b, fa, fs), t);
            let dense: f64 = e[0][..=b].iter().sum();
            let unif = markov_group_survival(n, b, fa, fs, t);
            assert!((dense - unif).abs() < 1e-12, "{n} {b} {fa} {fs} {t}: {dense} vs {unif}");
        }
    }

    #[test]
    fn no_backups_is_exponential_survival() {
        let r = markov_group_survival(3, 0, 0.01, 0.001, 1.0);
        assert!((r - (-0.03f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn long_horizons_are_split_without_losing_mass() {
        // Poisson mean of 400 forces several uniformization steps.
        let r = markov_group_survival(4, 3, 10.0, 5.0, 10.0);
        assert!(r >= 0.0 && r < 1e-12);
        let r = markov_group_survival(1, 200, 0.5, 0.05, 20.0);
        assert!(r > 0.999 && r <= 1.0);
    }
}
