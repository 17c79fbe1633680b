//! Selection, crossover and mutation on integer genomes.

use rand::Rng;

use crate::error::SolveError;

/// Index of the lowest-fitness member among `size` members drawn uniformly
/// with replacement. Ties go to the first drawn.
pub fn tournament_select<R: Rng + ?Sized>(fitnesses: &[f64], size: usize, rng: &mut R) -> usize {
    assert!(!fitnesses.is_empty(), "tournament over an empty population");
    let mut best = rng.random_range(0..fitnesses.len());
    for _ in 1..size {
        let challenger = rng.random_range(0..fitnesses.len());
        if fitnesses[challenger] < fitnesses[best] {
            best = challenger;
        }
    }
    best
}

/// Exchanges the segment `[p, q)` between two parents.
pub fn two_point_crossover_at<T: Clone>(
    parent_a: &[T],
    parent_b: &[T],
    p: usize,
    q: usize,
) -> Result<(Vec<T>, Vec<T>), SolveError> {
    if parent_a.len() != parent_b.len() {
        return Err(SolveError::Config(format!(
            "crossover parents differ in length: {} vs {}",
            parent_a.len(),
            parent_b.len()
        )));
    }
    if p > q || q > parent_a.len() {
        return Err(SolveError::Config(format!(
            "cut points ({p}, {q}) invalid for length {}",
            parent_a.len()
        )));
    }
    let mut child_a = parent_a.to_vec();
    let mut child_b = parent_b.to_vec();
    child_a[p..q].clone_from_slice(&parent_b[p..q]);
    child_b[p..q].clone_from_slice(&parent_a[p..q]);
    Ok((child_a, child_b))
}

/// Two-point crossover with cut points `0 ≤ p < q ≤ len` drawn uniformly
/// among all such pairs.
pub fn two_point_crossover<T: Clone, R: Rng + ?Sized>(
    parent_a: &[T],
    parent_b: &[T],
    rng: &mut R,
) -> Result<(Vec<T>, Vec<T>), SolveError> {
    let len = parent_a.len();
    if len == 0 {
        return two_point_crossover_at(parent_a, parent_b, 0, 0);
    }
    let p = rng.random_range(0..=len);
    let mut q = rng.random_range(0..len);
    if q >= p {
        q += 1;
    }
    two_point_crossover_at(parent_a, parent_b, p.min(q), p.max(q))
}

/// With probability `rate`, swaps one uniformly chosen pair of distinct positions.
pub fn swap_mutation<T, R: Rng + ?Sized>(genes: &mut [T], rate: f64, rng: &mut R) {
    let len = genes.len();
    if len < 2 || !rng.random_bool(rate.clamp(0.0, 1.0)) {
        return;
    }
    let i = rng.random_range(0..len);
    let mut j = rng.random_range(0..len - 1);
    if j >= i {
        j += 1;
    }
    genes.swap(i, j);
}
