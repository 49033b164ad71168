//! Independent derivation checks for the solver's reconstructed formulas.
//! Nothing here calls into the solver.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Fraction of uniform draws of the missing-mass position `β` for which
/// alternative `i` ends up ahead of `j`.
///
/// With missing mass `m = 1 − q` placed at `β` in `D(i, j)` and at `1 − β` in
/// `D(j, i)`, the completed difference is `(I_ij + mβ) − (I_ji + m(1 − β))`.
pub fn monte_carlo_preference(i_ij: f64, i_ji: f64, q: f64, samples: usize, seed: u64) -> f64 {
    let mut rng = StdRng::seed_from_u64(seed);
    let m = 1.0 - q;
    let mut wins = 0.0;
    for _ in 0..samples {
        let beta: f64 = rng.random();
        let diff = (i_ij + m * beta) - (i_ji + m * (1.0 - beta));
        if diff > 0.0 {
            wins += 1.0;
        } else if diff == 0.0 {
            wins += 0.5;
        }
    }
    wins / samples as f64
}

/// `O_k − mean(O)` along the identity ranking from a completed I matrix.
pub fn offsets_from_completed(completed: &[[f64; 4]; 4]) -> [f64; 4] {
    let c: Vec<f64> = (0..3).map(|k| completed[k][k + 1] - 0.5).collect();
    let tails = [c[0] + c[1] + c[2], c[1] + c[2], c[2], 0.0];
    let mean = tails.iter().sum::<f64>() / 4.0;
    tails.map(|t| t - mean)
}

/// Least-squares `λ` for `w = 1/n + d / λ` (linear in `1/λ`).
pub fn fit_lambda(offsets: &[f64], weights: &[f64]) -> f64 {
    let uniform = 1.0 / weights.len() as f64;
    let num: f64 = offsets
        .iter()
        .zip(weights)
        .map(|(d, w)| d * (w - uniform))
        .sum();
    let den: f64 = offsets.iter().map(|d| d * d).sum();
    den / num
}

/// Smallest `λ` keeping `1/n + d/λ ≥ 0` for every offset.
pub fn lambda_min_from_offsets(offsets: &[f64]) -> f64 {
    let n = offsets.len() as f64;
    offsets.iter().map(|&d| -n * d).fold(0.0, f64::max)
}
