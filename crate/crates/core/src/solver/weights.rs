//! Priority weights parameterized by a credibility divisor `λ`.
//!
//! Along the ranking `σ`, adjacent excesses `c_k = I(σ_k, σ_{k+1}) − 0.5` of
//! the completed matrix accumulate into tail sums `O_k = Σ_{m ≥ k} c_m`
//! (`O_n = 0`). Each weight is `1/n + (O_k − mean(O)) / λ`: the weights sum to
//! one, adjacent weights differ by `c_k / λ`, and they flatten toward `1/n`
//! as `λ` grows.

use crate::error::{Error, Result};
use crate::solver::probability::IMatrix;
use crate::solver::triangulate::Ranking;

const LAMBDA_EPS: f64 = 1e-12;

/// Weight range an alternative can take over every feasible `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightInterval {
    pub lower: f64,
    pub upper: f64,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

impl WeightInterval {
    pub fn contains(&self, w: f64) -> bool {
        let above = if self.lower_closed {
            w >= self.lower - LAMBDA_EPS
        } else {
            w > self.lower
        };
        let below = if self.upper_closed {
            w <= self.upper + LAMBDA_EPS
        } else {
            w < self.upper
        };
        above && below
    }

    pub fn is_degenerate(&self) -> bool {
        self.lower == self.upper
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightIntervals {
    /// Smallest `λ` keeping every weight nonnegative; `None` when all weights
    /// are uniform regardless of `λ`.
    pub lambda_min: Option<f64>,
    /// Indexed by alternative.
    pub intervals: Vec<WeightInterval>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightSolution {
    pub lambda: f64,
    /// Indexed by alternative; sums to one.
    pub weights: Vec<f64>,
    pub intervals: Vec<WeightInterval>,
    pub lambda_min: Option<f64>,
}

/// `O_k − mean(O)` for every alternative, indexed by alternative.
pub fn weight_offsets(completed: &IMatrix, ranking: &Ranking) -> Vec<f64> {
    let order = &ranking.order;
    let n = order.len();
    let mut tail = vec![0.0; n];
    for k in (0..n.saturating_sub(1)).rev() {
        tail[k] = tail[k + 1] + adjacent_excess(completed, order, k);
    }
    let mean = tail.iter().sum::<f64>() / n as f64;
    let mut offsets = vec![0.0; n];
    for (k, &alt) in order.iter().enumerate() {
        offsets[alt] = tail[k] - mean;
    }
    offsets
}

/// `c_k` for the pair at ranks `k` and `k + 1`.
pub fn adjacent_excess(completed: &IMatrix, order: &[usize], k: usize) -> f64 {
    completed.values[(order[k], order[k + 1])] - 0.5
}

pub fn weight_intervals(completed: &IMatrix, ranking: &Ranking) -> WeightIntervals {
    let offsets = weight_offsets(completed, ranking);
    intervals_from_offsets(&offsets)
}

fn intervals_from_offsets(offsets: &[f64]) -> WeightIntervals {
    let n = offsets.len() as f64;
    let uniform = 1.0 / n;
    let lambda_min = offsets
        .iter()
        .filter(|&&o| o < 0.0)
        .map(|&o| -n * o)
        .reduce(f64::max);
    let intervals = offsets
        .iter()
        .map(|&o| match lambda_min {
            Some(lm) if o > 0.0 => WeightInterval {
                lower: uniform,
                upper: uniform + o / lm,
                lower_closed: false,
                upper_closed: true,
            },
            Some(lm) if o < 0.0 => WeightInterval {
                lower: (uniform + o / lm).max(0.0),
                upper: uniform,
                lower_closed: true,
                upper_closed: false,
            },
            _ => WeightInterval {
                lower: uniform,
                upper: uniform,
                lower_closed: true,
                upper_closed: true,
            },
        })
        .collect();
    WeightIntervals {
        lambda_min,
        intervals,
    }
}

pub fn solve_weights(
    completed: &IMatrix,
    ranking: &Ranking,
    lambda: f64,
) -> Result<WeightSolution> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidLambda(lambda));
    }
    let offsets = weight_offsets(completed, ranking);
    let WeightIntervals {
        lambda_min,
        intervals,
    } = intervals_from_offsets(&offsets);
    if let Some(lm) = lambda_min {
        if lambda < lm * (1.0 - LAMBDA_EPS) {
            return Err(Error::LambdaTooSmall {
                lambda,
                lambda_min: lm,
            });
        }
    }
    let uniform = 1.0 / offsets.len() as f64;
    let weights = offsets
        .iter()
        .map(|o| (uniform + o / lambda).max(0.0))
        .collect();
    Ok(WeightSolution {
        lambda,
        weights,
        intervals,
        lambda_min,
    })
}
