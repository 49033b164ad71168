//! From a D-number preference matrix to a ranking, priority weights and an
//! inconsistency degree.
//!
//! The pipeline integrates every entry into an I value, turns I values and
//! missing mass into pairwise preference probabilities, picks the ranking
//! that makes the probability matrix closest to upper-triangular, completes
//! the I values with the expected share of missing mass, and spreads weights
//! along the ranking.

mod probability;
mod triangulate;
mod weights;

pub use probability::{
    completed_i_matrix, i_matrix, probability_matrix, probability_matrix_with, IMatrix,
    ProbabilityMatrix,
};
pub use triangulate::{
    inconsistency_degree, triangulate, upset_sum, Ranking, TriangulationMode, EXACT_LIMIT,
};
pub use weights::{
    adjacent_excess, solve_weights, weight_intervals, weight_offsets, WeightInterval,
    WeightIntervals, WeightSolution,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::relation::DPreferenceMatrix;

/// Credibility of the judgments, expressed through the weight divisor `λ`.
/// Higher credibility means a smaller `λ` and a wider spread of weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Credibility {
    High,
    Medium,
    Low,
    Custom(f64),
}

impl Credibility {
    pub const PRESETS: [Credibility; 3] =
        [Credibility::High, Credibility::Medium, Credibility::Low];

    pub fn lambda(self) -> f64 {
        match self {
            Credibility::High => 2.0,
            Credibility::Medium => 4.0,
            Credibility::Low => 8.0,
            Credibility::Custom(lambda) => lambda,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Credibility::High => "high",
            Credibility::Medium => "medium",
            Credibility::Low => "low",
            Credibility::Custom(_) => "custom",
        }
    }
}

impl fmt::Display for Credibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Credibility::Custom(lambda) => write!(f, "custom (lambda = {lambda})"),
            c => f.write_str(c.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub credibility: Credibility,
    pub mode: TriangulationMode,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            credibility: Credibility::High,
            mode: TriangulationMode::Auto,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// The ranking was found by local search and may not minimize upsets.
    HeuristicRanking,
    /// The completed I value between adjacent ranked alternatives favors the
    /// lower one, so their weights invert the ranking order.
    WeightInversion {
        higher: usize,
        lower: usize,
        excess: f64,
    },
    /// A preset `λ` is infeasible; its weights are omitted.
    PresetInfeasible {
        credibility: Credibility,
        lambda_min: f64,
    },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::HeuristicRanking => {
                write!(f, "ranking found by local search; it may not be optimal")
            }
            Warning::WeightInversion {
                higher,
                lower,
                excess,
            } => write!(
                f,
                "alternative {} is ranked above {} but their completed I value is {:.4}; weights invert",
                higher + 1,
                lower + 1,
                0.5 + excess
            ),
            Warning::PresetInfeasible {
                credibility,
                lambda_min,
            } => write!(
                f,
                "{credibility} credibility (lambda = {}) is below lambda_min = {lambda_min}",
                credibility.lambda()
            ),
        }
    }
}

/// Preset weights; `solution` is `None` when the preset is infeasible.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetWeights {
    pub credibility: Credibility,
    pub solution: Option<WeightSolution>,
}

/// Every intermediate and final result of the pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionBundle {
    pub matrix: DPreferenceMatrix,
    pub i_matrix: IMatrix,
    pub probability: ProbabilityMatrix,
    pub ranking: Ranking,
    /// Completed I values in original alternative order.
    pub completed: IMatrix,
    pub inconsistency: f64,
    pub credibility: Credibility,
    pub weights: WeightSolution,
    pub presets: Vec<PresetWeights>,
    pub intervals: WeightIntervals,
    pub warnings: Vec<Warning>,
}

impl SolutionBundle {
    /// The probability matrix with rows and columns in ranking order.
    pub fn triangular_probability(&self) -> ProbabilityMatrix {
        self.probability.permuted(&self.ranking.order)
    }

    /// The completed I values with rows and columns in ranking order.
    pub fn triangular_completed(&self) -> IMatrix {
        self.completed.permuted(&self.ranking.order)
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }
}

pub fn solve(matrix: &DPreferenceMatrix, options: SolveOptions) -> Result<SolutionBundle> {
    let lambda = options.credibility.lambda();
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidLambda(lambda));
    }
    let i_matrix = i_matrix(matrix);
    let probability = probability_matrix(&i_matrix);
    let ranking = triangulate(&probability, options.mode)?;
    let inconsistency = inconsistency_degree(&ranking, &probability);
    let completed = completed_i_matrix(&i_matrix);
    let intervals = weight_intervals(&completed, &ranking);
    let weights = solve_weights(&completed, &ranking, lambda)?;

    let mut warnings = Vec::new();
    if !ranking.optimal {
        warnings.push(Warning::HeuristicRanking);
    }
    for k in 0..ranking.order.len().saturating_sub(1) {
        let excess = adjacent_excess(&completed, &ranking.order, k);
        if excess < 0.0 {
            warnings.push(Warning::WeightInversion {
                higher: ranking.order[k],
                lower: ranking.order[k + 1],
                excess,
            });
        }
    }
    let mut presets = Vec::with_capacity(3);
    for credibility in Credibility::PRESETS {
        match solve_weights(&completed, &ranking, credibility.lambda()) {
            Ok(solution) => presets.push(PresetWeights {
                credibility,
                solution: Some(solution),
            }),
            Err(Error::LambdaTooSmall { lambda_min, .. }) => {
                warnings.push(Warning::PresetInfeasible {
                    credibility,
                    lambda_min,
                });
                presets.push(PresetWeights {
                    credibility,
                    solution: None,
                });
            }
            Err(e) => return Err(e),
        }
    }

    Ok(SolutionBundle {
        matrix: matrix.clone(),
        i_matrix,
        probability,
        ranking,
        completed,
        inconsistency,
        credibility: options.credibility,
        weights,
        presets,
        intervals,
        warnings,
    })
}
