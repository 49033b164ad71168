//! Consistent fuzzy preference relations extended with D numbers.
//!
//! A decision maker supplies `n − 1` judgments comparing consecutive
//! alternatives. Each judgment is a [`DNumber`]: belief mass spread over one
//! or more preference degrees, possibly summing to less than one. From that
//! chain this crate completes the full preference matrix by additive
//! transitivity ([`relation`]), then ranks the alternatives, derives priority
//! weights for a chosen credibility and reports how inconsistent the
//! judgments are ([`solver`]).
//!
//! ```
//! use dcfpr_core::{build_dcfpr, solve, DNumber, Problem, SolveOptions};
//!
//! let problem = Problem::with_default_labels(vec![
//!     DNumber::new([(0.55, 0.8)])?,
//!     DNumber::certain(0.65),
//!     DNumber::new([(0.75, 0.9), (0.85, 0.1)])?,
//! ])?;
//! let bundle = solve(&build_dcfpr(&problem), SolveOptions::default())?;
//! assert_eq!(bundle.ranking.order, vec![0, 1, 2, 3]);
//! assert!((bundle.inconsistency - 0.053).abs() < 1e-3);
//! # Ok::<(), dcfpr_core::Error>(())
//! ```

pub mod dnumber;
pub mod error;
pub mod matrix;
pub mod relation;
pub mod solver;

pub use dnumber::{chain_subtract, chain_subtract_with, Component, DNumber, MassTolerance};
pub use error::{Error, Result};
pub use matrix::SquareMatrix;
pub use relation::{
    build_cfpr, build_dcfpr, raw_dcfpr, reduce, shift_parameter, verify, DPreferenceMatrix,
    FuzzyPreferenceRelation, Problem, ValidationReport, Verify, Violation,
};
pub use solver::{
    solve, Credibility, Ranking, SolutionBundle, SolveOptions, TriangulationMode, WeightSolution,
};
