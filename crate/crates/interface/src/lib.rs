//! File formats, command-line driver and HTTP service for the D-CFPR engine.

pub mod cli;
pub mod document;
pub mod http;
pub mod report;

use dcfpr_core::{build_dcfpr, solve, Credibility, Problem, SolveOptions, TriangulationMode};

pub use document::{
    parse_problem, parse_solution, CfprDocument, Diagnostic, DocumentError, MatrixDocument,
    ProblemDocument, SolutionDocument,
};

/// The single solve path shared by the CLI and the service, so both return
/// identical documents for identical input.
pub fn solve_problem(
    problem: &Problem,
    credibility: Credibility,
    mode: TriangulationMode,
) -> dcfpr_core::Result<SolutionDocument> {
    let bundle = solve(&build_dcfpr(problem), SolveOptions { credibility, mode })?;
    Ok(SolutionDocument::new(problem.alternatives(), &bundle))
}

/// Parses `high`, `medium` or `low`.
pub fn parse_credibility(name: &str) -> Option<Credibility> {
    match name.to_ascii_lowercase().as_str() {
        "high" => Some(Credibility::High),
        "medium" => Some(Credibility::Medium),
        "low" => Some(Credibility::Low),
        _ => None,
    }
}

pub fn parse_mode(name: &str) -> Option<TriangulationMode> {
    match name.to_ascii_lowercase().as_str() {
        "auto" => Some(TriangulationMode::Auto),
        "exact" => Some(TriangulationMode::Exact),
        "heuristic" => Some(TriangulationMode::Heuristic),
        _ => None,
    }
}
