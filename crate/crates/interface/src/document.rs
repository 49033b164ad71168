//! JSON documents: problem input, D-CFPR and CFPR matrices, and solutions.
//!
//! Problem documents carry plain JSON numbers. Matrix payloads in output
//! documents carry reals as decimal strings in shortest round-trip form, so
//! every consumer reads back the exact binary value.

use std::collections::BTreeMap;
use std::fmt;

use dcfpr_core::solver::{SolutionBundle, WeightInterval};
use dcfpr_core::{DNumber, DPreferenceMatrix, FuzzyPreferenceRelation, Problem, SquareMatrix};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DOCUMENT_VERSION: u32 = 1;

/// One rule violation located by a JSON pointer into the document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub pointer: String,
    pub message: String,
}

impl Diagnostic {
    fn new(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pointer = if self.pointer.is_empty() {
            "/"
        } else {
            &self.pointer
        };
        write!(f, "{pointer}: {}", self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Parse(String),
    #[error("{}", format_diagnostics(.0))]
    Schema(Vec<Diagnostic>),
}

impl DocumentError {
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        match self {
            DocumentError::Parse(msg) => {
                vec![Diagnostic::new("", format!("malformed JSON: {msg}"))]
            }
            DocumentError::Schema(d) => d.clone(),
        }
    }
}

fn format_diagnostics(diags: &[Diagnostic]) -> String {
    let lines: Vec<String> = diags.iter().map(ToString::to_string).collect();
    format!("schema violation: {}", lines.join("; "))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub b: f64,
    pub v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComparisonDoc {
    pub left: usize,
    pub right: usize,
    pub components: Vec<ComponentDoc>,
}

/// Input format: alternatives plus judgments on consecutive pairs `(k, k+1)`,
/// numbered from 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub version: u32,
    pub alternatives: Vec<String>,
    #[serde(default)]
    pub comparisons: Vec<ComparisonDoc>,
}

/// Outcome of checking a possibly partial problem document.
#[derive(Debug, Clone, PartialEq)]
pub struct DraftCheck {
    /// Rule violations in what the document does contain.
    pub errors: Vec<Diagnostic>,
    /// Consecutive pairs `(k, k+1)` with no comparison yet.
    pub missing: Vec<(usize, usize)>,
    /// Validated judgments by pair, `None` where missing or invalid.
    pub judgments: Vec<Option<DNumber>>,
}

impl DraftCheck {
    pub fn is_complete(&self) -> bool {
        self.errors.is_empty() && self.missing.is_empty()
    }

    pub fn missing_diagnostics(&self) -> Vec<Diagnostic> {
        self.missing
            .iter()
            .map(|(l, r)| Diagnostic::new("/comparisons", format!("missing comparison ({l}, {r})")))
            .collect()
    }
}

impl ProblemDocument {
    pub fn from_problem(problem: &Problem) -> Self {
        Self {
            version: DOCUMENT_VERSION,
            alternatives: problem.alternatives().to_vec(),
            comparisons: problem
                .judgments()
                .iter()
                .enumerate()
                .map(|(k, d)| ComparisonDoc {
                    left: k + 1,
                    right: k + 2,
                    components: components_doc(d),
                })
                .collect(),
        }
    }

    /// Validates everything present; missing pairs are reported separately so
    /// an in-progress draft is not an error.
    pub fn check(&self) -> DraftCheck {
        let mut errors = Vec::new();
        if self.version != DOCUMENT_VERSION {
            errors.push(Diagnostic::new(
                "/version",
                format!(
                    "unsupported version {}, expected {DOCUMENT_VERSION}",
                    self.version
                ),
            ));
        }
        let n = self.alternatives.len();
        if n < 2 {
            errors.push(Diagnostic::new(
                "/alternatives",
                format!("at least 2 alternatives required, got {n}"),
            ));
        }
        let mut seen = BTreeMap::new();
        for (k, label) in self.alternatives.iter().enumerate() {
            if label.trim().is_empty() {
                errors.push(Diagnostic::new(format!("/alternatives/{k}"), "empty label"));
            } else if let Some(first) = seen.insert(label.as_str(), k) {
                errors.push(Diagnostic::new(
                    format!("/alternatives/{k}"),
                    format!("duplicate label {label:?} (also at index {first})"),
                ));
            }
        }

        let pairs = n.saturating_sub(1);
        let mut judgments: Vec<Option<DNumber>> = vec![None; pairs];
        let mut present = vec![false; pairs];
        for (i, cmp) in self.comparisons.iter().enumerate() {
            let at = format!("/comparisons/{i}");
            if cmp.left < 1 || cmp.left > pairs {
                errors.push(Diagnostic::new(
                    format!("{at}/left"),
                    format!("left index {} outside 1..={pairs}", cmp.left),
                ));
                continue;
            }
            if cmp.right != cmp.left + 1 {
                errors.push(Diagnostic::new(
                    format!("{at}/right"),
                    format!(
                        "comparisons must chain consecutive alternatives: expected right = {}, got {}",
                        cmp.left + 1,
                        cmp.right
                    ),
                ));
                continue;
            }
            let slot = cmp.left - 1;
            if present[slot] {
                errors.push(Diagnostic::new(
                    at,
                    format!("duplicate comparison ({}, {})", cmp.left, cmp.right),
                ));
                continue;
            }
            present[slot] = true;
            match judgment_from_components(&cmp.components, &format!("{at}/components")) {
                Ok(d) => judgments[slot] = Some(d),
                Err(mut diags) => errors.append(&mut diags),
            }
        }
        let missing = present
            .iter()
            .enumerate()
            .filter(|(_, p)| !**p)
            .map(|(k, _)| (k + 1, k + 2))
            .collect();
        DraftCheck {
            errors,
            missing,
            judgments,
        }
    }

    pub fn to_problem(&self) -> Result<Problem, DocumentError> {
        let check = self.check();
        if !check.is_complete() {
            let mut diags = check.errors.clone();
            diags.extend(check.missing_diagnostics());
            return Err(DocumentError::Schema(diags));
        }
        let judgments = check.judgments.into_iter().map(Option::unwrap).collect();
        Problem::new(self.alternatives.clone(), judgments)
            .map_err(|e| DocumentError::Schema(vec![Diagnostic::new("", e.to_string())]))
    }
}

/// Validates the components of one judgment; `at` is the pointer of the list.
pub fn judgment_from_components(
    components: &[ComponentDoc],
    at: &str,
) -> Result<DNumber, Vec<Diagnostic>> {
    let mut errors = Vec::new();
    if components.is_empty() {
        errors.push(Diagnostic::new(
            at,
            "a judgment needs at least one component",
        ));
    }
    for (j, c) in components.iter().enumerate() {
        if !(0.0..=1.0).contains(&c.b) {
            errors.push(Diagnostic::new(
                format!("{at}/{j}/b"),
                format!("preference value {} outside [0, 1]", c.b),
            ));
        }
        if !(c.v > 0.0 && c.v.is_finite()) {
            errors.push(Diagnostic::new(
                format!("{at}/{j}/v"),
                format!("mass {} must be positive", c.v),
            ));
        }
        if let Some(k) = components[..j]
            .iter()
            .position(|o| (o.b - c.b).abs() <= 1e-9)
        {
            errors.push(Diagnostic::new(
                format!("{at}/{j}/b"),
                format!("preference value {} repeats component {k}", c.b),
            ));
        }
    }
    let total: f64 = components.iter().map(|c| c.v).sum();
    if total > 1.0 + 1e-12 {
        errors.push(Diagnostic::new(at, format!("total mass {total} exceeds 1")));
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    DNumber::new(components.iter().map(|c| (c.b, c.v)))
        .map_err(|e| vec![Diagnostic::new(at, e.to_string())])
}

fn components_doc(d: &DNumber) -> Vec<ComponentDoc> {
    d.components()
        .iter()
        .map(|c| ComponentDoc {
            b: c.value,
            v: c.mass,
        })
        .collect()
}

/// Deserializes JSON text, reporting type mismatches with a JSON pointer.
pub fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, DocumentError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| DocumentError::Parse(e.to_string()))?;
    from_value(value)
}

pub fn from_value<T: serde::de::DeserializeOwned>(
    value: serde_json::Value,
) -> Result<T, DocumentError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let pointer = path_to_pointer(e.path());
        DocumentError::Schema(vec![Diagnostic::new(pointer, e.inner().to_string())])
    })
}

fn path_to_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut pointer = String::new();
    for seg in path.iter() {
        pointer.push('/');
        match seg {
            Segment::Seq { index } => pointer.push_str(&index.to_string()),
            Segment::Map { key } => pointer.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => pointer.push_str(variant),
            Segment::Unknown => pointer.push('?'),
        }
    }
    pointer
}

/// Parses and validates a complete problem document.
pub fn parse_problem(text: &str) -> Result<Problem, DocumentError> {
    from_json::<ProblemDocument>(text)?.to_problem()
}

pub mod decimal {
    //! Reals as decimal strings in shortest round-trip form.

    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn format(x: f64) -> String {
        format!("{x}")
    }

    pub fn parse(s: &str) -> Result<f64, String> {
        s.parse::<f64>()
            .map_err(|e| format!("invalid decimal {s:?}: {e}"))
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(*x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(de::Error::custom)
    }
}

/// A real serialized as a decimal string.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Decimal(#[serde(with = "decimal")] pub f64);

pub type DecimalMatrix = Vec<Vec<Decimal>>;

pub fn decimal_matrix(m: &SquareMatrix<f64>) -> DecimalMatrix {
    m.rows()
        .map(|row| row.iter().map(|&x| Decimal(x)).collect())
        .collect()
}

pub fn matrix_from_decimals(m: &DecimalMatrix) -> Result<SquareMatrix<f64>, dcfpr_core::Error> {
    SquareMatrix::from_rows(m.iter().map(|r| r.iter().map(|d| d.0).collect()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecimalComponent {
    pub b: Decimal,
    pub v: Decimal,
}

pub type DNumberMatrix = Vec<Vec<Vec<DecimalComponent>>>;

pub fn dnumber_matrix(m: &SquareMatrix<DNumber>) -> DNumberMatrix {
    m.rows()
        .map(|row| {
            row.iter()
                .map(|d| {
                    d.components()
                        .iter()
                        .map(|c| DecimalComponent {
                            b: Decimal(c.value),
                            v: Decimal(c.mass),
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Output of `build`: the completed D-CFPR.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub version: u32,
    pub alternatives: Vec<String>,
    pub normalization_shift: Decimal,
    pub matrix: DNumberMatrix,
}

impl MatrixDocument {
    pub fn new(alternatives: &[String], matrix: &DPreferenceMatrix) -> Self {
        Self {
            version: DOCUMENT_VERSION,
            alternatives: alternatives.to_vec(),
            normalization_shift: Decimal(matrix.normalization_shift()),
            matrix: dnumber_matrix(matrix.entries()),
        }
    }
}

/// Output of `reduce`: a classical crisp CFPR.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CfprDocument {
    pub version: u32,
    pub alternatives: Vec<String>,
    pub matrix: DecimalMatrix,
}

impl CfprDocument {
    pub fn new(alternatives: &[String], relation: &FuzzyPreferenceRelation) -> Self {
        Self {
            version: DOCUMENT_VERSION,
            alternatives: alternatives.to_vec(),
            matrix: decimal_matrix(relation.entries()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionMatrices {
    pub dcfpr: DNumberMatrix,
    pub normalization_shift: Decimal,
    pub i_values: DecimalMatrix,
    pub completeness: DecimalMatrix,
    pub probability: DecimalMatrix,
    /// Probability matrix with rows and columns in ranking order.
    pub triangular_probability: DecimalMatrix,
    /// Completed I values with rows and columns in ranking order.
    pub triangular_i_values: DecimalMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingDoc {
    /// Alternative numbers (from 1), most preferred first.
    pub order: Vec<usize>,
    /// Rank of each alternative, in alternative order.
    pub positions: Vec<usize>,
    pub upset_sum: f64,
    pub optimal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalDoc {
    pub lower: f64,
    pub upper: f64,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

impl From<&WeightInterval> for IntervalDoc {
    fn from(iv: &WeightInterval) -> Self {
        Self {
            lower: iv.lower,
            upper: iv.upper,
            lower_closed: iv.lower_closed,
            upper_closed: iv.upper_closed,
        }
    }
}

impl IntervalDoc {
    /// `(0.250, 0.409]` style, three decimals.
    pub fn display(&self) -> String {
        format!(
            "{}{:.3}, {:.3}{}",
            if self.lower_closed { '[' } else { '(' },
            self.lower,
            self.upper,
            if self.upper_closed { ']' } else { ')' }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PresetDoc {
    pub credibility: String,
    pub lambda: f64,
    /// `None` when this `λ` is below `lambda_min`.
    pub weights: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDocument {
    pub version: u32,
    pub alternatives: Vec<String>,
    pub credibility: String,
    pub lambda: f64,
    pub weights: Vec<f64>,
    pub presets: Vec<PresetDoc>,
    pub lambda_min: Option<f64>,
    pub intervals: Vec<IntervalDoc>,
    pub ranking: RankingDoc,
    pub inconsistency_degree: f64,
    pub matrices: SolutionMatrices,
    pub warnings: Vec<String>,
}

impl SolutionDocument {
    pub fn new(alternatives: &[String], bundle: &SolutionBundle) -> Self {
        let order = &bundle.ranking.order;
        Self {
            version: DOCUMENT_VERSION,
            alternatives: alternatives.to_vec(),
            credibility: bundle.credibility.name().to_string(),
            lambda: bundle.weights.lambda,
            weights: bundle.weights.weights.clone(),
            presets: bundle
                .presets
                .iter()
                .map(|p| PresetDoc {
                    credibility: p.credibility.name().to_string(),
                    lambda: p.credibility.lambda(),
                    weights: p.solution.as_ref().map(|s| s.weights.clone()),
                })
                .collect(),
            lambda_min: bundle.intervals.lambda_min,
            intervals: bundle
                .intervals
                .intervals
                .iter()
                .map(IntervalDoc::from)
                .collect(),
            ranking: RankingDoc {
                order: order.iter().map(|k| k + 1).collect(),
                positions: bundle.ranking.positions(),
                upset_sum: bundle.ranking.upset_sum,
                optimal: bundle.ranking.optimal,
            },
            inconsistency_degree: bundle.inconsistency,
            matrices: SolutionMatrices {
                dcfpr: dnumber_matrix(bundle.matrix.entries()),
                normalization_shift: Decimal(bundle.matrix.normalization_shift()),
                i_values: decimal_matrix(&bundle.i_matrix.values),
                completeness: decimal_matrix(&bundle.i_matrix.completeness),
                probability: decimal_matrix(&bundle.probability.entries),
                triangular_probability: decimal_matrix(&bundle.triangular_probability().entries),
                triangular_i_values: decimal_matrix(&bundle.triangular_completed().values),
            },
            warnings: bundle.warnings.iter().map(ToString::to_string).collect(),
        }
    }
}

pub fn parse_solution(text: &str) -> Result<SolutionDocument, DocumentError> {
    from_json(text)
}
