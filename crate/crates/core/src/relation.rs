//! Consistent fuzzy preference relations built from a chain of `n − 1`
//! consecutive judgments, in crisp and D-number form.

use std::collections::HashSet;
use std::fmt;

use crate::dnumber::{chain_subtract_with, DNumber, MassTolerance};
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

/// Tolerance for reciprocity and additive-consistency checks.
pub const CONSISTENCY_EPS: f64 = 1e-9;

/// Named alternatives plus the judgments `D(k, k+1)` for consecutive pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    alternatives: Vec<String>,
    judgments: Vec<DNumber>,
}

impl Problem {
    /// Judgment `k` states how strongly alternative `k` is preferred to
    /// alternative `k + 1`.
    pub fn new(alternatives: Vec<String>, judgments: Vec<DNumber>) -> Result<Self> {
        let n = alternatives.len();
        if n < 2 {
            return Err(Error::InvalidProblem(format!(
                "at least 2 alternatives required, got {n}"
            )));
        }
        let mut seen = HashSet::new();
        for (k, label) in alternatives.iter().enumerate() {
            if label.trim().is_empty() {
                return Err(Error::InvalidProblem(format!(
                    "alternative {} has an empty label",
                    k + 1
                )));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidProblem(format!(
                    "duplicate alternative label {label:?}"
                )));
            }
        }
        if judgments.len() != n - 1 {
            return Err(Error::InvalidProblem(format!(
                "{n} alternatives need {} judgments, got {}",
                n - 1,
                judgments.len()
            )));
        }
        for (k, d) in judgments.iter().enumerate() {
            if d.components()
                .iter()
                .any(|c| !(0.0..=1.0).contains(&c.value))
            {
                return Err(Error::InvalidProblem(format!(
                    "judgment ({}, {}) has a preference value outside [0, 1]: {d}",
                    k + 1,
                    k + 2
                )));
            }
            if d.q_value() <= 0.0 {
                return Err(Error::InvalidProblem(format!(
                    "judgment ({}, {}) carries no mass",
                    k + 1,
                    k + 2
                )));
            }
        }
        Ok(Self {
            alternatives,
            judgments,
        })
    }

    /// Labels `A1..An`.
    pub fn with_default_labels(judgments: Vec<DNumber>) -> Result<Self> {
        let labels = (1..=judgments.len() + 1).map(|k| format!("A{k}")).collect();
        Self::new(labels, judgments)
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn judgments(&self) -> &[DNumber] {
        &self.judgments
    }

    pub fn size(&self) -> usize {
        self.alternatives.len()
    }
}

/// Real-valued reciprocal preference matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyPreferenceRelation {
    entries: SquareMatrix<f64>,
}

impl FuzzyPreferenceRelation {
    /// Wraps arbitrary entries; use [`verify`] to check them.
    pub fn from_entries(entries: SquareMatrix<f64>) -> Self {
        Self { entries }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        SquareMatrix::from_rows(rows).map(Self::from_entries)
    }

    pub fn entries(&self) -> &SquareMatrix<f64> {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.size()
    }
}

/// Preference matrix whose entries are D numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct DPreferenceMatrix {
    entries: SquareMatrix<DNumber>,
    shift: f64,
}

impl DPreferenceMatrix {
    /// Wraps arbitrary entries with the shift that produced them.
    pub fn from_entries(entries: SquareMatrix<DNumber>, shift: f64) -> Self {
        Self { entries, shift }
    }

    pub fn entries(&self) -> &SquareMatrix<DNumber> {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.size()
    }

    /// The `a` of the `(b + a) / (1 + 2a)` rescaling; zero when none was needed.
    pub fn normalization_shift(&self) -> f64 {
        self.shift
    }
}

/// The affine map `(x + a) / (1 + 2a)` from `[−a, 1 + a]` onto `[0, 1]`.
pub fn rescale(x: f64, shift: f64) -> f64 {
    (x + shift) / (1.0 + 2.0 * shift)
}

/// Completes a crisp CFPR from the consecutive values `r(k, k+1)`.
///
/// Lower-triangle entries follow from additive transitivity,
/// `r(j, i) = (j − i + 1)/2 − Σ r(k, k+1)` over `k = i..j−1`; the upper
/// triangle is reciprocal. If anything falls outside `[0, 1]` every entry is
/// rescaled.
pub fn build_cfpr(values: &[f64]) -> Result<FuzzyPreferenceRelation> {
    if let Some((k, v)) = values
        .iter()
        .enumerate()
        .find(|(_, v)| !(0.0..=1.0).contains(*v))
    {
        return Err(Error::InvalidProblem(format!(
            "value r({}, {}) = {v} outside [0, 1]",
            k + 1,
            k + 2
        )));
    }
    let n = values.len() + 1;
    let mut raw = SquareMatrix::from_fn(n, |_, _| 0.5);
    for i in 0..n {
        for j in i + 1..n {
            let span = (j - i + 1) as f64 / 2.0;
            let lower = span - values[i..j].iter().sum::<f64>();
            raw[(j, i)] = lower;
            raw[(i, j)] = 1.0 - lower;
        }
    }
    let (lo, hi) = raw
        .rows()
        .flatten()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    let shift = shift_from_range(lo, hi);
    let entries = if shift > 0.0 {
        raw.map(|i, j, &x| if i == j { 0.5 } else { rescale(x, shift) })
    } else {
        raw
    };
    Ok(FuzzyPreferenceRelation { entries })
}

/// Builds the D-CFPR for `problem`, rescaling preference values into `[0, 1]`
/// when chained subtraction pushes any of them out.
pub fn build_dcfpr(problem: &Problem) -> DPreferenceMatrix {
    build_dcfpr_with(problem, MassTolerance::default())
}

pub fn build_dcfpr_with(problem: &Problem, tol: MassTolerance) -> DPreferenceMatrix {
    let raw = raw_dcfpr_with(problem, tol);
    let shift = shift_parameter(&raw);
    normalize(&raw, shift, tol)
}

/// The matrix before rescaling: lower triangle by chained subtraction,
/// upper triangle by negation, diagonal `{(0.5, 1)}`.
pub fn raw_dcfpr(problem: &Problem) -> SquareMatrix<DNumber> {
    raw_dcfpr_with(problem, MassTolerance::default())
}

pub fn raw_dcfpr_with(problem: &Problem, tol: MassTolerance) -> SquareMatrix<DNumber> {
    let n = problem.size();
    let judgments = problem.judgments();
    let mut m = SquareMatrix::from_fn(n, |_, _| DNumber::indifferent());
    for i in 0..n {
        for j in i + 1..n {
            let span = (j - i + 1) as f64 / 2.0;
            let lower = chain_subtract_with(span, &judgments[i..j], tol);
            m[(i, j)] = lower.negate();
            m[(j, i)] = lower;
        }
    }
    m
}

/// Smallest `a ≥ 0` for which `[−a, 1 + a]` covers every preference value.
pub fn shift_parameter(matrix: &SquareMatrix<DNumber>) -> f64 {
    let (lo, hi) = matrix
        .rows()
        .flatten()
        .flat_map(|d| d.components())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| {
            (lo.min(c.value), hi.max(c.value))
        });
    shift_from_range(lo, hi)
}

fn shift_from_range(lo: f64, hi: f64) -> f64 {
    if lo > hi {
        return 0.0;
    }
    (-lo).max(hi - 1.0).max(0.0)
}

/// Applies the rescaling with the given shift to every off-diagonal value.
pub fn normalize(raw: &SquareMatrix<DNumber>, shift: f64, tol: MassTolerance) -> DPreferenceMatrix {
    let entries = if shift > 0.0 {
        raw.map(|i, j, d| {
            if i == j {
                DNumber::indifferent()
            } else {
                d.map_values(|b| rescale(b, shift), tol)
            }
        })
    } else {
        raw.clone()
    };
    DPreferenceMatrix { entries, shift }
}

/// Entrywise crisp values of a matrix whose every entry is reducible.
pub fn reduce(matrix: &DPreferenceMatrix) -> Result<FuzzyPreferenceRelation> {
    reduce_with(matrix, MassTolerance::default())
}

pub fn reduce_with(
    matrix: &DPreferenceMatrix,
    tol: MassTolerance,
) -> Result<FuzzyPreferenceRelation> {
    let n = matrix.size();
    let mut entries = SquareMatrix::from_fn(n, |_, _| 0.0);
    for i in 0..n {
        for j in 0..n {
            entries[(i, j)] = matrix.entries[(i, j)].as_scalar_with(tol).map_err(|_| {
                Error::NotReducibleCell {
                    row: i + 1,
                    col: j + 1,
                }
            })?;
        }
    }
    Ok(FuzzyPreferenceRelation { entries })
}

/// One violated invariant. Indices are 0-based; `Display` prints them 1-based.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Diagonal {
        index: usize,
        detail: String,
    },
    Reciprocity {
        row: usize,
        col: usize,
        deviation: f64,
    },
    OutOfRange {
        row: usize,
        col: usize,
        value: f64,
    },
    Consistency {
        triple: (usize, usize, usize),
        deviation: f64,
    },
    InvalidEntry {
        row: usize,
        col: usize,
        detail: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Diagonal { index, detail } => {
                write!(f, "diagonal entry ({0}, {0}): {detail}", index + 1)
            }
            Violation::Reciprocity {
                row,
                col,
                deviation,
            } => write!(
                f,
                "reciprocity violated at ({}, {})/({}, {}) by {deviation:.3e}",
                row + 1,
                col + 1,
                col + 1,
                row + 1
            ),
            Violation::OutOfRange { row, col, value } => write!(
                f,
                "entry ({}, {}) has preference value {value} outside [0, 1]",
                row + 1,
                col + 1
            ),
            Violation::Consistency {
                triple: (i, j, k),
                deviation,
            } => write!(
                f,
                "additive consistency violated on ({}, {}, {}) by {deviation:.3e}",
                i + 1,
                j + 1,
                k + 1
            ),
            Violation::InvalidEntry { row, col, detail } => {
                write!(f, "entry ({}, {}): {detail}", row + 1, col + 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Invariant checks shared by crisp and D-number preference matrices.
pub trait Verify {
    fn verify(&self) -> ValidationReport;
}

/// Free-function form of [`Verify::verify`].
pub fn verify<M: Verify + ?Sized>(matrix: &M) -> ValidationReport {
    matrix.verify()
}

impl Verify for FuzzyPreferenceRelation {
    fn verify(&self) -> ValidationReport {
        let m = &self.entries;
        let n = m.size();
        let mut violations = Vec::new();
        for i in 0..n {
            if (m[(i, i)] - 0.5).abs() > CONSISTENCY_EPS {
                violations.push(Violation::Diagonal {
                    index: i,
                    detail: format!("expected 0.5, found {}", m[(i, i)]),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let x = m[(i, j)];
                if !(0.0..=1.0).contains(&x) {
                    violations.push(Violation::OutOfRange {
                        row: i,
                        col: j,
                        value: x,
                    });
                }
            }
        }
        for (i, j) in m.upper_pairs() {
            let deviation = m[(i, j)] + m[(j, i)] - 1.0;
            if deviation.abs() > CONSISTENCY_EPS {
                violations.push(Violation::Reciprocity {
                    row: i,
                    col: j,
                    deviation,
                });
            }
        }
        consistency_violations(n, |i, j| Some(m[(i, j)]), &mut violations);
        ValidationReport { violations }
    }
}

impl Verify for DPreferenceMatrix {
    /// Consistency is checked on triples whose three entries are all crisp;
    /// entries carrying uncertainty have no scalar consistency condition.
    fn verify(&self) -> ValidationReport {
        let tol = MassTolerance::default();
        let m = &self.entries;
        let n = m.size();
        let mut violations = Vec::new();
        for i in 0..n {
            if !m[(i, i)].approx_eq(&DNumber::indifferent(), CONSISTENCY_EPS, tol.mass_eps) {
                violations.push(Violation::Diagonal {
                    index: i,
                    detail: format!("expected {{(0.5, 1)}}, found {}", m[(i, i)]),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let d = &m[(i, j)];
                if d.q_value() > 1.0 + tol.mass_eps {
                    violations.push(Violation::InvalidEntry {
                        row: i,
                        col: j,
                        detail: format!("total mass {} exceeds 1", d.q_value()),
                    });
                }
                if let Some(c) = d.components().iter().find(|c| c.mass <= 0.0) {
                    violations.push(Violation::InvalidEntry {
                        row: i,
                        col: j,
                        detail: format!("non-positive mass {}", c.mass),
                    });
                }
                for c in d.components() {
                    if !(0.0..=1.0).contains(&c.value) {
                        violations.push(Violation::OutOfRange {
                            row: i,
                            col: j,
                            value: c.value,
                        });
                    }
                }
            }
        }
        for (i, j) in m.upper_pairs() {
            let expected = m[(j, i)].negate();
            if !m[(i, j)].approx_eq(&expected, CONSISTENCY_EPS, CONSISTENCY_EPS) {
                let deviation = m[(i, j)].i_value() + m[(j, i)].i_value() - m[(i, j)].q_value();
                violations.push(Violation::Reciprocity {
                    row: i,
                    col: j,
                    deviation,
                });
            }
        }
        consistency_violations(
            n,
            |i, j| m[(i, j)].as_scalar_with(tol).ok(),
            &mut violations,
        );
        ValidationReport { violations }
    }
}

/// Checks `r(i,j) + r(j,k) + r(k,i) = 3/2` for every `i < j < k` where all
/// three entries have a crisp value.
fn consistency_violations(
    n: usize,
    value: impl Fn(usize, usize) -> Option<f64>,
    out: &mut Vec<Violation>,
) {
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if let (Some(a), Some(b), Some(c)) = (value(i, j), value(j, k), value(k, i)) {
                    let deviation = a + b + c - 1.5;
                    if deviation.abs() > CONSISTENCY_EPS {
                        out.push(Violation::Consistency {
                            triple: (i, j, k),
                            deviation,
                        });
                    }
                }
            }
        }
    }
}
