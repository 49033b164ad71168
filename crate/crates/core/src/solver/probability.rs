use crate::dnumber::MassTolerance;
use crate::matrix::SquareMatrix;
use crate::relation::DPreferenceMatrix;

/// Integrated values of a D-number matrix together with each entry's
/// completeness.
#[derive(Debug, Clone, PartialEq)]
pub struct IMatrix {
    pub values: SquareMatrix<f64>,
    pub completeness: SquareMatrix<f64>,
}

impl IMatrix {
    pub fn size(&self) -> usize {
        self.values.size()
    }

    /// Same matrix with rows and columns listed in `order`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        Self {
            values: self.values.permuted(order),
            completeness: self.completeness.permuted(order),
        }
    }
}

/// Pairwise probabilities that the row alternative beats the column one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMatrix {
    pub entries: SquareMatrix<f64>,
}

impl ProbabilityMatrix {
    pub fn size(&self) -> usize {
        self.entries.size()
    }

    pub fn permuted(&self, order: &[usize]) -> Self {
        Self {
            entries: self.entries.permuted(order),
        }
    }
}

pub fn i_matrix(matrix: &DPreferenceMatrix) -> IMatrix {
    let entries = matrix.entries();
    IMatrix {
        values: entries.map(|_, _, d| d.i_value()),
        completeness: entries.map(|_, _, d| d.q_value()),
    }
}

pub fn probability_matrix(im: &IMatrix) -> ProbabilityMatrix {
    probability_matrix_with(im, MassTolerance::default())
}

/// Probability that alternative `i` is preferred to `j`.
///
/// The missing mass `m = 1 − Q(i, j)` sits at an unknown position `β` in
/// `D(i, j)` and at `1 − β` in `D(j, i)`, so the true integrated difference
/// is `I(i, j) − I(j, i) + m(2β − 1)`. With `β` uniform on `[0, 1]` the
/// chance that it is positive is `0.5 + (I(i, j) − I(j, i)) / 2m`, clamped.
/// Complete entries reduce to the sign of the difference.
pub fn probability_matrix_with(im: &IMatrix, tol: MassTolerance) -> ProbabilityMatrix {
    let n = im.size();
    let entries = SquareMatrix::from_fn(n, |i, j| {
        if i == j {
            return 0.0;
        }
        let diff = im.values[(i, j)] - im.values[(j, i)];
        // Symmetrized so p(i, j) + p(j, i) = 1 holds even if q drifts by rounding.
        let q = 0.5 * (im.completeness[(i, j)] + im.completeness[(j, i)]);
        let missing = 1.0 - q;
        if missing <= tol.mass_eps {
            if diff.abs() <= 1e-9 {
                0.5
            } else if diff > 0.0 {
                1.0
            } else {
                0.0
            }
        } else {
            (0.5 + diff / (2.0 * missing)).clamp(0.0, 1.0)
        }
    });
    ProbabilityMatrix { entries }
}

/// Fills each off-diagonal entry with half of its missing mass, the
/// expectation of the unassigned belief under a uniform position.
pub fn completed_i_matrix(im: &IMatrix) -> IMatrix {
    let n = im.size();
    IMatrix {
        values: im.values.map(|i, j, &v| {
            if i == j {
                v
            } else {
                v + (1.0 - im.completeness[(i, j)]) / 2.0
            }
        }),
        completeness: SquareMatrix::from_fn(n, |_, _| 1.0),
    }
}
