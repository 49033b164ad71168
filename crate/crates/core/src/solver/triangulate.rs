//! Ranking by weighted linear ordering of the probability matrix.
//!
//! Reordering rows and columns by a ranking puts `p(lower, higher)` below the
//! diagonal. The ranking minimizing that below-diagonal sum makes the
//! reordered matrix as close to upper-triangular as possible.

use crate::error::{Error, Result};
use crate::solver::probability::ProbabilityMatrix;

/// Largest problem solved by exhaustive subset search.
pub const EXACT_LIMIT: usize = 12;

const TIE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TriangulationMode {
    /// Exact up to [`EXACT_LIMIT`] alternatives, heuristic beyond.
    #[default]
    Auto,
    Exact,
    Heuristic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    /// Alternative indices, most preferred first.
    pub order: Vec<usize>,
    /// Sum of below-diagonal entries of the reordered probability matrix.
    pub upset_sum: f64,
    /// False when the order came from local search and may not be minimal.
    pub optimal: bool,
}

impl Ranking {
    /// 1-based rank of every alternative, indexed by alternative.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (rank, &alt) in self.order.iter().enumerate() {
            pos[alt] = rank + 1;
        }
        pos
    }
}

/// Below-diagonal sum of `pm` reordered by `order`.
pub fn upset_sum(pm: &ProbabilityMatrix, order: &[usize]) -> f64 {
    let mut total = 0.0;
    for (hi_rank, &higher) in order.iter().enumerate() {
        for &lower in &order[hi_rank + 1..] {
            total += pm.entries[(lower, higher)];
        }
    }
    total
}

pub fn triangulate(pm: &ProbabilityMatrix, mode: TriangulationMode) -> Result<Ranking> {
    let n = pm.size();
    match mode {
        TriangulationMode::Exact if n > EXACT_LIMIT => Err(Error::SizeLimit {
            n,
            max: EXACT_LIMIT,
        }),
        TriangulationMode::Exact => Ok(exact(pm)),
        TriangulationMode::Auto if n <= EXACT_LIMIT => Ok(exact(pm)),
        TriangulationMode::Auto | TriangulationMode::Heuristic => Ok(heuristic(pm)),
    }
}

/// Dynamic program over the set of alternatives already placed at the top.
///
/// `rest[S]` is the least cost of ordering the complement of `S` below `S`.
/// Placing `j` next under `S` costs `Σ_{i ∈ S} p(j, i)`. Walking forward and
/// always taking the smallest index that attains the optimum yields the
/// lexicographically first optimal order.
fn exact(pm: &ProbabilityMatrix) -> Ranking {
    let n = pm.size();
    let full = (1usize << n) - 1;
    // cost_under[j][S] = Σ_{i ∈ S} p(j, i), built incrementally from the lowest bit.
    let mut cost_under = vec![vec![0.0; 1 << n]; n];
    for (j, costs) in cost_under.iter_mut().enumerate() {
        for set in 1..=full {
            let low = set.trailing_zeros() as usize;
            costs[set] = costs[set & (set - 1)] + pm.entries[(j, low)];
        }
    }
    let mut rest = vec![0.0; 1 << n];
    for set in (0..full).rev() {
        let mut best = f64::INFINITY;
        for j in (0..n).filter(|j| set & (1 << j) == 0) {
            best = best.min(cost_under[j][set] + rest[set | (1 << j)]);
        }
        rest[set] = best;
    }
    let mut order = Vec::with_capacity(n);
    let mut set = 0usize;
    while set != full {
        let target = rest[set];
        let next = (0..n)
            .filter(|j| set & (1 << j) == 0)
            .find(|&j| cost_under[j][set] + rest[set | (1 << j)] <= target + TIE_EPS)
            .expect("some placement attains the minimum");
        order.push(next);
        set |= 1 << next;
    }
    let upset_sum = upset_sum(pm, &order);
    Ranking {
        order,
        upset_sum,
        optimal: true,
    }
}

/// Descending row sums, then adjacent swaps while any swap lowers the cost.
fn heuristic(pm: &ProbabilityMatrix) -> Ranking {
    let n = pm.size();
    let row_sums: Vec<f64> = (0..n).map(|i| pm.entries.row(i).iter().sum()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| row_sums[b].total_cmp(&row_sums[a]).then(a.cmp(&b)));
    loop {
        let mut improved = false;
        for k in 0..n.saturating_sub(1) {
            let (a, b) = (order[k], order[k + 1]);
            // Swapping trades p(b, a) below the diagonal for p(a, b).
            if pm.entries[(a, b)] < pm.entries[(b, a)] - TIE_EPS {
                order.swap(k, k + 1);
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    let upset_sum = upset_sum(pm, &order);
    Ranking {
        order,
        upset_sum,
        optimal: false,
    }
}

/// Normalized upset sum, in `[0, 0.5]` for a minimal ranking.
pub fn inconsistency_degree(ranking: &Ranking, pm: &ProbabilityMatrix) -> f64 {
    let n = pm.size();
    if n < 2 {
        return 0.0;
    }
    upset_sum(pm, &ranking.order) / (n * (n - 1) / 2) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SquareMatrix;

    fn pm(rows: Vec<Vec<f64>>) -> ProbabilityMatrix {
        ProbabilityMatrix {
            entries: SquareMatrix::from_rows(rows).unwrap(),
        }
    }

    #[test]
    fn upper_triangular_input_keeps_identity() {
        let p = pm(vec![
            vec![0.0, 1.0, 1.0, 1.0],
            vec![0.0, 0.0, 1.0, 1.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, 0.0, 0.0],
        ]);
        for mode in [TriangulationMode::Exact, TriangulationMode::Heuristic] {
            let r = triangulate(&p, mode).unwrap();
            assert_eq!(r.order, vec![0, 1, 2, 3]);
            assert_eq!(r.upset_sum, 0.0);
        }
    }

    #[test]
    fn reversed_input_is_reversed() {
        let p = pm(vec![
            vec![0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![1.0, 1.0, 0.0],
        ]);
        assert_eq!(
            triangulate(&p, TriangulationMode::Exact).unwrap().order,
            vec![2, 1, 0]
        );
    }

    #[test]
    fn ties_keep_index_order() {
        let p = pm(vec![
            vec![0.0, 0.5, 0.5],
            vec![0.5, 0.0, 0.5],
            vec![0.5, 0.5, 0.0],
        ]);
        let r = triangulate(&p, TriangulationMode::Exact).unwrap();
        assert_eq!(r.order, vec![0, 1, 2]);
        assert!((inconsistency_degree(&r, &p) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn maximal_ambiguity_for_two() {
        let p = pm(vec![vec![0.0, 0.5], vec![0.5, 0.0]]);
        let r = triangulate(&p, TriangulationMode::Auto).unwrap();
        assert_eq!(inconsistency_degree(&r, &p), 0.5);
    }

    #[test]
    fn exact_mode_size_limit() {
        let p = ProbabilityMatrix {
            entries: SquareMatrix::from_fn(13, |i, j| if i < j { 1.0 } else { 0.0 }),
        };
        assert_eq!(
            triangulate(&p, TriangulationMode::Exact),
            Err(Error::SizeLimit { n: 13, max: 12 })
        );
        let r = triangulate(&p, TriangulationMode::Auto).unwrap();
        assert!(!r.optimal);
        assert_eq!(r.order, (0..13).collect::<Vec<_>>());
    }

    #[test]
    fn positions_invert_order() {
        let r = Ranking {
            order: vec![2, 0, 1],
            upset_sum: 0.0,
            optimal: true,
        };
        assert_eq!(r.positions(), vec![2, 3, 1]);
    }
}
