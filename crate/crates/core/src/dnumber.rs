//! Discrete D numbers: belief masses assigned to real preference values.
//!
//! A D number `{(b1, v1), (b2, v2), ...}` spreads belief over several candidate
//! preference values. Masses must be positive and may sum to less than one;
//! the missing mass is information nobody supplied, and no operation here ever
//! renormalizes it away.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Float tolerances used when comparing preference values and masses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassTolerance {
    /// Two preference values closer than this are the same focal value.
    pub merge_eps: f64,
    /// Slack allowed on mass sums and full-mass checks.
    pub mass_eps: f64,
}

impl MassTolerance {
    pub fn new(merge_eps: f64, mass_eps: f64) -> Result<Self> {
        for (name, eps) in [("merge_eps", merge_eps), ("mass_eps", mass_eps)] {
            if !(eps.is_finite() && eps > 0.0) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} must be strictly positive, got {eps}"
                )));
            }
        }
        Ok(Self {
            merge_eps,
            mass_eps,
        })
    }
}

impl Default for MassTolerance {
    fn default() -> Self {
        Self {
            merge_eps: 1e-9,
            mass_eps: 1e-12,
        }
    }
}

/// One focal element: a preference value and the belief mass it carries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Component {
    pub value: f64,
    pub mass: f64,
}

impl Component {
    pub fn new(value: f64, mass: f64) -> Self {
        Self { value, mass }
    }
}

impl From<(f64, f64)> for Component {
    fn from((value, mass): (f64, f64)) -> Self {
        Self { value, mass }
    }
}

/// A discrete D number with components kept in canonical order
/// (descending mass, ties by descending value).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DNumber {
    components: Vec<Component>,
}

impl DNumber {
    /// Builds a D number, rejecting non-positive masses, total mass above one,
    /// and duplicate values.
    pub fn new<I, C>(components: I) -> Result<Self>
    where
        I: IntoIterator<Item = C>,
        C: Into<Component>,
    {
        Self::with_tolerance(components, MassTolerance::default())
    }

    pub fn with_tolerance<I, C>(components: I, tol: MassTolerance) -> Result<Self>
    where
        I: IntoIterator<Item = C>,
        C: Into<Component>,
    {
        let mut components: Vec<Component> = components.into_iter().map(Into::into).collect();
        let mut total = 0.0;
        for c in &components {
            if !c.value.is_finite() || !c.mass.is_finite() {
                return Err(Error::InvalidDNumber(format!(
                    "non-finite component ({}, {})",
                    c.value, c.mass
                )));
            }
            if c.mass <= 0.0 {
                return Err(Error::InvalidDNumber(format!(
                    "mass {} of value {} is not positive",
                    c.mass, c.value
                )));
            }
            total += c.mass;
        }
        if total > 1.0 + tol.mass_eps {
            return Err(Error::InvalidDNumber(format!(
                "total mass {total} exceeds 1"
            )));
        }
        components.sort_by(|a, b| a.value.total_cmp(&b.value));
        if let Some(w) = components
            .windows(2)
            .find(|w| (w[1].value - w[0].value).abs() <= tol.merge_eps)
        {
            return Err(Error::InvalidDNumber(format!(
                "duplicate preference values {} and {}",
                w[0].value, w[1].value
            )));
        }
        canonical_sort(&mut components);
        Ok(Self { components })
    }

    /// Total ignorance: no value carries any mass.
    pub fn empty() -> Self {
        Self::default()
    }

    /// A crisp preference value held with full belief.
    pub fn certain(value: f64) -> Self {
        Self {
            components: vec![Component::new(value, 1.0)],
        }
    }

    /// `{(0.5, 1)}`, the diagonal entry of every preference matrix.
    pub fn indifferent() -> Self {
        Self::certain(0.5)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Degree of information completeness: the total assigned mass.
    pub fn q_value(&self) -> f64 {
        self.components.iter().map(|c| c.mass).sum()
    }

    /// Integration of the D number into a single real, `Σ b·v`.
    pub fn i_value(&self) -> f64 {
        self.components.iter().map(|c| c.value * c.mass).sum()
    }

    /// Reciprocal judgment: every value `b` becomes `1 − b`, masses unchanged.
    pub fn negate(&self) -> Self {
        let mut components: Vec<Component> = self
            .components
            .iter()
            .map(|c| Component::new(1.0 - c.value, c.mass))
            .collect();
        canonical_sort(&mut components);
        Self { components }
    }

    pub fn is_reducible(&self) -> bool {
        self.is_reducible_with(MassTolerance::default())
    }

    /// True when there is exactly one component and it carries full mass.
    pub fn is_reducible_with(&self, tol: MassTolerance) -> bool {
        matches!(self.components.as_slice(), [c] if (c.mass - 1.0).abs() <= tol.mass_eps)
    }

    pub fn as_scalar(&self) -> Result<f64> {
        self.as_scalar_with(MassTolerance::default())
    }

    pub fn as_scalar_with(&self, tol: MassTolerance) -> Result<f64> {
        if self.is_reducible_with(tol) {
            Ok(self.components[0].value)
        } else {
            Err(Error::NotReducible)
        }
    }

    /// Applies `f` to every preference value, merging any values the map
    /// brings within `merge_eps` of each other. Masses are untouched.
    pub fn map_values(&self, f: impl Fn(f64) -> f64, tol: MassTolerance) -> Self {
        let candidates = self
            .components
            .iter()
            .map(|c| Component::new(f(c.value), c.mass))
            .collect();
        Self {
            components: merge_candidates(candidates, tol),
        }
    }

    /// Componentwise comparison after canonical ordering.
    pub fn approx_eq(&self, other: &Self, value_eps: f64, mass_eps: f64) -> bool {
        let mut a = self.components.clone();
        let mut b = other.components.clone();
        a.sort_by(|x, y| x.value.total_cmp(&y.value));
        b.sort_by(|x, y| x.value.total_cmp(&y.value));
        a.len() == b.len()
            && a.iter().zip(&b).all(|(x, y)| {
                (x.value - y.value).abs() <= value_eps && (x.mass - y.mass).abs() <= mass_eps
            })
    }

    pub fn min_value(&self) -> Option<f64> {
        self.components.iter().map(|c| c.value).reduce(f64::min)
    }

    pub fn max_value(&self) -> Option<f64> {
        self.components.iter().map(|c| c.value).reduce(f64::max)
    }
}

impl fmt::Display for DNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {})", c.value, c.mass)?;
        }
        write!(f, "}}")
    }
}

/// `constant ⊖ D1 ⊖ D2 ⊖ … ⊖ Dm` with default tolerances.
pub fn chain_subtract(constant: f64, chain: &[DNumber]) -> DNumber {
    chain_subtract_with(constant, chain, MassTolerance::default())
}

/// Every combination picking one component per chain element yields the
/// candidate value `constant − Σ b` with mass `Π v`; candidates whose values
/// coincide within `merge_eps` pool their mass.
///
/// Partial results are merged after each element. Value sums are associative,
/// so this groups the same combinations as merging the full cross product
/// once, without materializing it.
pub fn chain_subtract_with(constant: f64, chain: &[DNumber], tol: MassTolerance) -> DNumber {
    let mut acc = vec![Component::new(constant, 1.0)];
    for d in chain {
        let candidates = acc
            .iter()
            .flat_map(|a| {
                d.components
                    .iter()
                    .map(move |c| Component::new(a.value - c.value, a.mass * c.mass))
            })
            .collect();
        acc = merge_candidates(candidates, tol);
    }
    DNumber { components: acc }
}

/// Groups candidates whose values lie within `merge_eps` of the group's first
/// (smallest) value; each group becomes one component at its mass-weighted
/// mean value.
fn merge_candidates(mut candidates: Vec<Component>, tol: MassTolerance) -> Vec<Component> {
    candidates.sort_by(|a, b| a.value.total_cmp(&b.value));
    let mut merged: Vec<Component> = Vec::with_capacity(candidates.len());
    let mut anchor = f64::NAN;
    let mut weighted = 0.0;
    for c in candidates {
        match merged.last_mut() {
            Some(last) if c.value - anchor <= tol.merge_eps => {
                last.mass += c.mass;
                weighted += c.value * c.mass;
                last.value = weighted / last.mass;
            }
            _ => {
                anchor = c.value;
                weighted = c.value * c.mass;
                merged.push(c);
            }
        }
    }
    canonical_sort(&mut merged);
    merged
}

fn canonical_sort(components: &mut [Component]) {
    components.sort_by(|a, b| match b.mass.total_cmp(&a.mass) {
        Ordering::Equal => b.value.total_cmp(&a.value),
        other => other,
    });
}
