//! Interval vectors, scenarios and scenario classification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{OrpError, Result};

/// Absolute tolerance used when deciding whether a component sits on a bound.
pub const DEFAULT_BOUND_TOL: f64 = 1e-9;

/// Default cap on the number of components for which all hypercube vertices are enumerated.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// A vector of independent closed intervals `[lower_i, upper_i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalVector {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl IntervalVector {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(OrpError::DimensionMismatch(format!(
                "interval bounds have lengths {} and {}",
                lower.len(),
                upper.len()
            )));
        }
        for (index, (&l, &u)) in lower.iter().zip(&upper).enumerate() {
            if !l.is_finite() || !u.is_finite() {
                return Err(OrpError::NonFinite("interval bounds"));
            }
            if l > u {
                return Err(OrpError::InvertedInterval {
                    index,
                    lower: l,
                    upper: u,
                });
            }
        }
        Ok(Self { lower, upper })
    }

    /// Degenerate interval vector `[v, v]`.
    pub fn point(values: Vec<f64>) -> Result<Self> {
        Self::new(values.clone(), values)
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Center and radius vectors.
    pub fn midpoint_radius(&self) -> (Vec<f64>, Vec<f64>) {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&l, &u)| (l + 0.5 * (u - l), 0.5 * (u - l)))
            .unzip()
    }

    pub fn lower_scenario(&self) -> Scenario {
        Scenario::new(self.lower.clone())
    }

    pub fn upper_scenario(&self) -> Scenario {
        Scenario::new(self.upper.clone())
    }

    pub fn contains_zero(&self) -> bool {
        self.lower
            .iter()
            .zip(&self.upper)
            .all(|(&l, &u)| l <= 0.0 && 0.0 <= u)
    }

    /// Checks `values` componentwise against the bounds, allowing `tol` of slack.
    pub fn check_contains(&self, values: &[f64], tol: f64) -> Result<()> {
        if values.len() != self.len() {
            return Err(OrpError::DimensionMismatch(format!(
                "scenario has {} components, interval vector has {}",
                values.len(),
                self.len()
            )));
        }
        for (index, ((&v, &l), &u)) in values.iter().zip(&self.lower).zip(&self.upper).enumerate() {
            if !(v >= l - tol && v <= u + tol) {
                return Err(OrpError::NotContained {
                    index,
                    value: v,
                    lower: l,
                    upper: u,
                });
            }
        }
        Ok(())
    }

    pub fn contains(&self, scenario: &Scenario, tol: f64) -> bool {
        self.check_contains(scenario.values(), tol).is_ok()
    }

    /// All `2^m` vertices in lexicographic bound-choice order (lower before upper,
    /// first component most significant).
    pub fn vertex_scenarios(&self, cap: usize) -> Result<VertexIter<'_>> {
        let m = self.len();
        if m > cap || m >= usize::BITS as usize {
            return Err(OrpError::TooManyVertices { m, cap });
        }
        Ok(VertexIter {
            iv: self,
            next: 0,
            end: 1usize << m,
        })
    }

    /// Vertex number `code` of the enumeration order used by [`Self::vertex_scenarios`].
    pub fn vertex(&self, code: usize) -> Scenario {
        let m = self.len();
        let values = (0..m)
            .map(|i| {
                if (code >> (m - 1 - i)) & 1 == 1 {
                    self.upper[i]
                } else {
                    self.lower[i]
                }
            })
            .collect();
        Scenario::new(values)
    }

    /// Uniform draw from the box, reproducible for a given seed.
    pub fn sample_scenario(&self, seed: u64) -> Scenario {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(&mut rng)
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Scenario {
        let values = self
            .lower
            .iter()
            .zip(&self.upper)
            .map(|(&l, &u)| if u > l { rng.gen_range(l..=u) } else { l })
            .collect();
        Scenario::new(values)
    }

    pub fn classify(&self, scenario: &Scenario, tol: f64) -> Result<ScenarioClass> {
        classify_scenario(scenario, self, tol)
    }
}

pub struct VertexIter<'a> {
    iv: &'a IntervalVector,
    next: usize,
    end: usize,
}

impl Iterator for VertexIter<'_> {
    type Item = Scenario;

    fn next(&mut self) -> Option<Scenario> {
        if self.next >= self.end {
            return None;
        }
        let v = self.iv.vertex(self.next);
        self.next += 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.end - self.next;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter<'_> {}

/// One realization of the right-hand side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Scenario(Vec<f64>);

impl Scenario {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl From<Vec<f64>> for Scenario {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// Position of a scenario in the box: interior, on the boundary, or at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScenarioClass {
    Middle,
    WeaklyExtremal,
    StronglyExtremal,
}

impl ScenarioClass {
    /// Vertices are boundary points too.
    pub fn is_weakly_extremal(self) -> bool {
        matches!(self, Self::WeaklyExtremal | Self::StronglyExtremal)
    }
}

/// Classifies `b` as middle, weakly extremal or strongly extremal within `iv`.
///
/// A component counts as at-bound when it is within `tol` of either end, so a
/// degenerate component (`lower == upper`) is always at-bound.
pub fn classify_scenario(b: &Scenario, iv: &IntervalVector, tol: f64) -> Result<ScenarioClass> {
    iv.check_contains(b.values(), tol)?;
    let at_bound = b
        .values()
        .iter()
        .zip(iv.lower().iter().zip(iv.upper()))
        .filter(|(&v, (&l, &u))| (v - l).abs() <= tol || (v - u).abs() <= tol)
        .count();
    Ok(if at_bound == 0 {
        ScenarioClass::Middle
    } else if at_bound == b.len() {
        ScenarioClass::StronglyExtremal
    } else {
        ScenarioClass::WeaklyExtremal
    })
}
