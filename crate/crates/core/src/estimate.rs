use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::ilp::Sense;
use crate::interval::Scenario;

/// Which end of the outcome range an estimate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    FLower,
    FUpper,
}

impl Target {
    pub fn sense(self) -> Sense {
        match self {
            Target::FLower => Sense::Min,
            Target::FUpper => Sense::Max,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Target::FLower => "f_lower",
            Target::FUpper => "f_upper",
        }
    }
}

impl From<Sense> for Target {
    fn from(s: Sense) -> Self {
        match s {
            Sense::Min => Target::FLower,
            Sense::Max => Target::FUpper,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How an estimate relates to the true value of its target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Exact,
    UpperBound,
    LowerBound,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Exact => "exact",
            Direction::UpperBound => "upper_bound",
            Direction::LowerBound => "lower_bound",
        }
    }

    /// Direction of an inner estimate (a value actually attained on the optimal set).
    pub fn inner(target: Target) -> Self {
        match target {
            Target::FLower => Direction::UpperBound,
            Target::FUpper => Direction::LowerBound,
        }
    }

    /// Direction of an outer estimate (a relaxation bound).
    pub fn outer(target: Target) -> Self {
        match target {
            Target::FLower => Direction::LowerBound,
            Target::FUpper => Direction::UpperBound,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "exact")]
    BStableExact,
    #[serde(rename = "superset")]
    Superset,
    #[serde(rename = "local-search")]
    LocalSearch,
    #[serde(rename = "oracle")]
    VertexOracle,
    #[serde(rename = "monte-carlo")]
    MonteCarlo,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::BStableExact,
        Method::Superset,
        Method::LocalSearch,
        Method::VertexOracle,
        Method::MonteCarlo,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::BStableExact => "exact",
            Method::Superset => "superset",
            Method::LocalSearch => "local-search",
            Method::VertexOracle => "oracle",
            Method::MonteCarlo => "monte-carlo",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.as_str() == s)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A bound on (or the exact value of) one end of the outcome range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeRangeEstimate {
    pub target: Target,
    pub direction: Direction,
    pub value: f64,
    pub method: Method,
    pub witness: Option<Scenario>,
    pub elapsed: Duration,
}

impl OutcomeRangeEstimate {
    pub fn new(target: Target, direction: Direction, value: f64, method: Method) -> Self {
        Self {
            target,
            direction,
            value,
            method,
            witness: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn with_witness(mut self, witness: Option<Scenario>) -> Self {
        self.witness = witness;
        self
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed = elapsed;
        self
    }
}
