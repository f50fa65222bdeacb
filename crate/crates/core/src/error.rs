use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrpError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("interval component {index} has lower bound {lower} above upper bound {upper}")]
    InvertedInterval {
        index: usize,
        lower: f64,
        upper: f64,
    },
    #[error("scenario component {index} = {value} lies outside [{lower}, {upper}]")]
    NotContained {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },
    #[error("{m} interval components exceed the vertex enumeration cap of {cap}")]
    TooManyVertices { m: usize, cap: usize },
    #[error("basis matrix is singular")]
    SingularBasis,
    #[error("simplex did not converge: {0}")]
    NumericalFailure(String),
    #[error("linear program for the scenario is infeasible")]
    ScenarioInfeasible,
    #[error("linear program for the scenario is unbounded")]
    ScenarioUnbounded,
    #[error("optimal set polyhedron is empty for the certified basis")]
    InfeasibleOmegab,
    #[error("optimal value range has no finite lower end")]
    ValueRangeNotFinite,
    #[error("dual enclosure is unbounded in component {0}")]
    DualBoxUnbounded(usize),
    #[error("dual polyhedron restricted by the value range is empty")]
    DualInfeasible,
    #[error("relaxation model is infeasible")]
    RelaxationInfeasible,
    #[error("perturbation set would be empty (floor(h*m) = 0)")]
    EmptyPerturbationSet,
    #[error("invalid search parameters: {0}")]
    InvalidParams(String),
    #[error("no feasible starting scenario after {0} draws")]
    InitialInfeasible(usize),
    #[error("all {0} sampled scenarios were infeasible")]
    AllSamplesInfeasible(usize),
    #[error("class-1 generator gave up after {0} rejected draws")]
    RejectionBudgetExhausted(usize),
    #[error("no basis is uniquely optimal for every scenario")]
    NotBStable,
    #[error("reference value is zero")]
    ZeroReference,
    #[error("instance file: {0}")]
    Parse(String),
}

pub type Result<T, E = OrpError> = std::result::Result<T, E>;
