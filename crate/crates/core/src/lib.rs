//! Outcome ranges of linear programs with interval right-hand sides.
//!
//! For `min c.x  s.t.  A x <= b, x >= 0` with `b` ranging over a box, the outcome
//! range is the set of values `r.x` takes over all optimal solutions of all
//! scenarios. The crate provides an exact method for uniquely B-stable instances,
//! an outer bound from a McCormick relaxation of the strong-duality system, a
//! local-search inner bound, vertex-enumeration and Monte Carlo oracles, and a
//! random instance generator with benchmark reporting.

pub mod catalog;
pub mod dense;
pub mod error;
pub mod estimate;
pub mod exact;
pub mod ilp;
pub mod interval;
pub mod io;
pub mod lab;
pub mod local_search;
pub mod oracle;
pub mod simplex;
pub mod superset;

pub use dense::Matrix;
pub use error::{OrpError, Result};
pub use estimate::{Direction, Method, OutcomeRangeEstimate, Target};
pub use exact::{
    check_unique_bstable, cone_outcome_range, cone_sufficient_check, optimal_value_range,
    solve_orp_bstable, ValueBound, ValueRange,
};
pub use ilp::{
    check_basis_optimal, face_optimum, face_range, outcome_over_optimal_face, solve_lp, Basis,
    BasisStatus, IlpInstance, Sense, StandardForm,
};
pub use interval::{classify_scenario, IntervalVector, Scenario, ScenarioClass};
pub use io::InstanceFile;
pub use lab::{
    gap, generate, run_benchmark, wag, BenchConfig, BenchRecord, GeneratorConfig, InstanceClass,
};
pub use local_search::{local_search, local_search_run, SearchParams};
pub use oracle::{monte_carlo, vertex_oracle, vertex_oracle_with, OracleConfig, OracleResult};
pub use simplex::{DenseSimplex, LinearProgram, LpSolution, LpSolver, LpStatus, Tolerances};
pub use superset::{
    build_relaxation, dual_box, dual_enclosure, solve_relaxation, solve_superset, DualBox,
    RelaxationModel,
};
