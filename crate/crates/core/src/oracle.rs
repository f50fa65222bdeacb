//! Reference estimators: exhaustive vertex enumeration with optimal-face ranging,
//! and a Monte Carlo baseline.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{OrpError, Result};
use crate::estimate::{Direction, Method, OutcomeRangeEstimate, Target};
use crate::ilp::{face_range, IlpInstance};
use crate::interval::{Scenario, DEFAULT_ENUMERATION_CAP};
use crate::simplex::LpSolver;

/// Default number of samples drawn on each facet when a vertex LP is degenerate.
pub const DEFAULT_FACE_GRID: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub face_grid: usize,
    pub enumeration_cap: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            face_grid: DEFAULT_FACE_GRID,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub lower: OutcomeRangeEstimate,
    pub upper: OutcomeRangeEstimate,
    /// Every vertex LP was feasible and non-degenerate (and the zero scenario was
    /// included whenever it lies in the box).
    pub exact: bool,
    pub degenerate_vertices: usize,
    pub infeasible_vertices: usize,
    pub scenarios_evaluated: usize,
}

/// Running extremes over evaluated scenarios. Ties keep the scenario with the
/// smaller sequence number, so the reduction order never matters.
#[derive(Debug, Clone, Default)]
struct Extremes {
    lo: Option<(f64, usize, Scenario)>,
    hi: Option<(f64, usize, Scenario)>,
    degenerate: usize,
    infeasible: usize,
    evaluated: usize,
}

impl Extremes {
    fn merge(mut self, other: Extremes) -> Extremes {
        self.lo = pick(self.lo, other.lo, |a, b| a < b);
        self.hi = pick(self.hi, other.hi, |a, b| a > b);
        self.degenerate += other.degenerate;
        self.infeasible += other.infeasible;
        self.evaluated += other.evaluated;
        self
    }
}

fn pick(
    a: Option<(f64, usize, Scenario)>,
    b: Option<(f64, usize, Scenario)>,
    better: impl Fn(f64, f64) -> bool,
) -> Option<(f64, usize, Scenario)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => {
            if better(b.0, a.0) || (b.0 == a.0 && b.1 < a.1) {
                Some(b)
            } else {
                Some(a)
            }
        }
    }
}

fn evaluate(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    r: &[f64],
    seq: usize,
    b: Scenario,
) -> Result<Extremes> {
    match face_range(solver, inst, &b, r) {
        Ok((lo, hi)) => Ok(Extremes {
            degenerate: usize::from(lo.lp.degenerate),
            lo: Some((lo.value, seq, b.clone())),
            hi: Some((hi.value, seq, b)),
            infeasible: 0,
            evaluated: 1,
        }),
        Err(OrpError::ScenarioInfeasible | OrpError::ScenarioUnbounded) => Ok(Extremes {
            infeasible: 1,
            evaluated: 1,
            ..Extremes::default()
        }),
        Err(e) => Err(e),
    }
}

fn evaluate_all(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    r: &[f64],
    first_seq: usize,
    scenarios: Vec<Scenario>,
) -> Result<Extremes> {
    scenarios
        .into_par_iter()
        .enumerate()
        .map(|(k, b)| evaluate(solver, inst, r, first_seq + k, b))
        .try_reduce(Extremes::default, |a, b| Ok(a.merge(b)))
}

/// Vertex enumeration with the default configuration; returns `(f_lower, f_upper, exact)`.
pub fn vertex_oracle(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    r: &[f64],
    face_grid: usize,
) -> Result<(OutcomeRangeEstimate, OutcomeRangeEstimate, bool)> {
    let cfg = OracleConfig {
        face_grid,
        ..OracleConfig::default()
    };
    let res = vertex_oracle_with(solver, inst, r, &cfg)?;
    Ok((res.lower, res.upper, res.exact))
}

/// Ranges the outcome over the optimal face of every box vertex (plus the zero
/// scenario when it lies in the box). When some vertex LP is degenerate the
/// optimum may sit off the vertices, so `face_grid` extra scenarios are sampled on
/// each facet and the result is flagged inexact.
pub fn vertex_oracle_with(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    r: &[f64],
    cfg: &OracleConfig,
) -> Result<OracleResult> {
    inst.check_outcome(r)?;
    let start = Instant::now();
    let iv = inst.b();
    let m = iv.len();
    let count = iv.vertex_scenarios(cfg.enumeration_cap)?.len();

    let vertices = (0..count)
        .into_par_iter()
        .map(|code| evaluate(solver, inst, r, code, iv.vertex(code)))
        .try_reduce(Extremes::default, |a, b| Ok(a.merge(b)))?;
    let (degenerate_vertices, infeasible_vertices) = (vertices.degenerate, vertices.infeasible);
    let mut acc = vertices;
    let mut seq = count;

    if iv.contains_zero() {
        acc = acc.merge(evaluate(solver, inst, r, seq, Scenario::new(vec![0.0; m]))?);
        seq += 1;
    }

    if degenerate_vertices > 0 && cfg.face_grid > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut samples = Vec::with_capacity(2 * m * cfg.face_grid);
        for i in 0..m {
            for fixed in [iv.lower()[i], iv.upper()[i]] {
                for _ in 0..cfg.face_grid {
                    let mut v = iv.sample_with(&mut rng).into_inner();
                    v[i] = fixed;
                    samples.push(Scenario::new(v));
                }
            }
        }
        acc = acc.merge(evaluate_all(solver, inst, r, seq, samples)?);
    }

    let exact = degenerate_vertices == 0 && infeasible_vertices == 0;
    let (Some(lo), Some(hi)) = (acc.lo, acc.hi) else {
        return Err(OrpError::AllSamplesInfeasible(acc.evaluated));
    };
    let elapsed = start.elapsed();
    let make = |target: Target, (value, _, witness): (f64, usize, Scenario)| {
        let direction = if exact {
            Direction::Exact
        } else {
            Direction::inner(target)
        };
        OutcomeRangeEstimate::new(target, direction, value, Method::VertexOracle)
            .with_witness(Some(witness))
            .with_elapsed(elapsed)
    };
    Ok(OracleResult {
        lower: make(Target::FLower, lo),
        upper: make(Target::FUpper, hi),
        exact,
        degenerate_vertices,
        infeasible_vertices,
        scenarios_evaluated: acc.evaluated,
    })
}

/// Empirical range over `n_samples` uniform scenarios. Samples come from one
/// seeded stream, so a larger `n_samples` extends the same sequence.
pub fn monte_carlo(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    r: &[f64],
    n_samples: usize,
    seed: u64,
) -> Result<(OutcomeRangeEstimate, OutcomeRangeEstimate)> {
    inst.check_outcome(r)?;
    if n_samples == 0 {
        return Err(OrpError::InvalidParams(
            "n_samples must be at least 1".into(),
        ));
    }
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<Scenario> = (0..n_samples)
        .map(|_| inst.b().sample_with(&mut rng))
        .collect();
    let acc = evaluate_all(solver, inst, r, 0, samples)?;
    let (Some(lo), Some(hi)) = (acc.lo, acc.hi) else {
        return Err(OrpError::AllSamplesInfeasible(n_samples));
    };
    let elapsed = start.elapsed();
    let make = |target: Target, (value, _, witness): (f64, usize, Scenario)| {
        OutcomeRangeEstimate::new(target, Direction::inner(target), value, Method::MonteCarlo)
            .with_witness(Some(witness))
            .with_elapsed(elapsed)
    };
    Ok((make(Target::FLower, lo), make(Target::FUpper, hi)))
}
