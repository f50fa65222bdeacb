//! Polynomially solvable cases: unique B-stability, the optimal value range and
//! the single-basis cone condition.

use std::fmt;
use std::time::Instant;

use crate::dense::Matrix;
use crate::error::{OrpError, Result};
use crate::estimate::{Direction, Method, OutcomeRangeEstimate, Target};
use crate::ilp::{solve_lp, Basis, BasisFactor, IlpInstance, Sense};
use crate::interval::Scenario;
use crate::simplex::{LinearProgram, LpSolver, LpStatus};

/// One end of the optimal value range. Infeasibility follows `min {} = +inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ValueBound {
    Finite(f64),
    Unbounded,
    Infeasible,
}

impl ValueBound {
    pub fn finite(self) -> Option<f64> {
        match self {
            ValueBound::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Extended-real reading: unbounded is `-inf`, infeasible is `+inf`.
    pub fn as_extended(self) -> f64 {
        match self {
            ValueBound::Finite(v) => v,
            ValueBound::Unbounded => f64::NEG_INFINITY,
            ValueBound::Infeasible => f64::INFINITY,
        }
    }
}

impl fmt::Display for ValueBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueBound::Finite(v) => write!(f, "{v}"),
            ValueBound::Unbounded => f.write_str("unbounded"),
            ValueBound::Infeasible => f.write_str("infeasible"),
        }
    }
}

/// Range `[z_lower, z_upper]` of the optimal objective value over all scenarios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueRange {
    pub z_lower: ValueBound,
    pub z_upper: ValueBound,
}

fn value_at(solver: &dyn LpSolver, inst: &IlpInstance, rhs: &[f64]) -> Result<ValueBound> {
    let s = solve_lp(solver, inst, &Scenario::new(rhs.to_vec()), inst.c())?;
    Ok(match s.status {
        LpStatus::Optimal => ValueBound::Finite(s.objective.expect("optimal value")),
        LpStatus::Unbounded => ValueBound::Unbounded,
        LpStatus::Infeasible => ValueBound::Infeasible,
    })
}

/// Best optimal value is attained with the loosest right-hand side, the worst with the tightest.
pub fn optimal_value_range(solver: &dyn LpSolver, inst: &IlpInstance) -> Result<ValueRange> {
    Ok(ValueRange {
        z_lower: value_at(solver, inst, inst.b().upper())?,
        z_upper: value_at(solver, inst, inst.b().lower())?,
    })
}

/// Certifies unique B-stability at the box center.
///
/// Solves LP(b_c) and accepts its optimal basis when every nonbasic reduced
/// cost is strictly positive and `B^{-1} b_c - |B^{-1}| b_radius >= 0`.
/// Ties (reduced costs within the strict tolerance of zero) are reported as
/// not stable.
pub fn check_unique_bstable(solver: &dyn LpSolver, inst: &IlpInstance) -> Result<Option<Basis>> {
    let tol = solver.tolerances();
    let (center, radius) = inst.b().midpoint_radius();
    let sol = solve_lp(solver, inst, &Scenario::new(center.clone()), inst.c())?;
    if sol.status != LpStatus::Optimal {
        return Ok(None);
    }
    let sf = inst.standard_form();
    let basis = match Basis::new(sol.basis.expect("optimal basis"), &sf) {
        Ok(b) => b,
        Err(OrpError::SingularBasis) => return Ok(None),
        Err(e) => return Err(e),
    };
    let factor = BasisFactor::new(&sf, &basis)?;
    if factor
        .reduced_costs(&sf.c_tilde)
        .iter()
        .any(|&d| d <= tol.strict)
    {
        return Ok(None);
    }
    let mid = factor.basic_values(&center);
    let spread = factor.binv().abs().mul_vec(&radius);
    if mid
        .iter()
        .zip(&spread)
        .any(|(c, s)| c - s < -tol.feasibility)
    {
        return Ok(None);
    }
    Ok(Some(basis))
}

/// Exact outcome range for a unique B-stable instance: optimizes `r_B . x_B` over
/// `b_lower <= A_B x_B <= b_upper, x_B >= 0` (all nonbasic variables at zero).
pub fn solve_orp_bstable(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    r: &[f64],
    basis: &Basis,
) -> Result<(OutcomeRangeEstimate, OutcomeRangeEstimate)> {
    inst.check_outcome(r)?;
    let sf = inst.standard_form();
    let m = inst.m();
    let cols = basis.indices();
    let mut a = Matrix::zeros(2 * m, m);
    for i in 0..m {
        for (k, &j) in cols.iter().enumerate() {
            a[(i, k)] = sf.a_tilde[(i, j)];
            a[(m + i, k)] = -sf.a_tilde[(i, j)];
        }
    }
    let rhs: Vec<f64> = inst
        .b()
        .upper()
        .iter()
        .copied()
        .chain(inst.b().lower().iter().map(|v| -v))
        .collect();
    let r_tilde = sf.extend(r);
    let r_basic: Vec<f64> = cols.iter().map(|&j| r_tilde[j]).collect();

    let solve = |target: Target| -> Result<OutcomeRangeEstimate> {
        let start = Instant::now();
        let sign = if target.sense() == Sense::Min {
            1.0
        } else {
            -1.0
        };
        let cost = r_basic.iter().map(|v| sign * v).collect();
        let s = solver.solve(&LinearProgram::new(a.clone(), rhs.clone(), cost)?)?;
        let (value, witness) = match s.status {
            LpStatus::Infeasible => return Err(OrpError::InfeasibleOmegab),
            LpStatus::Unbounded => (-target.sense().worst(), None),
            LpStatus::Optimal => {
                let xb = s.x.expect("optimal point");
                let value: f64 = xb.iter().zip(&r_basic).map(|(x, r)| x * r).sum();
                let b: Vec<f64> = a.mul_vec(&xb)[..m]
                    .iter()
                    .zip(inst.b().lower().iter().zip(inst.b().upper()))
                    .map(|(&v, (&l, &u))| v.clamp(l, u))
                    .collect();
                (value, Some(Scenario::new(b)))
            }
        };
        Ok(
            OutcomeRangeEstimate::new(target, Direction::Exact, value, Method::BStableExact)
                .with_witness(witness)
                .with_elapsed(start.elapsed()),
        )
    };
    Ok((solve(Target::FLower)?, solve(Target::FUpper)?))
}

/// Checks `r_N - r_B B^{-1} A_N >= 0`, i.e. that `r` lies in the optimality cone of `basis`.
pub fn cone_sufficient_check(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    r: &[f64],
    basis: &Basis,
) -> Result<bool> {
    inst.check_outcome(r)?;
    let sf = inst.standard_form();
    let factor = BasisFactor::new(&sf, basis)?;
    let tol = solver.tolerances().optimality;
    Ok(factor
        .reduced_costs(&sf.extend(r))
        .iter()
        .all(|&d| d >= -tol))
}

/// When `r` is in the cone of the certified basis, the range follows from two LPs
/// over the extreme right-hand sides.
pub fn cone_outcome_range(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    r: &[f64],
) -> Result<(ValueBound, ValueBound)> {
    let at = |rhs: &[f64]| -> Result<ValueBound> {
        let s = solve_lp(solver, inst, &Scenario::new(rhs.to_vec()), r)?;
        Ok(match s.status {
            LpStatus::Optimal => ValueBound::Finite(s.objective.expect("optimal value")),
            LpStatus::Unbounded => ValueBound::Unbounded,
            LpStatus::Infeasible => ValueBound::Infeasible,
        })
    };
    Ok((at(inst.b().upper())?, at(inst.b().lower())?))
}
