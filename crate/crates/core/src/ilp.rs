//! Interval-RHS linear programs `min c.x  s.t.  A x <= b, x >= 0, b in [b_lower, b_upper]`
//! and the per-scenario operations every method builds on.

use serde::{Deserialize, Serialize};

use crate::dense::{dot, Matrix};
use crate::error::{OrpError, Result};
use crate::interval::{IntervalVector, Scenario};
use crate::simplex::{LinearProgram, LpSolution, LpSolver, LpStatus};

/// Optimization direction for an outcome function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Min,
    Max,
}

impl Sense {
    /// True when `a` is strictly better than `b` in this sense.
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Min => a < b,
            Sense::Max => a > b,
        }
    }

    pub fn worst(self) -> f64 {
        match self {
            Sense::Min => f64::INFINITY,
            Sense::Max => f64::NEG_INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IlpInstance {
    a: Matrix,
    c: Vec<f64>,
    b: IntervalVector,
}

impl IlpInstance {
    pub fn new(a: Matrix, c: Vec<f64>, b: IntervalVector) -> Result<Self> {
        if a.nrows() != b.len() {
            return Err(OrpError::DimensionMismatch(format!(
                "A has {} rows but b has {} components",
                a.nrows(),
                b.len()
            )));
        }
        if a.ncols() != c.len() {
            return Err(OrpError::DimensionMismatch(format!(
                "A has {} columns but c has {} entries",
                a.ncols(),
                c.len()
            )));
        }
        if !a.is_finite() {
            return Err(OrpError::NonFinite("constraint matrix"));
        }
        if !c.iter().all(|v| v.is_finite()) {
            return Err(OrpError::NonFinite("cost vector"));
        }
        Ok(Self { a, c, b })
    }

    pub fn m(&self) -> usize {
        self.a.nrows()
    }

    pub fn n(&self) -> usize {
        self.a.ncols()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn b(&self) -> &IntervalVector {
        &self.b
    }

    /// Same `A` and `c` with a different interval right-hand side.
    pub fn with_rhs(&self, b: IntervalVector) -> Result<Self> {
        Self::new(self.a.clone(), self.c.clone(), b)
    }

    pub fn check_outcome(&self, r: &[f64]) -> Result<()> {
        if r.len() != self.n() {
            return Err(OrpError::DimensionMismatch(format!(
                "outcome vector has {} entries, expected {}",
                r.len(),
                self.n()
            )));
        }
        if !r.iter().all(|v| v.is_finite()) {
            return Err(OrpError::NonFinite("outcome vector"));
        }
        Ok(())
    }

    pub fn lp_at(&self, rhs: &[f64], objective: &[f64]) -> Result<LinearProgram> {
        if rhs.len() != self.m() {
            return Err(OrpError::DimensionMismatch(format!(
                "scenario has {} components, expected {}",
                rhs.len(),
                self.m()
            )));
        }
        LinearProgram::new(self.a.clone(), rhs.to_vec(), objective.to_vec())
    }

    pub fn standard_form(&self) -> StandardForm {
        StandardForm::new(&self.a, &self.c)
    }

    /// `A x <= b + tol` and `x >= -tol`.
    pub fn is_feasible(&self, x: &[f64], b: &[f64], tol: f64) -> bool {
        x.iter().all(|&v| v >= -tol)
            && self
                .a
                .mul_vec(x)
                .iter()
                .zip(b)
                .all(|(ax, bi)| *ax <= bi + tol)
    }
}

/// `[A | I]` with costs `[c | 0]`; slack for row `i` is column `n + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardForm {
    pub a_tilde: Matrix,
    pub c_tilde: Vec<f64>,
    pub slack_offset: usize,
}

impl StandardForm {
    pub fn new(a: &Matrix, c: &[f64]) -> Self {
        let (m, n) = (a.nrows(), a.ncols());
        let mut a_tilde = Matrix::zeros(m, n + m);
        for i in 0..m {
            a_tilde.row_mut(i)[..n].copy_from_slice(a.row(i));
            a_tilde[(i, n + i)] = 1.0;
        }
        let mut c_tilde = c.to_vec();
        c_tilde.resize(n + m, 0.0);
        Self {
            a_tilde,
            c_tilde,
            slack_offset: n,
        }
    }

    pub fn m(&self) -> usize {
        self.a_tilde.nrows()
    }

    pub fn width(&self) -> usize {
        self.a_tilde.ncols()
    }

    /// `[r | 0]`.
    pub fn extend(&self, r: &[f64]) -> Vec<f64> {
        let mut v = r.to_vec();
        v.resize(self.width(), 0.0);
        v
    }
}

/// Ordered set of basic standard-form columns with a nonsingular submatrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Basis(Vec<usize>);

impl Basis {
    /// Validates size, range, distinctness and nonsingularity.
    pub fn new(indices: Vec<usize>, sf: &StandardForm) -> Result<Self> {
        let m = sf.m();
        if indices.len() != m {
            return Err(OrpError::DimensionMismatch(format!(
                "basis has {} indices, expected {m}",
                indices.len()
            )));
        }
        let mut seen = vec![false; sf.width()];
        for &j in &indices {
            if j >= sf.width() || std::mem::replace(&mut seen[j], true) {
                return Err(OrpError::SingularBasis);
            }
        }
        let basis = Self(indices);
        BasisFactor::new(sf, &basis)?;
        Ok(basis)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.contains(&j)
    }
}

/// `B^{-1}` for a basis of a standard form, with the derived quantities used
/// by the optimality conditions.
#[derive(Debug, Clone)]
pub struct BasisFactor<'a> {
    sf: &'a StandardForm,
    basis: Basis,
    binv: Matrix,
    nonbasic: Vec<usize>,
}

impl<'a> BasisFactor<'a> {
    pub fn new(sf: &'a StandardForm, basis: &Basis) -> Result<Self> {
        let m = sf.m();
        let mut bmat = Matrix::zeros(m, m);
        for (p, &j) in basis.indices().iter().enumerate() {
            for i in 0..m {
                bmat[(i, p)] = sf.a_tilde[(i, j)];
            }
        }
        let binv = bmat.inverse().ok_or(OrpError::SingularBasis)?;
        let nonbasic = (0..sf.width()).filter(|j| !basis.contains(*j)).collect();
        Ok(Self {
            sf,
            basis: basis.clone(),
            binv,
            nonbasic,
        })
    }

    pub fn binv(&self) -> &Matrix {
        &self.binv
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn nonbasic(&self) -> &[usize] {
        &self.nonbasic
    }

    /// `B^{-1} b`.
    pub fn basic_values(&self, b: &[f64]) -> Vec<f64> {
        self.binv.mul_vec(b)
    }

    /// `cost_N - cost_B B^{-1} A_N`, aligned with [`Self::nonbasic`].
    pub fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let cb: Vec<f64> = self.basis.indices().iter().map(|&j| cost[j]).collect();
        let y = self.binv.tr_mul_vec(&cb);
        let ya = self.sf.a_tilde.tr_mul_vec(&y);
        self.nonbasic.iter().map(|&j| cost[j] - ya[j]).collect()
    }
}

/// Which of the two basis-optimality conditions holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisStatus {
    Optimal,
    PrimalInfeasible,
    DualInfeasible,
}

/// LP(b) with an arbitrary objective over the instance's constraints.
pub fn solve_lp(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    b: &Scenario,
    objective: &[f64],
) -> Result<LpSolution> {
    if objective.len() != inst.n() {
        return Err(OrpError::DimensionMismatch(format!(
            "objective has {} entries, expected {}",
            objective.len(),
            inst.n()
        )));
    }
    solver.solve(&inst.lp_at(b.values(), objective)?)
}

/// Tests primal (`B^{-1} b >= 0`) and dual (`c_N - c_B B^{-1} A_N >= 0`)
/// feasibility of `basis` for scenario `b`; primal failure is reported first.
pub fn check_basis_optimal(
    inst: &IlpInstance,
    b: &Scenario,
    basis: &Basis,
    tol: f64,
) -> Result<BasisStatus> {
    if b.len() != inst.m() {
        return Err(OrpError::DimensionMismatch(format!(
            "scenario has {} components, expected {}",
            b.len(),
            inst.m()
        )));
    }
    let sf = inst.standard_form();
    let f = BasisFactor::new(&sf, basis)?;
    if f.basic_values(b.values()).iter().any(|&v| v < -tol) {
        return Ok(BasisStatus::PrimalInfeasible);
    }
    if f.reduced_costs(&sf.c_tilde).iter().any(|&d| d < -tol) {
        return Ok(BasisStatus::DualInfeasible);
    }
    Ok(BasisStatus::Optimal)
}

/// Optimum of the outcome function over the optimal face of LP(b).
#[derive(Debug, Clone, PartialEq)]
pub struct FaceOptimum {
    pub value: f64,
    /// Optimal point of LP(b) attaining `value` (absent when the face is unbounded).
    pub x: Option<Vec<f64>>,
    /// Optimal value z(b) of LP(b).
    pub z: f64,
    /// The LP(b) solution the face was derived from.
    pub lp: LpSolution,
}

/// Minimizes or maximizes `r.x` over the whole optimal set of LP(b).
///
/// The optimal face is described exactly through complementary slackness with
/// the dual found by the solver: structural columns with a strictly positive
/// reduced cost are fixed at zero and rows with a strictly negative dual are
/// made tight.
pub fn face_optimum(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    b: &Scenario,
    r: &[f64],
    sense: Sense,
) -> Result<FaceOptimum> {
    inst.check_outcome(r)?;
    let base = solve_scenario(solver, inst, b)?;
    optimize_over_face(solver, inst, b, r, sense, base)
}

/// Both ends of the outcome range over the optimal set of LP(b), sharing one LP(b) solve.
pub fn face_range(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    b: &Scenario,
    r: &[f64],
) -> Result<(FaceOptimum, FaceOptimum)> {
    inst.check_outcome(r)?;
    let base = solve_scenario(solver, inst, b)?;
    let lo = optimize_over_face(solver, inst, b, r, Sense::Min, base.clone())?;
    let hi = optimize_over_face(solver, inst, b, r, Sense::Max, base)?;
    Ok((lo, hi))
}

fn solve_scenario(solver: &dyn LpSolver, inst: &IlpInstance, b: &Scenario) -> Result<LpSolution> {
    let base = solve_lp(solver, inst, b, inst.c())?;
    match base.status {
        LpStatus::Infeasible => Err(OrpError::ScenarioInfeasible),
        LpStatus::Unbounded => Err(OrpError::ScenarioUnbounded),
        LpStatus::Optimal => Ok(base),
    }
}

fn optimize_over_face(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    b: &Scenario,
    r: &[f64],
    sense: Sense,
    base: LpSolution,
) -> Result<FaceOptimum> {
    let tol = solver.tolerances();
    let (m, n) = (inst.m(), inst.n());
    let x_star = base.x.clone().expect("optimal solution has a point");
    let z = base.objective.expect("optimal solution has a value");

    let free: Vec<usize> = (0..n)
        .filter(|&j| base.reduced_costs[j] <= tol.optimality)
        .collect();
    let tight: Vec<usize> = (0..m)
        .filter(|&i| base.reduced_costs[n + i] > tol.optimality)
        .collect();

    let fallback = |base: LpSolution| FaceOptimum {
        value: dot(r, &x_star),
        x: Some(x_star.clone()),
        z,
        lp: base,
    };
    if free.is_empty() {
        return Ok(fallback(base));
    }

    let rows = m + tight.len();
    let mut a = Matrix::zeros(rows, free.len());
    let mut rhs = Vec::with_capacity(rows);
    for i in 0..m {
        for (k, &j) in free.iter().enumerate() {
            a[(i, k)] = inst.a()[(i, j)];
        }
        rhs.push(b.values()[i]);
    }
    for (t, &i) in tight.iter().enumerate() {
        for (k, &j) in free.iter().enumerate() {
            a[(m + t, k)] = -inst.a()[(i, j)];
        }
        rhs.push(-b.values()[i]);
    }
    let sign = match sense {
        Sense::Min => 1.0,
        Sense::Max => -1.0,
    };
    let cost: Vec<f64> = free.iter().map(|&j| sign * r[j]).collect();
    let face = solver.solve(&LinearProgram::new(a, rhs, cost)?)?;
    match face.status {
        LpStatus::Optimal => {
            let xf = face.x.expect("optimal solution has a point");
            let mut x = vec![0.0; n];
            for (k, &j) in free.iter().enumerate() {
                x[j] = xf[k];
            }
            let value = dot(r, &x);
            // The face solve can only improve on x*; keep x* if round-off says otherwise.
            let star = dot(r, &x_star);
            if sense.better(star, value) {
                return Ok(fallback(base));
            }
            Ok(FaceOptimum {
                value,
                x: Some(x),
                z,
                lp: base,
            })
        }
        LpStatus::Unbounded => Ok(FaceOptimum {
            value: -sense.worst(),
            x: None,
            z,
            lp: base,
        }),
        // x* itself satisfies the face system, so this is round-off.
        LpStatus::Infeasible => Ok(fallback(base)),
    }
}

/// Per-scenario outcome range endpoint: optimum of `r.x` over the optimal set of LP(b).
pub fn outcome_over_optimal_face(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    b: &Scenario,
    r: &[f64],
    sense: Sense,
) -> Result<f64> {
    face_optimum(solver, inst, b, r, sense).map(|f| f.value)
}
