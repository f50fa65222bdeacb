//! Outer bounds from the strong-duality description of the optimal set with the
//! bilinear term `b.y` replaced by its McCormick envelope.
//!
//! The optimal set over all scenarios is `{x : Ax <= b, x >= 0, A^T y <= c, y <= 0,
//! c.x = b.y, b in [b_lower, b_upper]}`. Relaxing `c.x = b.y` with the two over- and
//! two under-estimators of `b.y` over `[b_lower, b_upper] x [y_lower, y_upper]` gives a
//! polyhedron containing every optimal solution; optimizing `r` over it bounds the
//! outcome range from outside.

use std::time::Instant;

use crate::dense::{dot, Matrix};
use crate::error::{OrpError, Result};
use crate::estimate::{Direction, Method, OutcomeRangeEstimate, Target};
use crate::exact::{optimal_value_range, ValueBound};
use crate::ilp::{IlpInstance, Sense};
use crate::interval::{IntervalVector, Scenario};
use crate::simplex::{LinearProgram, LpSolver, LpStatus};

/// Enclosure of every optimal dual vector of LP(b) over all scenarios. Lower
/// bounds may be `-inf`; upper bounds are finite and nonpositive.
#[derive(Debug, Clone, PartialEq)]
pub struct DualBox {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl DualBox {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(OrpError::DimensionMismatch(format!(
                "dual bounds have lengths {} and {}",
                lower.len(),
                upper.len()
            )));
        }
        for (index, (&l, &u)) in lower.iter().zip(&upper).enumerate() {
            if l.is_nan() || l == f64::INFINITY || !u.is_finite() {
                return Err(OrpError::NonFinite("dual bounds"));
            }
            if l > u || u > 0.0 {
                return Err(OrpError::InvertedInterval {
                    index,
                    lower: l,
                    upper: u,
                });
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn from_interval(y: &IntervalVector) -> Result<Self> {
        Self::new(y.lower().to_vec(), y.upper().to_vec())
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

    pub fn is_bounded(&self) -> bool {
        self.lower.iter().all(|v| v.is_finite())
    }

    pub fn contains(&self, y: &[f64], tol: f64) -> bool {
        y.len() == self.len()
            && y.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&l, &u))| v >= l - tol && v <= u + tol)
    }
}

/// Dual enclosure from `2m` LPs over
/// `{A^T y <= c, y <= 0, b_lower.y >= z_lower, b_upper.y <= z_upper}`; coordinates
/// whose minimum is unbounded get a lower bound of `-inf`.
///
/// Any optimal dual `y*` of a scenario `b` has `b.y* = z(b)`; since `y* <= 0`,
/// `b_upper.y* <= b.y* <= b_lower.y*`, so both value-range cuts are valid. The cut
/// on `z_upper` is dropped when the tightest scenario is infeasible.
pub fn dual_enclosure(solver: &dyn LpSolver, inst: &IlpInstance) -> Result<DualBox> {
    let vr = optimal_value_range(solver, inst)?;
    let z_lower = vr.z_lower.finite().ok_or(OrpError::ValueRangeNotFinite)?;
    let z_upper = match vr.z_upper {
        ValueBound::Finite(v) => Some(v),
        _ => None,
    };
    let (m, n) = (inst.m(), inst.n());
    // Variables w = -y >= 0.
    let rows = n + 1 + usize::from(z_upper.is_some());
    let mut a = Matrix::zeros(rows, m);
    let mut rhs = Vec::with_capacity(rows);
    for j in 0..n {
        for i in 0..m {
            a[(j, i)] = -inst.a()[(i, j)];
        }
        rhs.push(inst.c()[j]);
    }
    // b_lower.y >= z_lower  <=>  b_lower.w <= -z_lower
    a.row_mut(n).copy_from_slice(inst.b().lower());
    rhs.push(-z_lower);
    if let Some(zu) = z_upper {
        // b_upper.y <= z_upper  <=>  -b_upper.w <= z_upper
        for (dst, &u) in a.row_mut(n + 1).iter_mut().zip(inst.b().upper()) {
            *dst = -u;
        }
        rhs.push(zu);
    }

    let mut lower = vec![0.0; m];
    let mut upper = vec![0.0; m];
    for i in 0..m {
        for (sign, slot) in [(1.0, &mut upper), (-1.0, &mut lower)] {
            // sign = +1: min w_i gives max y_i; sign = -1: max w_i gives min y_i.
            let mut cost = vec![0.0; m];
            cost[i] = sign;
            let s = solver.solve(&LinearProgram::new(a.clone(), rhs.clone(), cost)?)?;
            slot[i] = match s.status {
                LpStatus::Infeasible => return Err(OrpError::DualInfeasible),
                // min w_i >= 0 is always bounded, so only the lower end can escape.
                LpStatus::Unbounded => f64::NEG_INFINITY,
                LpStatus::Optimal => -s.x.expect("optimal point")[i],
            };
        }
    }
    let upper: Vec<f64> = upper.iter().map(|&u| u.min(0.0)).collect();
    let lower: Vec<f64> = lower.iter().zip(&upper).map(|(&l, &u)| l.min(u)).collect();
    DualBox::new(lower, upper)
}

/// Finite dual box; fails with `DualBoxUnbounded(i)` for the first coordinate
/// without a finite lower bound.
pub fn dual_box(solver: &dyn LpSolver, inst: &IlpInstance) -> Result<DualBox> {
    let dual = dual_enclosure(solver, inst)?;
    match dual.lower.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(OrpError::DualBoxUnbounded(i)),
        None => Ok(dual),
    }
}

/// One linear row `cx.x + cy.y + cb.b <= rhs` in the original `(x, y, b)` space.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeRow {
    pub cx: Vec<f64>,
    pub cy: Vec<f64>,
    pub cb: Vec<f64>,
    pub rhs: f64,
}

impl EnvelopeRow {
    fn slack(&self, x: &[f64], y: &[f64], b: &[f64]) -> f64 {
        self.rhs - dot(&self.cx, x) - dot(&self.cy, y) - dot(&self.cb, b)
    }
}

/// Linear relaxation of the optimal set in variables `x` (n), `y` (m), `b` (m).
#[derive(Debug, Clone, PartialEq)]
pub struct RelaxationModel {
    a: Matrix,
    c: Vec<f64>,
    b: IntervalVector,
    dual: DualBox,
    /// McCormick rows: overestimators first, then underestimators. Rows that
    /// need an infinite dual bound are omitted.
    pub envelope: Vec<EnvelopeRow>,
    pub r: Vec<f64>,
}

impl RelaxationModel {
    pub fn num_vars(&self) -> usize {
        self.c.len() + 2 * self.b.len()
    }

    pub fn dual_box(&self) -> &DualBox {
        &self.dual
    }

    /// Checks every constraint of the model at `(x, y, b)` with absolute tolerance `tol`.
    pub fn contains(&self, x: &[f64], y: &[f64], b: &[f64], tol: f64) -> bool {
        let primal = x.iter().all(|&v| v >= -tol)
            && self
                .a
                .mul_vec(x)
                .iter()
                .zip(b)
                .all(|(ax, bi)| *ax <= bi + tol);
        let dual = y.iter().all(|&v| v <= tol)
            && self
                .a
                .tr_mul_vec(y)
                .iter()
                .zip(&self.c)
                .all(|(aty, cj)| *aty <= cj + tol);
        let rhs = b.len() == self.b.len() && self.b.contains(&Scenario::new(b.to_vec()), tol);
        primal
            && dual
            && rhs
            && self
                .envelope
                .iter()
                .all(|row| row.slack(x, y, b) >= -tol * (1.0 + row.rhs.abs()))
    }

    /// The model as `min cost.v  s.t.  M v <= rhs, v >= 0` over `v = (x, w, t)`
    /// with `y = -w` and `b = b_lower + t`.
    pub fn to_linear_program(&self, sense: Sense) -> Result<LinearProgram> {
        let (m, n) = (self.b.len(), self.c.len());
        let lo = self.b.lower();
        let width: Vec<f64> = self.b.upper().iter().zip(lo).map(|(u, l)| u - l).collect();
        let vars = n + 2 * m;
        let rows = m + n + m + self.envelope.len();
        let mut mat = Matrix::zeros(rows, vars);
        let mut rhs = Vec::with_capacity(rows);
        // A x - t <= b_lower
        for i in 0..m {
            mat.row_mut(i)[..n].copy_from_slice(self.a.row(i));
            mat[(i, n + m + i)] = -1.0;
            rhs.push(lo[i]);
        }
        // -A^T w <= c
        for j in 0..n {
            for i in 0..m {
                mat[(m + j, n + i)] = -self.a[(i, j)];
            }
            rhs.push(self.c[j]);
        }
        // t <= b_upper - b_lower
        for i in 0..m {
            mat[(m + n + i, n + m + i)] = 1.0;
            rhs.push(width[i]);
        }
        for (k, row) in self.envelope.iter().enumerate() {
            let r = m + n + m + k;
            mat.row_mut(r)[..n].copy_from_slice(&row.cx);
            for i in 0..m {
                mat[(r, n + i)] = -row.cy[i];
                mat[(r, n + m + i)] = row.cb[i];
            }
            rhs.push(row.rhs - dot(&row.cb, lo));
        }
        let sign = if sense == Sense::Min { 1.0 } else { -1.0 };
        let mut cost = vec![0.0; vars];
        for (dst, &rj) in cost.iter_mut().zip(&self.r) {
            *dst = sign * rj;
        }
        LinearProgram::new(mat, rhs, cost)
    }
}

/// Assembles the relaxation: base rows plus the McCormick rows
/// `c.x <= y_lo.b + b_hi.y - b_hi.y_lo`, `c.x <= y_hi.b + b_lo.y - b_lo.y_hi`,
/// `c.x >= y_hi.b + b_hi.y - b_hi.y_hi`, `c.x >= y_lo.b + b_lo.y - b_lo.y_lo`.
/// The two rows using `y_lo` are left out when it has infinite entries.
pub fn build_relaxation(inst: &IlpInstance, r: &[f64], dual: &DualBox) -> Result<RelaxationModel> {
    inst.check_outcome(r)?;
    if dual.len() != inst.m() {
        return Err(OrpError::DimensionMismatch(format!(
            "dual box has {} components, expected {}",
            dual.len(),
            inst.m()
        )));
    }
    let c = inst.c().to_vec();
    let neg = |v: &[f64]| v.iter().map(|x| -x).collect::<Vec<_>>();
    let (b_lo, b_hi) = (inst.b().lower(), inst.b().upper());
    let (y_lo, y_hi) = (dual.lower(), dual.upper());
    let bounded = dual.is_bounded();

    let over = |yb: &[f64], by: &[f64]| EnvelopeRow {
        cx: c.clone(),
        cy: neg(by),
        cb: neg(yb),
        rhs: -dot(by, yb),
    };
    let under = |yb: &[f64], by: &[f64]| EnvelopeRow {
        cx: neg(&c),
        cy: by.to_vec(),
        cb: yb.to_vec(),
        rhs: dot(by, yb),
    };
    Ok(RelaxationModel {
        a: inst.a().clone(),
        c: c.clone(),
        b: inst.b().clone(),
        dual: dual.clone(),
        envelope: if bounded {
            vec![
                over(y_lo, b_hi),
                over(y_hi, b_lo),
                under(y_hi, b_hi),
                under(y_lo, b_lo),
            ]
        } else {
            vec![over(y_hi, b_lo), under(y_hi, b_hi)]
        },
        r: r.to_vec(),
    })
}

fn bound(
    solver: &dyn LpSolver,
    model: &RelaxationModel,
    target: Target,
) -> Result<OutcomeRangeEstimate> {
    let start = Instant::now();
    let sense = target.sense();
    let s = solver.solve(&model.to_linear_program(sense)?)?;
    let n = model.c.len();
    let m = model.b.len();
    let (value, witness) = match s.status {
        LpStatus::Infeasible => return Err(OrpError::RelaxationInfeasible),
        LpStatus::Unbounded => (-sense.worst(), None),
        LpStatus::Optimal => {
            let v = s.x.expect("optimal point");
            let value = dot(&model.r, &v[..n]);
            let b = v[n + m..]
                .iter()
                .zip(model.b.lower().iter().zip(model.b.upper()))
                .map(|(t, (&l, &u))| (l + t).clamp(l, u))
                .collect();
            (value, Some(Scenario::new(b)))
        }
    };
    Ok(
        OutcomeRangeEstimate::new(target, Direction::outer(target), value, Method::Superset)
            .with_witness(witness)
            .with_elapsed(start.elapsed()),
    )
}

/// Bounds from a prebuilt model: `(f_lower^L, f_upper^U)`.
pub fn solve_relaxation(
    solver: &dyn LpSolver,
    model: &RelaxationModel,
) -> Result<(OutcomeRangeEstimate, OutcomeRangeEstimate)> {
    Ok((
        bound(solver, model, Target::FLower)?,
        bound(solver, model, Target::FUpper)?,
    ))
}

/// Dual box, relaxation and both bounds in one call.
pub fn solve_superset(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    r: &[f64],
) -> Result<(OutcomeRangeEstimate, OutcomeRangeEstimate)> {
    let start = Instant::now();
    let dual = dual_enclosure(solver, inst)?;
    let model = build_relaxation(inst, r, &dual)?;
    let setup = start.elapsed();
    let (mut lo, mut hi) = solve_relaxation(solver, &model)?;
    lo.elapsed += setup;
    hi.elapsed += setup;
    Ok((lo, hi))
}
