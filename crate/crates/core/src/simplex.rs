//! Dense two-phase revised simplex for `min c.x  s.t.  A x <= rhs, x >= 0`.
//!
//! The solver works on the standard form `[A | I] (x, s) = rhs` and reports the
//! final basis (indices into the `n + m` standard-form columns, slack `i` being
//! column `n + i`), reduced costs over every standard-form column and the row
//! duals `y = c_B B^{-1}`, which are non-positive at optimality.

use crate::dense::{dot, max_abs, Matrix};
use crate::error::{OrpError, Result};

/// Numerical tolerances shared by the solver and the methods built on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Primal feasibility, absolute.
    pub feasibility: f64,
    /// Reduced-cost sign test, absolute.
    pub optimality: f64,
    /// Reduced costs above this are treated as strictly positive (basis uniqueness).
    pub strict: f64,
    /// Smallest pivot element accepted in the ratio test.
    pub pivot: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            feasibility: 1e-9,
            optimality: 1e-9,
            strict: 1e-7,
            pivot: 1e-9,
        }
    }
}

/// `min cost.x  s.t.  a x <= rhs, x >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub a: Matrix,
    pub rhs: Vec<f64>,
    pub cost: Vec<f64>,
}

impl LinearProgram {
    pub fn new(a: Matrix, rhs: Vec<f64>, cost: Vec<f64>) -> Result<Self> {
        if a.nrows() != rhs.len() || a.ncols() != cost.len() {
            return Err(OrpError::DimensionMismatch(format!(
                "A is {}x{}, rhs has {}, cost has {}",
                a.nrows(),
                a.ncols(),
                rhs.len(),
                cost.len()
            )));
        }
        if !a.is_finite() || !rhs.iter().chain(&cost).all(|v| v.is_finite()) {
            return Err(OrpError::NonFinite("linear program data"));
        }
        Ok(Self { a, rhs, cost })
    }

    pub fn num_rows(&self) -> usize {
        self.a.nrows()
    }

    pub fn num_vars(&self) -> usize {
        self.a.ncols()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Structural part of the primal solution.
    pub x: Option<Vec<f64>>,
    pub objective: Option<f64>,
    /// Basic standard-form column for each row position.
    pub basis: Option<Vec<usize>>,
    /// Values of the basic variables, aligned with `basis`.
    pub basic_values: Vec<f64>,
    /// Reduced cost of every standard-form column (zero on basic columns).
    pub reduced_costs: Vec<f64>,
    pub duals: Vec<f64>,
    pub degenerate: bool,
    pub unique_basis: bool,
    pub iterations: usize,
}

impl LpSolution {
    fn without_point(status: LpStatus, iterations: usize) -> Self {
        Self {
            status,
            x: None,
            objective: None,
            basis: None,
            basic_values: Vec::new(),
            reduced_costs: Vec::new(),
            duals: Vec::new(),
            degenerate: false,
            unique_basis: false,
            iterations,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// Backend contract: any solver that returns a certified optimal basis, reduced
/// costs and duals with the conventions above can replace [`DenseSimplex`].
pub trait LpSolver: Send + Sync {
    fn solve(&self, lp: &LinearProgram) -> Result<LpSolution>;

    fn tolerances(&self) -> Tolerances {
        Tolerances::default()
    }
}

/// Bundled solver: Dantzig pricing, switching to Bland's rule after a run of
/// degenerate pivots.
#[derive(Debug, Clone, Copy)]
pub struct DenseSimplex {
    pub tol: Tolerances,
    /// Consecutive degenerate pivots tolerated before switching to Bland's rule.
    pub stall_threshold: usize,
    /// Pivots between refactorizations of the basis inverse.
    pub refactor_every: usize,
}

impl Default for DenseSimplex {
    fn default() -> Self {
        Self::new()
    }
}

impl DenseSimplex {
    pub const fn new() -> Self {
        Self {
            tol: Tolerances {
                feasibility: 1e-9,
                optimality: 1e-9,
                strict: 1e-7,
                pivot: 1e-9,
            },
            stall_threshold: 25,
            refactor_every: 64,
        }
    }
}

impl LpSolver for DenseSimplex {
    fn solve(&self, lp: &LinearProgram) -> Result<LpSolution> {
        Tableau::new(lp, self).solve()
    }

    fn tolerances(&self) -> Tolerances {
        self.tol
    }
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

struct Tableau<'a> {
    lp: &'a LinearProgram,
    cfg: &'a DenseSimplex,
    m: usize,
    n: usize,
    /// Row carrying each artificial column `n + m + k`.
    art_rows: Vec<usize>,
    basis: Vec<usize>,
    position: Vec<Option<usize>>,
    binv: Matrix,
    xb: Vec<f64>,
    iterations: usize,
}

impl<'a> Tableau<'a> {
    fn new(lp: &'a LinearProgram, cfg: &'a DenseSimplex) -> Self {
        let (m, n) = (lp.num_rows(), lp.num_vars());
        let art_rows: Vec<usize> = (0..m).filter(|&i| lp.rhs[i] < 0.0).collect();
        let total = n + m + art_rows.len();
        let mut basis = vec![0; m];
        let mut position = vec![None; total];
        let mut binv = Matrix::identity(m);
        for i in 0..m {
            basis[i] = n + i;
        }
        for (k, &i) in art_rows.iter().enumerate() {
            basis[i] = n + m + k;
            binv[(i, i)] = -1.0;
        }
        for (p, &j) in basis.iter().enumerate() {
            position[j] = Some(p);
        }
        let xb = lp.rhs.iter().map(|v| v.abs()).collect();
        Self {
            lp,
            cfg,
            m,
            n,
            art_rows,
            basis,
            position,
            binv,
            xb,
            iterations: 0,
        }
    }

    fn total_cols(&self) -> usize {
        self.n + self.m + self.art_rows.len()
    }

    fn is_artificial(&self, j: usize) -> bool {
        j >= self.n + self.m
    }

    /// Dense copy of standard-form column `j`.
    fn column(&self, j: usize) -> Vec<f64> {
        if j < self.n {
            self.lp.a.column(j)
        } else {
            let mut e = vec![0.0; self.m];
            if j < self.n + self.m {
                e[j - self.n] = 1.0;
            } else {
                e[self.art_rows[j - self.n - self.m]] = -1.0;
            }
            e
        }
    }

    /// `B^{-1} a_j`.
    fn ftran(&self, j: usize) -> Vec<f64> {
        if j < self.n {
            self.binv.mul_vec(&self.lp.a.column(j))
        } else if j < self.n + self.m {
            self.binv.column(j - self.n)
        } else {
            let mut c = self.binv.column(self.art_rows[j - self.n - self.m]);
            c.iter_mut().for_each(|v| *v = -*v);
            c
        }
    }

    /// `y . a_j` for every column, given `ya = y^T A`.
    fn priced(&self, y: &[f64], ya: &[f64], j: usize) -> f64 {
        if j < self.n {
            ya[j]
        } else if j < self.n + self.m {
            y[j - self.n]
        } else {
            -y[self.art_rows[j - self.n - self.m]]
        }
    }

    fn refactor(&mut self) -> Result<()> {
        let mut b = Matrix::zeros(self.m, self.m);
        for (p, &j) in self.basis.iter().enumerate() {
            for (i, v) in self.column(j).into_iter().enumerate() {
                b[(i, p)] = v;
            }
        }
        self.binv = b
            .inverse()
            .ok_or_else(|| OrpError::NumericalFailure("basis became singular".into()))?;
        self.xb = self.binv.mul_vec(&self.lp.rhs);
        Ok(())
    }

    fn duals(&self, cost: &[f64]) -> Vec<f64> {
        let cb: Vec<f64> = self.basis.iter().map(|&j| cost[j]).collect();
        self.binv.tr_mul_vec(&cb)
    }

    fn pivot(&mut self, row: usize, entering: usize, u: &[f64]) {
        let theta = self.xb[row].max(0.0) / u[row];
        for (i, x) in self.xb.iter_mut().enumerate() {
            if i != row {
                *x -= theta * u[i];
            }
        }
        self.xb[row] = theta;
        let piv = u[row];
        let m = self.m;
        for k in 0..m {
            self.binv[(row, k)] /= piv;
        }
        for i in 0..m {
            if i != row && u[i] != 0.0 {
                let f = u[i];
                for k in 0..m {
                    let v = self.binv[(row, k)];
                    self.binv[(i, k)] -= f * v;
                }
            }
        }
        let leaving = self.basis[row];
        self.position[leaving] = None;
        self.position[entering] = Some(row);
        self.basis[row] = entering;
    }

    fn run_phase(&mut self, cost: &[f64], allowed: &[bool]) -> Result<PhaseEnd> {
        let tol = self.cfg.tol;
        let cap = 50 * (self.m + self.n);
        let mut steps = 0usize;
        let mut since_refactor = 0usize;
        let mut stalled = 0usize;
        let mut bland = false;
        loop {
            let y = self.duals(cost);
            let ya = self.lp.a.tr_mul_vec(&y);
            let mut entering: Option<(usize, f64)> = None;
            for j in 0..self.total_cols() {
                if !allowed[j] || self.position[j].is_some() {
                    continue;
                }
                let d = cost[j] - self.priced(&y, &ya, j);
                if d < -tol.optimality {
                    let better = match entering {
                        None => true,
                        Some((_, best)) => !bland && d < best,
                    };
                    if better {
                        entering = Some((j, d));
                    }
                }
            }
            let Some((q, _)) = entering else {
                if since_refactor == 0 {
                    return Ok(PhaseEnd::Optimal);
                }
                self.refactor()?;
                since_refactor = 0;
                continue;
            };
            if steps >= cap {
                return Err(OrpError::NumericalFailure(format!(
                    "iteration cap {cap} reached"
                )));
            }
            let u = self.ftran(q);
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                if u[i] <= tol.pivot {
                    continue;
                }
                let ratio = self.xb[i].max(0.0) / u[i];
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        let slack = 1e-12 * best.abs().max(1.0);
                        if ratio < best - slack {
                            Some((i, ratio))
                        } else if ratio <= best + slack {
                            let prefer = if bland {
                                self.basis[i] < self.basis[r]
                            } else {
                                u[i] > u[r]
                            };
                            if prefer {
                                Some((i, ratio))
                            } else {
                                Some((r, best))
                            }
                        } else {
                            Some((r, best))
                        }
                    }
                };
            }
            let Some((row, theta)) = leave else {
                return Ok(PhaseEnd::Unbounded);
            };
            if theta <= 1e-12 {
                stalled += 1;
                if stalled > self.cfg.stall_threshold {
                    bland = true;
                }
            } else {
                stalled = 0;
            }
            self.pivot(row, q, &u);
            steps += 1;
            self.iterations += 1;
            since_refactor += 1;
            if since_refactor >= self.cfg.refactor_every {
                self.refactor()?;
                since_refactor = 0;
            }
        }
    }

    fn drive_out_artificials(&mut self) -> Result<()> {
        for row in 0..self.m {
            if !self.is_artificial(self.basis[row]) {
                continue;
            }
            let brow = self.binv.row(row).to_vec();
            let ya = self.lp.a.tr_mul_vec(&brow);
            let mut best: Option<(usize, f64)> = None;
            for j in 0..self.n + self.m {
                if self.position[j].is_some() {
                    continue;
                }
                let alpha = if j < self.n { ya[j] } else { brow[j - self.n] };
                if alpha.abs() > self.cfg.tol.pivot && best.is_none_or(|(_, b)| alpha.abs() > b) {
                    best = Some((j, alpha.abs()));
                }
            }
            if let Some((j, _)) = best {
                let u = self.ftran(j);
                // Degenerate pivot: the artificial sits at zero.
                self.xb[row] = 0.0;
                self.pivot(row, j, &u);
            }
        }
        self.refactor()
    }

    fn solve(mut self) -> Result<LpSolution> {
        let tol = self.cfg.tol;
        let total = self.total_cols();
        if !self.art_rows.is_empty() {
            let mut cost = vec![0.0; total];
            cost[self.n + self.m..].iter_mut().for_each(|c| *c = 1.0);
            let allowed = vec![true; total];
            // Phase I is bounded below by zero.
            self.run_phase(&cost, &allowed)?;
            let infeas: f64 = self
                .basis
                .iter()
                .zip(&self.xb)
                .filter(|(&j, _)| self.is_artificial(j))
                .map(|(_, &v)| v.max(0.0))
                .sum();
            if infeas > tol.feasibility * (1.0 + max_abs(&self.lp.rhs)) {
                return Ok(LpSolution::without_point(
                    LpStatus::Infeasible,
                    self.iterations,
                ));
            }
            self.drive_out_artificials()?;
        }

        let mut cost = vec![0.0; total];
        cost[..self.n].copy_from_slice(&self.lp.cost);
        let allowed: Vec<bool> = (0..total).map(|j| !self.is_artificial(j)).collect();
        match self.run_phase(&cost, &allowed)? {
            PhaseEnd::Unbounded => {
                return Ok(LpSolution::without_point(
                    LpStatus::Unbounded,
                    self.iterations,
                ))
            }
            PhaseEnd::Optimal => {}
        }
        self.refactor()?;

        let scale = 1.0 + max_abs(&self.lp.rhs);
        if self.xb.iter().any(|&v| v < -1e-7 * scale) {
            return Err(OrpError::NumericalFailure(
                "basic solution lost primal feasibility".into(),
            ));
        }
        let mut x = vec![0.0; self.n];
        for (&j, &v) in self.basis.iter().zip(&self.xb) {
            if j < self.n {
                x[j] = v.max(0.0);
            }
        }
        let y = self.duals(&cost);
        let ya = self.lp.a.tr_mul_vec(&y);
        let std_cols = self.n + self.m;
        let reduced_costs: Vec<f64> = (0..std_cols)
            .map(|j| {
                if self.position[j].is_some() {
                    0.0
                } else {
                    cost[j] - self.priced(&y, &ya, j)
                }
            })
            .collect();
        let unique_basis = self.basis.iter().all(|&j| !self.is_artificial(j))
            && (0..std_cols)
                .filter(|&j| self.position[j].is_none())
                .all(|j| reduced_costs[j] > tol.strict);
        let degenerate = self.xb.iter().any(|&v| v <= tol.feasibility);
        let objective = dot(&self.lp.cost, &x);
        Ok(LpSolution {
            status: LpStatus::Optimal,
            x: Some(x),
            objective: Some(objective),
            basis: Some(self.basis.clone()),
            basic_values: self.xb.iter().map(|v| v.max(0.0)).collect(),
            reduced_costs,
            duals: y,
            degenerate,
            unique_basis,
            iterations: self.iterations,
        })
    }
}
