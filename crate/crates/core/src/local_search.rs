//! Scenario-space local search with plus/minus neighborhoods, staged step and
//! subset escalation, and shaking restarts.
//!
//! Each visited scenario is scored by the best outcome value over its optimal
//! face, so every incumbent is attained by an optimal solution of some scenario
//! in the box: the result is an inner estimate of the outcome range.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{OrpError, Result};
use crate::estimate::{Direction, Method, OutcomeRangeEstimate, Target};
use crate::ilp::{face_optimum, IlpInstance, Sense};
use crate::interval::{IntervalVector, Scenario};
use crate::simplex::LpSolver;

/// Draws attempted before giving up on finding a feasible starting scenario.
pub const INITIAL_RETRIES: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchParams {
    /// Step fractions `k`, tried in order.
    pub q: Vec<f64>,
    /// Subset fractions `h`, tried in order.
    pub v: Vec<f64>,
    pub max_shakes: usize,
    pub threshold: f64,
    pub seed: u64,
    /// Explicit groups of constraint indices replacing the `h` levels; each group is
    /// perturbed as one set.
    pub partition: Option<Vec<Vec<usize>>>,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            q: vec![0.1, 0.25, 0.5, 0.75, 1.0],
            v: vec![0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.5, 1.0],
            max_shakes: 1,
            threshold: 0.001,
            seed: 0,
            partition: None,
        }
    }
}

impl SearchParams {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        let in_unit = |v: &f64| *v > 0.0 && *v <= 1.0;
        if self.q.is_empty() || !self.q.iter().all(in_unit) {
            return Err(OrpError::InvalidParams(
                "Q must be a nonempty list in (0, 1]".into(),
            ));
        }
        match &self.partition {
            None => {
                if self.v.is_empty() || !self.v.iter().all(in_unit) {
                    return Err(OrpError::InvalidParams(
                        "V must be a nonempty list in (0, 1]".into(),
                    ));
                }
            }
            Some(groups) => {
                if groups.is_empty() || groups.iter().any(Vec::is_empty) {
                    return Err(OrpError::InvalidParams(
                        "partition groups must be nonempty".into(),
                    ));
                }
                if groups.iter().flatten().any(|&i| i >= m) {
                    return Err(OrpError::InvalidParams(
                        "partition index out of range".into(),
                    ));
                }
            }
        }
        if self.threshold.is_nan() || self.threshold <= 0.0 {
            return Err(OrpError::InvalidParams("threshold must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveDirection {
    Plus,
    Minus,
}

/// Perturbation of the components in `p` by a fraction `k` of their room to the bound.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborhoodMove {
    pub base: Scenario,
    pub k: f64,
    pub p: Vec<usize>,
    pub direction: MoveDirection,
}

/// `b_i + k (upper_i - b_i)` (plus) or `b_i - k (b_i - lower_i)` (minus) for `i` in `P`.
pub fn apply_move(iv: &IntervalVector, mv: &NeighborhoodMove) -> Result<Scenario> {
    if mv.p.is_empty() {
        return Err(OrpError::EmptyPerturbationSet);
    }
    iv.check_contains(mv.base.values(), f64::INFINITY)?;
    let mut out = mv.base.values().to_vec();
    for &i in &mv.p {
        let (l, u) = (iv.lower()[i], iv.upper()[i]);
        let bi = out[i];
        let moved = match mv.direction {
            MoveDirection::Plus => bi + mv.k * (u - bi),
            MoveDirection::Minus => bi - mv.k * (bi - l),
        };
        out[i] = moved.clamp(l, u);
    }
    Ok(Scenario::new(out))
}

/// Subset size `floor(h m)`, clamped to at least one component.
pub fn subset_size(h: f64, m: usize) -> usize {
    ((h * m as f64).floor() as usize).clamp(1, m.max(1))
}

/// Result of one search run.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchRun {
    pub estimate: OutcomeRangeEstimate,
    /// Incumbent values in acceptance order, starting with the initial scenario.
    pub trace: Vec<f64>,
    /// Number of scenarios scored.
    pub evaluations: usize,
}

struct Search<'a> {
    solver: &'a dyn LpSolver,
    inst: &'a IlpInstance,
    r: &'a [f64],
    sense: Sense,
    params: &'a SearchParams,
    rng: ChaCha8Rng,
    evaluations: usize,
}

impl Search<'_> {
    fn score(&mut self, b: &Scenario) -> Result<f64> {
        self.evaluations += 1;
        match face_optimum(self.solver, self.inst, b, self.r, self.sense) {
            Ok(f) => Ok(f.value),
            Err(OrpError::ScenarioInfeasible | OrpError::ScenarioUnbounded) => {
                Ok(self.sense.worst())
            }
            Err(e) => Err(e),
        }
    }

    fn levels(&self) -> usize {
        match &self.params.partition {
            Some(groups) => groups.len(),
            None => self.params.v.len(),
        }
    }

    fn sets_per_level(&self, level: usize) -> usize {
        match &self.params.partition {
            Some(_) => 1,
            None => ((1.0 / self.params.v[level]).floor() as usize).max(1),
        }
    }

    /// A subset for `level` avoiding `used`, or `None` when too few indices remain.
    fn draw_subset(&mut self, level: usize, used: &[usize]) -> Option<Vec<usize>> {
        let m = self.inst.m();
        if let Some(groups) = &self.params.partition {
            let g = &groups[level];
            return g.iter().all(|i| !used.contains(i)).then(|| g.clone());
        }
        let size = subset_size(self.params.v[level], m);
        let free: Vec<usize> = (0..m).filter(|i| !used.contains(i)).collect();
        if free.len() < size {
            return None;
        }
        let mut p: Vec<usize> = free.choose_multiple(&mut self.rng, size).copied().collect();
        p.sort_unstable();
        Some(p)
    }

    fn improvement(&self, incumbent: f64, candidate: f64) -> f64 {
        match self.sense {
            Sense::Min => incumbent - candidate,
            Sense::Max => candidate - incumbent,
        }
    }

    fn run(mut self) -> Result<SearchRun> {
        let start = Instant::now();
        let iv = self.inst.b();
        let target = Target::from(self.sense);

        let mut initial = None;
        for _ in 0..INITIAL_RETRIES {
            let b = iv.sample_with(&mut self.rng);
            let f = self.score(&b)?;
            if f != self.sense.worst() {
                initial = Some((b, f));
                break;
            }
        }
        let (mut b, mut best) = initial.ok_or(OrpError::InitialInfeasible(INITIAL_RETRIES))?;
        let mut best_b = b.clone();
        let mut trace = vec![best];

        let degenerate_box = iv.lower().iter().zip(iv.upper()).all(|(l, u)| l == u);
        if !degenerate_box {
            let q_len = self.params.q.len();
            let n_levels = self.levels();
            let (mut q, mut v, mut o, mut shakes) = (0usize, 0usize, 1usize, 0usize);
            let mut used = self.draw_subset(0, &[]).expect("first subset always fits");
            let mut p = used.clone();

            while shakes <= self.params.max_shakes {
                let k = self.params.q[q];
                let mut candidate: Option<(f64, Scenario)> = None;
                for direction in [MoveDirection::Plus, MoveDirection::Minus] {
                    let mv = NeighborhoodMove {
                        base: b.clone(),
                        k,
                        p: p.clone(),
                        direction,
                    };
                    let nb = apply_move(iv, &mv)?;
                    let f = self.score(&nb)?;
                    if candidate
                        .as_ref()
                        .is_none_or(|(cf, _)| self.sense.better(f, *cf))
                    {
                        candidate = Some((f, nb));
                    }
                }
                let (f_hat, b_hat) = candidate.expect("two neighbors were scored");

                let gain = self.improvement(best, f_hat);
                if self.sense.better(f_hat, best) {
                    best = f_hat;
                    best_b = b_hat.clone();
                    trace.push(best);
                }
                if gain >= self.params.threshold {
                    b = b_hat;
                    q = 0;
                } else if q + 1 < q_len {
                    q += 1;
                } else if v + 1 < n_levels {
                    let next = if o < self.sets_per_level(v) {
                        self.draw_subset(v, &used)
                    } else {
                        None
                    };
                    match next {
                        Some(next) => {
                            o += 1;
                            used.extend_from_slice(&next);
                            p = next;
                        }
                        None => {
                            v += 1;
                            o = 1;
                            p = self.draw_subset(v, &[]).expect("fresh subset always fits");
                            used = p.clone();
                        }
                    }
                    q = 0;
                } else {
                    shakes += 1;
                    if shakes > self.params.max_shakes {
                        break;
                    }
                    q = 0;
                    v = 0;
                    o = 1;
                    b = iv.sample_with(&mut self.rng);
                    p = self.draw_subset(0, &[]).expect("fresh subset always fits");
                    used = p.clone();
                }
            }
        }

        let estimate =
            OutcomeRangeEstimate::new(target, Direction::inner(target), best, Method::LocalSearch)
                .with_witness(Some(best_b))
                .with_elapsed(start.elapsed());
        Ok(SearchRun {
            estimate,
            trace,
            evaluations: self.evaluations,
        })
    }
}

/// Runs the search and returns the full run record.
pub fn local_search_run(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    r: &[f64],
    sense: Sense,
    params: &SearchParams,
) -> Result<SearchRun> {
    inst.check_outcome(r)?;
    params.validate(inst.m())?;
    Search {
        solver,
        inst,
        r,
        sense,
        params,
        rng: ChaCha8Rng::seed_from_u64(params.seed),
        evaluations: 0,
    }
    .run()
}

/// Inner estimate of `f_lower` (sense `Min`) or `f_upper` (sense `Max`).
pub fn local_search(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    r: &[f64],
    sense: Sense,
    params: &SearchParams,
) -> Result<OutcomeRangeEstimate> {
    local_search_run(solver, inst, r, sense, params).map(|run| run.estimate)
}
