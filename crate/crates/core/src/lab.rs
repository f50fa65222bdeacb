//! Random instance generation, comparison metrics and the benchmark harness.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dense::Matrix;
use crate::error::{OrpError, Result};
use crate::estimate::{Method, OutcomeRangeEstimate, Target};
use crate::exact::{check_unique_bstable, solve_orp_bstable};
use crate::ilp::{solve_lp, IlpInstance, Sense};
use crate::interval::{IntervalVector, DEFAULT_ENUMERATION_CAP};
use crate::local_search::{local_search, SearchParams};
use crate::oracle::{monte_carlo, vertex_oracle_with, OracleConfig, DEFAULT_FACE_GRID};
use crate::simplex::{LpSolver, LpStatus};
use crate::superset::solve_superset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InstanceClass {
    /// Rejection-sampled until a single basis is uniquely optimal over the whole box.
    #[serde(rename = "class1")]
    Class1BStable,
    #[serde(rename = "class2")]
    Class2General,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub m: usize,
    pub n: usize,
    pub delta: f64,
    pub class: InstanceClass,
    pub seed: u64,
    pub max_rejections: usize,
}

impl GeneratorConfig {
    pub fn new(m: usize, n: usize, delta: f64, class: InstanceClass, seed: u64) -> Self {
        Self {
            m,
            n,
            delta,
            class,
            seed,
            max_rejections: 1000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(OrpError::InvalidParams("m and n must be at least 1".into()));
        }
        if !self.delta.is_finite() || self.delta < 0.0 {
            return Err(OrpError::InvalidParams(format!(
                "delta must be finite and >= 0, got {}",
                self.delta
            )));
        }
        if self.class == InstanceClass::Class1BStable && self.max_rejections == 0 {
            return Err(OrpError::InvalidParams(
                "max_rejections must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

fn draw(rng: &mut ChaCha8Rng, m: usize, n: usize, delta: f64) -> Result<(IlpInstance, Vec<f64>)> {
    let mut a = Matrix::zeros(m, n);
    for i in 0..m {
        for j in 0..n {
            a[(i, j)] = if i + 1 == m {
                rng.gen_range(1..=10) as f64
            } else {
                rng.gen_range(-10..=10) as f64
            };
        }
    }
    let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-20..=-1) as f64).collect();
    let lower: Vec<f64> = (0..m).map(|_| rng.gen_range(10..=20) as f64).collect();
    let r: Vec<f64> = (0..n).map(|_| rng.gen_range(-20..=20) as f64).collect();
    let upper = lower.iter().map(|l| l + delta).collect();
    let inst = IlpInstance::new(a, c, IntervalVector::new(lower, upper)?)?;
    Ok((inst, r))
}

/// Draws a random instance and outcome vector. Draws whose midpoint LP is
/// unbounded (and, for class 1, draws without a certified basis) are redrawn from
/// the same stream.
pub fn generate(solver: &dyn LpSolver, cfg: &GeneratorConfig) -> Result<(IlpInstance, Vec<f64>)> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let budget = cfg.max_rejections.max(1);
    for _ in 0..budget {
        let (inst, r) = draw(&mut rng, cfg.m, cfg.n, cfg.delta)?;
        let accepted = match cfg.class {
            InstanceClass::Class1BStable => check_unique_bstable(solver, &inst)?.is_some(),
            InstanceClass::Class2General => {
                let (mid, _) = inst.b().midpoint_radius();
                let s = solve_lp(solver, &inst, &mid.into(), inst.c())?;
                s.status == LpStatus::Optimal
            }
        };
        if accepted {
            return Ok((inst, r));
        }
    }
    Err(OrpError::RejectionBudgetExhausted(budget))
}

/// Relative gap `|estimate - reference| / |reference|`.
pub fn gap(estimate: f64, reference: f64) -> Result<f64> {
    if reference == 0.0 {
        return Err(OrpError::ZeroReference);
    }
    Ok((estimate - reference).abs() / reference.abs())
}

/// Weighted average gap: `win_count * avg_gap / total`.
pub fn wag(win_count: usize, avg_gap: f64, total: usize) -> f64 {
    debug_assert!(total >= 1 && win_count <= total);
    win_count as f64 * avg_gap / total as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchCell {
    pub m: usize,
    pub n: usize,
    pub delta: f64,
    pub class: InstanceClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchConfig {
    pub cells: Vec<BenchCell>,
    pub methods: Vec<Method>,
    pub repetitions: usize,
    pub base_seed: u64,
    pub max_rejections: usize,
    pub mc_samples: usize,
    pub face_grid: usize,
    pub local_search: SearchParams,
    /// When false every elapsed time is reported as zero, making output reproducible.
    pub record_timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            cells: Vec::new(),
            methods: vec![Method::BStableExact, Method::LocalSearch],
            repetitions: 30,
            base_seed: 0,
            max_rejections: 1000,
            mc_samples: 100,
            face_grid: DEFAULT_FACE_GRID,
            local_search: SearchParams::default(),
            record_timing: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub instance_id: String,
    pub m: usize,
    pub n: usize,
    pub delta: f64,
    pub method: Method,
    pub target: Target,
    pub value: Option<f64>,
    pub gap: Option<f64>,
    pub elapsed_seconds: f64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateRow {
    pub m: usize,
    pub n: usize,
    pub delta: f64,
    pub method: Method,
    pub target: Target,
    pub mean_gap: Option<f64>,
    pub mean_time: f64,
    pub win_count: usize,
    pub wag: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub aggregates: Vec<AggregateRow>,
}

const HEURISTICS: [Method; 2] = [Method::LocalSearch, Method::MonteCarlo];

fn run_method(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    r: &[f64],
    method: Method,
    cfg: &BenchConfig,
    seed: u64,
) -> Result<(OutcomeRangeEstimate, OutcomeRangeEstimate)> {
    match method {
        Method::BStableExact => {
            let basis = check_unique_bstable(solver, inst)?.ok_or(OrpError::NotBStable)?;
            solve_orp_bstable(solver, inst, r, &basis)
        }
        Method::Superset => solve_superset(solver, inst, r),
        Method::LocalSearch => {
            let params = cfg.local_search.clone().with_seed(seed);
            let lo = local_search(solver, inst, r, Sense::Min, &params)?;
            let hi = local_search(solver, inst, r, Sense::Max, &params)?;
            Ok((lo, hi))
        }
        Method::VertexOracle => {
            let oc = OracleConfig {
                face_grid: cfg.face_grid,
                enumeration_cap: DEFAULT_ENUMERATION_CAP,
                seed,
            };
            let res = vertex_oracle_with(solver, inst, r, &oc)?;
            Ok((res.lower, res.upper))
        }
        Method::MonteCarlo => monte_carlo(solver, inst, r, cfg.mc_samples, seed),
    }
}

fn reference(
    solver: &dyn LpSolver,
    inst: &IlpInstance,
    r: &[f64],
    class: InstanceClass,
    cfg: &BenchConfig,
    seed: u64,
) -> Option<(f64, f64)> {
    match class {
        InstanceClass::Class1BStable => {
            let basis = check_unique_bstable(solver, inst).ok().flatten()?;
            let (lo, hi) = solve_orp_bstable(solver, inst, r, &basis).ok()?;
            Some((lo.value, hi.value))
        }
        InstanceClass::Class2General => {
            if inst.m() > DEFAULT_ENUMERATION_CAP {
                return None;
            }
            let oc = OracleConfig {
                face_grid: cfg.face_grid,
                enumeration_cap: DEFAULT_ENUMERATION_CAP,
                seed,
            };
            let res = vertex_oracle_with(solver, inst, r, &oc).ok()?;
            res.exact.then_some((res.lower.value, res.upper.value))
        }
    }
}

fn instance_id(cell: &BenchCell, seed: u64) -> String {
    format!("m{}-n{}-d{}-s{}", cell.m, cell.n, cell.delta, seed)
}

fn run_instance(
    solver: &dyn LpSolver,
    cfg: &BenchConfig,
    cell: &BenchCell,
    seed: u64,
) -> Vec<BenchRecord> {
    let id = instance_id(cell, seed);
    let record =
        |method, target, value: Option<f64>, elapsed: f64, error: Option<String>| BenchRecord {
            instance_id: id.clone(),
            m: cell.m,
            n: cell.n,
            delta: cell.delta,
            method,
            target,
            value,
            gap: None,
            elapsed_seconds: if cfg.record_timing { elapsed } else { 0.0 },
            error,
        };
    let gen = GeneratorConfig {
        m: cell.m,
        n: cell.n,
        delta: cell.delta,
        class: cell.class,
        seed,
        max_rejections: cfg.max_rejections,
    };
    let (inst, r) = match generate(solver, &gen) {
        Ok(v) => v,
        Err(e) => {
            let msg = format!("generate: {e}");
            return cfg
                .methods
                .iter()
                .flat_map(|&m| {
                    [Target::FLower, Target::FUpper]
                        .map(|t| record(m, t, None, 0.0, Some(msg.clone())))
                })
                .collect();
        }
    };
    let refs = reference(solver, &inst, &r, cell.class, cfg, seed);
    let mut out = Vec::with_capacity(2 * cfg.methods.len());
    for &method in &cfg.methods {
        let start = Instant::now();
        match run_method(solver, &inst, &r, method, cfg, seed) {
            Ok((lo, hi)) => {
                for (est, reference) in [(lo, refs.map(|p| p.0)), (hi, refs.map(|p| p.1))] {
                    let mut rec = record(
                        method,
                        est.target,
                        Some(est.value),
                        est.elapsed.as_secs_f64(),
                        None,
                    );
                    rec.gap = reference
                        .filter(|_| est.value.is_finite())
                        .and_then(|f| gap(est.value, f).ok());
                    out.push(rec);
                }
            }
            Err(e) => {
                let elapsed = start.elapsed().as_secs_f64();
                for t in [Target::FLower, Target::FUpper] {
                    out.push(record(method, t, None, elapsed, Some(e.to_string())));
                }
            }
        }
    }
    out
}

type CellKey = (usize, usize, u64, Method, Target);

fn key(r: &BenchRecord) -> CellKey {
    (r.m, r.n, r.delta.to_bits(), r.method, r.target)
}

#[derive(Default)]
struct Acc {
    gap_sum: f64,
    gap_count: usize,
    time_sum: f64,
    time_count: usize,
    wins: usize,
    win_gap_sum: f64,
    instances: usize,
}

/// Per-cell summary. A heuristic (local search, Monte Carlo) wins an instance when
/// its value is strictly better than every other heuristic that ran on it; the win
/// gap is measured against the best of the others.
pub fn aggregate(records: &[BenchRecord]) -> Vec<AggregateRow> {
    let mut accs: BTreeMap<CellKey, (f64, Acc)> = BTreeMap::new();
    for r in records {
        let (_, acc) = accs
            .entry(key(r))
            .or_insert_with(|| (r.delta, Acc::default()));
        acc.instances += 1;
        if let Some(g) = r.gap {
            acc.gap_sum += g;
            acc.gap_count += 1;
        }
        if r.error.is_none() {
            acc.time_sum += r.elapsed_seconds;
            acc.time_count += 1;
        }
    }

    let mut by_instance: BTreeMap<(&str, Target), Vec<&BenchRecord>> = BTreeMap::new();
    for r in records.iter().filter(|r| HEURISTICS.contains(&r.method)) {
        if r.value.is_some() {
            by_instance
                .entry((&r.instance_id, r.target))
                .or_default()
                .push(r);
        }
    }
    for ((_, target), group) in by_instance {
        if group.len() < 2 {
            continue;
        }
        let sense = target.sense();
        for rec in &group {
            let v = rec.value.expect("filtered");
            let best_other = group
                .iter()
                .filter(|o| o.method != rec.method)
                .map(|o| o.value.expect("filtered"))
                .fold(sense.worst(), |a, b| if sense.better(b, a) { b } else { a });
            let margin = 1e-9 * v.abs().max(1.0);
            let wins = match sense {
                Sense::Min => v < best_other - margin,
                Sense::Max => v > best_other + margin,
            };
            if wins {
                let (_, acc) = accs.get_mut(&key(rec)).expect("record was counted");
                acc.wins += 1;
                acc.win_gap_sum += gap(v, best_other).unwrap_or(0.0);
            }
        }
    }

    accs.into_iter()
        .map(|((m, n, _, method, target), (delta, acc))| {
            let avg_win_gap = if acc.wins > 0 {
                acc.win_gap_sum / acc.wins as f64
            } else {
                0.0
            };
            AggregateRow {
                m,
                n,
                delta,
                method,
                target,
                mean_gap: (acc.gap_count > 0).then(|| acc.gap_sum / acc.gap_count as f64),
                mean_time: if acc.time_count > 0 {
                    acc.time_sum / acc.time_count as f64
                } else {
                    0.0
                },
                win_count: acc.wins,
                wag: wag(acc.wins, avg_win_gap, acc.instances.max(1)),
            }
        })
        .collect()
}

/// Runs every configured method on `repetitions` instances of each cell. Instance
/// `k` of a cell uses seed `base_seed + k`. Failures become records with an error
/// message; the batch always completes.
pub fn run_benchmark(solver: &dyn LpSolver, cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.methods.is_empty() {
        return Err(OrpError::InvalidParams("no methods selected".into()));
    }
    let jobs: Vec<(BenchCell, u64)> = cfg
        .cells
        .iter()
        .flat_map(|cell| (0..cfg.repetitions as u64).map(move |k| (*cell, cfg.base_seed + k)))
        .collect();
    let records: Vec<BenchRecord> = jobs
        .par_iter()
        .map(|(cell, seed)| run_instance(solver, cfg, cell, *seed))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let aggregates = aggregate(&records);
    Ok(BenchReport {
        records,
        aggregates,
    })
}

fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v}")
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_num).unwrap_or_default()
}

fn csv_err(e: impl std::fmt::Display) -> OrpError {
    OrpError::Parse(format!("csv: {e}"))
}

/// Writes `records.csv` and `aggregate.csv` into `dir`, creating it if needed.
pub fn write_csvs(report: &BenchReport, dir: &Path) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(dir).map_err(csv_err)?;
    let rec_path = dir.join("records.csv");
    let agg_path = dir.join("aggregate.csv");

    let mut w = csv::Writer::from_path(&rec_path).map_err(csv_err)?;
    w.write_record([
        "instance_id",
        "method",
        "target",
        "value",
        "gap",
        "elapsed_seconds",
        "error",
    ])
    .map_err(csv_err)?;
    for r in &report.records {
        w.write_record([
            r.instance_id.clone(),
            r.method.to_string(),
            r.target.to_string(),
            fmt_opt(r.value),
            fmt_opt(r.gap),
            fmt_num(r.elapsed_seconds),
            r.error.clone().unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(csv_err)?;

    let mut w = csv::Writer::from_path(&agg_path).map_err(csv_err)?;
    w.write_record([
        "m",
        "n",
        "delta",
        "method",
        "target",
        "mean_gap",
        "mean_time",
        "win_count",
        "wag",
    ])
    .map_err(csv_err)?;
    for a in &report.aggregates {
        w.write_record([
            a.m.to_string(),
            a.n.to_string(),
            fmt_num(a.delta),
            a.method.to_string(),
            a.target.to_string(),
            fmt_opt(a.mean_gap),
            fmt_num(a.mean_time),
            a.win_count.to_string(),
            fmt_num(a.wag),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(csv_err)?;
    Ok((rec_path, agg_path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::DenseSimplex;

    const LP: DenseSimplex = DenseSimplex::new();

    #[test]
    fn gap_examples() {
        assert_eq!(gap(36.0, 36.0).unwrap(), 0.0);
        assert!((gap(40.0, 36.0).unwrap() - 4.0 / 36.0).abs() < 1e-15);
        assert!((gap(-18.0, -20.0).unwrap() - 0.1).abs() < 1e-15);
        assert_eq!(gap(1.0, 0.0), Err(OrpError::ZeroReference));
    }

    #[test]
    fn wag_examples() {
        assert_eq!(wag(0, 0.7, 30), 0.0);
        assert_eq!(wag(30, 0.25, 30), 0.25);
        let avg = 0.0024 * 30.0 / 22.0;
        assert!((wag(22, avg, 30) - 0.0024).abs() < 1e-15);
    }

    #[test]
    fn generator_ranges_and_determinism() {
        let cfg = GeneratorConfig::new(6, 8, 0.5, InstanceClass::Class2General, 3);
        let (inst, r) = generate(&LP, &cfg).unwrap();
        let (inst2, r2) = generate(&LP, &cfg).unwrap();
        assert_eq!(inst, inst2);
        assert_eq!(r, r2);
        let a = inst.a();
        for i in 0..6 {
            for j in 0..8 {
                let v = a[(i, j)];
                assert_eq!(v, v.round());
                if i == 5 {
                    assert!((1.0..=10.0).contains(&v));
                } else {
                    assert!((-10.0..=10.0).contains(&v));
                }
            }
        }
        assert!(inst.c().iter().all(|&v| (-20.0..=-1.0).contains(&v)));
        assert!(r.iter().all(|&v| (-20.0..=20.0).contains(&v)));
        for (l, u) in inst.b().lower().iter().zip(inst.b().upper()) {
            assert!((10.0..=20.0).contains(l));
            assert_eq!(*u, l + 0.5);
        }
    }

    #[test]
    fn zero_delta_gives_point_interval() {
        let cfg = GeneratorConfig::new(3, 4, 0.0, InstanceClass::Class2General, 1);
        let (inst, _) = generate(&LP, &cfg).unwrap();
        assert_eq!(inst.b().lower(), inst.b().upper());
    }

    #[test]
    fn class1_is_certified() {
        for seed in 0..5 {
            let cfg = GeneratorConfig::new(10, 15, 0.1, InstanceClass::Class1BStable, seed);
            let (inst, _) = generate(&LP, &cfg).unwrap();
            assert!(check_unique_bstable(&LP, &inst).unwrap().is_some());
        }
    }

    #[test]
    fn invalid_config() {
        let mut cfg = GeneratorConfig::new(0, 4, 0.1, InstanceClass::Class2General, 1);
        assert!(matches!(
            generate(&LP, &cfg),
            Err(OrpError::InvalidParams(_))
        ));
        cfg.m = 2;
        cfg.delta = -1.0;
        assert!(matches!(
            generate(&LP, &cfg),
            Err(OrpError::InvalidParams(_))
        ));
        cfg.delta = 0.1;
        cfg.class = InstanceClass::Class1BStable;
        cfg.max_rejections = 0;
        assert!(matches!(
            generate(&LP, &cfg),
            Err(OrpError::InvalidParams(_))
        ));
    }

    #[test]
    fn rejection_budget() {
        // A wide box almost never keeps one basis optimal.
        let mut cfg = GeneratorConfig::new(10, 15, 50.0, InstanceClass::Class1BStable, 0);
        cfg.max_rejections = 2;
        assert_eq!(
            generate(&LP, &cfg),
            Err(OrpError::RejectionBudgetExhausted(2))
        );
    }

    fn small_config(methods: Vec<Method>) -> BenchConfig {
        BenchConfig {
            cells: vec![BenchCell {
                m: 4,
                n: 6,
                delta: 0.1,
                class: InstanceClass::Class1BStable,
            }],
            methods,
            repetitions: 1,
            ..BenchConfig::default()
        }
    }

    #[test]
    fn single_instance_single_method() {
        let report = run_benchmark(&LP, &small_config(vec![Method::BStableExact])).unwrap();
        assert_eq!(report.records.len(), 2);
        assert!(report
            .records
            .iter()
            .all(|r| r.gap == Some(0.0) || r.value == Some(0.0)));
        assert_eq!(report.aggregates.len(), 2);
    }

    #[test]
    fn failures_are_recorded() {
        let mut cfg = small_config(vec![Method::BStableExact, Method::LocalSearch]);
        cfg.cells[0].delta = 50.0;
        cfg.max_rejections = 1;
        let report = run_benchmark(&LP, &cfg).unwrap();
        assert_eq!(report.records.len(), 4);
        assert!(report
            .records
            .iter()
            .all(|r| r.error.is_some() && r.value.is_none()));

        let mut cfg = small_config(vec![Method::BStableExact]);
        cfg.cells[0].class = InstanceClass::Class2General;
        cfg.cells[0].delta = 20.0;
        cfg.repetitions = 3;
        let report = run_benchmark(&LP, &cfg).unwrap();
        assert_eq!(report.records.len(), 6);
    }

    #[test]
    fn wins_are_counted() {
        let rec = |id: &str, method, value| BenchRecord {
            instance_id: id.into(),
            m: 1,
            n: 1,
            delta: 0.1,
            method,
            target: Target::FLower,
            value: Some(value),
            gap: None,
            elapsed_seconds: 0.0,
            error: None,
        };
        let records = vec![
            rec("a", Method::LocalSearch, 10.0),
            rec("a", Method::MonteCarlo, 12.0),
            rec("b", Method::LocalSearch, 5.0),
            rec("b", Method::MonteCarlo, 5.0),
        ];
        let agg = aggregate(&records);
        let ls = agg
            .iter()
            .find(|a| a.method == Method::LocalSearch)
            .unwrap();
        let mc = agg.iter().find(|a| a.method == Method::MonteCarlo).unwrap();
        assert_eq!(ls.win_count, 1);
        assert_eq!(mc.win_count, 0);
        assert!((ls.wag - (2.0 / 12.0) / 2.0).abs() < 1e-12);
        assert_eq!(mc.wag, 0.0);
    }

    #[test]
    fn aggregation_ignores_order() {
        let cfg = BenchConfig {
            repetitions: 4,
            methods: vec![
                Method::BStableExact,
                Method::LocalSearch,
                Method::MonteCarlo,
            ],
            record_timing: false,
            ..small_config(vec![])
        };
        let report = run_benchmark(&LP, &cfg).unwrap();
        let mut shuffled = report.records.clone();
        shuffled.reverse();
        shuffled.rotate_left(3);
        let again = aggregate(&shuffled);
        for (a, b) in report.aggregates.iter().zip(&again) {
            assert_eq!(
                (a.method, a.target, a.win_count),
                (b.method, b.target, b.win_count)
            );
            match (a.mean_gap, b.mean_gap) {
                (Some(x), Some(y)) => assert!((x - y).abs() < 1e-12),
                (x, y) => assert_eq!(x, y),
            }
            assert!((a.wag - b.wag).abs() < 1e-12);
        }
    }

    #[test]
    fn csv_output() {
        let mut cfg = small_config(vec![Method::BStableExact]);
        cfg.record_timing = false;
        let report = run_benchmark(&LP, &cfg).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let (rec, agg) = write_csvs(&report, dir.path()).unwrap();
        let text = std::fs::read_to_string(rec).unwrap();
        assert!(text.starts_with("instance_id,method,target,value,gap,elapsed_seconds"));
        assert_eq!(text.lines().count(), 3);
        let text = std::fs::read_to_string(agg).unwrap();
        assert!(text.starts_with("m,n,delta,method,target,mean_gap,mean_time,win_count,wag"));
        assert!(text
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("4,6,0.1,exact,f_lower,"));
    }
}
