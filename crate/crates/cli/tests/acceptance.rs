//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use orp_core::superset::{build_relaxation, dual_enclosure};
use orp_core::{
    catalog, check_unique_bstable, classify_scenario, gap, generate, local_search, monte_carlo,
    optimal_value_range, solve_lp, solve_orp_bstable, solve_superset, vertex_oracle,
    vertex_oracle_with, DenseSimplex, GeneratorConfig, IlpInstance, InstanceClass, LpStatus,
    OracleConfig, Scenario, ScenarioClass, SearchParams, Sense, ValueBound,
};

const LP: DenseSimplex = DenseSimplex::new();

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn example_one() -> Check {
    let start = Instant::now();
    let (inst, r) = catalog::example_one();
    let (lo, hi, _) = vertex_oracle(&LP, &inst, &r, 3).map_err(s)?;
    ensure(
        close(lo.value, 36.0, 1e-6) && close(hi.value, 81.0, 1e-6),
        format!("oracle [{}, {}]", lo.value, hi.value),
    )?;
    for seed in 0..5 {
        let p = SearchParams::default().with_seed(seed);
        let l = local_search(&LP, &inst, &r, Sense::Min, &p).map_err(s)?;
        let h = local_search(&LP, &inst, &r, Sense::Max, &p).map_err(s)?;
        ensure(
            close(l.value, 36.0, 1e-6) && close(h.value, 81.0, 1e-6),
            format!("local search seed {seed}: [{}, {}]", l.value, h.value),
        )?;
    }
    let (sl, su) = solve_superset(&LP, &inst, &r).map_err(s)?;
    ensure(
        sl.value <= 36.0 + 1e-9 && su.value >= 81.0 - 1e-9,
        format!("superset [{}, {}]", sl.value, su.value),
    )?;
    let t = start.elapsed().as_secs_f64();
    ensure(t < 1.0, format!("took {t:.3}s"))?;
    Ok(format!(
        "oracle [36, 81], local search seeds 0..4 hit both, superset [{}, {}], {t:.3}s",
        sl.value, su.value
    ))
}

fn example_two() -> Check {
    let (inst, r) = catalog::example_two();
    let vr = optimal_value_range(&LP, &inst).map_err(s)?;
    ensure(
        vr.z_lower == ValueBound::Finite(-20.0) && vr.z_upper == ValueBound::Infeasible,
        format!("value range [{}, {}]", vr.z_lower, vr.z_upper),
    )?;
    let (lo, hi, _) = vertex_oracle(&LP, &inst, &r, 3).map_err(s)?;
    ensure(
        close(lo.value, -20.0, 1e-6) && close(hi.value, 0.0, 1e-6),
        format!("oracle [{}, {}]", lo.value, hi.value),
    )?;
    Ok("value range (-20, infeasible), oracle range (-20, 0)".into())
}

fn example_three() -> Check {
    let (inst, r) = catalog::example_three();
    let basis = check_unique_bstable(&LP, &inst)
        .map_err(s)?
        .ok_or("no certified basis")?;
    let (lo, hi) = solve_orp_bstable(&LP, &inst, &r, &basis).map_err(s)?;
    ensure(
        close(lo.value, 0.0, 1e-9) && close(hi.value, 0.0, 1e-9),
        format!("exact [{}, {}]", lo.value, hi.value),
    )?;
    let (olo, ohi, _) = vertex_oracle(&LP, &inst, &r, 3).map_err(s)?;
    ensure(
        close(olo.value, 0.0, 1e-9) && close(ohi.value, 0.0, 1e-9),
        format!("oracle [{}, {}]", olo.value, ohi.value),
    )?;
    Ok(format!(
        "basis {:?} certified, exact and oracle [0, 0]",
        basis.indices()
    ))
}

fn transportation() -> Check {
    let start = Instant::now();
    let (inst, r) = catalog::transportation();
    let b = Scenario::new(catalog::transportation_rhs(&[85.0, 64.0, 71.0]));
    let sol = solve_lp(&LP, &inst, &b, inst.c()).map_err(s)?;
    let cost = sol.objective.ok_or("scenario not optimal")?;
    ensure(close(cost, 4945.0, 1e-6), format!("cost {cost}"))?;
    let (lo, hi, _) = vertex_oracle(&LP, &inst, &r, 3).map_err(s)?;
    ensure(
        close(lo.value, 3940.0, 1e-6) && close(hi.value, 4056.0, 1e-6),
        format!("oracle [{}, {}]", lo.value, hi.value),
    )?;
    for w in [&lo.witness, &hi.witness] {
        let w = w.as_ref().ok_or("missing witness")?;
        let class = classify_scenario(w, inst.b(), 1e-9).map_err(s)?;
        ensure(
            class == ScenarioClass::StronglyExtremal,
            format!("witness {w:?} is {class:?}"),
        )?;
    }
    let t = start.elapsed().as_secs_f64();
    ensure(t < 2.0, format!("took {t:.3}s"))?;
    Ok(format!(
        "cost 4945, oracle [3940, 4056], strongly extremal witnesses, {t:.3}s"
    ))
}

fn class1(m: usize, n: usize, delta: f64, seed: u64) -> Result<(IlpInstance, Vec<f64>), String> {
    generate(
        &LP,
        &GeneratorConfig::new(m, n, delta, InstanceClass::Class1BStable, seed),
    )
    .map_err(s)
}

fn class2(m: usize, n: usize, delta: f64, seed: u64) -> Result<(IlpInstance, Vec<f64>), String> {
    generate(
        &LP,
        &GeneratorConfig::new(m, n, delta, InstanceClass::Class2General, seed),
    )
    .map_err(s)
}

fn class1_comparison() -> Check {
    let mut gaps = Vec::new();
    let mut exact_time = 0.0;
    let mut sandwiched = 0;
    for seed in 0..30 {
        let (inst, r) = class1(10, 15, 0.1, seed)?;
        let start = Instant::now();
        let basis = check_unique_bstable(&LP, &inst)
            .map_err(s)?
            .ok_or("class 1 instance not certified")?;
        let (elo, ehi) = solve_orp_bstable(&LP, &inst, &r, &basis).map_err(s)?;
        exact_time += start.elapsed().as_secs_f64();

        let p = SearchParams::default().with_seed(seed);
        let llo = local_search(&LP, &inst, &r, Sense::Min, &p).map_err(s)?;
        let lhi = local_search(&LP, &inst, &r, Sense::Max, &p).map_err(s)?;
        for (est, reference) in [(llo.value, elo.value), (lhi.value, ehi.value)] {
            if let Ok(g) = gap(est, reference) {
                gaps.push(g);
            }
        }

        let (slo, shi) = solve_superset(&LP, &inst, &r).map_err(s)?;
        let tol = 1e-7;
        if slo.value <= elo.value + tol * elo.value.abs().max(1.0)
            && shi.value >= ehi.value - tol * ehi.value.abs().max(1.0)
        {
            sandwiched += 1;
        }
    }
    let mean_gap = gaps.iter().sum::<f64>() / gaps.len().max(1) as f64;
    let mean_time = exact_time / 30.0;
    ensure(
        mean_gap <= 0.02,
        format!("mean local search gap {mean_gap:.5}"),
    )?;
    ensure(mean_time < 0.5, format!("mean exact time {mean_time:.4}s"))?;
    ensure(
        sandwiched == 30,
        format!("superset sandwich on {sandwiched}/30"),
    )?;
    Ok(format!(
        "mean local search gap {mean_gap:.5}, mean exact time {:.2}ms, sandwich 30/30",
        mean_time * 1e3
    ))
}

fn exact_matches_oracle() -> Check {
    let mut worst: f64 = 0.0;
    for k in 0..50u64 {
        let m = 2 + (k as usize % 9);
        let n = m + 2 + (k as usize % 5);
        let delta = [0.05, 0.1, 0.2][k as usize % 3];
        let (inst, r) = class1(m, n, delta, 1000 + k)?;
        let basis = check_unique_bstable(&LP, &inst)
            .map_err(s)?
            .ok_or("not certified")?;
        let (elo, ehi) = solve_orp_bstable(&LP, &inst, &r, &basis).map_err(s)?;
        let (olo, ohi, _) = vertex_oracle(&LP, &inst, &r, 3).map_err(s)?;
        for (e, o) in [(elo.value, olo.value), (ehi.value, ohi.value)] {
            ensure(
                rel_close(e, o, 1e-6),
                format!("instance {k} (m={m}): exact {e} vs oracle {o}"),
            )?;
            worst = worst.max((e - o).abs() / o.abs().max(1.0));
        }
    }
    Ok(format!(
        "50/50 agree, worst relative difference {worst:.2e}"
    ))
}

fn witnesses_are_extremal() -> Check {
    let (mut checked, mut strong) = (0, 0);
    let mut seed = 2000;
    while checked < 50 {
        ensure(seed < 2500, format!("only {checked} exact instances found"))?;
        let m = 2 + (seed as usize % 7);
        let (inst, r) = class2(m, m + 3, 2.0, seed)?;
        seed += 1;
        ensure(!inst.b().contains_zero(), "zero scenario inside box")?;
        let res = vertex_oracle_with(&LP, &inst, &r, &OracleConfig::default()).map_err(s)?;
        if !res.exact {
            continue;
        }
        checked += 1;
        for est in [&res.lower, &res.upper] {
            let w = est.witness.as_ref().ok_or("missing witness")?;
            let class = classify_scenario(w, inst.b(), 1e-9).map_err(s)?;
            ensure(
                class.is_weakly_extremal(),
                format!("seed {}: {class:?} witness", seed - 1),
            )?;
            if res.degenerate_vertices == 0 {
                ensure(
                    class == ScenarioClass::StronglyExtremal,
                    format!("seed {}: {class:?}", seed - 1),
                )?;
                strong += 1;
            }
        }
    }
    Ok(format!(
        "50 exact instances, {strong} non-degenerate witnesses all strongly extremal"
    ))
}

fn monte_carlo_containment() -> Check {
    let (mut used, mut narrower) = (0, 0);
    let mut seed = 3000;
    while used < 30 {
        ensure(seed < 3500, format!("only {used} usable instances"))?;
        let m = 2 + (seed as usize % 9);
        let (inst, r) = class2(m, m + 4, 3.0, seed)?;
        seed += 1;
        let res = vertex_oracle_with(&LP, &inst, &r, &OracleConfig::default()).map_err(s)?;
        if !res.exact {
            continue;
        }
        used += 1;
        let (mlo, mhi) = monte_carlo(&LP, &inst, &r, 100, seed).map_err(s)?;
        let (olo, ohi) = (res.lower.value, res.upper.value);
        let tol = 1e-7 * olo.abs().max(ohi.abs()).max(1.0);
        ensure(
            mlo.value >= olo - tol && mhi.value <= ohi + tol,
            format!(
                "seed {}: MC [{}, {}] vs oracle [{olo}, {ohi}]",
                seed - 1,
                mlo.value,
                mhi.value
            ),
        )?;
        if mlo.value > olo + tol || mhi.value < ohi - tol {
            narrower += 1;
        }
    }
    ensure(narrower >= 1, "Monte Carlo never narrower than the oracle")?;
    Ok(format!(
        "contained on 30/30, strictly narrower on {narrower}"
    ))
}

fn mccormick_validity() -> Check {
    let mut points = 0;
    for k in 0..20u64 {
        let m = 2 + (k as usize % 5);
        let (inst, r) = class2(m, m + 3, 2.0, 4000 + k)?;
        let dual = dual_enclosure(&LP, &inst).map_err(s)?;
        let model = build_relaxation(&inst, &r, &dual).map_err(s)?;
        let mut scenarios: Vec<Scenario> = inst.b().vertex_scenarios(20).map_err(s)?.collect();
        scenarios.extend((0..10).map(|i| inst.b().sample_scenario(k * 100 + i)));
        for b in scenarios {
            let sol = solve_lp(&LP, &inst, &b, inst.c()).map_err(s)?;
            if sol.status != LpStatus::Optimal {
                continue;
            }
            let x = sol.x.as_ref().expect("optimal point");
            ensure(
                model.contains(x, &sol.duals, b.values(), 1e-7),
                format!("instance {k}: optimal triple at {b:?} violates the relaxation"),
            )?;
            points += 1;
        }
    }
    Ok(format!(
        "{points} optimal (x, y, b) triples over 20 instances all feasible"
    ))
}

fn run_bench(bin: &Path, config: &Path, out: &Path) -> Result<(), String> {
    let status = Command::new(bin)
        .args(["bench", "--deterministic"])
        .arg(config)
        .arg(out)
        .output()
        .map_err(s)?;
    ensure(
        status.status.success(),
        String::from_utf8_lossy(&status.stderr).into_owned(),
    )
}

fn bench_determinism() -> Check {
    let bin = PathBuf::from(env!("CARGO_BIN_EXE_orp"));
    let dir = tempfile::tempdir().map_err(s)?;
    let config = dir.path().join("bench.json");
    std::fs::write(
        &config,
        r#"{
  "cells": [
    {"m": 5, "n": 8, "delta": 0.1, "class": "class1"},
    {"m": 4, "n": 6, "delta": 2.0, "class": "class2"}
  ],
  "methods": ["exact", "superset", "local-search", "oracle", "monte-carlo"],
  "repetitions": 3,
  "base_seed": 5
}"#,
    )
    .map_err(s)?;
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    run_bench(&bin, &config, &a)?;
    run_bench(&bin, &config, &b)?;
    for name in ["records.csv", "aggregate.csv"] {
        let x = std::fs::read(a.join(name)).map_err(s)?;
        let y = std::fs::read(b.join(name)).map_err(s)?;
        ensure(x == y, format!("{name} differs between runs"))?;
    }
    Ok("records.csv and aggregate.csv byte-identical across two runs".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("example1 golden values", example_one),
        ("example2 value and outcome ranges", example_two),
        ("example3 unique B-stability", example_three),
        ("transportation instance", transportation),
        (
            "class 1 batch: local search gap, exact time, superset sandwich",
            class1_comparison,
        ),
        (
            "exact method agrees with vertex oracle",
            exact_matches_oracle,
        ),
        ("oracle witnesses are extremal", witnesses_are_extremal),
        (
            "Monte Carlo range inside oracle range",
            monte_carlo_containment,
        ),
        (
            "McCormick relaxation contains optimal triples",
            mccormick_validity,
        ),
        ("bench output is deterministic", bench_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
