//! Acceptance suite: one PASS/FAIL line per criterion. A criterion that
//! passes but overruns its time budget is reported as FAIL.
//!
//! Failures are reported, not fatal, so a known-unattainable criterion does
//! not break `cargo test`; set `RDIST_ACCEPTANCE_STRICT=1` to exit nonzero on
//! any FAIL. Set `RDIST_ACCEPTANCE_SLOW=1` to add the 1000-vertex weighted
//! run to criterion 6.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rdist::analog::{analog_navigate, network_distances_from, AnalogNetwork};
use rdist::experiments::{
    bench_graph, emit_csv, read_csv, sweep_graph, weighted_correlation, BenchRecord, GammaGrid,
    GraphFamily, SweepRecord, GRID_PER_DECADE,
};
use rdist::graph::{gen_binary_tree, gen_grid, gen_hanoi, gen_random_dense, Edge, EdgeList};
use rdist::navigation::global_tally;
use rdist::oracles::{exact_apsp, graph_diameter, max_redundancy};
use rdist::resolvent::{
    communicability, critical_gain, gamma_bounds, precision_floor, r_distance, resolvent,
    rounded_r_distance, DEFAULT_SAFETY,
};
use rdist::{Graph, GraphKind};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// Gamma below which a pair's shortest walks dominate all longer ones:
/// half of `1 / (N_max + 1)` with `N_max` the largest shortest-walk count.
fn redundancy_cap(g: &Graph, d_max: usize) -> Result<f64, String> {
    let n_max = max_redundancy(g, d_max).map_err(e)?;
    Ok(0.5 / (n_max as f64 + 1.0))
}

fn diameter(exact: &rdist::DistanceMatrix) -> u32 {
    graph_diameter(exact).ceil().max(1.0) as u32
}

fn oracle_exactness() -> Outcome {
    let families = [
        (GraphFamily::Hanoi, 81),
        (GraphFamily::Grid, 64),
        (GraphFamily::BinaryTree, 255),
        (GraphFamily::RandomDense { p: 0.5, seed: 1 }, 128),
        (
            GraphFamily::PowerLaw {
                exponent: 3.0,
                seed: 1,
            },
            256,
        ),
    ];
    let mut notes = Vec::new();
    for (family, size) in families {
        let g = family.build(size).map_err(e)?;
        let exact = exact_apsp(&g);
        let d = diameter(&exact);
        let gc = critical_gain(&g).map_err(e)?;
        let gamma = (DEFAULT_SAFETY * gc).min(redundancy_cap(&g, d as usize)?);
        let est = rounded_r_distance(&resolvent(&g, gamma).map_err(e)?);
        let tally = global_tally(&est, &exact).map_err(e)?;
        check(tally.correct == tally.evaluated, || {
            format!(
                "{}({}) at gamma {gamma:.3e}: {}/{} pairs exact",
                family.name(),
                g.n(),
                tally.correct,
                tally.evaluated
            )
        })?;
        notes.push(format!("{}({}) gamma={gamma:.2e}", family.name(), g.n()));
    }
    Ok(notes.join(", "))
}

fn bracket_property() -> Outcome {
    let g = gen_grid(4).map_err(e)?;
    let exact = exact_apsp(&g);
    let n_max = max_redundancy(&g, diameter(&exact) as usize).map_err(e)?;
    let gamma = 0.5 / (n_max as f64 + 1.0);
    let raw = r_distance(&resolvent(&g, gamma).map_err(e)?);
    let mut checked = 0;
    for i in 0..g.n() {
        for j in 0..g.n() {
            let (r, d) = (raw.get(i, j), exact.get(i, j));
            if i == j || !r.is_finite() {
                continue;
            }
            check(d - 1.0 < r && r < d, || {
                format!("R[{i}][{j}] = {r} outside ({}, {d})", d - 1.0)
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "N_max={n_max}, gamma={gamma:.4}, {checked} entries strictly bracketed"
    ))
}

fn local_without_global() -> Outcome {
    let g = gen_grid(12).map_err(e)?;
    let recs = sweep_graph("grid", &g, &GammaGrid::Auto).map_err(e)?;
    let hit = recs
        .iter()
        .find(|r| r.local_fraction == 1.0 && r.global_fraction < 1.0)
        .ok_or_else(|| format!("none of {} gamma points is local-only", recs.len()))?;
    Ok(format!(
        "gamma={:.3e} (={:.3} gamma_c): local=1, global={:.4}",
        hit.gamma, hit.gamma_over_critical, hit.global_fraction
    ))
}

fn precision_floor_cutoff() -> Outcome {
    let g = gen_hanoi(5).map_err(e)?;
    let d = diameter(&exact_apsp(&g));
    check(d == 31, || format!("hanoi(5) diameter is {d}, expected 31"))?;
    let floor = precision_floor(d);
    let recs = sweep_graph("hanoi", &g, &GammaGrid::Auto).map_err(e)?;
    // Lowest gamma with global accuracy 1 that has only failures below it.
    let first_exact = recs
        .iter()
        .position(|r| r.global_fraction == 1.0)
        .ok_or("no gamma reaches global accuracy 1")?;
    check(first_exact > 0, || {
        "sweep does not start below the cutoff".into()
    })?;
    let (below, at) = (&recs[first_exact - 1], &recs[first_exact]);
    let step = 1.0 / f64::from(GRID_PER_DECADE);
    let offset = (at.gamma / floor).log10();
    check(offset.abs() <= step + 1e-12, || {
        format!(
            "transition at {:.4e}, floor {floor:.4e}: {:.2} grid steps apart",
            at.gamma,
            offset / step
        )
    })?;
    Ok(format!(
        "floor={floor:.4e}; global {:.4} at {:.4e} -> 1 at {:.4e} ({:+.2} steps)",
        below.global_fraction,
        below.gamma,
        at.gamma,
        offset / step
    ))
}

fn failed(r: &SweepRecord) -> bool {
    r.singular || r.negative_entries || r.local_fraction < 1.0 || r.global_fraction < 1.0
}

fn critical_gain_cutoff() -> Outcome {
    let mut notes = Vec::new();
    for n in [128, 256] {
        let g = gen_random_dense(n, 0.5, 1).map_err(e)?;
        let grid = GammaGrid::CriticalWindow { lo: 0.01, hi: 3.0 };
        let recs = sweep_graph("dense", &g, &grid).map_err(e)?;
        let last_local = recs
            .iter()
            .filter(|r| !r.singular && !r.negative_entries && r.local_fraction == 1.0)
            .map(|r| r.gamma_over_critical)
            .fold(f64::NAN, f64::max);
        check((0.2..=1.0).contains(&last_local), || {
            format!("dense({n}): last local-exact gamma at {last_local:.3} gamma_c")
        })?;
        let above: Vec<_> = recs
            .iter()
            .filter(|r| r.gamma_over_critical >= 1.1)
            .collect();
        check(!above.is_empty(), || {
            format!("dense({n}): no points above 1.1 gamma_c")
        })?;
        if let Some(ok) = above.iter().find(|r| !failed(r)) {
            return Err(format!(
                "dense({n}): fully accurate at {:.3} gamma_c",
                ok.gamma_over_critical
            ));
        }
        notes.push(format!(
            "dense({n}) last local=1 at {last_local:.3} gamma_c, {} points >= 1.1 gamma_c all fail",
            above.len()
        ));
    }
    Ok(notes.join("; "))
}

fn weighted_correlation_check() -> Outcome {
    let seed = 1;
    let run = weighted_correlation(100, 0.5, 1.0, 100.0, &[1e-7, 1e-8], seed).map_err(e)?;
    check(run.skipped.is_empty(), || {
        format!("skipped points: {:?}", run.skipped)
    })?;
    let (at7, at8) = (&run.records[0], &run.records[1]);
    check(at7.r_squared >= 0.99, || {
        format!("r^2 = {} at 1e-7", at7.r_squared)
    })?;
    check(at8.local_fraction == 1.0, || {
        let wrong = ((1.0 - at8.local_fraction) * 9900.0).round();
        format!(
            "r^2={:.5} at 1e-7 ok, but local fraction {:.6} at 1e-8 ({wrong} of 9900 successors wrong)",
            at7.r_squared, at8.local_fraction
        )
    })?;
    let mut note = format!(
        "n=100: r^2={:.5} at 1e-7, local={} at 1e-8",
        at7.r_squared, at8.local_fraction
    );
    if std::env::var("RDIST_ACCEPTANCE_SLOW").is_ok_and(|v| v == "1") {
        let big = weighted_correlation(1000, 0.5, 1.0, 100.0, &[1e-7, 1e-8], seed).map_err(e)?;
        check(big.records.len() == 2, || {
            format!("n=1000 skipped: {:?}", big.skipped)
        })?;
        let (b7, b8) = (&big.records[0], &big.records[1]);
        check(b7.r_squared >= 0.99 && b8.local_fraction == 1.0, || {
            format!("n=1000: r^2={} local={}", b7.r_squared, b8.local_fraction)
        })?;
        note += &format!(
            "; n=1000: r^2={:.5}, local={}",
            b7.r_squared, b8.local_fraction
        );
    } else {
        note += "; n=1000 run skipped (RDIST_ACCEPTANCE_SLOW=1)";
    }
    Ok(note)
}

fn analog_equivalence() -> Outcome {
    const TOL: f64 = 1e-13;
    const MAX_ITER: usize = 100_000;
    let mut worst = 0.0f64;
    for (name, g) in [
        ("tree(6)", gen_binary_tree(6).map_err(e)?),
        ("grid(6)", gen_grid(6).map_err(e)?),
    ] {
        let gamma = 0.5 * critical_gain(&g).map_err(e)?;
        let raw = r_distance(&resolvent(&g, gamma).map_err(e)?);
        let mut net = AnalogNetwork::from_graph(&g, gamma).map_err(e)?;
        for s in 0..g.n() {
            let col = network_distances_from(&mut net, s, TOL, MAX_ITER).map_err(e)?;
            for (i, &v) in col.iter().enumerate() {
                let diff = (v - raw.get(i, s)).abs();
                check(diff <= 1e-6, || {
                    format!(
                        "{name}: unit {i} from {s}: analog {v}, resolvent {}",
                        raw.get(i, s)
                    )
                })?;
                worst = worst.max(diff);
            }
        }
    }
    let g = gen_grid(6).map_err(e)?;
    let exact = exact_apsp(&g);
    let mut net = AnalogNetwork::from_graph(&g, 0.5 * critical_gain(&g).map_err(e)?).map_err(e)?;
    let mut routed = 0;
    for s in 0..g.n() {
        for t in 0..g.n() {
            let p = analog_navigate(&mut net, s, t, None, TOL, MAX_ITER)
                .map_err(e)?
                .path;
            check(p.reached && p.length == exact.get(t, s), || {
                format!(
                    "grid(6) {s}->{t}: length {} vs {}",
                    p.length,
                    exact.get(t, s)
                )
            })?;
            routed += 1;
        }
    }
    Ok(format!(
        "max |dR| = {worst:.2e}; {routed} analog routes optimal on grid(6)"
    ))
}

fn communicability_identity() -> Outcome {
    let g = gen_binary_tree(5).map_err(e)?;
    let exact = exact_apsp(&g);
    let gamma = 0.01 * critical_gain(&g).map_err(e)?;
    let total = communicability(&resolvent(&g, gamma).map_err(e)?).map_err(e)?;
    let oracle: f64 = exact
        .as_slice()
        .iter()
        .filter(|d| d.is_finite())
        .map(|&d| gamma.powf(d))
        .sum();
    let rel = (total - oracle).abs() / oracle;
    check(rel <= 0.01, || {
        format!("sum Y = {total}, sum gamma^D = {oracle}")
    })?;
    Ok(format!(
        "sum Y = {total:.6}, sum gamma^D = {oracle:.6}, rel diff {rel:.2e}"
    ))
}

fn runtime_report() -> Outcome {
    let dir = tempfile::tempdir().map_err(e)?;
    let mut notes = Vec::new();
    for n in [256, 512, 1024] {
        let g = gen_random_dense(n, 0.5, 1).map_err(e)?;
        let first = bench_graph("dense", &g, DEFAULT_SAFETY, 5).map_err(e)?;
        let second = bench_graph("dense", &g, DEFAULT_SAFETY, 5).map_err(e)?;
        let path = dir.path().join(format!("bench_dense_{n}.csv"));
        emit_csv(&first, &path).map_err(e)?;
        let back: Vec<BenchRecord> = read_csv(&path).map_err(e)?;
        check(back.len() == 3, || {
            format!("n={n}: {} records read back", back.len())
        })?;
        for (a, b) in first.iter().zip(&second) {
            check(a.applicable, || {
                format!("n={n}: {} inapplicable", a.algorithm)
            })?;
            check(
                a.ratio_to_r_distance.is_finite() && a.ratio_to_r_distance > 0.0,
                || format!("n={n}: {} ratio {}", a.algorithm, a.ratio_to_r_distance),
            )?;
            let spread =
                a.median_seconds.max(b.median_seconds) / a.median_seconds.min(b.median_seconds);
            check(spread <= 1.5, || {
                format!(
                    "n={n}: {} medians {:.4}s vs {:.4}s",
                    a.algorithm, a.median_seconds, b.median_seconds
                )
            })?;
        }
        notes.push(format!(
            "n={n}: fw/r={:.2} dijkstra/r={:.2}",
            first[1].ratio_to_r_distance, first[2].ratio_to_r_distance
        ));
    }
    Ok(notes.join(", "))
}

/// An 11-clique (critical gain 1/10) feeding a directed chain of 330 vertices.
fn clique_with_tail(clique: usize, tail: usize) -> Result<Graph, String> {
    let mut edges = Vec::new();
    for i in 0..clique {
        for j in 0..clique {
            if i != j {
                edges.push(Edge::new(i, j, 1.0));
            }
        }
    }
    for k in 0..tail {
        let from = if k == 0 { 0 } else { clique + k - 1 };
        edges.push(Edge::new(from, clique + k, 1.0));
    }
    let el = EdgeList::new(clique + tail, edges).map_err(e)?;
    Graph::from_edge_list(&el, GraphKind::Unweighted).map_err(e)
}

fn feasibility_conflict() -> Outcome {
    let g = clique_with_tail(11, 330)?;
    let exact = exact_apsp(&g);
    let d = diameter(&exact);
    check(d > 323, || format!("diameter {d} <= 323"))?;
    let bounds = gamma_bounds(&g, d).map_err(e)?;
    check((bounds.critical_gain - 0.1).abs() < 1e-6, || {
        format!("critical gain {}", bounds.critical_gain)
    })?;
    check(!bounds.feasible, || {
        format!(
            "reported feasible: floor {} < gamma_c {}",
            bounds.precision_floor_for_dmax, bounds.critical_gain
        )
    })?;
    let recs = sweep_graph("clique_tail", &g, &GammaGrid::Auto).map_err(e)?;
    if let Some(r) = recs.iter().find(|r| r.global_fraction == 1.0) {
        return Err(format!("global accuracy 1 at gamma {:.4e}", r.gamma));
    }
    let best = recs.iter().map(|r| r.global_fraction).fold(0.0, f64::max);
    Ok(format!(
        "diameter {d}, floor {:.4} > gamma_c {:.4}; best global {best:.4} over {} points",
        bounds.precision_floor_for_dmax,
        bounds.critical_gain,
        recs.len()
    ))
}

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            name: "oracle exactness",
            budget: secs(60),
            run: oracle_exactness,
        },
        Criterion {
            name: "bracket property",
            budget: secs(5),
            run: bracket_property,
        },
        Criterion {
            name: "local without global",
            budget: secs(120),
            run: local_without_global,
        },
        Criterion {
            name: "precision-floor cutoff",
            budget: secs(120),
            run: precision_floor_cutoff,
        },
        Criterion {
            name: "critical-gain cutoff",
            budget: secs(300),
            run: critical_gain_cutoff,
        },
        Criterion {
            name: "weighted correlation",
            budget: secs(600),
            run: weighted_correlation_check,
        },
        Criterion {
            name: "analog equivalence",
            budget: secs(60),
            run: analog_equivalence,
        },
        Criterion {
            name: "communicability identity",
            budget: secs(5),
            run: communicability_identity,
        },
        Criterion {
            name: "runtime report",
            budget: None,
            run: runtime_report,
        },
        Criterion {
            name: "feasibility conflict",
            budget: secs(120),
            run: feasibility_conflict,
        },
    ];
    let mut failures = 0;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let took = start.elapsed();
        if let (Ok(_), Some(budget)) = (&outcome, c.budget) {
            if took > budget {
                outcome = Err(format!("took {took:.1?}, budget {budget:?}"));
            }
        }
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} [{:>2}] {} ({took:.2?}): {detail}", k + 1, c.name);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    let strict = std::env::var("RDIST_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if failures == 0 || !strict {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
