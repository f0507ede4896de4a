use rdist::analog::{analog_navigate, AnalogNetwork, DEFAULT_MAX_ITER, DEFAULT_TOL};
use rdist::experiments::{sweep_graph, GammaGrid};
use rdist::graph::{
    gen_binary_tree, gen_grid, gen_weighted_dense, read_edge_list, write_edge_list,
};
use rdist::navigation::{global_accuracy, greedy_descent, local_accuracy};
use rdist::oracles::{bfs_apsp, dijkstra_apsp, exact_apsp};
use rdist::resolvent::{communicability, critical_gain, r_distance, resolvent, rounded_r_distance};
use rdist::{Graph, GraphKind};

#[test]
fn grid8_greedy_paths_are_optimal_at_half_critical_gain() {
    let g = gen_grid(8).unwrap();
    let exact = bfs_apsp(&g).unwrap();
    let est = r_distance(&resolvent(&g, 0.5 * critical_gain(&g).unwrap()).unwrap());
    for s in 0..g.n() {
        for t in 0..g.n() {
            let p = greedy_descent(&g, &est, s, t, None).unwrap();
            assert!(p.reached, "{s} -> {t}");
            assert_eq!(p.length, exact.get(t, s), "{s} -> {t}");
        }
    }
}

#[test]
fn tree6_is_globally_exact_at_half_critical_gain() {
    let g = gen_binary_tree(6).unwrap();
    let exact = bfs_apsp(&g).unwrap();
    let est = rounded_r_distance(&resolvent(&g, 0.5 * critical_gain(&g).unwrap()).unwrap());
    assert_eq!(global_accuracy(&est, &exact).unwrap(), 1.0);
}

#[test]
fn grid8_has_locally_correct_regime_without_global_correctness() {
    let g = gen_grid(8).unwrap();
    let recs = sweep_graph("grid", &g, &GammaGrid::CriticalWindow { lo: 1e-3, hi: 0.9 }).unwrap();
    assert!(recs
        .iter()
        .any(|r| r.local_fraction == 1.0 && r.global_fraction < 1.0));
    // The local-correct interval contains the global-correct one.
    for r in recs.iter().filter(|r| r.global_fraction == 1.0) {
        assert_eq!(r.local_fraction, 1.0, "gamma {}", r.gamma);
    }
}

#[test]
fn communicability_matches_distance_sum() {
    let g = gen_grid(3).unwrap();
    let exact = bfs_apsp(&g).unwrap();
    let gamma = 0.01 * critical_gain(&g).unwrap();
    let total = communicability(&resolvent(&g, gamma).unwrap()).unwrap();
    let oracle: f64 = exact
        .as_slice()
        .iter()
        .filter(|d| d.is_finite())
        .map(|&d| gamma.powf(d))
        .sum();
    assert!(
        (total - oracle).abs() <= 0.01 * oracle,
        "{total} vs {oracle}"
    );
}

#[test]
fn real_weighted_r_approaches_distance_as_gain_shrinks() {
    let g = gen_weighted_dense(50, 0.5, 1.0, 100.0, 7).unwrap();
    let exact = dijkstra_apsp(&g);
    let errors: Vec<f64> = [1e-4, 1e-6, 1e-8]
        .iter()
        .map(|&gamma| {
            let raw = r_distance(&resolvent(&g, gamma).unwrap());
            raw.as_slice()
                .iter()
                .zip(exact.as_slice())
                .filter(|(_, d)| d.is_finite() && **d > 0.0)
                .map(|(r, d)| (r - d).abs() / d)
                .fold(0.0, f64::max)
        })
        .collect();
    assert!(errors[0] > errors[1] && errors[1] > errors[2], "{errors:?}");
}

/// At gain 1e-7 the R-distance cannot separate successors whose true costs
/// differ by less than about ln(k)/|ln gamma|; every miss must be such a tie.
#[test]
fn weighted_local_misses_are_near_ties() {
    let g = gen_weighted_dense(100, 0.5, 1.0, 100.0, 1).unwrap();
    let exact = exact_apsp(&g);
    let gamma = 1e-7;
    let raw = r_distance(&resolvent(&g, gamma).unwrap());
    let slack = 3.0_f64.ln() / gamma.ln().abs();
    let mut misses = 0;
    for goal in 0..g.n() {
        for i in (0..g.n()).filter(|&i| i != goal) {
            let cost = |j: usize, d: &rdist::DistanceMatrix| g.weight(j, i) + d.get(goal, j);
            let pick = g
                .successors(i)
                .min_by(|&a, &b| cost(a, &raw).total_cmp(&cost(b, &raw)))
                .unwrap();
            let margin = cost(pick, &exact) - exact.get(goal, i);
            if margin > 1e-9 {
                misses += 1;
                assert!(margin < slack, "goal {goal} from {i}: off by {margin}");
            }
        }
    }
    let local = local_accuracy(&g, &raw, &exact).unwrap();
    assert_eq!(local, 1.0 - misses as f64 / (g.n() * (g.n() - 1)) as f64);
    assert!(local > 0.998, "{local}");
}

#[test]
fn analog_network_reroutes_after_edge_removal() {
    let g = gen_grid(4).unwrap();
    let gamma = 0.5 * critical_gain(&g).unwrap();
    let mut net = AnalogNetwork::from_graph(&g, gamma).unwrap();
    let before = analog_navigate(&mut net, 0, 3, None, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
    assert_eq!(before.path.vertices, vec![0, 1, 2, 3]);

    // Cut 1 <-> 2 in both the network and a reference graph.
    net.set_connection(2, 1, 0.0).unwrap();
    net.set_connection(1, 2, 0.0).unwrap();
    let mut weights = g.weights().to_vec();
    weights[2 * 16 + 1] = f64::INFINITY;
    weights[16 + 2] = f64::INFINITY;
    let cut = Graph::from_weights(16, weights, GraphKind::Unweighted).unwrap();
    let exact = bfs_apsp(&cut).unwrap();

    let after = analog_navigate(&mut net, 0, 3, None, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
    assert!(after.path.reached);
    assert_eq!(after.path.length, exact.get(3, 0));
    assert_eq!(after.path.length, 5.0);
    assert!(after
        .path
        .vertices
        .windows(2)
        .all(|w| cut.has_edge(w[0], w[1])));
}

#[test]
fn edge_list_file_round_trip() {
    let g = gen_weighted_dense(12, 0.4, 1.0, 100.0, 5).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    write_edge_list(&g.to_edge_list(), &path).unwrap();
    let back = Graph::from_edge_list(&read_edge_list(&path).unwrap(), g.kind()).unwrap();
    assert_eq!(back.weights(), g.weights());
}
