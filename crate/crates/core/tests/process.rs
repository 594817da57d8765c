mod common;

use common::*;
use hboot::constructions::{glued_cliques, h_prime, star_lower};
use hboot::process::{default_max_rounds, is_self_percolating, is_stable, run, run_frontier, step};
use hboot::{Graph, Pattern, Trajectory};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn compile(h: &Graph) -> Pattern {
    Pattern::compile(h).unwrap()
}

fn full_run(g: &Graph, h: &Graph) -> Trajectory {
    run(g, &compile(h), default_max_rounds(g.n())).unwrap()
}

/// The process driven by literal copy counting.
fn literal_rounds(g: &Graph, h: &Graph) -> Vec<Vec<(usize, usize)>> {
    let mut cur = g.clone();
    let mut rounds = Vec::new();
    loop {
        let batch = literal_step(&cur, h);
        if batch.is_empty() {
            return rounds;
        }
        for &(u, v) in &batch {
            cur.add_edge(u, v);
        }
        rounds.push(batch);
    }
}

fn random_pattern(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    loop {
        let n = rng.gen_range(2..=max_n);
        let p_edge = rng.gen_range(0.3..0.9);
        let h = random_graph(rng, n, p_edge);
        if h.edge_count() > 0 {
            return h;
        }
    }
}

fn check_trajectory(t: &Trajectory, p: &Pattern) {
    assert!(!t.truncated);
    assert_eq!(t.tau, t.rounds.len());
    let mut g = t.start.clone();
    for batch in &t.rounds {
        assert!(!batch.is_empty());
        assert!(batch.windows(2).all(|w| w[0] < w[1]), "batches are sorted");
        let before = g.clone();
        for &(u, v) in batch {
            assert!(u < v);
            assert!(g.add_edge(u, v), "batch edges are new");
        }
        assert!(before.is_spanning_subgraph_of(&g));
    }
    assert_eq!(g, t.final_graph);
    assert!(is_stable(&t.final_graph, p));
    assert!(t.tau <= t.start.n() * t.start.n().saturating_sub(1) / 2);
}

#[test]
fn step_examples() {
    let k3 = compile(&Graph::complete(3));
    assert_eq!(step(&Graph::path(3), &k3), vec![(0, 2)]);
    assert_eq!(step(&Graph::path(4), &k3), vec![(0, 2), (1, 3)]);
    assert_eq!(step(&Graph::path(4), &k3), literal_step(&Graph::path(4), &Graph::complete(3)));
    for n in 1..7 {
        assert!(step(&Graph::complete(n), &k3).is_empty());
        assert!(step(&Graph::complete(n), &compile(&Graph::cycle(4))).is_empty());
    }
}

#[test]
fn run_examples() {
    let k4me = Graph::complete(4).without_edge(0, 1);
    assert_eq!(full_run(&k4me, &Graph::complete(4)).tau, 1);

    let star = star_lower(4, 9).unwrap();
    let t = full_run(&star, &Graph::star(3));
    assert_eq!(t.tau, 3);
    assert_eq!(t.rounds, literal_rounds(&star, &Graph::star(3)));

    let (hp, _) = h_prime();
    let t = full_run(&hp, &hp);
    assert_eq!(t.tau, 0);
    assert!(t.rounds.is_empty());
    assert_eq!(t.final_graph, hp);
}

#[test]
fn stability_examples() {
    let k4 = compile(&Graph::complete(4));
    assert!(is_stable(&Graph::complete(6), &k4));
    assert!(!is_stable(&Graph::complete(4).without_edge(2, 3), &k4));
    let (hp, _) = h_prime();
    assert!(is_stable(&hp, &compile(&hp)));
}

#[test]
fn truncation_is_flagged() {
    let k3 = compile(&Graph::complete(3));
    let t = run(&Graph::path(4), &k3, 1).unwrap();
    assert!(t.truncated);
    assert_eq!(t.tau, 1);
    assert_eq!(t.rounds, vec![vec![(0, 2), (1, 3)]]);
    let t = run(&Graph::path(4), &k3, 2).unwrap();
    assert!(!t.truncated);
    assert_eq!(t.tau, 2);
    assert!(run(&Graph::path(4), &k3, 0).is_err());
    assert!(run_frontier(&Graph::path(4), &k3, 0).is_err());
}

#[test]
fn engine_matches_literal_process() {
    let mut rng = rng(301);
    for _ in 0..200 {
        let h = random_pattern(&mut rng, 4);
        let n = rng.gen_range(2..=8);
        let p_edge = rng.gen_range(0.1..0.6);
        let g = random_graph(&mut rng, n, p_edge);
        let p = compile(&h);
        let t = run(&g, &p, default_max_rounds(n)).unwrap();
        check_trajectory(&t, &p);
        assert_eq!(t.rounds, literal_rounds(&g, &h));
    }
}

#[test]
fn frontier_engine_matches_full_scan() {
    let mut rng = rng(302);
    for i in 0..500 {
        let h = random_pattern(&mut rng, 5);
        let n = rng.gen_range(2..=12);
        let p_edge = rng.gen_range(0.05..0.5);
        let g = if i % 3 == 0 {
            random_graph_with_twins(&mut rng, n, p_edge)
        } else {
            random_graph(&mut rng, n, p_edge)
        };
        let p = compile(&h);
        let a = run(&g, &p, default_max_rounds(n)).unwrap();
        let b = run_frontier(&g, &p, default_max_rounds(n)).unwrap();
        assert_eq!(a, b, "H = {}, G = {}", hboot::graph6::encode(&h), hboot::graph6::encode(&g));
    }
    // H - e keeps an edge away from the anchors: the frontier engine falls back to full scans.
    let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
    let g = Graph::from_edges(8, &[(0, 1), (2, 3), (4, 5)]).unwrap();
    let p = compile(&two_edges);
    assert_eq!(run(&g, &p, 50).unwrap(), run_frontier(&g, &p, 50).unwrap());
}

#[test]
fn subgraph_monotonicity() {
    let mut rng = rng(303);
    for _ in 0..200 {
        let h = random_pattern(&mut rng, 5);
        let n = rng.gen_range(2..=10);
        let p_edge = rng.gen_range(0.1..0.6);
        let g = random_graph(&mut rng, n, p_edge);
        let mut sub = g.clone();
        for (u, v) in g.edges() {
            if rng.gen_bool(0.3) {
                sub.remove_edge(u, v);
            }
        }
        let p = compile(&h);
        let big = run(&g, &p, default_max_rounds(n)).unwrap();
        let small = run(&sub, &p, default_max_rounds(n)).unwrap();
        for i in 0..=big.tau.max(small.tau) {
            assert!(small.graph_at(i).is_spanning_subgraph_of(&big.graph_at(i)), "round {i}");
        }
    }
}

#[test]
fn relabelling_equivariance() {
    let mut rng = rng(304);
    for _ in 0..150 {
        let h = random_pattern(&mut rng, 5);
        let n = rng.gen_range(2..=10);
        let p_edge = rng.gen_range(0.1..0.6);
        let g = random_graph(&mut rng, n, p_edge);
        let pi = random_permutation(&mut rng, h.n());
        let sigma = random_permutation(&mut rng, n);
        let a = full_run(&g, &h);
        let b = full_run(&g.relabel(&sigma), &h.relabel(&pi));
        assert_eq!(a.tau, b.tau);
        assert_eq!(a.final_graph.relabel(&sigma), b.final_graph);
        for (x, y) in a.rounds.iter().zip(&b.rounds) {
            let mut moved: Vec<_> = x.iter().map(|&(u, v)| (sigma[u].min(sigma[v]), sigma[u].max(sigma[v]))).collect();
            moved.sort_unstable();
            assert_eq!(&moved, y);
        }
    }
}

#[test]
fn complete_bipartite_pattern_finishes_within_linear_bound() {
    let mut rng = rng(305);
    for s in [3, 4] {
        let p = compile(&Graph::complete_bipartite(2, s));
        for _ in 0..300 {
            let n = rng.gen_range(s + 2..=40);
            let p_edge = rng.gen_range(0.02..0.3);
            let g = random_graph(&mut rng, n, p_edge);
            let t = run(&g, &p, default_max_rounds(n)).unwrap();
            assert!(!t.truncated);
            assert!(t.tau <= 4 * n + 3, "s = {s}, n = {n}, tau = {}", t.tau);
        }
    }
}

#[test]
fn self_percolation_examples() {
    for k in 3..=5 {
        let (g, _, _) = glued_cliques(k).unwrap();
        assert!(is_self_percolating(&g).unwrap(), "k = {k}");
        let t = full_run(&g, &g);
        assert_eq!(t.tau, usize::from(k > 3), "K_4 for k = 3, otherwise one step to the clique");
    }
    let star = Graph::star(3);
    assert!(!is_self_percolating(&star).unwrap());
    assert!(literal_step(&star, &star).is_empty());
    assert!(is_self_percolating(&Graph::complete(5).without_edge(0, 1)).unwrap());
    assert!(is_self_percolating(&Graph::empty(3)).is_err());
}

#[test]
fn trajectory_json_round_trip() {
    let star = star_lower(5, 12).unwrap();
    let t = full_run(&star, &Graph::star(4));
    assert_eq!(t.tau, 4);
    let v = t.to_json();
    assert_eq!(v["tau"], 4);
    assert_eq!(v["n"], 12);
    assert_eq!(Trajectory::from_json(&v).unwrap(), t);

    let mut bad = v.clone();
    bad["tau"] = 3.into();
    assert!(Trajectory::from_json(&bad).is_err());
    let mut bad = v.clone();
    bad["rounds"][0][0] = serde_json::json!([0, 0]);
    assert!(Trajectory::from_json(&bad).is_err());
    let mut bad = v;
    bad["final"] = hboot::graph6::encode(&star).into();
    assert!(Trajectory::from_json(&bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn trajectories_are_well_formed_and_agree_with_copy_counting(h in arb_pattern(5), g in arb_graph_between(1, 9)) {
        let p = compile(&h);
        let t = run(&g, &p, default_max_rounds(g.n())).unwrap();
        check_trajectory(&t, &p);
        prop_assert_eq!(&t.rounds, &literal_rounds(&g, &h));
        prop_assert_eq!(run_frontier(&g, &p, default_max_rounds(g.n())).unwrap(), t);
    }

    #[test]
    fn removing_start_edges_never_gets_ahead(h in arb_pattern(5), g in arb_graph_between(1, 9), drop in any::<u64>()) {
        let mut sub = g.clone();
        for (i, (u, v)) in g.edges().into_iter().enumerate() {
            if drop >> (i % 64) & 1 == 1 {
                sub.remove_edge(u, v);
            }
        }
        let p = compile(&h);
        let big = run(&g, &p, default_max_rounds(g.n())).unwrap();
        let small = run(&sub, &p, default_max_rounds(g.n())).unwrap();
        for i in 0..=big.tau.max(small.tau) {
            prop_assert!(small.graph_at(i).is_spanning_subgraph_of(&big.graph_at(i)));
        }
    }

    #[test]
    fn relabelling_the_start_relabels_the_rounds((g, sigma) in arb_relabelled(1, 9), (h, pi) in arb_relabelled(2, 5)) {
        prop_assume!(h.edge_count() > 0);
        let a = full_run(&g, &h);
        let b = full_run(&g.relabel(&sigma), &h.relabel(&pi));
        prop_assert_eq!(a.tau, b.tau);
        for (x, y) in a.rounds.iter().zip(&b.rounds) {
            let mut moved: Vec<_> = x.iter().map(|&(u, v)| (sigma[u].min(sigma[v]), sigma[u].max(sigma[v]))).collect();
            moved.sort_unstable();
            prop_assert_eq!(&moved, y);
        }
    }
}
