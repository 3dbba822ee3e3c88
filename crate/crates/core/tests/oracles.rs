mod common;

use approx::assert_relative_eq;
use common::*;
use edgecover::closedform::{commute_time, refined_commutes};
use edgecover::exact::edge_cover_return_time;
use edgecover::generators::{parallel_pair, random_network, triangle, unit_path, RandomParams};
use edgecover::resistance::effective_resistance;
use edgecover::tours::{build_walk, ordered_arc_epoch_mean, WalkConstruction};
use edgecover::{Direction, EdgeId, Network, Orientation, SplitSpec, TimingModel, VertexId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_random(seed: u64, max_vertices: usize, max_extra: usize) -> Network {
    let n = 2 + seed as usize % (max_vertices - 1);
    let mut p = RandomParams::new(n, n - 1 + seed as usize % (max_extra + 1), seed);
    p.length_range = (0.2, 3.0);
    p.allow_loops = true;
    p.allow_parallel = true;
    random_network(&p).unwrap()
}

fn timing(model: TimingModel) -> Timing {
    match model {
        TimingModel::LSquared => Timing::Squared,
        TimingModel::BrownianMean => Timing::Brownian,
    }
}

fn sigma(walk: &edgecover::tours::ClosedWalk) -> Vec<(usize, bool)> {
    walk.arcs()
        .iter()
        .map(|a| (a.edge.0, a.direction == Direction::Forward))
        .collect()
}

#[test]
fn series_parallel_reducer_matches_laplacian() {
    let tri = triangle().edge_list();
    assert_relative_eq!(
        series_parallel_resistance(&tri, 0, 1).unwrap(),
        2.0 / 3.0,
        epsilon = 1e-12
    );
    assert_relative_eq!(
        laplacian_resistance(3, &tri, 0, 1),
        2.0 / 3.0,
        epsilon = 1e-12
    );
    // a Wheatstone bridge is not series-parallel
    let bridge = vec![
        (0, 1, 1.0),
        (0, 2, 1.0),
        (1, 2, 1.0),
        (1, 3, 1.0),
        (2, 3, 1.0),
    ];
    assert!(series_parallel_resistance(&bridge, 0, 3).is_none());
    assert_relative_eq!(laplacian_resistance(4, &bridge, 0, 3), 1.0, epsilon = 1e-12);
}

#[test]
fn resistance_matches_laplacian_oracle() {
    for seed in 0..60 {
        let net = small_random(seed, 7, 6);
        let list = net.edge_list();
        let n = net.vertex_count();
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                let r = effective_resistance(&net, VertexId(x), VertexId(y)).unwrap();
                assert_relative_eq!(r, laplacian_resistance(n, &list, x, y), max_relative = 1e-9);
            }
        }
    }
}

#[test]
fn commute_time_matches_hitting_times() {
    for seed in 0..30 {
        let net = small_random(seed, 6, 5);
        let n = net.vertex_count();
        let list = net.edge_list();
        let (x, y) = (0, n - 1);
        let expected = hitting_time(n, &list, x, y, Timing::Squared)
            + hitting_time(n, &list, y, x, Timing::Squared);
        let got = commute_time(&net, VertexId(x), VertexId(y)).unwrap();
        assert_relative_eq!(got, expected, max_relative = 1e-9);
    }
}

#[test]
fn exact_edge_cover_matches_state_space_oracle() {
    for model in [TimingModel::LSquared, TimingModel::BrownianMean] {
        let mut nets = vec![parallel_pair(), triangle(), unit_path(3).unwrap()];
        nets.extend((0..12).map(|s| small_random(s, 5, 3)));
        for net in nets {
            let o = cover_time(
                net.vertex_count(),
                &net.edge_list(),
                0,
                Cover::Edges,
                &[],
                timing(model),
            );
            let got = edge_cover_return_time(&net, VertexId(0), model).unwrap();
            assert_relative_eq!(got, o, max_relative = 1e-9);
        }
    }
    let pp = parallel_pair();
    let o = cover_time(2, &pp.edge_list(), 0, Cover::Edges, &[], Timing::Brownian);
    assert_relative_eq!(o, 7.7, epsilon = 1e-12);
}

#[test]
fn refined_formulas_match_state_space_oracle() {
    let mut cases: Vec<(Network, usize)> = vec![(triangle(), 0), (parallel_pair(), 1)];
    for seed in 0..40 {
        let net = small_random(seed, 5, 4);
        for e in 0..net.edge_count() {
            let edge = net.edge(EdgeId(e));
            if !edge.is_loop() && net.edge_count() > 1 {
                cases.push((net.clone(), e));
                break;
            }
        }
    }
    let mut checked = 0;
    for (net, e) in cases {
        let Ok(spec) = SplitSpec::single_edge(&net, EdgeId(e)) else {
            continue;
        };
        let v = refined_commutes(&spec);
        let list = net.edge_list();
        let (x, y) = (spec.x().0, spec.y().0);
        let a = spec.a_mask().to_vec();
        for (kind, want) in [
            (Refined::Either, v.t_either),
            (Refined::Forward, v.t_forward),
            (Refined::Backward, v.t_backward),
            (Refined::Both, v.t_both),
        ] {
            let o = refined_commute(net.vertex_count(), &list, &a, x, y, kind, Timing::Squared);
            assert_relative_eq!(want, o, max_relative = 1e-9);
        }
        checked += 1;
    }
    assert!(checked >= 10, "only {checked} splits");
}

#[test]
fn directed_epoch_oracle_gives_two_m_squared() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut nets = vec![
        triangle(),
        parallel_pair(),
        edgecover::generators::loop_network(1.5).unwrap(),
    ];
    nets.extend((0..8).map(|s| small_random(s, 5, 3)));
    for net in nets {
        let m = net.total_length();
        for how in [WalkConstruction::DepthFirst, WalkConstruction::Euler] {
            let walk = build_walk(&net, VertexId(0), how).unwrap();
            for _ in 0..3 {
                let o = Orientation::random(&net, &mut rng);
                let vertex_type: Vec<bool> = walk.arcs().iter().map(|a| !o.contains(*a)).collect();
                for t in [Timing::Squared, Timing::Brownian] {
                    let got = epoch_final_mean(
                        net.vertex_count(),
                        &net.edge_list(),
                        0,
                        &sigma(&walk),
                        &vertex_type,
                        t,
                    );
                    assert_relative_eq!(got, 2.0 * m * m, max_relative = 1e-9);
                }
            }
        }
    }
}

#[test]
fn arc_epoch_mean_matches_oracle() {
    let mut nets = vec![
        triangle(),
        parallel_pair(),
        edgecover::generators::loop_network(1.0).unwrap(),
    ];
    nets.extend((0..8).map(|s| small_random(s, 5, 3)));
    for net in nets {
        let want = ordered_arc_epoch_mean(&net).unwrap();
        for how in [WalkConstruction::DepthFirst, WalkConstruction::Euler] {
            let walk = build_walk(&net, VertexId(0), how).unwrap();
            let vertex_type = vec![false; walk.len()];
            let got = epoch_final_mean(
                net.vertex_count(),
                &net.edge_list(),
                0,
                &sigma(&walk),
                &vertex_type,
                Timing::Squared,
            );
            assert_relative_eq!(got, want, max_relative = 1e-9);
        }
    }
}

#[test]
fn vertex_cover_on_unit_path() {
    let list = unit_path(6).unwrap().edge_list();
    let v = |root, with_return| {
        cover_time(
            7,
            &list,
            root,
            Cover::Vertices { with_return },
            &[],
            Timing::Squared,
        )
    };
    assert_relative_eq!(v(3, false), 45.0, max_relative = 1e-9);
    assert_relative_eq!(v(0, false), 36.0, max_relative = 1e-9);
    assert_relative_eq!(v(0, true), 72.0, max_relative = 1e-9);
}

#[test]
fn extremal_instances() {
    let path = unit_path(6).unwrap().edge_list();
    assert_relative_eq!(
        cover_time(7, &path, 0, Cover::Edges, &[], Timing::Squared),
        72.0,
        max_relative = 1e-9
    );
    let lp = vec![(0, 0, 1.0)];
    assert_relative_eq!(
        cover_time(1, &lp, 0, Cover::Arcs, &[], Timing::Squared),
        3.0,
        max_relative = 1e-9
    );
}
