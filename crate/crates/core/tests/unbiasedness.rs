//! `E[θ̂_t] = θ` by exhaustive enumeration over the stationary window law.

mod common;

use common::connected_graphs;
use lrw_core::chain::{build_pair_chain, stationary_pair, ChainLimits, Solver};
use lrw_core::estimators::{exact_window_expectation, Target, TotalOptions, WeightOptions};
use lrw_core::graph::fixtures;
use lrw_core::motif::{enumerate_motifs, graph_total};
use lrw_core::sampling::WeightScheme;
use lrw_core::{Graph, MotifKind, MotifValue, Normalization, WalkConfig};

const VALUES: [f64; 6] = [1.0, 0.0, 2.5, 1.0, 0.5, 3.0];

fn check(g: &Graph, cfg: &WalkConfig, kinds: &[MotifKind]) {
    let chain = build_pair_chain(g, cfg, &ChainLimits::default()).unwrap();
    let st = stationary_pair(&chain, Solver::Direct).unwrap();
    for &kind in kinds {
        for value in [MotifValue::Ones, MotifValue::Product] {
            let theta = graph_total(&enumerate_motifs(g, kind, value));
            for scheme in [WeightScheme::Multiplicity, WeightScheme::Ppw] {
                let opts = TotalOptions {
                    target: Target { kind, value },
                    weights: WeightOptions {
                        scheme,
                        ..WeightOptions::default()
                    },
                    normalization: Normalization::Exact {
                        edges: g.edge_count() as f64,
                    },
                };
                let mean = exact_window_expectation(g, cfg, &st, &opts).unwrap();
                assert!(
                    (mean - theta).abs() <= 1e-10,
                    "{kind} {value:?} {scheme:?} r={} w={}: E = {mean}, θ = {theta}, edges {:?}",
                    cfg.jump_rate,
                    cfg.backtrack_weight,
                    g.edges().collect::<Vec<_>>()
                );
            }
        }
    }
}

#[test]
fn edges_and_triangles_on_every_connected_graph_up_to_six_nodes() {
    let cfg = WalkConfig::kernel(1.0, 1.0).unwrap();
    let mut graphs = 0;
    for n in 2..=6 {
        for g in connected_graphs(n, &VALUES) {
            check(&g, &cfg, &[MotifKind::Edge, MotifKind::Triangle]);
            graphs += 1;
        }
    }
    // Connected labelled graphs on 2..=6 nodes.
    assert_eq!(graphs, 1 + 4 + 38 + 728 + 26704);
    check(&fixtures::complete(3), &cfg, &[MotifKind::Edge, MotifKind::Triangle]);
}

#[test]
fn every_kind_and_backtracking_weight_up_to_five_nodes() {
    for n in 2..=5 {
        for g in connected_graphs(n, &VALUES) {
            for r in [0.1, 6.0] {
                for w in [0.0, 0.5, 1.0] {
                    check(&g, &WalkConfig::kernel(r, w).unwrap(), &MotifKind::ALL);
                }
            }
        }
    }
}

#[test]
fn disconnected_graphs_with_isolated_nodes() {
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4)], VALUES.to_vec()).unwrap();
    for w in [0.0, 0.5, 1.0] {
        check(&g, &WalkConfig::kernel(0.7, w).unwrap(), &MotifKind::ALL);
    }
}
