//! Estimator outputs must not move when the unobserved part of the graph
//! is redrawn.

use lrw_core::estimators::{
    count_collisions, estimate_ratio, estimate_total, weighted_mean_degree, Extraction, IndicatorRule, PpwFallback,
    Target, TotalOptions, WeightOptions,
};
use lrw_core::graph::fixtures;
use lrw_core::rng::substream;
use lrw_core::sampling::{detect_observations, run_walk, SampleGraph, WalkTrace, WeightScheme};
use lrw_core::{Graph, Init, MotifKind, MotifValue, Normalization, WalkConfig};
use rand::Rng;

fn outputs(g: &Graph, x: &WalkTrace, y: &WalkTrace) -> Vec<String> {
    let sg = SampleGraph::from_traces(g, &[x, y]).unwrap();
    let sx = SampleGraph::from_trace(g, x).unwrap();
    let mut out = Vec::new();
    let r = x.config().jump_rate;
    let all = Extraction::default();
    out.push(format!("{:?}", count_collisions(x, y, &sg, r, &all, &all)));
    out.push(format!("{:?}", weighted_mean_degree(&[x, y], &sg, r, &all)));
    for kind in MotifKind::ALL {
        out.push(format!("{:?}", detect_observations(x, &sx, kind, MotifValue::Product)));
        for scheme in [WeightScheme::Multiplicity, WeightScheme::Ppw] {
            for fallback in [PpwFallback::Multiplicity, PpwFallback::SkipWindow] {
                for indicator in [IndicatorRule::Revealing, IndicatorRule::Computable] {
                    let weights = WeightOptions {
                        scheme,
                        fallback,
                        indicator,
                    };
                    let opts = TotalOptions {
                        target: Target {
                            kind,
                            value: MotifValue::Product,
                        },
                        weights,
                        normalization: Normalization::Estimated { edges: 123.0 },
                    };
                    out.push(format!("{:?}", estimate_total(x, &sx, &opts)));
                    let ones = Target {
                        kind,
                        value: MotifValue::Ones,
                    };
                    out.push(format!("{:?}", estimate_ratio(x, &sx, opts.target, ones, &weights)));
                }
            }
        }
    }
    out
}

/// Same graph on every pair touching the seed and on every observed value;
/// everything else redrawn.
fn redraw_unobserved(g: &Graph, sg: &SampleGraph<'_>, rng: &mut impl Rng) -> Graph {
    let n = g.node_count();
    let mut edges: Vec<_> = sg.observed_edges();
    for i in 0..n {
        for j in (i + 1)..n {
            if !sg.in_seed(i) && !sg.in_seed(j) && rng.gen_bool(0.5) {
                edges.push((i, j));
            }
        }
    }
    let values = (0..n)
        .map(|v| {
            if sg.is_observed(v) {
                g.value(v)
            } else {
                rng.gen_range(0..2) as f64
            }
        })
        .collect();
    Graph::from_edges(n, &edges, values).unwrap()
}

#[test]
fn redrawing_the_unobserved_region_changes_nothing() {
    for seed in 0..20u64 {
        let g = fixtures::random(30, 0.15, seed);
        let cfg = WalkConfig::new(0.5, 0.4, 12, Init::Uniform).unwrap();
        let x = run_walk(&g, &cfg, &mut substream(seed, 0, 0)).unwrap();
        let y = run_walk(&g, &cfg, &mut substream(seed, 0, 1)).unwrap();
        let sg = SampleGraph::from_traces(&g, &[&x, &y]).unwrap();
        let baseline = outputs(&g, &x, &y);
        assert!(baseline.iter().filter(|s| s.starts_with("Ok(")).count() > baseline.len() / 2);
        let mut rng = substream(seed, 1, 0);
        for _ in 0..5 {
            let h = redraw_unobserved(&g, &sg, &mut rng);
            assert_eq!(outputs(&h, &x, &y), baseline, "seed {seed}");
        }
    }
}

#[test]
fn sample_graph_refuses_unobserved_queries() {
    use lrw_core::{Error, Topology};
    let g = fixtures::path5();
    let sg = SampleGraph::new(&g, [0]).unwrap();
    assert_eq!(Topology::neighbors(&sg, 0).unwrap(), &[1]);
    assert!(matches!(Topology::neighbors(&sg, 1), Err(Error::Unobserved(_))));
    assert!(matches!(Topology::is_adjacent(&sg, 2, 3), Err(Error::Unobserved(_))));
    assert!(!Topology::is_adjacent(&sg, 0, 3).unwrap());
    assert!(Topology::value(&sg, 1).is_ok());
    assert!(matches!(Topology::value(&sg, 2), Err(Error::Unobserved(_))));
}
