//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria 1-3, 8 and 9 are exact and fail the run. Criteria 4-7 are
//! Monte Carlo pattern checks on the calibrated graph; their verdicts and
//! measurements are printed without failing the run.

use std::process::ExitCode;
use std::time::Instant;

use lrw_core::chain::{
    build_pair_chain, stationary_deviation, stationary_pair, window_probability, ChainLimits, Solver,
};
use lrw_core::estimators::{
    estimate_size_cr, estimate_size_gr, estimate_size_grcr, estimate_total_window, exact_window_expectation,
    CollisionStat, Target, TotalOptions, WeightOptions,
};
use lrw_core::graph::fixtures;
use lrw_core::motif::{enumerate_motifs, graph_total};
use lrw_core::sampling::{FullS3p, WeightScheme};
use lrw_core::{Graph, MotifKind, MotifValue, Normalization, WalkConfig};
use lrw_experiments::table::Table;
use lrw_experiments::{run_campaign, CampaignConfig, Experiment};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

const GRID_R: [f64; 3] = [0.1, 1.0, 6.0];
const GRID_W: [f64; 3] = [0.0, 0.5, 1.0];

/// 24 graphs with 5 to 30 nodes, densities from sparse to dense, each
/// padded with isolated nodes.
fn random_graphs() -> Vec<Graph> {
    (0..24)
        .map(|k| {
            let n = 5 + (k * 7) % 26;
            let isolated = 1 + k % 3;
            let p = [0.08, 0.2, 0.45, 0.8][k % 4];
            let core = fixtures::random(n - isolated, p, 1000 + k as u64);
            let edges: Vec<_> = core.edges().collect();
            let values = (0..n).map(|v| (v % 3 == 0) as u8 as f64).collect();
            Graph::from_edges(n, &edges, values).unwrap()
        })
        .collect()
}

/// Criteria 1 and 2 share the solved laws.
fn lemma_and_mixed_equation() -> (Verdict, Verdict) {
    let start = Instant::now();
    let graphs = random_graphs();
    let (mut marginal, mut pair, mut mixed) = (0.0f64, 0.0f64, 0.0f64);
    let mut solves = 0;
    for g in &graphs {
        for r in GRID_R {
            for w in GRID_W {
                let cfg = WalkConfig::kernel(r, w).unwrap();
                let chain = build_pair_chain(g, &cfg, &ChainLimits::default()).unwrap();
                let pi = stationary_pair(&chain, Solver::Auto).unwrap();
                let dev = stationary_deviation(g, &cfg, &pi);
                marginal = marginal.max(dev.marginal);
                pair = pair.max(dev.pair);
                mixed = mixed.max(dev.mixed);
                solves += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let sizes = graphs.iter().map(Graph::node_count);
    let (lo, hi) = (sizes.clone().min().unwrap(), sizes.max().unwrap());
    let isolated = graphs.iter().all(|g| (0..g.node_count()).any(|v| g.degree(v) == 0));
    (
        verdict(
            marginal <= 1e-8 && pair <= 1e-8 && secs < 60.0 && isolated,
            format!(
                "{} graphs, N in [{lo}, {hi}], {solves} solves; max marginal deviation {marginal:.2e}, \
                 max pair deviation {pair:.2e}; {secs:.1}s",
                graphs.len()
            ),
        ),
        verdict(
            mixed <= 1e-8,
            format!("max mixed-equation residual {mixed:.2e} over the same grid"),
        ),
    )
}

fn graph_from_mask(n: usize, mask: u64, values: &[f64]) -> Graph {
    let pairs: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let edges: Vec<_> = pairs
        .iter()
        .enumerate()
        .filter(|(b, _)| mask >> b & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Graph::from_edges(n, &edges, values[..n].to_vec()).unwrap()
}

fn connected(g: &Graph) -> bool {
    let mut seen = vec![false; g.node_count()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if !std::mem::replace(&mut seen[u], true) {
                stack.push(u);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn unbiasedness() -> Verdict {
    let values = [1.0, 0.0, 2.5, 1.0, 0.5, 3.0];
    let cfg = WalkConfig::kernel(1.0, 1.0).unwrap();
    let mut worst = 0.0f64;
    let mut graphs = 0;
    let mut check = |g: &Graph| {
        let chain = build_pair_chain(g, &cfg, &ChainLimits::default()).unwrap();
        let st = stationary_pair(&chain, Solver::Direct).unwrap();
        for kind in [MotifKind::Edge, MotifKind::Triangle] {
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
                    let mean = exact_window_expectation(g, &cfg, &st, &opts).unwrap();
                    worst = worst.max((mean - theta).abs());
                }
            }
        }
        graphs += 1;
    };
    for n in 2..=6 {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            let g = graph_from_mask(n, mask, &values);
            if connected(&g) {
                check(&g);
            }
        }
    }
    let k3 = fixtures::complete(3);
    check(&k3);

    let chain = build_pair_chain(&k3, &cfg, &ChainLimits::default()).unwrap();
    let st = stationary_pair(&chain, Solver::Direct).unwrap();
    let opts = TotalOptions {
        target: Target {
            kind: MotifKind::Triangle,
            value: MotifValue::Ones,
        },
        weights: WeightOptions::default(),
        normalization: Normalization::Exact { edges: 3.0 },
    };
    let provider = FullS3p {
        graph: &k3,
        config: cfg,
    };
    let spot = estimate_total_window(&k3, &cfg, &[0, 1], 0, &opts, &provider)
        .unwrap()
        .value;
    let informative: f64 = (0..3)
        .flat_map(|a| (0..3).map(move |b| (a, b)))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| window_probability(&k3, &cfg, &st, &[a, b]).unwrap())
        .sum();
    let pass = worst <= 1e-10 && (spot - 9.0 / 8.0).abs() <= 1e-12 && (informative - 8.0 / 9.0).abs() <= 1e-12;
    verdict(
        pass,
        format!(
            "{graphs} graphs (connected N<=6 and K3), edge and triangle, both schemes: max |E - theta| {worst:.2e}; \
             K3 window estimate {spot:.12} (9/8), informative probability {informative:.12} (8/9)"
        ),
    )
}

fn f(t: &Table, row: usize, col: &str) -> f64 {
    t.get(row, col).unwrap().parse().unwrap()
}

fn run(experiment: Experiment) -> Table {
    run_campaign(&CampaignConfig::new(experiment)).unwrap().table
}

fn convergence() -> Verdict {
    let t = run(Experiment::Convergence);
    let mut worst_z = 0.0f64;
    let mut worst_gap = 0.0f64;
    for i in 0..t.rows().len() {
        let init = t.get(i, "init").unwrap();
        if init == "stationary" {
            worst_z = worst_z.max(f(&t, i, "z_equilibrium").abs());
        } else if t.get(i, "t") == Some("16") {
            worst_gap = worst_gap.max((f(&t, i, "mc_mean") - f(&t, i, "equilibrium")).abs());
        }
    }
    verdict(
        worst_z <= 3.0 && worst_gap <= 0.01,
        format!(
            "B = {}: stationary start max |z| {worst_z:.2}; uniform and fixed starts max |E(Y_16) - E(Y_inf)| \
             {worst_gap:.4}",
            t.get(0, "replicates").unwrap()
        ),
    )
}

fn prevalence() -> Verdict {
    let t = run(Experiment::Prevalence);
    let mut worst: (f64, String) = (0.0, String::new());
    let mut within = 0;
    for i in 0..t.rows().len() {
        let z = (f(&t, i, "mean_mu") - f(&t, i, "mu_true")) / f(&t, i, "se_mu");
        if z.abs() <= 3.0 {
            within += 1;
        }
        if z.abs() > worst.0 {
            let cell = format!(
                "T={} r={} w={}",
                t.get(i, "length").unwrap(),
                t.get(i, "r").unwrap(),
                t.get(i, "w").unwrap()
            );
            worst = (z.abs(), cell);
        }
    }
    let sd = |w: &str| {
        let row = t
            .select(&[("length", "100"), ("r", "0.100000"), ("w", w)])
            .next()
            .unwrap();
        f(&t, row, "sd_mu")
    };
    let (sd_low, sd_one) = (sd("0.0100000"), sd("1.00000"));
    let ratio = sd_low / sd_one;
    verdict(
        within == t.rows().len() && ratio <= 0.85,
        format!(
            "{within}/{} cells within 3 SE (worst |z| {:.2} at {}); T=100 r=0.1 SD {sd_low:.4} (w=0.01) vs {sd_one:.4} \
             (w=1), ratio {ratio:.3}",
            t.rows().len(),
            worst.0,
            worst.1
        ),
    )
}

fn size() -> Verdict {
    let t = run(Experiment::Size);
    let truth = f(&t, 0, "truth");
    let mut worst = [0.0f64; 3];
    for i in 0..t.rows().len() {
        let bias = (f(&t, i, "mean") / truth - 1.0).abs();
        let k = match t.get(i, "estimator").unwrap() {
            "cr" => 0,
            "gr" => 1,
            _ => 2,
        };
        worst[k] = worst[k].max(bias);
    }
    let cell = [("length", "50"), ("r", "0.100000"), ("w", "1.00000")];
    let se = |est: &str| {
        let filter = [cell[0], cell[1], cell[2], ("estimator", est)];
        let row = t.select(&filter).next().unwrap();
        f(&t, row, "se")
    };
    let (cr, gr, grcr) = (se("cr"), se("gr"), se("grcr"));
    verdict(
        worst[1] <= 0.03 && worst[0] <= 0.16 && worst[2] <= 0.16 && gr < grcr && grcr < cr,
        format!(
            "max relative bias CR {:.1}%, GR {:.1}%, GR-CR {:.1}%; n=50 r=0.1 w=1 SE GR {gr:.3} < GR-CR {grcr:.3} < \
             CR {cr:.3}",
            100.0 * worst[0],
            100.0 * worst[1],
            100.0 * worst[2]
        ),
    )
}

fn motif_total() -> Verdict {
    let t = run(Experiment::MotifTotal);
    let mut theta_worst = 0.0f64;
    let mut thetas = Vec::new();
    let (mut mu_within, mut mu_cells, mut mu_worst) = (0, 0, 0.0f64);
    for i in t.select(&[("length", "100")]).collect::<Vec<_>>() {
        let (mean, truth) = (f(&t, i, "mean"), f(&t, i, "truth"));
        match t.get(i, "quantity").unwrap() {
            "theta" => {
                theta_worst = theta_worst.max((mean / truth - 1.0).abs());
                thetas.push(format!("{mean:.1}"));
            }
            _ => {
                let z = (mean - truth) / f(&t, i, "se");
                mu_cells += 1;
                mu_within += (z.abs() <= 3.0) as usize;
                mu_worst = mu_worst.max(z.abs());
            }
        }
    }
    verdict(
        theta_worst <= 0.05 && mu_within == mu_cells,
        format!(
            "T=100: theta means [{}] vs {}, max relative error {:.1}%; mu within 3 SE in {mu_within}/{mu_cells} \
             cells (worst |z| {mu_worst:.2})",
            thetas.join(", "),
            t.get(0, "theta").unwrap(),
            100.0 * theta_worst
        ),
    )
}

fn plug_in() -> Verdict {
    let mut worst = 0.0f64;
    for (edges, nodes) in [(299usize, 100usize), (3, 3), (0, 7), (1225, 50)] {
        for r in [0.1, 1.0, 6.0] {
            for (nx, ny) in [(50, 50), (100, 37)] {
                let (big_r, big_n) = (edges as f64, nodes as f64);
                let stat = CollisionStat {
                    m: (nx * ny) as f64 / (2.0 * big_r + r * big_n),
                    matches: 0,
                    n_x: nx,
                    n_y: ny,
                };
                let dbar = 2.0 * big_r / big_n;
                let rel = |x: f64| if big_r == 0.0 { x.abs() } else { (x / big_r - 1.0).abs() };
                let grcr = estimate_size_grcr(&stat, dbar, r).unwrap();
                worst = worst
                    .max(rel(estimate_size_cr(&stat, r, nodes).unwrap().edges))
                    .max(rel(estimate_size_gr(dbar, nodes).edges))
                    .max(rel(grcr.edges))
                    .max((grcr.nodes.unwrap() / big_n - 1.0).abs());
            }
        }
    }
    verdict(
        worst <= 1e-12,
        format!("max relative error {worst:.2e} for CR, GR and GR-CR"),
    )
}

fn reproducibility() -> Verdict {
    let mut checked = Vec::new();
    let mut same = true;
    for experiment in [
        Experiment::StationaryCheck,
        Experiment::Convergence,
        Experiment::Prevalence,
        Experiment::Size,
        Experiment::MotifTotal,
    ] {
        let mut cfg = CampaignConfig::new(experiment);
        cfg.seed = 77;
        cfg.replicates = cfg.replicates.min(300);
        cfg.theta_replicates = 300;
        cfg.normalizations = vec![lrw_experiments::NormMode::Exact, lrw_experiments::NormMode::Estimated];
        if experiment == Experiment::StationaryCheck {
            cfg.graph = lrw_experiments::GraphSource::Generated {
                params: lrw_core::graph::CaseGraphParams {
                    nodes: 25,
                    cases: 5,
                    ..lrw_core::graph::CaseGraphParams::CALIBRATED
                },
                seed: 5,
            };
        }
        let csv = |threads: Option<usize>, parallel: bool| {
            let mut c = cfg.clone();
            c.threads = threads;
            c.parallel = parallel;
            run_campaign(&c).unwrap().table.to_csv()
        };
        let first = csv(Some(4), true);
        same &= first == csv(Some(4), true) && first == csv(Some(2), true) && first == csv(None, false);
        checked.push(format!("{experiment} ({} bytes)", first.len()));
    }
    verdict(
        same,
        format!("reruns, 4 vs 2 threads and serial identical for {}", checked.join(", ")),
    )
}

fn main() -> ExitCode {
    let (c1, c2) = lemma_and_mixed_equation();
    let mut exact_failed = false;
    let mut report = |n: usize, v: Verdict, exact: bool| {
        println!("criterion {n} {}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        exact_failed |= exact && !v.pass;
    };
    report(1, c1, true);
    report(2, c2, true);
    report(3, unbiasedness(), true);
    report(4, convergence(), false);
    report(5, prevalence(), false);
    report(6, size(), false);
    report(7, motif_total(), false);
    report(8, plug_in(), true);
    report(9, reproducibility(), true);
    if exact_failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
