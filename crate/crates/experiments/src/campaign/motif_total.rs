use lrw_core::estimators::{
    count_collisions, estimate_ratio, estimate_size_grcr, estimate_total, weighted_mean_degree, Extraction, Target,
    TotalOptions,
};
use lrw_core::motif::{enumerate_motifs, graph_total};
use lrw_core::sampling::SampleGraph;
use lrw_core::{Graph, MotifValue, Normalization};

use super::{replicates, stream, table_with, CampaignWalker, CellFailures, CellKey, Outcomes, Report};
use crate::config::{CampaignConfig, NormMode};
use crate::error::Result;
use crate::table::{num, opt_num};

/// Motif ratio `μ̂` over `replicates` walks and motif total `θ̂` over
/// `theta_replicates` walks per normalization. Replicate `k` uses the same
/// walk `X` for every quantity; the estimated normalization adds an
/// independent walk `Y` for the combined size estimate.
pub fn motif_total(cfg: &CampaignConfig, g: &Graph) -> Result<Report> {
    let mut report = Report::new(table_with(&[
        "motif",
        "weights",
        "indicator",
        "ppw_fallback",
        "quantity",
        "normalization",
        "truth",
        "mean",
        "sd",
        "se",
        "failures",
        "failure_rate",
        "theta",
        "theta_1",
        "mu",
    ]));
    let kind = cfg.motif;
    let theta = enumerate_motifs(g, kind, MotifValue::Ones).len() as f64;
    let theta_1 = graph_total(&enumerate_motifs(g, kind, MotifValue::Product));
    let mu = (theta > 0.0).then(|| theta_1 / theta);
    let target = |value| Target { kind, value };
    let all = Extraction::default();
    let mut cell = 0;
    for &length in &cfg.lengths {
        for &r in &cfg.jump_rates {
            for &w in &cfg.backtrack_weights {
                for &init in &cfg.inits {
                    let walker = CampaignWalker::new(g, r, w, length, init, cfg.burn_in)?;
                    let key = CellKey {
                        cfg,
                        graph: g,
                        replicates: None,
                        r,
                        w,
                        length: Some(length),
                        init: Some(init),
                    };
                    let mut emit = |quantity: &str, norm: &str, truth: Option<f64>, b: usize, o: Outcomes| {
                        let key = CellKey {
                            replicates: Some(b),
                            ..key
                        };
                        let mut row = key.cells();
                        row.extend([
                            kind.name().to_string(),
                            cfg.weights.scheme.name().to_string(),
                            cfg.weights.indicator.name().to_string(),
                            cfg.weights.fallback.name().to_string(),
                            quantity.to_string(),
                            norm.to_string(),
                            opt_num(truth),
                        ]);
                        row.extend(o.summary_cells());
                        row.extend(o.failure_cells());
                        row.extend([num(theta), num(theta_1), opt_num(mu)]);
                        report.table.push(row);
                        report.no_observation.push(CellFailures {
                            cell: format!("{} motif={kind} quantity={quantity} normalization={norm}", key.label()),
                            failures: o.no_observation,
                            replicates: o.total(),
                        });
                    };

                    let ratios = replicates(cfg.replicates, cfg.parallel, |k| {
                        let x = walker.sample(&mut stream(cfg.seed, cell, 0, k));
                        let sample = SampleGraph::from_trace(g, &x)?;
                        estimate_ratio(
                            &x,
                            &sample,
                            target(MotifValue::Product),
                            target(MotifValue::Ones),
                            &cfg.weights,
                        )
                        .map(|e| e.value)
                    });
                    emit("mu", "none", mu, cfg.replicates, Outcomes::collect(ratios)?);

                    for &mode in &cfg.normalizations {
                        let totals = replicates(cfg.theta_replicates, cfg.parallel, |k| {
                            let x = walker.sample(&mut stream(cfg.seed, cell, 0, k));
                            let normalization = match mode {
                                NormMode::Exact => Normalization::Exact {
                                    edges: g.edge_count() as f64,
                                },
                                NormMode::Estimated => {
                                    let y = walker.sample(&mut stream(cfg.seed, cell, 1, k));
                                    let both = SampleGraph::from_traces(g, &[&x, &y])?;
                                    let stat = count_collisions(&x, &y, &both, r, &all, &all)?;
                                    let dbar = weighted_mean_degree(&[&x, &y], &both, r, &all)?;
                                    Normalization::Estimated {
                                        edges: estimate_size_grcr(&stat, dbar, r)?.edges,
                                    }
                                }
                            };
                            let sample = SampleGraph::from_trace(g, &x)?;
                            let opts = TotalOptions {
                                target: target(MotifValue::Ones),
                                weights: cfg.weights,
                                normalization,
                            };
                            estimate_total(&x, &sample, &opts).map(|e| e.value)
                        });
                        emit(
                            "theta",
                            mode.name(),
                            Some(theta),
                            cfg.theta_replicates,
                            Outcomes::collect(totals)?,
                        );
                    }
                    cell += 1;
                }
            }
        }
    }
    Ok(report)
}
