use lrw_core::estimators::{
    count_collisions, estimate_size_cr, estimate_size_gr, estimate_size_grcr, weighted_mean_degree, Extraction,
    SizeMethod,
};
use lrw_core::sampling::SampleGraph;
use lrw_core::Graph;

use super::{replicates, stream, table_with, CampaignWalker, CellKey, Outcomes, Report};
use crate::config::CampaignConfig;
use crate::error::Result;
use crate::table::num;

struct Draw {
    estimates: Vec<lrw_core::Result<f64>>,
    matches: usize,
    m: f64,
}

/// Edge count from two independent walks of `n` states each. The
/// `length` column holds `n`; `mean_collisions` counts coinciding state
/// pairs and `mean_m` is the degree-weighted collision statistic.
pub fn size(cfg: &CampaignConfig, g: &Graph) -> Result<Report> {
    let mut report = Report::new(table_with(&[
        "estimator",
        "truth",
        "mean",
        "sd",
        "se",
        "failures",
        "failure_rate",
        "negatives",
        "mean_collisions",
        "mean_m",
    ]));
    let truth = g.edge_count() as f64;
    let all = Extraction::default();
    let mut cell = 0;
    for &n in &cfg.lengths {
        for &r in &cfg.jump_rates {
            for &w in &cfg.backtrack_weights {
                for &init in &cfg.inits {
                    let walker = CampaignWalker::new(g, r, w, n - 1, init, cfg.burn_in)?;
                    let draw = |k| -> lrw_core::Result<Draw> {
                        let x = walker.sample(&mut stream(cfg.seed, cell, 0, k));
                        let y = walker.sample(&mut stream(cfg.seed, cell, 1, k));
                        let sample = SampleGraph::from_traces(g, &[&x, &y])?;
                        let stat = count_collisions(&x, &y, &sample, r, &all, &all)?;
                        let dbar = weighted_mean_degree(&[&x, &y], &sample, r, &all)?;
                        let estimates = cfg
                            .estimators
                            .iter()
                            .map(|m| match m {
                                SizeMethod::Cr => estimate_size_cr(&stat, r, g.node_count()),
                                SizeMethod::Gr => Ok(estimate_size_gr(dbar, g.node_count())),
                                SizeMethod::GrCr => estimate_size_grcr(&stat, dbar, r),
                            })
                            .map(|e| e.map(|e| e.edges))
                            .collect();
                        Ok(Draw {
                            estimates,
                            matches: stat.matches,
                            m: stat.m,
                        })
                    };
                    let draws = replicates(cfg.replicates, cfg.parallel, draw)
                        .into_iter()
                        .collect::<lrw_core::Result<Vec<_>>>()?;
                    let mean = |f: fn(&Draw) -> f64| draws.iter().map(f).sum::<f64>() / draws.len() as f64;
                    let collisions = mean(|d| d.matches as f64);
                    let m = mean(|d| d.m);
                    let key = CellKey {
                        cfg,
                        graph: g,
                        replicates: Some(cfg.replicates),
                        r,
                        w,
                        length: Some(n),
                        init: Some(init),
                    };
                    for (j, method) in cfg.estimators.iter().enumerate() {
                        let outcomes = Outcomes::collect(draws.iter().map(|d| d.estimates[j].clone()))?;
                        let negatives = outcomes.values.iter().filter(|&&v| v < 0.0).count();
                        let mut row = key.cells();
                        row.extend([method.name().to_string(), num(truth)]);
                        row.extend(outcomes.summary_cells());
                        row.extend(outcomes.failure_cells());
                        row.extend([negatives.to_string(), num(collisions), num(m)]);
                        report.table.push(row);
                    }
                    cell += 1;
                }
            }
        }
    }
    Ok(report)
}
