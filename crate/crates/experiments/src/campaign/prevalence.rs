use lrw_core::estimators::{estimate_ratio, Target};
use lrw_core::sampling::SampleGraph;
use lrw_core::{Graph, MotifKind, MotifValue};

use super::{replicates, stream, table_with, CampaignWalker, CellFailures, CellKey, Outcomes, Report};
use crate::config::CampaignConfig;
use crate::error::Result;
use crate::table::num;

/// Node prevalence `μ̂` from one walk per replicate.
pub fn prevalence(cfg: &CampaignConfig, g: &Graph) -> Result<Report> {
    let mut report = Report::new(table_with(&[
        "mu_true",
        "mean_mu",
        "sd_mu",
        "se_mu",
        "mean_psi",
        "failures",
        "failure_rate",
    ]));
    let mu_true = g.values().iter().sum::<f64>() / g.node_count() as f64;
    let node = |value| Target {
        kind: MotifKind::Node,
        value,
    };
    let mut cell = 0;
    for &length in &cfg.lengths {
        for &r in &cfg.jump_rates {
            for &w in &cfg.backtrack_weights {
                for &init in &cfg.inits {
                    let walker = CampaignWalker::new(g, r, w, length, init, cfg.burn_in)?;
                    let draws = replicates(cfg.replicates, cfg.parallel, |k| {
                        let trace = walker.sample(&mut stream(cfg.seed, cell, 0, k));
                        let mu = SampleGraph::from_trace(g, &trace).and_then(|sample| {
                            estimate_ratio(
                                &trace,
                                &sample,
                                node(MotifValue::Product),
                                node(MotifValue::Ones),
                                &cfg.weights,
                            )
                        });
                        (mu.map(|e| e.value), trace.traverse())
                    });
                    let psi = draws.iter().map(|d| d.1).sum::<f64>() / draws.len() as f64;
                    let outcomes = Outcomes::collect(draws.into_iter().map(|d| d.0))?;
                    let key = CellKey {
                        cfg,
                        graph: g,
                        replicates: Some(cfg.replicates),
                        r,
                        w,
                        length: Some(length),
                        init: Some(init),
                    };
                    let mut row = key.cells();
                    row.push(num(mu_true));
                    row.extend(outcomes.summary_cells());
                    row.push(num(psi));
                    row.extend(outcomes.failure_cells());
                    report.table.push(row);
                    report.no_observation.push(CellFailures {
                        cell: key.label(),
                        failures: outcomes.no_observation,
                        replicates: outcomes.total(),
                    });
                    cell += 1;
                }
            }
        }
    }
    Ok(report)
}
