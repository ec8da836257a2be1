use lrw_core::chain::{build_pair_chain, ChainLimits};
use lrw_core::estimators::replicate_summary;
use lrw_core::kernel::stationary_node;
use lrw_core::sampling::Walker;
use lrw_core::{Error, Graph, Init, WalkConfig};

use super::{expectation, replicates, stream, summary_cells, table_with, CellKey, Report};
use crate::config::CampaignConfig;
use crate::error::Result;
use crate::table::{num, opt_num};

/// Monte Carlo `E(Y_t)` from one walk per replicate, next to the exact
/// value from propagating the pair chain and the equilibrium value.
pub fn convergence(cfg: &CampaignConfig, g: &Graph) -> Result<Report> {
    let mut table = table_with(&[
        "t",
        "mc_mean",
        "mc_sd",
        "mc_se",
        "exact",
        "equilibrium",
        "z_exact",
        "z_equilibrium",
    ]);
    let horizon = *cfg.times.iter().max().expect("validated nonempty");
    let n = g.node_count();
    let mut cell = 0;
    for &r in &cfg.jump_rates {
        for &w in &cfg.backtrack_weights {
            for &init in &cfg.inits {
                let wc = WalkConfig::new(r, w, horizon, init)?;
                let walker = Walker::new(g, wc)?;
                let equilibrium = expectation(&stationary_node(g, &wc)?, g);
                let start = match init {
                    Init::Stationary => stationary_node(g, &wc)?,
                    Init::Uniform => vec![1.0 / n as f64; n],
                    Init::Fixed(v) => {
                        let mut p = vec![0.0; n];
                        p[v] = 1.0;
                        p
                    }
                };
                let exact = match build_pair_chain(g, &wc, &ChainLimits::default()) {
                    Ok(chain) => Some(chain.marginals_at(&start, &cfg.times)?),
                    Err(Error::StateSpaceTooLarge { .. }) => None,
                    Err(e) => return Err(e.into()),
                };
                let seed = cfg.seed;
                let draws = replicates(cfg.replicates, cfg.parallel, |k| {
                    let trace = walker.run(&mut stream(seed, cell, 0, k));
                    cfg.times
                        .iter()
                        .map(|&t| g.value(trace.states()[t]))
                        .collect::<Vec<_>>()
                });
                let key = CellKey {
                    cfg,
                    graph: g,
                    replicates: Some(cfg.replicates),
                    r,
                    w,
                    length: Some(horizon),
                    init: Some(init),
                };
                for (j, &t) in cfg.times.iter().enumerate() {
                    let ys: Vec<f64> = draws.iter().map(|d| d[j]).collect();
                    let summary = replicate_summary(&ys).ok().filter(|s| s.se > 0.0);
                    let exact_t = exact.as_ref().map(|m| expectation(&m[j], g));
                    let z = |target: f64| summary.map(|s| (s.mean - target) / s.se);
                    let mut row = key.cells();
                    row.push(t.to_string());
                    row.extend(summary_cells(&ys));
                    row.extend([
                        opt_num(exact_t),
                        num(equilibrium),
                        opt_num(exact_t.and_then(z)),
                        opt_num(z(equilibrium)),
                    ]);
                    table.push(row);
                }
                cell += 1;
            }
        }
    }
    Ok(Report::new(table))
}
