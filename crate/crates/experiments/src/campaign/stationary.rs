use lrw_core::chain::{
    build_pair_chain, stationary_deviation, stationary_pair, ChainLimits, Solver, DIRECT_MAX_STATES,
};
use lrw_core::{Graph, WalkConfig};
use rayon::prelude::*;

use super::{expectation, table_with, CellKey, Report};
use crate::config::CampaignConfig;
use crate::error::Result;
use crate::table::{num, opt_num};

/// Pair-chain stationary law per `(r, w)` against the closed forms.
/// When the chain is small enough for both solvers, `solver_gap` is their
/// largest disagreement.
pub fn stationary_check(cfg: &CampaignConfig, g: &Graph) -> Result<Report> {
    let mut table = table_with(&[
        "solver",
        "states",
        "iterations",
        "marginal_dev",
        "pair_dev",
        "mixed_dev",
        "max_dev",
        "solver_gap",
        "e_y_inf",
    ]);
    let grid: Vec<(f64, f64)> = cfg
        .jump_rates
        .iter()
        .flat_map(|&r| cfg.backtrack_weights.iter().map(move |&w| (r, w)))
        .collect();
    let cell = |&(r, w): &(f64, f64)| -> Result<Vec<String>> {
        let wc = WalkConfig::kernel(r, w)?;
        let chain = build_pair_chain(g, &wc, &ChainLimits::default())?;
        let states = chain.state_count();
        let pi = stationary_pair(&chain, Solver::Auto)?;
        let dev = stationary_deviation(g, &wc, &pi);
        let gap = if states <= DIRECT_MAX_STATES {
            let power = stationary_pair(&chain, Solver::DEFAULT_POWER)?;
            let gap = pi
                .as_slice()
                .iter()
                .zip(power.as_slice())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            Some(gap)
        } else {
            None
        };
        let key = CellKey {
            cfg,
            graph: g,
            replicates: None,
            r,
            w,
            length: None,
            init: None,
        };
        let mut row = key.cells();
        row.extend([
            if states <= DIRECT_MAX_STATES { "direct" } else { "power" }.to_string(),
            states.to_string(),
            pi.iterations.to_string(),
            num(dev.marginal),
            num(dev.pair),
            num(dev.mixed),
            num(dev.max()),
            opt_num(gap),
            num(expectation(&pi.marginal(), g)),
        ]);
        Ok(row)
    };
    let rows: Vec<Result<Vec<String>>> = if cfg.parallel {
        grid.par_iter().map(cell).collect()
    } else {
        grid.iter().map(cell).collect()
    };
    for row in rows {
        table.push(row?);
    }
    Ok(Report::new(table))
}
