//! The five campaigns and their shared plumbing.
//!
//! Replicate `k` of grid cell `c` draws its walks from
//! `substream(seed, 4c + role, k)`, where `role` separates the independent
//! walks of one replicate. Grid cells are numbered in the nested order of
//! the output rows. Replicates may run on any thread; their results are
//! collected by index before any reduction.

mod convergence;
mod motif_total;
mod prevalence;
mod size;
mod stationary;

use std::io::Write as _;

use lrw_core::estimators::replicate_summary;
use lrw_core::rng::{substream, StreamRng};
use lrw_core::sampling::{WalkTrace, Walker};
use lrw_core::{Graph, Init, WalkConfig};
use rayon::prelude::*;

pub use convergence::convergence;
pub use motif_total::motif_total;
pub use prevalence::prevalence;
pub use size::size;
pub use stationary::stationary_check;

use crate::config::{CampaignConfig, Experiment, GraphSource};
use crate::error::{ExperimentError, Result};
use crate::table::{num, Table};

/// Replicates in one cell that produced no estimate because nothing was
/// observed.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFailures {
    pub cell: String,
    pub failures: usize,
    pub replicates: usize,
}

impl CellFailures {
    pub fn rate(&self) -> f64 {
        self.failures as f64 / self.replicates as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub table: Table,
    pub no_observation: Vec<CellFailures>,
}

impl Report {
    fn new(table: Table) -> Self {
        Self {
            table,
            no_observation: Vec::new(),
        }
    }

    /// First cell whose no-observation rate exceeds `threshold`.
    pub fn check_failures(&self, threshold: f64) -> Result<()> {
        match self.no_observation.iter().find(|c| c.rate() > threshold) {
            Some(c) => Err(ExperimentError::FailureThreshold {
                cell: c.cell.clone(),
                rate: c.rate(),
                threshold,
            }),
            None => Ok(()),
        }
    }
}

/// Loads the graph and runs the configured campaign.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<Report> {
    cfg.validate()?;
    let graph = cfg.graph.load()?;
    if let Some(path) = &cfg.save_graph {
        std::fs::write(path, graph.to_edge_list()?).map_err(|e| ExperimentError::io(path, e))?;
    }
    let run = || match cfg.experiment {
        Experiment::StationaryCheck => stationary_check(cfg, &graph),
        Experiment::Convergence => convergence(cfg, &graph),
        Experiment::Prevalence => prevalence(cfg, &graph),
        Experiment::Size => size(cfg, &graph),
        Experiment::MotifTotal => motif_total(cfg, &graph),
    };
    match cfg.threads {
        Some(threads) if cfg.parallel => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| ExperimentError::Config(e.to_string()))?
            .install(run),
        _ => run(),
    }
}

/// Runs the campaign, writes its CSV to the output path or standard
/// output, then enforces the failure threshold.
pub fn execute(cfg: &CampaignConfig) -> Result<Report> {
    let report = run_campaign(cfg)?;
    let csv = report.table.to_csv();
    match &cfg.out {
        Some(path) => std::fs::write(path, csv).map_err(|e| ExperimentError::io(path, e))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(csv.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| ExperimentError::io(std::path::Path::new("<stdout>"), e))?;
        }
    }
    report.check_failures(cfg.failure_threshold)?;
    Ok(report)
}

const CONFIG_COLUMNS: [&str; 15] = [
    "experiment",
    "graph",
    "nodes",
    "edges",
    "cases",
    "p_cc",
    "p_cn",
    "p_nn",
    "graph_seed",
    "seed",
    "replicates",
    "r",
    "w",
    "length",
    "init",
];

fn table_with(extra: &[&str]) -> Table {
    Table::new(CONFIG_COLUMNS.iter().chain(extra).copied())
}

/// The configuration part of one row.
struct CellKey<'a> {
    cfg: &'a CampaignConfig,
    graph: &'a Graph,
    replicates: Option<usize>,
    r: f64,
    w: f64,
    length: Option<usize>,
    init: Option<Init>,
}

impl CellKey<'_> {
    fn cells(&self) -> Vec<String> {
        let cases = self.graph.values().iter().filter(|&&y| y == 1.0).count();
        let (source, params, graph_seed) = match &self.cfg.graph {
            GraphSource::Generated { params, seed } => ("generated".to_string(), Some(params), seed.to_string()),
            GraphSource::File(path) => (path.display().to_string(), None, String::new()),
        };
        let p = |f: fn(&lrw_core::graph::CaseGraphParams) -> f64| params.map(|x| num(f(x))).unwrap_or_default();
        vec![
            self.cfg.experiment.name().to_string(),
            source,
            self.graph.node_count().to_string(),
            self.graph.edge_count().to_string(),
            cases.to_string(),
            p(|x| x.p_case_case),
            p(|x| x.p_case_noncase),
            p(|x| x.p_noncase_noncase),
            graph_seed,
            self.cfg.seed.to_string(),
            self.replicates.map(|b| b.to_string()).unwrap_or_default(),
            num(self.r),
            num(self.w),
            self.length.map(|t| t.to_string()).unwrap_or_default(),
            self.init.map(|i| i.to_string()).unwrap_or_default(),
        ]
    }

    fn label(&self) -> String {
        let mut s = format!("{} r={} w={}", self.cfg.experiment, self.r, self.w);
        if let Some(t) = self.length {
            s += &format!(" length={t}");
        }
        if let Some(i) = self.init {
            s += &format!(" init={i}");
        }
        s
    }
}

/// The walks of replicate `k` in cell `cell`.
pub(crate) fn stream(seed: u64, cell: usize, role: u32, k: usize) -> StreamRng {
    let cell = u32::try_from(cell).expect("grid cell index fits in 30 bits");
    substream(seed, (cell << 2) | role, k as u32)
}

/// `f(k)` for every replicate, in replicate order.
pub(crate) fn replicates<T, F>(count: usize, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if parallel {
        (0..count).into_par_iter().map(f).collect()
    } else {
        (0..count).map(f).collect()
    }
}

/// Walks of length `T` started from `init`; non-stationary starts first
/// run `burn_in` steps that are discarded.
pub(crate) struct CampaignWalker<'g> {
    walker: Walker<'g>,
    config: WalkConfig,
    burn_in: usize,
}

impl<'g> CampaignWalker<'g> {
    pub(crate) fn new(g: &'g Graph, r: f64, w: f64, length: usize, init: Init, burn_in: usize) -> Result<Self> {
        let config = WalkConfig::new(r, w, length, init)?;
        let burn_in = if init == Init::Stationary { 0 } else { burn_in };
        let walker = Walker::new(
            g,
            WalkConfig {
                walk_length: length + burn_in,
                ..config
            },
        )?;
        Ok(Self {
            walker,
            config,
            burn_in,
        })
    }

    pub(crate) fn sample(&self, rng: &mut StreamRng) -> WalkTrace {
        let full = self.walker.run(rng);
        WalkTrace::from_states(full.states()[self.burn_in..].to_vec(), self.config, full.node_count())
            .expect("states come from the walker")
    }
}

/// Replicate values of one cell, with failed replicates counted.
#[derive(Debug, Default)]
pub(crate) struct Outcomes {
    pub values: Vec<f64>,
    /// Replicates without an estimate.
    pub failures: usize,
    /// Of which: nothing observed.
    pub no_observation: usize,
}

impl Outcomes {
    /// Sorts replicate results into values and expected failures; any
    /// other error aborts the campaign.
    pub(crate) fn collect(results: impl IntoIterator<Item = lrw_core::Result<f64>>) -> Result<Self> {
        use lrw_core::Error as E;
        let mut out = Self::default();
        for r in results {
            match r {
                Ok(v) => out.values.push(v),
                Err(E::NoObservations | E::ZeroDenominator) => {
                    out.failures += 1;
                    out.no_observation += 1;
                }
                Err(E::NoCollisions) => out.failures += 1,
                Err(e) => return Err(e.into()),
            }
        }
        Ok(out)
    }

    pub(crate) fn total(&self) -> usize {
        self.values.len() + self.failures
    }

    /// Mean, SD and SE; blank where undefined.
    pub(crate) fn summary_cells(&self) -> [String; 3] {
        summary_cells(&self.values)
    }

    pub(crate) fn failure_cells(&self) -> [String; 2] {
        [
            self.failures.to_string(),
            num(self.failures as f64 / self.total().max(1) as f64),
        ]
    }
}

pub(crate) fn summary_cells(values: &[f64]) -> [String; 3] {
    match replicate_summary(values) {
        Ok(s) => [num(s.mean), num(s.sd), num(s.se)],
        Err(_) => [
            values.first().map(|&v| num(v)).unwrap_or_default(),
            String::new(),
            String::new(),
        ],
    }
}

/// `Σ_i p_i y_i`.
pub(crate) fn expectation(p: &[f64], g: &Graph) -> f64 {
    p.iter().zip(g.values()).map(|(p, y)| p * y).sum()
}
