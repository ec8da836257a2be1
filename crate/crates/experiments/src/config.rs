//! Command line, config files and the resolved campaign configuration.
//!
//! A config file holds `key = value` lines whose keys are the long flag
//! names without dashes; `#` starts a comment and list values are comma
//! separated. Boolean flags take `true` or `false`. File entries are
//! placed before the command-line flags, so flags given on the command
//! line win.

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use lrw_core::estimators::{IndicatorRule, PpwFallback, SizeMethod, WeightOptions};
use lrw_core::graph::{generate_case_graph, CaseGraphParams, CALIBRATED_GRAPH_SEED};
use lrw_core::sampling::WeightScheme;
use lrw_core::{Graph, Init, MotifKind};

use crate::error::{ExperimentError, Result};

#[derive(Parser, Debug)]
#[command(name = "lrw", version, about = "Lagged random walk sampling campaigns")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Solve the pair chain and compare it with the closed-form stationary laws.
    #[command(args_override_self = true)]
    StationaryCheck(CampaignArgs),
    /// Monte Carlo and exact E(Y_t) by start law, jump rate and time.
    #[command(args_override_self = true)]
    Convergence(CampaignArgs),
    /// Node-value prevalence by walk length, jump rate and backtracking weight.
    #[command(args_override_self = true)]
    Prevalence(CampaignArgs),
    /// Edge count from pairs of independent walks.
    #[command(args_override_self = true)]
    Size(CampaignArgs),
    /// Motif ratio and total estimates.
    #[command(args_override_self = true)]
    MotifTotal(CampaignArgs),
}

impl Command {
    pub fn experiment(&self) -> Experiment {
        match self {
            Command::StationaryCheck(_) => Experiment::StationaryCheck,
            Command::Convergence(_) => Experiment::Convergence,
            Command::Prevalence(_) => Experiment::Prevalence,
            Command::Size(_) => Experiment::Size,
            Command::MotifTotal(_) => Experiment::MotifTotal,
        }
    }

    pub fn args(&self) -> &CampaignArgs {
        match self {
            Command::StationaryCheck(a)
            | Command::Convergence(a)
            | Command::Prevalence(a)
            | Command::Size(a)
            | Command::MotifTotal(a) => a,
        }
    }

    pub fn resolve(&self) -> Result<CampaignConfig> {
        self.args().resolve(self.experiment())
    }
}

#[derive(clap::Args, Debug, Clone)]
pub struct CampaignArgs {
    /// Load the graph from an edge-list file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Generate the case graph even if --graph is given.
    #[arg(long)]
    pub generate: bool,
    #[arg(long, default_value_t = CaseGraphParams::CALIBRATED.nodes)]
    pub nodes: usize,
    #[arg(long, default_value_t = CaseGraphParams::CALIBRATED.cases)]
    pub cases: usize,
    /// Edge probability between two cases.
    #[arg(long, default_value_t = CaseGraphParams::CALIBRATED.p_case_case)]
    pub p_cc: f64,
    /// Edge probability between a case and a noncase.
    #[arg(long, default_value_t = CaseGraphParams::CALIBRATED.p_case_noncase)]
    pub p_cn: f64,
    /// Edge probability between two noncases.
    #[arg(long, default_value_t = CaseGraphParams::CALIBRATED.p_noncase_noncase)]
    pub p_nn: f64,
    #[arg(long, default_value_t = CALIBRATED_GRAPH_SEED)]
    pub graph_seed: u64,
    /// Write the graph used to this edge-list file.
    #[arg(long)]
    pub save_graph: Option<PathBuf>,
    /// Jump rates.
    #[arg(long = "r", action = ArgAction::Set, value_delimiter = ',')]
    pub r: Vec<f64>,
    /// Backtracking weights.
    #[arg(long = "w", action = ArgAction::Set, value_delimiter = ',')]
    pub w: Vec<f64>,
    /// Walk lengths T; for `size`, the number of states n in each walk.
    #[arg(long, action = ArgAction::Set, value_delimiter = ',')]
    pub walk_length: Vec<usize>,
    /// Times t at which `convergence` records E(Y_t).
    #[arg(long, action = ArgAction::Set, value_delimiter = ',')]
    pub times: Vec<usize>,
    /// Replicates per cell (the ratio campaign for `motif-total`).
    #[arg(long)]
    pub replicates: Option<usize>,
    /// Replicates per cell for the `motif-total` total estimates.
    #[arg(long)]
    pub theta_replicates: Option<usize>,
    /// Master seed.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Start laws: stationary, uniform or fixed:<node>.
    #[arg(long, action = ArgAction::Set, value_delimiter = ',')]
    pub init: Vec<Init>,
    /// Steps discarded before sampling when the start law is not stationary.
    #[arg(long, default_value_t = 16)]
    pub burn_in: usize,
    #[arg(long, value_enum, default_value_t = EstimatorChoice::All)]
    pub estimator: EstimatorChoice,
    #[arg(long)]
    pub motif: Option<MotifKind>,
    /// multiplicity or ppw.
    #[arg(long, default_value = "multiplicity")]
    pub weights: WeightScheme,
    /// Normalizations of the motif total: exact, estimated.
    #[arg(long, value_enum, action = ArgAction::Set, value_delimiter = ',')]
    pub normalization: Vec<NormMode>,
    /// Windows entering the combined estimate: computable or revealing.
    #[arg(long, default_value = "computable")]
    pub indicator: IndicatorRule,
    /// PPW weights when an equivalent sequence was not visited: multiplicity or skip-window.
    #[arg(long, default_value = "multiplicity")]
    pub ppw_fallback: PpwFallback,
    /// Largest tolerated fraction of failed replicates in any cell.
    #[arg(long, default_value_t = 0.05)]
    pub failure_threshold: f64,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Run replicates on the calling thread only.
    #[arg(long)]
    pub serial: bool,
    /// CSV output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Key-value config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimatorChoice {
    Cr,
    Gr,
    Grcr,
    All,
}

impl EstimatorChoice {
    pub fn methods(self) -> Vec<SizeMethod> {
        match self {
            EstimatorChoice::Cr => vec![SizeMethod::Cr],
            EstimatorChoice::Gr => vec![SizeMethod::Gr],
            EstimatorChoice::Grcr => vec![SizeMethod::GrCr],
            EstimatorChoice::All => vec![SizeMethod::Cr, SizeMethod::Gr, SizeMethod::GrCr],
        }
    }
}

/// Normalizing constant for motif totals: with the true edge count or with
/// the combined size estimate from a second walk.
#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMode {
    Exact,
    Estimated,
}

impl NormMode {
    pub fn name(self) -> &'static str {
        match self {
            NormMode::Exact => "exact",
            NormMode::Estimated => "estimated",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    StationaryCheck,
    Convergence,
    Prevalence,
    Size,
    MotifTotal,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::StationaryCheck => "stationary-check",
            Experiment::Convergence => "convergence",
            Experiment::Prevalence => "prevalence",
            Experiment::Size => "size",
            Experiment::MotifTotal => "motif-total",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    Generated { params: CaseGraphParams, seed: u64 },
    File(PathBuf),
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph> {
        match self {
            GraphSource::Generated { params, seed } => Ok(generate_case_graph(params, *seed)?),
            GraphSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| ExperimentError::io(path, e))?;
                Ok(Graph::from_edge_list(&text)?)
            }
        }
    }
}

/// Fully resolved settings of one campaign.
#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub experiment: Experiment,
    pub graph: GraphSource,
    pub save_graph: Option<PathBuf>,
    pub jump_rates: Vec<f64>,
    pub backtrack_weights: Vec<f64>,
    pub lengths: Vec<usize>,
    pub times: Vec<usize>,
    pub replicates: usize,
    pub theta_replicates: usize,
    pub seed: u64,
    pub inits: Vec<Init>,
    pub burn_in: usize,
    pub estimators: Vec<SizeMethod>,
    pub motif: MotifKind,
    pub weights: WeightOptions,
    pub normalizations: Vec<NormMode>,
    pub failure_threshold: f64,
    pub threads: Option<usize>,
    pub parallel: bool,
    pub out: Option<PathBuf>,
}

impl CampaignConfig {
    /// Defaults of each experiment on the calibrated case graph.
    pub fn new(experiment: Experiment) -> Self {
        let mut cfg = Self {
            experiment,
            graph: GraphSource::Generated {
                params: CaseGraphParams::CALIBRATED,
                seed: CALIBRATED_GRAPH_SEED,
            },
            save_graph: None,
            jump_rates: vec![0.1, 6.0],
            backtrack_weights: vec![1.0, 0.01],
            lengths: vec![50, 100],
            times: Vec::new(),
            replicates: 1000,
            theta_replicates: 10_000,
            seed: 1,
            inits: vec![Init::Stationary],
            burn_in: 16,
            estimators: EstimatorChoice::All.methods(),
            motif: MotifKind::Triangle,
            weights: WeightOptions::default(),
            normalizations: vec![NormMode::Estimated],
            failure_threshold: 0.05,
            threads: None,
            parallel: true,
            out: None,
        };
        match experiment {
            Experiment::StationaryCheck => {
                cfg.jump_rates = vec![0.1, 1.0, 6.0];
                cfg.backtrack_weights = vec![0.0, 0.5, 1.0];
                cfg.lengths = Vec::new();
                cfg.replicates = 1;
            }
            Experiment::Convergence => {
                cfg.jump_rates = vec![1.0, 0.1];
                cfg.backtrack_weights = vec![1.0];
                cfg.lengths = Vec::new();
                cfg.times = vec![1, 4, 8, 16];
                cfg.replicates = 100_000;
                cfg.inits = vec![Init::Stationary, Init::Uniform, Init::Fixed(0)];
            }
            Experiment::Size => cfg.replicates = 10_000,
            Experiment::Prevalence | Experiment::MotifTotal => {}
        }
        cfg
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(ExperimentError::Config(m));
        if self.jump_rates.is_empty() || self.backtrack_weights.is_empty() {
            return bad("the r and w grids must be nonempty".into());
        }
        if let Some(r) = self.jump_rates.iter().find(|r| !(r.is_finite() && **r >= 0.0)) {
            return bad(format!("jump rate {r} must be finite and >= 0"));
        }
        if let Some(w) = self.backtrack_weights.iter().find(|w| !(0.0..=1.0).contains(*w)) {
            return bad(format!("backtracking weight {w} outside [0, 1]"));
        }
        let walks = !matches!(self.experiment, Experiment::StationaryCheck);
        if walks {
            if self.replicates == 0 || (self.experiment == Experiment::MotifTotal && self.theta_replicates == 0) {
                return bad("at least one replicate is needed".into());
            }
            if self.inits.is_empty() {
                return bad("the init grid must be nonempty".into());
            }
        }
        match self.experiment {
            Experiment::Convergence if self.times.is_empty() => return bad("the time grid must be nonempty".into()),
            Experiment::Prevalence | Experiment::Size | Experiment::MotifTotal if self.lengths.is_empty() => {
                return bad("the walk-length grid must be nonempty".into())
            }
            Experiment::Size if self.lengths.contains(&0) => return bad("a size walk needs at least one state".into()),
            Experiment::Size if self.estimators.is_empty() => return bad("no size estimator selected".into()),
            Experiment::MotifTotal if self.normalizations.is_empty() => return bad("no normalization selected".into()),
            _ => {}
        }
        if !(0.0..=1.0).contains(&self.failure_threshold) {
            return bad(format!("failure threshold {} outside [0, 1]", self.failure_threshold));
        }
        if self.threads == Some(0) {
            return bad("--threads must be positive".into());
        }
        Ok(())
    }
}

impl CampaignArgs {
    pub fn resolve(&self, experiment: Experiment) -> Result<CampaignConfig> {
        let mut cfg = CampaignConfig::new(experiment);
        cfg.graph = match (&self.graph, self.generate) {
            (Some(path), false) => GraphSource::File(path.clone()),
            _ => GraphSource::Generated {
                params: CaseGraphParams {
                    nodes: self.nodes,
                    cases: self.cases,
                    p_case_case: self.p_cc,
                    p_case_noncase: self.p_cn,
                    p_noncase_noncase: self.p_nn,
                },
                seed: self.graph_seed,
            },
        };
        cfg.save_graph = self.save_graph.clone();
        set(&mut cfg.jump_rates, &self.r);
        set(&mut cfg.backtrack_weights, &self.w);
        set(&mut cfg.lengths, &self.walk_length);
        set(&mut cfg.times, &self.times);
        set(&mut cfg.inits, &self.init);
        set(&mut cfg.normalizations, &self.normalization);
        if let Some(b) = self.replicates {
            cfg.replicates = b;
        }
        if let Some(b) = self.theta_replicates {
            cfg.theta_replicates = b;
        }
        cfg.seed = self.seed;
        cfg.burn_in = self.burn_in;
        cfg.estimators = self.estimator.methods();
        if let Some(m) = self.motif {
            cfg.motif = m;
        }
        cfg.weights = WeightOptions {
            scheme: self.weights,
            fallback: self.ppw_fallback,
            indicator: self.indicator,
        };
        cfg.failure_threshold = self.failure_threshold;
        cfg.threads = self.threads;
        cfg.parallel = !self.serial;
        cfg.out = self.out.clone();
        cfg.validate()?;
        Ok(cfg)
    }
}

fn set<T: Clone>(dst: &mut Vec<T>, src: &[T]) {
    if !src.is_empty() {
        dst.clear();
        dst.extend_from_slice(src);
    }
}

/// Splits a config file into command-line tokens.
pub fn config_file_args(text: &str) -> Result<Vec<OsString>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ExperimentError::Config(format!("config line {}: expected `key = value`", i + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || key == "config" {
            return Err(ExperimentError::Config(format!(
                "config line {}: invalid key `{key}`",
                i + 1
            )));
        }
        let value: String = value.split(',').map(str::trim).collect::<Vec<_>>().join(",");
        match value.as_str() {
            "true" => out.push(format!("--{key}").into()),
            "false" => {}
            _ => {
                out.push(format!("--{key}").into());
                out.push(value.into());
            }
        }
    }
    Ok(out)
}

/// Inserts the contents of any `--config <path>` file right after the
/// subcommand, ahead of the command-line flags.
pub fn splice_config_file(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut path = None;
    for (i, a) in args.iter().enumerate().skip(1) {
        let s = a.to_string_lossy();
        if let Some(p) = s.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        } else if s == "--config" {
            path = args.get(i + 1).map(PathBuf::from);
        }
    }
    let Some(path) = path else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| ExperimentError::io(&path, e))?;
    let extra = config_file_args(&text)?;
    if args.len() < 2 {
        return Ok(args);
    }
    let mut out = args[..2].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[2..]);
    Ok(out)
}

/// Parses a full argument vector, config file included.
pub fn parse_args(args: Vec<OsString>) -> Result<CampaignConfig> {
    let args = splice_config_file(args)?;
    let cli = Cli::try_parse_from(args).map_err(|e| ExperimentError::Config(e.to_string()))?;
    cli.command.resolve()
}
