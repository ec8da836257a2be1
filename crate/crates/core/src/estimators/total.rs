//! Incidence-weighted estimators of motif totals and ratios.
//!
//! A window of `q + 1` consecutive states with stationary successive
//! sampling probability `π_M` estimates the total by
//! `θ̂_t = Σ_κ w_{Mκ} y_κ / π_M`, summed over the occurrences it reveals.
//! Windows are then averaged over those counted by the indicator rule.

use crate::chain::{window_probability, PairStationary};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Topology};
use crate::kernel::{s3p, Normalization, WalkConfig};
use crate::motif::{MotifKind, MotifValue};
use crate::sampling::{
    es3_set, incidence_weights, observe_window, FullS3p, ObservedS3p, S3pProvider, SampleGraph, WalkTrace, WeightScheme,
};

/// Which windows enter the average of per-window estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndicatorRule {
    /// Windows that reveal at least one occurrence. The average then
    /// targets the total divided by the probability that a window is
    /// revealing.
    Revealing,
    /// Windows whose estimate can be computed, including those revealing
    /// nothing (which contribute 0). Only PPW windows with an unvisited
    /// equivalent sequence are dropped, and only under
    /// [`PpwFallback::SkipWindow`].
    Computable,
}

impl IndicatorRule {
    pub fn name(self) -> &'static str {
        match self {
            IndicatorRule::Revealing => "revealing",
            IndicatorRule::Computable => "computable",
        }
    }
}

impl std::str::FromStr for IndicatorRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "revealing" => Ok(IndicatorRule::Revealing),
            "computable" => Ok(IndicatorRule::Computable),
            _ => Err(Error::InvalidConfig(format!("unknown indicator rule `{s}`"))),
        }
    }
}

/// What to do when PPW needs a sequence outside the seed sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PpwFallback {
    /// Use `1 / |F|` for that occurrence.
    Multiplicity,
    /// Mark the whole window as not computable.
    SkipWindow,
}

impl PpwFallback {
    pub fn name(self) -> &'static str {
        match self {
            PpwFallback::Multiplicity => "multiplicity",
            PpwFallback::SkipWindow => "skip-window",
        }
    }
}

impl std::str::FromStr for PpwFallback {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "multiplicity" => Ok(PpwFallback::Multiplicity),
            "skip-window" => Ok(PpwFallback::SkipWindow),
            _ => Err(Error::InvalidConfig(format!("unknown PPW fallback `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Target {
    pub kind: MotifKind,
    pub value: MotifValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightOptions {
    pub scheme: WeightScheme,
    pub fallback: PpwFallback,
    pub indicator: IndicatorRule,
}

impl Default for WeightOptions {
    fn default() -> Self {
        Self {
            scheme: WeightScheme::Multiplicity,
            fallback: PpwFallback::Multiplicity,
            indicator: IndicatorRule::Computable,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TotalOptions {
    pub target: Target,
    pub weights: WeightOptions,
    pub normalization: Normalization,
}

/// Estimate from one window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowEstimate {
    pub time: usize,
    /// `θ̂_t`; 0 when nothing is revealed or the window is not computable.
    pub value: f64,
    pub observations: usize,
    /// At least one occurrence revealed.
    pub revealed: bool,
    pub computable: bool,
    /// Some occurrence fell back to multiplicity weights.
    pub fallback_used: bool,
}

impl WindowEstimate {
    pub fn counts(&self, rule: IndicatorRule) -> bool {
        match rule {
            IndicatorRule::Revealing => self.revealed && self.computable,
            IndicatorRule::Computable => self.computable,
        }
    }
}

struct WindowSums {
    sums: Vec<f64>,
    observations: usize,
    computable: bool,
    fallback_used: bool,
}

/// Weighted value sums `Σ_κ w y_κ` for several value functions at once,
/// before division by `π_M`.
fn window_sums<T, P>(
    g: &T,
    kind: MotifKind,
    values: &[MotifValue],
    window: &[NodeId],
    weights: &WeightOptions,
    provider: &P,
) -> Result<WindowSums>
where
    T: Topology + ?Sized,
    P: S3pProvider + ?Sized,
{
    let occurrences = observe_window(g, kind, window, MotifValue::Ones)?;
    let mut out = WindowSums {
        sums: vec![0.0; values.len()],
        observations: occurrences.len(),
        computable: true,
        fallback_used: false,
    };
    for occ in &occurrences {
        let es3 = es3_set(g, occ)?;
        let weight = match incidence_weights(&es3, weights.scheme, provider) {
            Ok(w) => {
                let pos = es3
                    .iter()
                    .position(|s| s == window)
                    .expect("the observing window is one of its equivalent sequences");
                w[pos]
            }
            Err(Error::PpwInfeasible) => match weights.fallback {
                PpwFallback::Multiplicity => {
                    out.fallback_used = true;
                    1.0 / es3.len() as f64
                }
                PpwFallback::SkipWindow => {
                    out.computable = false;
                    out.sums.iter_mut().for_each(|s| *s = 0.0);
                    return Ok(out);
                }
            },
            Err(e) => return Err(e),
        };
        for (sum, value) in out.sums.iter_mut().zip(values) {
            *sum += weight * value.evaluate(g, &occ.nodes)?;
        }
    }
    Ok(out)
}

/// `θ̂_t` for one window.
pub fn estimate_total_window<T, P>(
    g: &T,
    cfg: &WalkConfig,
    window: &[NodeId],
    time: usize,
    opts: &TotalOptions,
    provider: &P,
) -> Result<WindowEstimate>
where
    T: Topology + ?Sized,
    P: S3pProvider + ?Sized,
{
    let sums = window_sums(
        g,
        opts.target.kind,
        &[opts.target.value],
        window,
        &opts.weights,
        provider,
    )?;
    let value = if sums.observations > 0 && sums.computable {
        sums.sums[0] / s3p(g, cfg, window, opts.normalization)?.probability
    } else {
        0.0
    };
    Ok(WindowEstimate {
        time,
        value,
        observations: sums.observations,
        revealed: sums.observations > 0,
        computable: sums.computable,
        fallback_used: sums.fallback_used,
    })
}

/// `Σ 𝕀_t θ̂_t / Σ 𝕀_t` and the number of counted windows.
pub fn combine_windows(windows: &[WindowEstimate], rule: IndicatorRule) -> Result<(f64, usize)> {
    let (sum, count) = windows
        .iter()
        .filter(|w| w.counts(rule))
        .fold((0.0, 0usize), |(s, c), w| (s + w.value, c + 1));
    if count == 0 {
        return Err(Error::NoObservations);
    }
    Ok((sum / count as f64, count))
}

/// `E[θ̂_t]` under the stationary law of a window, by enumerating all
/// `N^(q+1)` windows against the full graph.
pub fn exact_window_expectation(
    g: &Graph,
    cfg: &WalkConfig,
    stationary: &PairStationary,
    opts: &TotalOptions,
) -> Result<f64> {
    let n = g.node_count();
    let width = opts.target.kind.lag() + 1;
    let provider = FullS3p { graph: g, config: *cfg };
    let mut window = vec![0; width];
    let mut total = 0.0;
    for code in 0..n.pow(width as u32) {
        let mut c = code;
        for slot in window.iter_mut().rev() {
            *slot = c % n;
            c /= n;
        }
        let p = window_probability(g, cfg, stationary, &window)?;
        if p > 0.0 {
            total += p * estimate_total_window(g, cfg, &window, 0, opts, &provider)?.value;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TotalEstimate {
    pub options: TotalOptions,
    pub windows: Vec<WindowEstimate>,
    /// `θ̂`.
    pub value: f64,
    /// Number of windows counted by the indicator rule.
    pub informative: usize,
}

/// Combined total estimate over every window of the trace, using only what
/// the sample graph reveals.
pub fn estimate_total(trace: &WalkTrace, sample: &SampleGraph<'_>, opts: &TotalOptions) -> Result<TotalEstimate> {
    let cfg = trace.config();
    let provider = ObservedS3p { sample, config: *cfg };
    let width = opts.target.kind.lag() + 1;
    let windows = trace
        .states()
        .windows(width)
        .enumerate()
        .map(|(t, w)| estimate_total_window(sample, cfg, w, t, opts, &provider))
        .collect::<Result<Vec<_>>>()?;
    let (value, informative) = combine_windows(&windows, opts.weights.indicator)?;
    Ok(TotalEstimate {
        options: *opts,
        windows,
        value,
        informative,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioEstimate {
    /// `μ̂ = θ̂ / N̂_Ω`.
    pub value: f64,
    /// Numerator and denominator totals, unnormalized (scaled by `2R + rN`).
    pub numerator: f64,
    pub denominator: f64,
}

/// Ratio of two combined total estimates. Probabilities are left
/// unnormalized since the constant cancels.
pub fn estimate_ratio(
    trace: &WalkTrace,
    sample: &SampleGraph<'_>,
    numerator: Target,
    denominator: Target,
    weights: &WeightOptions,
) -> Result<RatioEstimate> {
    let cfg = trace.config();
    let provider = ObservedS3p { sample, config: *cfg };
    let (num, den) = if numerator.kind == denominator.kind {
        let kind = numerator.kind;
        let (mut acc, mut count) = ([0.0; 2], 0usize);
        for window in trace.states().windows(kind.lag() + 1) {
            let s = window_sums(
                sample,
                kind,
                &[numerator.value, denominator.value],
                window,
                weights,
                &provider,
            )?;
            let est = WindowEstimate {
                time: 0,
                value: 0.0,
                observations: s.observations,
                revealed: s.observations > 0,
                computable: s.computable,
                fallback_used: s.fallback_used,
            };
            if !est.counts(weights.indicator) {
                continue;
            }
            count += 1;
            if est.revealed {
                let pi = s3p(sample, cfg, window, Normalization::Unnormalized)?.probability;
                acc[0] += s.sums[0] / pi;
                acc[1] += s.sums[1] / pi;
            }
        }
        if count == 0 {
            return Err(Error::NoObservations);
        }
        (acc[0] / count as f64, acc[1] / count as f64)
    } else {
        let total = |target: Target| {
            let opts = TotalOptions {
                target,
                weights: *weights,
                normalization: Normalization::Unnormalized,
            };
            estimate_total(trace, sample, &opts).map(|e| e.value)
        };
        (total(numerator)?, total(denominator)?)
    };
    if den == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(RatioEstimate {
        value: num / den,
        numerator: num,
        denominator: den,
    })
}
