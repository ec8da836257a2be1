//! Graph size `R` from two independent walks at equilibrium.
//!
//! With `m` the degree-weighted collision count, `E(m) = n_x n_y / (2R + rN)`
//! gives the capture-recapture estimator; the weighted mean degree `d̄_w`,
//! which is close to `2R / N`, gives the generalised ratio estimator; and
//! solving both relations for `(R, N)` jointly gives the combined one.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Topology;
use crate::sampling::WalkTrace;

/// Which states of a trace enter the estimators: indices `start`,
/// `start + stride`, ... up to `limit` states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Extraction {
    pub start: usize,
    pub stride: usize,
    pub limit: Option<usize>,
}

impl Default for Extraction {
    /// Every state.
    fn default() -> Self {
        Self {
            start: 0,
            stride: 1,
            limit: None,
        }
    }
}

impl Extraction {
    pub fn indices(&self, len: usize) -> impl Iterator<Item = usize> {
        (self.start..len)
            .step_by(self.stride.max(1))
            .take(self.limit.unwrap_or(usize::MAX))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionStat {
    /// `m = Σ_i Σ_j 1/(d_h + r) [X_{t_i} = Y_{τ_j} = h]`.
    pub m: f64,
    /// Unweighted number of matching index pairs.
    pub matches: usize,
    pub n_x: usize,
    pub n_y: usize,
}

/// Degree-weighted collisions between the extracted states of two walks.
/// Degrees are read only for nodes both walks visited.
pub fn count_collisions<T: Topology + ?Sized>(
    x: &WalkTrace,
    y: &WalkTrace,
    g: &T,
    jump_rate: f64,
    extract_x: &Extraction,
    extract_y: &Extraction,
) -> Result<CollisionStat> {
    let n = g.node_count();
    let mut visits_x = vec![0usize; n];
    let mut n_x = 0;
    for i in extract_x.indices(x.len()) {
        visits_x[x.states()[i]] += 1;
        n_x += 1;
    }
    let mut visits_y = vec![0usize; n];
    let mut n_y = 0;
    for j in extract_y.indices(y.len()) {
        visits_y[y.states()[j]] += 1;
        n_y += 1;
    }
    let mut m = 0.0;
    let mut matches = 0;
    for h in 0..n {
        let pairs = visits_x[h] * visits_y[h];
        if pairs > 0 {
            m += pairs as f64 / (g.degree(h)? as f64 + jump_rate);
            matches += pairs;
        }
    }
    Ok(CollisionStat { m, matches, n_x, n_y })
}

/// `d̄_w = Σ d/(d + r) / Σ 1/(d + r)` over the extracted states of all
/// traces.
pub fn weighted_mean_degree<T: Topology + ?Sized>(
    traces: &[&WalkTrace],
    g: &T,
    jump_rate: f64,
    extraction: &Extraction,
) -> Result<f64> {
    let (mut num, mut den, mut count) = (0.0, 0.0, 0usize);
    for trace in traces {
        for i in extraction.indices(trace.len()) {
            let d = g.degree(trace.states()[i])? as f64;
            num += d / (d + jump_rate);
            den += 1.0 / (d + jump_rate);
            count += 1;
        }
    }
    if count == 0 {
        return Err(Error::TooFewValues { needed: 1, got: 0 });
    }
    Ok(num / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SizeMethod {
    /// Capture-recapture.
    Cr,
    /// Generalised ratio.
    Gr,
    /// Combined generalised ratio and capture-recapture.
    GrCr,
}

impl SizeMethod {
    pub fn name(self) -> &'static str {
        match self {
            SizeMethod::Cr => "cr",
            SizeMethod::Gr => "gr",
            SizeMethod::GrCr => "grcr",
        }
    }
}

impl fmt::Display for SizeMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizeEstimate {
    pub method: SizeMethod,
    /// `R̂`.
    pub edges: f64,
    /// `N̂`, combined estimator only.
    pub nodes: Option<f64>,
    pub mean_degree: Option<f64>,
}

impl SizeEstimate {
    /// Capture-recapture can go negative when collisions are plentiful; the
    /// value is kept as is.
    pub fn is_negative(&self) -> bool {
        self.edges < 0.0
    }
}

/// `R̂_1 = (n_x n_y / m - rN) / 2`.
pub fn estimate_size_cr(stat: &CollisionStat, jump_rate: f64, nodes: usize) -> Result<SizeEstimate> {
    if stat.m <= 0.0 {
        return Err(Error::NoCollisions);
    }
    let nn = (stat.n_x * stat.n_y) as f64;
    Ok(SizeEstimate {
        method: SizeMethod::Cr,
        edges: (nn / stat.m - jump_rate * nodes as f64) / 2.0,
        nodes: None,
        mean_degree: None,
    })
}

/// `R̂_2 = N d̄_w / 2`.
pub fn estimate_size_gr(mean_degree: f64, nodes: usize) -> SizeEstimate {
    SizeEstimate {
        method: SizeMethod::Gr,
        edges: nodes as f64 * mean_degree / 2.0,
        nodes: None,
        mean_degree: Some(mean_degree),
    }
}

/// Solves `2m R̂ + r m N̂ = n_x n_y` and `-2 R̂ + d̄_w N̂ = 0`; the known
/// node count is not used.
pub fn estimate_size_grcr(stat: &CollisionStat, mean_degree: f64, jump_rate: f64) -> Result<SizeEstimate> {
    if stat.m <= 0.0 {
        return Err(Error::NoCollisions);
    }
    let denom = jump_rate + mean_degree;
    if denom <= 0.0 {
        return Err(Error::InvalidConfig("r + d̄_w must be positive".into()));
    }
    let nn = (stat.n_x * stat.n_y) as f64;
    let nodes = nn / (stat.m * denom);
    Ok(SizeEstimate {
        method: SizeMethod::GrCr,
        edges: nodes * mean_degree / 2.0,
        nodes: Some(nodes),
        mean_degree: Some(mean_degree),
    })
}
