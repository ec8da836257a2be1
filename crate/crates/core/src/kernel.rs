//! The lagged random walk transition law.
//!
//! From the pair `(prev, cur)` with `d = deg(cur)` the walk jumps to a
//! uniformly chosen node (any node, `cur` included) with probability
//! `r / (d + r)`, and otherwise moves along an edge of `cur`. When `d > 1`
//! and `prev` is a neighbour, the move returns to `prev` with probability
//! `w / (d + r)` and the remaining mass is spread evenly over the other
//! `d - 1` neighbours. `w = 1` gives the targeted random walk, whose node
//! process is Markov.
//!
//! The first step of a walk has no predecessor; it is taken with
//! `prev = cur`, which is the lag-free form of the kernel (no backtracking
//! discount).

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Topology};

/// How the initial state `X_0` is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Init {
    /// From the stationary node law `(d_h + r) / (2R + rN)`.
    Stationary,
    Uniform,
    Fixed(NodeId),
}

impl fmt::Display for Init {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Init::Stationary => f.write_str("stationary"),
            Init::Uniform => f.write_str("uniform"),
            Init::Fixed(v) => write!(f, "fixed:{v}"),
        }
    }
}

impl FromStr for Init {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stationary" => Ok(Init::Stationary),
            "uniform" => Ok(Init::Uniform),
            _ => s
                .strip_prefix("fixed:")
                .and_then(|v| v.parse().ok())
                .map(Init::Fixed)
                .ok_or_else(|| Error::InvalidConfig(format!("unknown init `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkConfig {
    /// `r`; zero is accepted for evaluating the kernel but not for walks
    /// that must be ergodic.
    pub jump_rate: f64,
    /// `w` in `[0, 1]`.
    pub backtrack_weight: f64,
    /// `T`: a walk visits `T + 1` states.
    pub walk_length: usize,
    pub init: Init,
}

impl WalkConfig {
    pub fn new(jump_rate: f64, backtrack_weight: f64, walk_length: usize, init: Init) -> Result<Self> {
        let cfg = Self {
            jump_rate,
            backtrack_weight,
            walk_length,
            init,
        };
        cfg.check_params()?;
        Ok(cfg)
    }

    /// Kernel-only configuration (walk length 1, stationary start).
    pub fn kernel(jump_rate: f64, backtrack_weight: f64) -> Result<Self> {
        Self::new(jump_rate, backtrack_weight, 1, Init::Stationary)
    }

    fn check_params(&self) -> Result<()> {
        if !(self.jump_rate >= 0.0 && self.jump_rate.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "jump rate {} must be >= 0",
                self.jump_rate
            )));
        }
        if !(0.0..=1.0).contains(&self.backtrack_weight) {
            return Err(Error::InvalidConfig(format!(
                "backtracking weight {} outside [0, 1]",
                self.backtrack_weight
            )));
        }
        Ok(())
    }

    /// Checks the configuration against a graph, including that a fixed
    /// start node exists.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        self.check_params()?;
        if let Init::Fixed(v) = self.init {
            g.check_node(v)?;
        }
        Ok(())
    }

    /// Walks must be able to leave every node; with `r = 0` that fails on
    /// any isolated node and irreducibility is lost in general.
    pub fn require_ergodic(&self) -> Result<()> {
        if self.jump_rate > 0.0 {
            Ok(())
        } else {
            Err(Error::NonErgodic("jump rate must be positive".into()))
        }
    }
}

/// `Pr(X_{t+1} = next | X_{t-1} = prev, X_t = cur)`.
///
/// `prev` need not be adjacent to `cur` (a jump may have produced the
/// pair); the backtracking terms then vanish. Passing `prev == cur` gives
/// the lag-free kernel.
pub fn transition_prob<T: Topology + ?Sized>(
    g: &T,
    cfg: &WalkConfig,
    prev: NodeId,
    cur: NodeId,
    next: NodeId,
) -> Result<f64> {
    let n = g.node_count();
    for v in [prev, next] {
        if v >= n {
            return Err(Error::NodeOutOfRange { node: v, nodes: n });
        }
    }
    let d = g.degree(cur)? as f64;
    let r = cfg.jump_rate;
    if d == 0.0 {
        return if r > 0.0 {
            Ok(1.0 / n as f64)
        } else {
            Err(Error::NonErgodic(format!(
                "node {cur} is isolated and the jump rate is 0"
            )))
        };
    }
    let jump = r / (d + r) / n as f64;
    let a_next = indicator(g.is_adjacent(cur, next)?);
    if d == 1.0 {
        return Ok(jump + a_next / (d + r));
    }
    let w = cfg.backtrack_weight;
    let a_prev = if prev == cur {
        0.0
    } else {
        indicator(g.is_adjacent(prev, cur)?)
    };
    let moved = if next == prev {
        w * a_next / (d + r)
    } else {
        (d - w * a_prev) / (d + r) * a_next / (d - a_prev)
    };
    Ok(jump + moved)
}

fn indicator(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Draws the next state: first jump versus move, then a uniform choice
/// within the selected branch.
pub fn step<R: Rng + ?Sized>(g: &Graph, cfg: &WalkConfig, prev: NodeId, cur: NodeId, rng: &mut R) -> Result<NodeId> {
    g.check_node(prev)?;
    g.check_node(cur)?;
    let nbrs = g.neighbors(cur);
    let d = nbrs.len();
    let r = cfg.jump_rate;
    if d == 0 && r <= 0.0 {
        return Err(Error::NonErgodic(format!(
            "node {cur} is isolated and the jump rate is 0"
        )));
    }
    Ok(step_unchecked(g.node_count(), nbrs, cfg, prev, rng))
}

/// [`step`] without validation. `nbrs` is the sorted neighbour list of the
/// current node and must be non-empty when the jump rate is 0.
#[inline]
pub(crate) fn step_unchecked<R: Rng + ?Sized>(
    n: usize,
    nbrs: &[NodeId],
    cfg: &WalkConfig,
    prev: NodeId,
    rng: &mut R,
) -> NodeId {
    let d = nbrs.len();
    let r = cfg.jump_rate;
    if d == 0 || (r > 0.0 && rng.gen::<f64>() * (d as f64 + r) < r) {
        return rng.gen_range(0..n);
    }
    if d == 1 {
        return nbrs[0];
    }
    match nbrs.binary_search(&prev) {
        Ok(pos) => {
            // Backtrack with probability w / d given a move.
            if rng.gen::<f64>() * (d as f64) < cfg.backtrack_weight {
                prev
            } else {
                let k = rng.gen_range(0..d - 1);
                nbrs[if k >= pos { k + 1 } else { k }]
            }
        }
        Err(_) => nbrs[rng.gen_range(0..d)],
    }
}

/// Closed-form stationary node law `(d_h + r) / (2R + rN)`.
pub fn stationary_node(g: &Graph, cfg: &WalkConfig) -> Result<Vec<f64>> {
    cfg.require_ergodic()?;
    let r = cfg.jump_rate;
    let total = 2.0 * g.edge_count() as f64 + r * g.node_count() as f64;
    Ok(g.degrees().into_iter().map(|d| (d as f64 + r) / total).collect())
}

/// Normalizing constant applied to a stationary successive sampling
/// probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Normalization {
    /// Left unnormalized: the value is `(2R + rN)` times the probability.
    /// Enough whenever the constant cancels, as in ratio estimators.
    Unnormalized,
    /// Divided by `2R + rN` with the true edge count.
    Exact { edges: f64 },
    /// Divided by `2R̂ + rN` with an estimated edge count.
    Estimated { edges: f64 },
}

impl Normalization {
    pub fn constant(&self, jump_rate: f64, nodes: usize) -> f64 {
        match *self {
            Normalization::Unnormalized => 1.0,
            Normalization::Exact { edges } | Normalization::Estimated { edges } => {
                2.0 * edges + jump_rate * nodes as f64
            }
        }
    }

    pub fn is_estimated(&self) -> bool {
        matches!(self, Normalization::Estimated { .. })
    }
}

/// A stationary successive sampling probability together with the
/// normalization it carries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ssp {
    pub probability: f64,
    pub normalization: Normalization,
}

/// Stationary probability of observing `sequence` as consecutive states:
/// the stationary probability of its first node times the transition
/// probabilities along it. The first transition is lag-free and every later
/// one uses the in-sequence predecessor.
///
/// With `Normalization::Unnormalized` the result is `(d_first + r)` times
/// the transition product.
pub fn s3p<T: Topology + ?Sized>(
    g: &T,
    cfg: &WalkConfig,
    sequence: &[NodeId],
    normalization: Normalization,
) -> Result<Ssp> {
    let (&first, _) = sequence
        .split_first()
        .ok_or_else(|| Error::InvalidConfig("empty state sequence".into()))?;
    let mut p = g.degree(first)? as f64 + cfg.jump_rate;
    let mut prev = first;
    for pair in sequence.windows(2) {
        let t = transition_prob(g, cfg, prev, pair[0], pair[1])?;
        if t == 0.0 {
            return Err(Error::Unreachable);
        }
        p *= t;
        prev = pair[0];
    }
    let constant = normalization.constant(cfg.jump_rate, g.node_count());
    Ok(Ssp {
        probability: p / constant,
        normalization,
    })
}
