//! Exact Markov chain over ordered pairs `(X_{t-1}, X_t)`.
//!
//! The node process is not Markov when `w < 1`, but the pair process is.
//! State `(i, h)` is stored at index `i * N + h` and moves only to states
//! of the form `(h, j)`, with probability given by the kernel.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::kernel::{transition_prob, WalkConfig};

/// Size limits for pair-chain construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainLimits {
    /// Largest admissible number of pair states `N^2`.
    pub max_states: usize,
}

impl Default for ChainLimits {
    fn default() -> Self {
        Self { max_states: 10_000 }
    }
}

/// Row-stochastic transition operator over the `N^2` pair states, stored
/// sparsely by row. Only successors sharing the middle node are present.
#[derive(Debug, Clone)]
pub struct PairStateChain {
    nodes: usize,
    row_start: Vec<usize>,
    targets: Vec<usize>,
    probs: Vec<f64>,
}

pub fn build_pair_chain(g: &Graph, cfg: &WalkConfig, limits: &ChainLimits) -> Result<PairStateChain> {
    if cfg.jump_rate <= 0.0 {
        return Err(Error::NonErgodic(
            "the pair chain is irreducible only with a positive jump rate".into(),
        ));
    }
    let n = g.node_count();
    let states = n * n;
    if states > limits.max_states {
        return Err(Error::StateSpaceTooLarge {
            states,
            cap: limits.max_states,
        });
    }
    let mut row_start = Vec::with_capacity(states + 1);
    let mut targets = Vec::with_capacity(states * n);
    let mut probs = Vec::with_capacity(states * n);
    row_start.push(0);
    for i in 0..n {
        for h in 0..n {
            for j in 0..n {
                let p = transition_prob(g, cfg, i, h, j)?;
                if p > 0.0 {
                    targets.push(h * n + j);
                    probs.push(p);
                }
            }
            row_start.push(targets.len());
        }
    }
    Ok(PairStateChain {
        nodes: n,
        row_start,
        targets,
        probs,
    })
}

impl PairStateChain {
    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn state_count(&self) -> usize {
        self.nodes * self.nodes
    }

    pub fn index(&self, prev: NodeId, cur: NodeId) -> usize {
        prev * self.nodes + cur
    }

    pub fn state(&self, index: usize) -> (NodeId, NodeId) {
        (index / self.nodes, index % self.nodes)
    }

    /// Non-zero successors of a state as `(target index, probability)`.
    pub fn row(&self, state: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_start[state]..self.row_start[state + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.probs[range].iter().copied())
    }

    /// Dense transition probability between two pair states.
    pub fn prob(&self, from: usize, to: usize) -> f64 {
        self.row(from).find(|&(t, _)| t == to).map_or(0.0, |(_, p)| p)
    }

    /// One step of `dist <- dist * P`.
    pub fn propagate(&self, dist: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; dist.len()];
        for (s, &mass) in dist.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            for (t, p) in self.row(s) {
                out[t] += mass * p;
            }
        }
        out
    }

    /// Pair distribution at time 0 for a node distribution of `X_0`: the
    /// walk starts in `(X_0, X_0)`, whose outgoing row is the lag-free
    /// kernel.
    pub fn initial_pairs(&self, init: &[f64]) -> Result<Vec<f64>> {
        if init.len() != self.nodes {
            return Err(Error::InvalidConfig(format!(
                "initial distribution has {} entries for {} nodes",
                init.len(),
                self.nodes
            )));
        }
        let total: f64 = init.iter().sum();
        if init.iter().any(|&p| p < 0.0) || (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidConfig(
                "initial distribution must be a probability vector".into(),
            ));
        }
        let mut dist = vec![0.0; self.state_count()];
        for (i, &p) in init.iter().enumerate() {
            dist[self.index(i, i)] = p;
        }
        Ok(dist)
    }

    /// Node law of `X_t` for each requested `t`, by exact propagation from
    /// `X_0 ~ init`.
    pub fn marginals_at(&self, init: &[f64], times: &[usize]) -> Result<Vec<Vec<f64>>> {
        let mut dist = self.initial_pairs(init)?;
        let mut now = 0;
        let mut sorted: Vec<(usize, usize)> = times.iter().copied().enumerate().map(|(k, t)| (t, k)).collect();
        sorted.sort_unstable();
        let mut out = vec![Vec::new(); times.len()];
        for (t, k) in sorted {
            while now < t {
                dist = self.propagate(&dist);
                now += 1;
            }
            out[k] = marginal_of(self.nodes, &dist);
        }
        Ok(out)
    }
}

/// Node law of the second coordinate of a pair distribution.
pub fn marginal_of(nodes: usize, pair_dist: &[f64]) -> Vec<f64> {
    let mut m = vec![0.0; nodes];
    for (s, &p) in pair_dist.iter().enumerate() {
        m[s % nodes] += p;
    }
    m
}

/// Method for the stationary vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Solver {
    /// Dense LU solve of `pi (P - I) = 0` with the normalization replacing
    /// one equation.
    Direct,
    /// Repeated `pi <- pi P` from the uniform vector until the max-norm
    /// change is at most `tolerance`.
    Power { tolerance: f64, max_iterations: usize },
    /// `Direct` up to [`DIRECT_MAX_STATES`] states, `Power` with the
    /// default settings above.
    Auto,
}

/// Largest state count solved densely by [`Solver::Auto`].
pub const DIRECT_MAX_STATES: usize = 1024;

impl Solver {
    pub const DEFAULT_POWER: Solver = Solver::Power {
        tolerance: 1e-12,
        max_iterations: 1_000_000,
    };
}

/// Stationary law of the pair chain.
#[derive(Debug, Clone, PartialEq)]
pub struct PairStationary {
    nodes: usize,
    probs: Vec<f64>,
    /// Power iterations used; 0 for the direct solve.
    pub iterations: usize,
}

impl PairStationary {
    pub fn pair(&self, prev: NodeId, cur: NodeId) -> f64 {
        self.probs[prev * self.nodes + cur]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    /// `pi_h = sum_i pi_(i, h)`.
    pub fn marginal(&self) -> Vec<f64> {
        marginal_of(self.nodes, &self.probs)
    }
}

pub fn stationary_pair(chain: &PairStateChain, solver: Solver) -> Result<PairStationary> {
    let solver = match solver {
        Solver::Auto if chain.state_count() <= DIRECT_MAX_STATES => Solver::Direct,
        Solver::Auto => Solver::DEFAULT_POWER,
        s => s,
    };
    let (probs, iterations) = match solver {
        Solver::Direct => (solve_direct(chain)?, 0),
        Solver::Power {
            tolerance,
            max_iterations,
        } => solve_power(chain, tolerance, max_iterations)?,
        Solver::Auto => unreachable!(),
    };
    Ok(PairStationary {
        nodes: chain.nodes,
        probs,
        iterations,
    })
}

fn solve_direct(chain: &PairStateChain) -> Result<Vec<f64>> {
    let s = chain.state_count();
    // Row k of the system is the balance equation of state k:
    // sum_j pi_j P[j, k] - pi_k = 0. The last one is replaced by sum pi = 1.
    let mut a = DMatrix::<f64>::zeros(s, s);
    for from in 0..s {
        for (to, p) in chain.row(from) {
            a[(to, from)] += p;
        }
        a[(from, from)] -= 1.0;
    }
    for j in 0..s {
        a[(s - 1, j)] = 1.0;
    }
    let mut b = DVector::<f64>::zeros(s);
    b[s - 1] = 1.0;
    let x = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::SingularSystem(format!("{s} x {s} balance system")))?;
    let total: f64 = x.iter().sum();
    Ok(x.iter().map(|v| v / total).collect())
}

fn solve_power(chain: &PairStateChain, tolerance: f64, max_iterations: usize) -> Result<(Vec<f64>, usize)> {
    let s = chain.state_count();
    let mut x = vec![1.0 / s as f64; s];
    let mut residual = f64::INFINITY;
    for it in 1..=max_iterations {
        let mut y = chain.propagate(&x);
        let total: f64 = y.iter().sum();
        y.iter_mut().for_each(|v| *v /= total);
        residual = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        x = y;
        if residual <= tolerance {
            return Ok((x, it));
        }
    }
    Err(Error::NotConverged {
        iterations: max_iterations,
        residual,
        tolerance,
    })
}

/// Exact stationary probability that `sequence` occupies consecutive time
/// steps mid-walk, computed from the solved pair law: `pi_(m1, m2)` times
/// the kernel along the rest of the sequence. A single node gives its
/// marginal.
pub fn window_probability(
    g: &Graph,
    cfg: &WalkConfig,
    stationary: &PairStationary,
    sequence: &[NodeId],
) -> Result<f64> {
    match sequence {
        [] => Err(Error::InvalidConfig("empty state sequence".into())),
        [h] => Ok(stationary.marginal()[*h]),
        [a, b, rest @ ..] => {
            let mut p = stationary.pair(*a, *b);
            let (mut prev, mut cur) = (*a, *b);
            for &next in rest {
                p *= transition_prob(g, cfg, prev, cur, next)?;
                prev = cur;
                cur = next;
            }
            Ok(p)
        }
    }
}

/// Largest absolute deviations of a solved pair law from the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryDeviation {
    /// Against `pi_h = (d_h + r) / (2R + rN)`.
    pub marginal: f64,
    /// Against `pi_(i, h) = (a_ih + r/N) / (2R + rN)`.
    pub pair: f64,
    /// Residual of `pi_h = sum_{i ~ h} pi_(i, h) + sum_{i !~ h} pi_i r / ((d_i + r) N)`
    /// with the solved marginals on both sides.
    pub mixed: f64,
}

impl StationaryDeviation {
    pub fn max(&self) -> f64 {
        self.marginal.max(self.pair).max(self.mixed)
    }
}

pub fn stationary_deviation(g: &Graph, cfg: &WalkConfig, stationary: &PairStationary) -> StationaryDeviation {
    let n = g.node_count();
    let r = cfg.jump_rate;
    let nf = n as f64;
    let constant = 2.0 * g.edge_count() as f64 + r * nf;
    let pi = stationary.marginal();
    let mut dev = StationaryDeviation {
        marginal: 0.0,
        pair: 0.0,
        mixed: 0.0,
    };
    for h in 0..n {
        let closed = (g.degree(h) as f64 + r) / constant;
        dev.marginal = dev.marginal.max((pi[h] - closed).abs());
        let mut mixed = 0.0;
        for (i, &pi_i) in pi.iter().enumerate() {
            let adjacent = g.is_adjacent(i, h);
            let a = if adjacent { 1.0 } else { 0.0 };
            let closed = (a + r / nf) / constant;
            dev.pair = dev.pair.max((stationary.pair(i, h) - closed).abs());
            mixed += if adjacent {
                stationary.pair(i, h)
            } else {
                pi_i / (g.degree(i) as f64 + r) * r / nf
            };
        }
        dev.mixed = dev.mixed.max((pi[h] - mixed).abs());
    }
    dev
}
