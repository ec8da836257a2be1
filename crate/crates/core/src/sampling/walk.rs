use std::fmt::Write as _;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::kernel::{stationary_node, step_unchecked, Init, WalkConfig};

/// Realized states `X_0, ..., X_T` of one walk.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkTrace {
    states: Vec<NodeId>,
    config: WalkConfig,
    node_count: usize,
}

impl WalkTrace {
    /// Wraps an externally produced state sequence.
    pub fn from_states(states: Vec<NodeId>, config: WalkConfig, node_count: usize) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidConfig("a trace has at least one state".into()));
        }
        if let Some(&v) = states.iter().find(|&&v| v >= node_count) {
            return Err(Error::NodeOutOfRange {
                node: v,
                nodes: node_count,
            });
        }
        Ok(Self {
            states,
            config,
            node_count,
        })
    }

    pub fn states(&self) -> &[NodeId] {
        &self.states
    }

    pub fn config(&self) -> &WalkConfig {
        &self.config
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Distinct visited nodes, ascending.
    pub fn seed_sample(&self) -> Vec<NodeId> {
        let mut s = self.states.clone();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Fraction of the node set visited.
    pub fn traverse(&self) -> f64 {
        let mut seen = vec![false; self.node_count];
        let distinct = self
            .states
            .iter()
            .filter(|&&v| !std::mem::replace(&mut seen[v], true))
            .count();
        distinct as f64 / self.node_count as f64
    }

    /// CSV with header `t,state`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,state\n");
        for (t, v) in self.states.iter().enumerate() {
            let _ = writeln!(out, "{t},{v}");
        }
        out
    }
}

/// A walk sampler bound to one graph and configuration, reusable across
/// replicates.
#[derive(Debug, Clone)]
pub struct Walker<'g> {
    graph: &'g Graph,
    config: WalkConfig,
    start: Option<WeightedIndex<f64>>,
}

impl<'g> Walker<'g> {
    pub fn new(graph: &'g Graph, config: WalkConfig) -> Result<Self> {
        config.validate(graph)?;
        config.require_ergodic()?;
        let start = match config.init {
            Init::Stationary => Some(
                WeightedIndex::new(stationary_node(graph, &config)?)
                    .map_err(|e| Error::InvalidConfig(e.to_string()))?,
            ),
            _ => None,
        };
        Ok(Self { graph, config, start })
    }

    pub fn config(&self) -> &WalkConfig {
        &self.config
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn draw_start<R: Rng + ?Sized>(&self, rng: &mut R) -> NodeId {
        match (self.config.init, &self.start) {
            (Init::Fixed(v), _) => v,
            (Init::Uniform, _) => rng.gen_range(0..self.graph.node_count()),
            (Init::Stationary, Some(dist)) => dist.sample(rng),
            (Init::Stationary, None) => unreachable!("stationary start table is built in new()"),
        }
    }

    pub fn run<R: Rng + ?Sized>(&self, rng: &mut R) -> WalkTrace {
        let mut states = Vec::with_capacity(self.config.walk_length + 1);
        self.run_into(rng, &mut states);
        WalkTrace {
            states,
            config: self.config,
            node_count: self.graph.node_count(),
        }
    }

    /// Fills `states` with a fresh walk of `T + 1` states.
    pub fn run_into<R: Rng + ?Sized>(&self, rng: &mut R, states: &mut Vec<NodeId>) {
        states.clear();
        let n = self.graph.node_count();
        let x0 = self.draw_start(rng);
        states.push(x0);
        let (mut prev, mut cur) = (x0, x0);
        for _ in 0..self.config.walk_length {
            let next = step_unchecked(n, self.graph.neighbors(cur), &self.config, prev, rng);
            states.push(next);
            prev = cur;
            cur = next;
        }
    }
}

pub fn run_walk<R: Rng + ?Sized>(g: &Graph, cfg: &WalkConfig, rng: &mut R) -> Result<WalkTrace> {
    Ok(Walker::new(g, *cfg)?.run(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;
    use crate::kernel::transition_prob;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_length_walk() {
        let g = fixtures::random(20, 0.2, 1);
        let cfg = WalkConfig::new(1.0, 0.5, 0, Init::Uniform).unwrap();
        let t = run_walk(&g, &cfg, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.traverse(), 1.0 / 20.0);
    }

    #[test]
    fn single_node_graph() {
        let g = Graph::with_cases(1, 1, &[]).unwrap();
        let cfg = WalkConfig::new(0.5, 0.5, 25, Init::Stationary).unwrap();
        let t = run_walk(&g, &cfg, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert!(t.states().iter().all(|&v| v == 0));
        assert_eq!(t.traverse(), 1.0);
    }

    #[test]
    fn walks_use_possible_transitions_only() {
        let g = fixtures::random(25, 0.15, 4);
        let cfg = WalkConfig::new(0.3, 0.2, 400, Init::Fixed(3)).unwrap();
        let t = run_walk(&g, &cfg, &mut ChaCha8Rng::seed_from_u64(8)).unwrap();
        assert_eq!(t.len(), 401);
        assert_eq!(t.states()[0], 3);
        let s = t.states();
        let mut prev = s[0];
        for w in s.windows(2) {
            assert!(transition_prob(&g, &cfg, prev, w[0], w[1]).unwrap() > 0.0);
            prev = w[0];
        }
        let psi = t.traverse();
        assert!(psi > 0.0 && psi <= 1.0);
        assert_eq!(t.seed_sample().len() as f64 / 25.0, psi);
    }

    #[test]
    fn rejects_non_ergodic_and_bad_start() {
        let g = fixtures::path5();
        assert!(matches!(
            Walker::new(&g, WalkConfig::new(0.0, 1.0, 5, Init::Uniform).unwrap()),
            Err(Error::NonErgodic(_))
        ));
        assert!(Walker::new(&g, WalkConfig::new(1.0, 1.0, 5, Init::Fixed(5)).unwrap()).is_err());
    }

    #[test]
    fn trace_csv() {
        let cfg = WalkConfig::kernel(1.0, 1.0).unwrap();
        let t = WalkTrace::from_states(vec![2, 0, 4], cfg, 5).unwrap();
        assert_eq!(t.to_csv(), "t,state\n0,2\n1,0\n2,4\n");
        assert!(WalkTrace::from_states(vec![7], cfg, 5).is_err());
        assert!(WalkTrace::from_states(vec![], cfg, 5).is_err());
    }

    #[test]
    fn stationary_start_frequencies() {
        let g = fixtures::path5();
        let cfg = WalkConfig::new(1.0, 1.0, 0, Init::Stationary).unwrap();
        let w = Walker::new(&g, cfg).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let trials = 200_000;
        let mut counts = [0usize; 5];
        for _ in 0..trials {
            counts[w.draw_start(&mut rng)] += 1;
        }
        for (k, d) in counts.iter().zip([2.0, 3.0, 3.0, 3.0, 2.0]) {
            let p = d / 13.0;
            let se = (p * (1.0 - p) / trials as f64).sqrt();
            assert!((*k as f64 / trials as f64 - p).abs() < 4.0 * se);
        }
    }
}
