use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Topology};
use crate::sampling::WalkTrace;

/// The part of a graph revealed by visiting the seed nodes: every edge with
/// at least one endpoint in the seed, and the nodes incident to them.
///
/// As a [`Topology`] it answers only observed queries: neighbour lists of
/// seed nodes, adjacency of pairs touching the seed, and values of observed
/// nodes. Anything else is [`Error::Unobserved`].
#[derive(Debug, Clone)]
pub struct SampleGraph<'g> {
    graph: &'g Graph,
    seed: Vec<NodeId>,
    in_seed: Vec<bool>,
    observed: Vec<bool>,
}

impl<'g> SampleGraph<'g> {
    pub fn new(graph: &'g Graph, seed_nodes: impl IntoIterator<Item = NodeId>) -> Result<Self> {
        let n = graph.node_count();
        let mut in_seed = vec![false; n];
        for v in seed_nodes {
            graph.check_node(v)?;
            in_seed[v] = true;
        }
        let mut observed = in_seed.clone();
        let seed: Vec<NodeId> = (0..n).filter(|&v| in_seed[v]).collect();
        for &v in &seed {
            for &u in graph.neighbors(v) {
                observed[u] = true;
            }
        }
        Ok(Self {
            graph,
            seed,
            in_seed,
            observed,
        })
    }

    pub fn from_trace(graph: &'g Graph, trace: &WalkTrace) -> Result<Self> {
        Self::new(graph, trace.states().iter().copied())
    }

    pub fn from_traces(graph: &'g Graph, traces: &[&WalkTrace]) -> Result<Self> {
        Self::new(graph, traces.iter().flat_map(|t| t.states().iter().copied()))
    }

    /// Seed nodes `s`, ascending.
    pub fn seed(&self) -> &[NodeId] {
        &self.seed
    }

    pub fn in_seed(&self, v: NodeId) -> bool {
        self.in_seed.get(v).copied().unwrap_or(false)
    }

    pub fn is_observed(&self, v: NodeId) -> bool {
        self.observed.get(v).copied().unwrap_or(false)
    }

    /// Observed nodes `U_s = s ∪ Inc(A_s)`, ascending.
    pub fn observed_nodes(&self) -> Vec<NodeId> {
        (0..self.observed.len()).filter(|&v| self.observed[v]).collect()
    }

    /// Observed edges `A_s` as `(i, j)` with `i < j`, sorted.
    pub fn observed_edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut edges: Vec<_> = self
            .seed
            .iter()
            .flat_map(|&v| self.graph.neighbors(v).iter().map(move |&u| (v.min(u), v.max(u))))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    /// Edge-list export: `N <n>`, then `seed <ids...>`, then one observed
    /// edge per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("N {}\nseed", self.graph.node_count());
        for v in &self.seed {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
        for (u, v) in self.observed_edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

impl Topology for SampleGraph<'_> {
    fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    fn neighbors(&self, v: NodeId) -> Result<&[NodeId]> {
        if self.in_seed(v) {
            Ok(self.graph.neighbors(v))
        } else {
            Err(Error::Unobserved(format!("adjacency row of node {v}")))
        }
    }

    fn is_adjacent(&self, u: NodeId, v: NodeId) -> Result<bool> {
        if self.in_seed(u) || self.in_seed(v) {
            Ok(self.graph.is_adjacent(u, v))
        } else {
            Err(Error::Unobserved(format!("pair {{{u}, {v}}}")))
        }
    }

    fn value(&self, v: NodeId) -> Result<f64> {
        if self.is_observed(v) {
            Ok(self.graph.value(v))
        } else {
            Err(Error::Unobserved(format!("value of node {v}")))
        }
    }
}
