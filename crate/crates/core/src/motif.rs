//! Motif kinds, occurrences and brute-force enumeration.
//!
//! Four-cycles and three-paths are induced: the subgraph induced by the
//! node set is exactly the cycle or the path. A two-star is a centre with
//! two neighbours, regardless of whether the two leaves are adjacent, so a
//! triangle contains three two-stars and the two-star count of a graph is
//! the sum of `C(d_i, 2)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MotifKind {
    Node,
    Edge,
    TwoStar,
    Triangle,
    FourCycle,
    ThreePath,
}

impl MotifKind {
    pub const ALL: [MotifKind; 6] = [
        MotifKind::Node,
        MotifKind::Edge,
        MotifKind::TwoStar,
        MotifKind::Triangle,
        MotifKind::FourCycle,
        MotifKind::ThreePath,
    ];

    /// Number of nodes in an occurrence.
    pub fn order(self) -> usize {
        match self {
            MotifKind::Node => 1,
            MotifKind::Edge => 2,
            MotifKind::TwoStar | MotifKind::Triangle => 3,
            MotifKind::FourCycle | MotifKind::ThreePath => 4,
        }
    }

    /// Number of moves `q` in the state sequence that observes an
    /// occurrence; windows have `q + 1` states.
    pub fn lag(self) -> usize {
        match self {
            MotifKind::Node | MotifKind::Edge | MotifKind::TwoStar => 0,
            MotifKind::Triangle => 1,
            MotifKind::FourCycle | MotifKind::ThreePath => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MotifKind::Node => "node",
            MotifKind::Edge => "edge",
            MotifKind::TwoStar => "two-star",
            MotifKind::Triangle => "triangle",
            MotifKind::FourCycle => "four-cycle",
            MotifKind::ThreePath => "three-path",
        }
    }
}

impl fmt::Display for MotifKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MotifKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MotifKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown motif `{s}`")))
    }
}

/// How an occurrence's value is derived from its node values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MotifValue {
    /// Product of the node values (for a binary case indicator: 1 iff every
    /// node is a case).
    #[default]
    Product,
    /// Every occurrence counts 1.
    Ones,
}

impl MotifValue {
    pub fn evaluate<T: Topology + ?Sized>(self, g: &T, nodes: &[NodeId]) -> Result<f64> {
        match self {
            MotifValue::Ones => Ok(1.0),
            MotifValue::Product => nodes.iter().try_fold(1.0, |acc, &v| Ok(acc * g.value(v)?)),
        }
    }
}

/// One occurrence of a motif.
///
/// `nodes` is canonical: ascending, except for two-stars which are stored as
/// `[centre, low leaf, high leaf]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MotifOccurrence {
    pub kind: MotifKind,
    pub nodes: Vec<NodeId>,
    pub value: f64,
}

impl MotifOccurrence {
    pub fn new(kind: MotifKind, mut nodes: Vec<NodeId>, value: f64) -> Self {
        canonicalize(kind, &mut nodes);
        Self { kind, nodes, value }
    }

    /// Centre of a two-star.
    pub fn center(&self) -> Option<NodeId> {
        (self.kind == MotifKind::TwoStar).then(|| self.nodes[0])
    }
}

pub(crate) fn canonicalize(kind: MotifKind, nodes: &mut [NodeId]) {
    match kind {
        MotifKind::TwoStar => nodes[1..].sort_unstable(),
        _ => nodes.sort_unstable(),
    }
}

/// Whether the subgraph induced by `nodes` matches `kind`. For two-stars
/// `nodes[0]` is the centre.
pub fn matches_kind(g: &Graph, kind: MotifKind, nodes: &[NodeId]) -> bool {
    if nodes.len() != kind.order() {
        return false;
    }
    let degrees_within = |sorted: bool| {
        let mut d: Vec<usize> = nodes
            .iter()
            .map(|&u| nodes.iter().filter(|&&v| g.is_adjacent(u, v)).count())
            .collect();
        if sorted {
            d.sort_unstable();
        }
        d
    };
    match kind {
        MotifKind::Node => true,
        MotifKind::Edge => g.is_adjacent(nodes[0], nodes[1]),
        MotifKind::TwoStar => {
            nodes[1] != nodes[2] && g.is_adjacent(nodes[0], nodes[1]) && g.is_adjacent(nodes[0], nodes[2])
        }
        MotifKind::Triangle => degrees_within(true) == [2, 2, 2],
        MotifKind::FourCycle => degrees_within(true) == [2, 2, 2, 2],
        // Three edges on four nodes with this degree sequence is a path.
        MotifKind::ThreePath => degrees_within(true) == [1, 1, 2, 2],
    }
}

/// Every occurrence of `kind` in `g`, by exhaustive search over node
/// subsets. Cost is O(N^order); meant for graphs of a few hundred nodes.
pub fn enumerate_motifs(g: &Graph, kind: MotifKind, value: MotifValue) -> Vec<MotifOccurrence> {
    let n = g.node_count();
    let make = |nodes: Vec<NodeId>| {
        let v = value.evaluate(g, &nodes).expect("full graph answers every query");
        MotifOccurrence::new(kind, nodes, v)
    };
    let mut out = Vec::new();
    match kind {
        MotifKind::Node => out.extend((0..n).map(|i| make(vec![i]))),
        MotifKind::Edge => {
            for i in 0..n {
                for j in (i + 1)..n {
                    if g.is_adjacent(i, j) {
                        out.push(make(vec![i, j]));
                    }
                }
            }
        }
        MotifKind::TwoStar => {
            for c in 0..n {
                for i in 0..n {
                    for j in (i + 1)..n {
                        if matches_kind(g, kind, &[c, i, j]) {
                            out.push(make(vec![c, i, j]));
                        }
                    }
                }
            }
        }
        MotifKind::Triangle => {
            for i in 0..n {
                for j in (i + 1)..n {
                    for k in (j + 1)..n {
                        if matches_kind(g, kind, &[i, j, k]) {
                            out.push(make(vec![i, j, k]));
                        }
                    }
                }
            }
        }
        MotifKind::FourCycle | MotifKind::ThreePath => {
            for i in 0..n {
                for j in (i + 1)..n {
                    for k in (j + 1)..n {
                        for l in (k + 1)..n {
                            if matches_kind(g, kind, &[i, j, k, l]) {
                                out.push(make(vec![i, j, k, l]));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Sum of occurrence values.
pub fn graph_total(occurrences: &[MotifOccurrence]) -> f64 {
    occurrences.iter().map(|o| o.value).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    fn count(g: &Graph, kind: MotifKind) -> usize {
        enumerate_motifs(g, kind, MotifValue::Ones).len()
    }

    #[test]
    fn triangle_graph() {
        let k3 = fixtures::complete(3);
        let t = enumerate_motifs(&k3, MotifKind::Triangle, MotifValue::Ones);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].nodes, vec![0, 1, 2]);
        assert_eq!(count(&k3, MotifKind::TwoStar), 3);
    }

    #[test]
    fn path_graph() {
        let p = fixtures::path5();
        assert_eq!(count(&p, MotifKind::Edge), 4);
        assert_eq!(count(&p, MotifKind::Triangle), 0);
        assert_eq!(count(&p, MotifKind::ThreePath), 2);
        assert_eq!(count(&p, MotifKind::TwoStar), 3);
    }

    #[test]
    fn induced_shapes() {
        let c4 = fixtures::cycle(4);
        assert_eq!(count(&c4, MotifKind::FourCycle), 1);
        assert_eq!(count(&c4, MotifKind::ThreePath), 0);
        // A chord makes the cycle non-induced.
        let k4 = fixtures::complete(4);
        assert_eq!(count(&k4, MotifKind::FourCycle), 0);
        assert_eq!(count(&k4, MotifKind::Triangle), 4);
        assert_eq!(count(&fixtures::cycle(5), MotifKind::ThreePath), 5);
    }

    #[test]
    fn totals() {
        let g = fixtures::random(30, 0.2, 4);
        let edges = enumerate_motifs(&g, MotifKind::Edge, MotifValue::Ones);
        assert_eq!(graph_total(&edges), g.edge_count() as f64);
        assert_eq!(graph_total(&[]), 0.0);

        let cases = crate::graph::case_values(100, 20);
        let h = Graph::from_edges(100, &[], cases).unwrap();
        let nodes = enumerate_motifs(&h, MotifKind::Node, MotifValue::Product);
        let theta = graph_total(&nodes);
        assert_eq!(theta, 20.0);
        assert_eq!(theta / 100.0, 0.2);
    }

    #[test]
    fn product_values() {
        // Case nodes are 0..10 of 30.
        let g = fixtures::random(30, 0.3, 9);
        for t in enumerate_motifs(&g, MotifKind::Triangle, MotifValue::Product) {
            let expected = if t.nodes.iter().all(|&v| v < 10) { 1.0 } else { 0.0 };
            assert_eq!(t.value, expected);
        }
    }

    #[test]
    fn kind_names_parse() {
        for k in MotifKind::ALL {
            assert_eq!(k.name().parse::<MotifKind>().unwrap(), k);
        }
        assert!("square".parse::<MotifKind>().is_err());
    }
}
