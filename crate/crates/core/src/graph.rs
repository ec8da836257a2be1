//! Simple undirected graphs with node values, the core-periphery case
//! generator and the plain-text edge-list format.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Read access to adjacency information.
///
/// [`Graph`] answers every query. Sample graphs answer only what the
/// observation procedure has revealed and return [`Error::Unobserved`]
/// otherwise, so code written against this trait cannot peek outside the
/// observed region.
pub trait Topology {
    fn node_count(&self) -> usize;

    /// Sorted neighbour list of `v`.
    fn neighbors(&self, v: NodeId) -> Result<&[NodeId]>;

    fn is_adjacent(&self, u: NodeId, v: NodeId) -> Result<bool>;

    fn value(&self, v: NodeId) -> Result<f64>;

    fn degree(&self, v: NodeId) -> Result<usize> {
        self.neighbors(v).map(<[NodeId]>::len)
    }
}

/// Immutable simple undirected graph with a real value per node.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    values: Vec<f64>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Edges may be given in either
    /// orientation; self-loops and repeated edges are rejected.
    pub fn from_edges(node_count: usize, edges: &[(NodeId, NodeId)], values: Vec<f64>) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one node".into()));
        }
        if values.len() != node_count {
            return Err(Error::InvalidGraph(format!(
                "{} node values for {} nodes",
                values.len(),
                node_count
            )));
        }
        let mut adjacency = vec![Vec::new(); node_count];
        for &(u, v) in edges {
            for node in [u, v] {
                if node >= node_count {
                    return Err(Error::NodeOutOfRange {
                        node,
                        nodes: node_count,
                    });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("repeated edge {{{u}, {}}}", w[0])));
            }
        }
        Ok(Self {
            adjacency,
            values,
            edge_count: edges.len(),
        })
    }

    /// Graph whose first `cases` nodes carry value 1 and the rest 0.
    pub fn with_cases(node_count: usize, cases: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        if cases > node_count {
            return Err(Error::InvalidGraph(format!("{cases} cases for {node_count} nodes")));
        }
        Self::from_edges(node_count, edges, case_values(node_count, cases))
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn is_adjacent(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn value(&self, v: NodeId) -> f64 {
        self.values[v]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_node(&self, v: NodeId) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v,
                nodes: self.node_count(),
            })
        }
    }

    /// Same graph with new node values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.node_count() {
            return Err(Error::InvalidGraph(format!(
                "{} node values for {} nodes",
                values.len(),
                self.node_count()
            )));
        }
        Ok(Self { values, ..self.clone() })
    }

    /// Relabels node `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[NodeId]) -> Result<Self> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidConfig("not a permutation of the node set".into()));
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        let mut values = vec![0.0; n];
        for (v, &p) in perm.iter().enumerate() {
            values[p] = self.values[v];
        }
        Self::from_edges(n, &edges, values)
    }

    /// Number of leading nodes with value 1 when the values follow the
    /// "first k nodes are cases" pattern.
    pub fn case_prefix(&self) -> Option<usize> {
        let k = self.values.iter().take_while(|&&y| y == 1.0).count();
        self.values[k..].iter().all(|&y| y == 0.0).then_some(k)
    }

    /// Writes the edge-list format:
    ///
    /// ```text
    /// N <n>
    /// cases <k>
    /// i j
    /// ...
    /// ```
    ///
    /// with 0-based ids, `i < j` and edges in lexicographic order.
    pub fn to_edge_list(&self) -> Result<String> {
        let cases = self
            .case_prefix()
            .ok_or_else(|| Error::InvalidGraph("node values are not a leading block of binary cases".into()))?;
        let mut out = String::with_capacity(16 + 8 * self.edge_count);
        let _ = writeln!(out, "N {}", self.node_count());
        let _ = writeln!(out, "cases {cases}");
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        Ok(out)
    }

    pub fn from_edge_list(text: &str) -> Result<Self> {
        let (header, body) = parse_header(text)?;
        let nodes = header.nodes;
        let cases = header.cases.ok_or_else(|| Error::Parse {
            line: 2,
            message: "expected `cases <k>`".into(),
        })?;
        if cases > nodes {
            return Err(Error::Parse {
                line: 2,
                message: format!("{cases} cases for {nodes} nodes"),
            });
        }
        let edges = parse_edges(body)?;
        Self::with_cases(nodes, cases, &edges)
    }
}

pub(crate) struct Header {
    pub nodes: usize,
    pub cases: Option<usize>,
}

/// Splits off the `N` and optional `cases` lines. Returns the remaining
/// lines paired with their 1-based line numbers.
pub(crate) fn parse_header(text: &str) -> Result<(Header, impl Iterator<Item = (usize, &str)>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();
    let (line, first) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let nodes = keyword_value(first, "N", line)?;
    let cases = match lines.peek() {
        Some((line, l)) if l.starts_with("cases") => {
            let k = keyword_value(l, "cases", *line)?;
            lines.next();
            Some(k)
        }
        _ => None,
    };
    Ok((Header { nodes, cases }, lines))
}

pub(crate) fn keyword_value(line_text: &str, keyword: &str, line: usize) -> Result<usize> {
    let mut parts = line_text.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == keyword => v.parse().map_err(|_| Error::Parse {
            line,
            message: format!("bad integer `{v}`"),
        }),
        _ => Err(Error::Parse {
            line,
            message: format!("expected `{keyword} <integer>`"),
        }),
    }
}

pub(crate) fn parse_edges<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Vec<(NodeId, NodeId)>> {
    lines
        .map(|(line, text)| {
            let mut parts = text.split_whitespace().map(str::parse::<NodeId>);
            match (parts.next(), parts.next(), parts.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => Ok((u, v)),
                _ => Err(Error::Parse {
                    line,
                    message: format!("expected `i j`, got `{text}`"),
                }),
            }
        })
        .collect()
}

pub fn case_values(node_count: usize, cases: usize) -> Vec<f64> {
    (0..node_count).map(|i| if i < cases { 1.0 } else { 0.0 }).collect()
}

/// Edge probabilities of the two-block case graph, indexed by the number
/// of case endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseGraphParams {
    pub nodes: usize,
    pub cases: usize,
    pub p_case_case: f64,
    pub p_case_noncase: f64,
    pub p_noncase_noncase: f64,
}

impl CaseGraphParams {
    /// 100 nodes, 20 cases, calibrated so that the expected edge count is
    /// about 299, case and noncase mean degrees about 13.5 and 4.1, and
    /// triangles about 170 of which about 140 are among cases.
    pub const CALIBRATED: Self = Self {
        nodes: 100,
        cases: 20,
        p_case_case: 0.5,
        p_case_noncase: 0.05,
        p_noncase_noncase: 0.039,
    };

    /// Expected degree of a case node and of a noncase node.
    pub fn expected_degrees(&self) -> (f64, f64) {
        let c = self.cases as f64;
        let nc = (self.nodes - self.cases) as f64;
        (
            (c - 1.0) * self.p_case_case + nc * self.p_case_noncase,
            c * self.p_case_noncase + (nc - 1.0) * self.p_noncase_noncase,
        )
    }

    pub fn expected_edges(&self) -> f64 {
        let c = self.cases as f64;
        let nc = (self.nodes - self.cases) as f64;
        c * (c - 1.0) / 2.0 * self.p_case_case
            + c * nc * self.p_case_noncase
            + nc * (nc - 1.0) / 2.0 * self.p_noncase_noncase
    }
}

/// Seed for [`CaseGraphParams::CALIBRATED`] whose realization has 299 edges,
/// case and noncase mean degrees 13.5 and 4.1, 170 triangles and 140 case
/// triangles. Found by `cargo run --release -p lrw-experiments --example calibrate`.
pub const CALIBRATED_GRAPH_SEED: u64 = 18353;

/// Each unordered pair `{i, j}` independently carries an edge with the
/// probability selected by `y_i + y_j`. The first `cases` nodes have y = 1.
pub fn generate_case_graph(params: &CaseGraphParams, seed: u64) -> Result<Graph> {
    let CaseGraphParams {
        nodes,
        cases,
        p_case_case,
        p_case_noncase,
        p_noncase_noncase,
    } = *params;
    if cases > nodes {
        return Err(Error::InvalidConfig(format!("{cases} cases for {nodes} nodes")));
    }
    for p in [p_case_case, p_case_noncase, p_noncase_noncase] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidConfig(format!("edge probability {p} outside [0, 1]")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..nodes {
        for j in (i + 1)..nodes {
            let p = match (i < cases, j < cases) {
                (true, true) => p_case_case,
                (false, false) => p_noncase_noncase,
                _ => p_case_noncase,
            };
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::with_cases(nodes, cases, &edges)
}

impl Topology for Graph {
    fn node_count(&self) -> usize {
        Graph::node_count(self)
    }

    fn neighbors(&self, v: NodeId) -> Result<&[NodeId]> {
        self.check_node(v)?;
        Ok(Graph::neighbors(self, v))
    }

    fn is_adjacent(&self, u: NodeId, v: NodeId) -> Result<bool> {
        self.check_node(u)?;
        self.check_node(v)?;
        Ok(Graph::is_adjacent(self, u, v))
    }

    fn value(&self, v: NodeId) -> Result<f64> {
        self.check_node(v)?;
        Ok(self.values[v])
    }

    fn degree(&self, v: NodeId) -> Result<usize> {
        self.check_node(v)?;
        Ok(Graph::degree(self, v))
    }
}

/// Small fixed graphs used across the test suites.
pub mod fixtures {
    use super::Graph;

    /// Path 0-1-2-3-4, the five-station line.
    pub fn path5() -> Graph {
        Graph::with_cases(5, 0, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
        Graph::with_cases(n, 0, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::with_cases(n, 0, &edges).unwrap()
    }

    /// Random graph with edge probability `p`, with all values set to 1 on
    /// the first `n / 3` nodes.
    pub fn random(n: usize, p: f64, seed: u64) -> Graph {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        Graph::with_cases(n, n / 3, &edges).unwrap()
    }
}
