//! Which motif occurrences a window of consecutive states reveals, their
//! equivalent observing sequences, and incidence weights over them.
//!
//! Observation rules, for a window of `q + 1` states:
//!
//! | kind       | q | window reveals                                            |
//! |------------|---|-----------------------------------------------------------|
//! | node       | 0 | the visited node                                          |
//! | edge       | 0 | every edge at the visited node                            |
//! | two-star   | 0 | every two-star centred at the visited node                |
//! | triangle   | 1 | every triangle on `{i, j}` when `i, j` are adjacent       |
//! | four-cycle | 2 | induced 4-cycles containing the path `a - b - c`          |
//! | three-path | 2 | induced 3-paths in which `a - b - c` are consecutive      |
//!
//! Every rule reads only adjacency rows of the window's own states, so it
//! works on a [`SampleGraph`](super::SampleGraph). The equivalent sequences
//! of an occurrence are exactly the windows of the same length whose rule
//! reveals it.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Topology};
use crate::kernel::{s3p, Normalization, WalkConfig};
use crate::motif::{MotifKind, MotifOccurrence, MotifValue};
use crate::sampling::{SampleGraph, WalkTrace};

/// An occurrence together with the window that revealed it.
#[derive(Debug, Clone, PartialEq)]
pub struct MotifObservation {
    pub occurrence: MotifOccurrence,
    /// The observing window, in walk order.
    pub as3: Vec<NodeId>,
    /// Time index of the window's first state.
    pub time: usize,
}

/// Occurrences revealed by one window. The window length must be
/// `kind.lag() + 1`.
pub fn observe_window<T: Topology + ?Sized>(
    g: &T,
    kind: MotifKind,
    window: &[NodeId],
    value: MotifValue,
) -> Result<Vec<MotifOccurrence>> {
    if window.len() != kind.lag() + 1 {
        return Err(Error::InvalidConfig(format!(
            "{kind} windows have {} states, got {}",
            kind.lag() + 1,
            window.len()
        )));
    }
    let mut out = Vec::new();
    let mut push = |nodes: Vec<NodeId>| -> Result<()> {
        let v = value.evaluate(g, &nodes)?;
        out.push(MotifOccurrence::new(kind, nodes, v));
        Ok(())
    };
    match (kind, window) {
        (MotifKind::Node, &[h]) => {
            g.neighbors(h)?;
            push(vec![h])?;
        }
        (MotifKind::Edge, &[h]) => {
            for &j in g.neighbors(h)? {
                push(vec![h, j])?;
            }
        }
        (MotifKind::TwoStar, &[h]) => {
            let nbrs = g.neighbors(h)?;
            for (a, &i) in nbrs.iter().enumerate() {
                for &j in &nbrs[a + 1..] {
                    push(vec![h, i, j])?;
                }
            }
        }
        (MotifKind::Triangle, &[i, j]) => {
            if i != j && g.is_adjacent(i, j)? {
                for k in intersect(g.neighbors(i)?, g.neighbors(j)?) {
                    push(vec![i, j, k])?;
                }
            }
        }
        (MotifKind::FourCycle, &[a, b, c]) => {
            if is_open_path(g, a, b, c)? {
                let (nb, na, nc) = (g.neighbors(b)?, g.neighbors(a)?, g.neighbors(c)?);
                for x in intersect(na, nc) {
                    if x != b && nb.binary_search(&x).is_err() {
                        push(vec![a, b, c, x])?;
                    }
                }
            }
        }
        (MotifKind::ThreePath, &[a, b, c]) => {
            if is_open_path(g, a, b, c)? {
                let (na, nb, nc) = (g.neighbors(a)?, g.neighbors(b)?, g.neighbors(c)?);
                // Extend beyond c, then beyond a.
                for (end, other) in [(nc, na), (na, nc)] {
                    for &x in end {
                        if x != b && nb.binary_search(&x).is_err() && other.binary_search(&x).is_err() {
                            push(vec![a, b, c, x])?;
                        }
                    }
                }
            }
        }
        _ => unreachable!("window length checked above"),
    }
    Ok(out)
}

/// `a - b - c` with distinct endpoints that are not adjacent.
fn is_open_path<T: Topology + ?Sized>(g: &T, a: NodeId, b: NodeId, c: NodeId) -> Result<bool> {
    Ok(a != b && b != c && a != c && g.is_adjacent(a, b)? && g.is_adjacent(b, c)? && !g.is_adjacent(a, c)?)
}

fn intersect<'a>(x: &'a [NodeId], y: &'a [NodeId]) -> impl Iterator<Item = NodeId> + 'a {
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || {
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                    return Some(x[i - 1]);
                }
            }
        }
        None
    })
}

/// Every (window, occurrence) pair along the trace, in time order.
pub fn detect_observations(
    trace: &WalkTrace,
    sample: &SampleGraph<'_>,
    kind: MotifKind,
    value: MotifValue,
) -> Result<Vec<MotifObservation>> {
    let width = kind.lag() + 1;
    let mut out = Vec::new();
    for (time, window) in trace.states().windows(width).enumerate() {
        for occurrence in observe_window(sample, kind, window, value)? {
            out.push(MotifObservation {
                occurrence,
                as3: window.to_vec(),
                time,
            });
        }
    }
    Ok(out)
}

/// All windows of the observing length that reveal `occurrence`.
pub fn es3_set<T: Topology + ?Sized>(g: &T, occurrence: &MotifOccurrence) -> Result<Vec<Vec<NodeId>>> {
    let m = &occurrence.nodes;
    Ok(match occurrence.kind {
        MotifKind::Node => vec![vec![m[0]]],
        MotifKind::Edge => vec![vec![m[0]], vec![m[1]]],
        // A leaf's row shows only one of the two edges.
        MotifKind::TwoStar => vec![vec![m[0]]],
        MotifKind::Triangle => {
            let mut seqs = Vec::with_capacity(6);
            for &a in m {
                for &b in m {
                    if a != b {
                        seqs.push(vec![a, b]);
                    }
                }
            }
            seqs
        }
        MotifKind::FourCycle | MotifKind::ThreePath => {
            let mut seqs = Vec::new();
            for &b in m {
                for &a in m {
                    for &c in m {
                        if a != b && b != c && a != c && g.is_adjacent(a, b)? && g.is_adjacent(b, c)? {
                            seqs.push(vec![a, b, c]);
                        }
                    }
                }
            }
            seqs
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightScheme {
    /// `1 / |F|` on every equivalent sequence.
    Multiplicity,
    /// Proportional to each sequence's stationary probability.
    Ppw,
}

impl WeightScheme {
    pub fn name(self) -> &'static str {
        match self {
            WeightScheme::Multiplicity => "multiplicity",
            WeightScheme::Ppw => "ppw",
        }
    }
}

impl std::str::FromStr for WeightScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "multiplicity" => Ok(WeightScheme::Multiplicity),
            "ppw" => Ok(WeightScheme::Ppw),
            _ => Err(Error::InvalidConfig(format!("unknown weight scheme `{s}`"))),
        }
    }
}

/// Source of stationary successive sampling probabilities, up to a common
/// positive constant.
pub trait S3pProvider {
    fn s3p(&self, sequence: &[NodeId]) -> Result<f64>;
}

/// Probabilities computable from a sample: defined only for sequences
/// whose nodes were all visited.
pub struct ObservedS3p<'a, 'g> {
    pub sample: &'a SampleGraph<'g>,
    pub config: WalkConfig,
}

impl S3pProvider for ObservedS3p<'_, '_> {
    fn s3p(&self, sequence: &[NodeId]) -> Result<f64> {
        if !sequence.iter().all(|&v| self.sample.in_seed(v)) {
            return Err(Error::PpwInfeasible);
        }
        Ok(s3p(self.sample, &self.config, sequence, Normalization::Unnormalized)?.probability)
    }
}

/// Probabilities from the full graph.
pub struct FullS3p<'g> {
    pub graph: &'g Graph,
    pub config: WalkConfig,
}

impl S3pProvider for FullS3p<'_> {
    fn s3p(&self, sequence: &[NodeId]) -> Result<f64> {
        Ok(s3p(self.graph, &self.config, sequence, Normalization::Unnormalized)?.probability)
    }
}

/// Weights over `es3`, in the same order, summing to 1.
pub fn incidence_weights<P: S3pProvider + ?Sized>(
    es3: &[Vec<NodeId>],
    scheme: WeightScheme,
    provider: &P,
) -> Result<Vec<f64>> {
    if es3.is_empty() {
        return Err(Error::InvalidConfig("empty equivalent-sequence set".into()));
    }
    match scheme {
        WeightScheme::Multiplicity => Ok(vec![1.0 / es3.len() as f64; es3.len()]),
        WeightScheme::Ppw => {
            let probs = es3.iter().map(|s| provider.s3p(s)).collect::<Result<Vec<_>>>()?;
            let total: f64 = probs.iter().sum();
            Ok(probs.into_iter().map(|p| p / total).collect())
        }
    }
}
