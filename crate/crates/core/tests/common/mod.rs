#![allow(dead_code)]

use lrw_core::Graph;
use proptest::prelude::*;

/// Graph on `n` nodes whose edges are the set bits of `mask`, taken over
/// pairs `i < j` in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64, values: Vec<f64>) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> bit & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, &edges, values).unwrap()
}

pub fn is_connected(g: &Graph) -> bool {
    let mut seen = vec![false; g.node_count()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Every connected labelled graph on `n` nodes.
pub fn connected_graphs(n: usize, values: &[f64]) -> impl Iterator<Item = Graph> + '_ {
    let pairs = n * (n - 1) / 2;
    (0..1u64 << pairs)
        .map(move |mask| graph_from_mask(n, mask, values[..n].to_vec()))
        .filter(is_connected)
}

/// Random graph on 1..=max_n nodes with binary values, isolated nodes
/// allowed.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            Just(n),
            0.0..1.0f64,
            proptest::collection::vec(0.0..1.0f64, pairs),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(n, density, coins, cases)| {
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in (i + 1)..n {
                        if coins[k] < density {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                let values = cases.iter().map(|&c| if c { 1.0 } else { 0.0 }).collect();
                Graph::from_edges(n, &edges, values).unwrap()
            })
    })
}

/// Permutation of `0..n`.
pub fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}
