//! Scans graph seeds for the calibrated case graph and prints those whose
//! realization matches the study summary: 299 edges, case mean degree 13.5
//! (noncase 4.1 follows), then triangle and case-triangle counts closest to
//! 170 and 140.
//!
//! cargo run --release -p lrw-experiments --example calibrate -- [seeds]

use lrw_core::graph::{generate_case_graph, CaseGraphParams};
use lrw_core::motif::{enumerate_motifs, graph_total};
use lrw_core::{MotifKind, MotifValue};

fn main() {
    let seeds: u64 = std::env::args()
        .nth(1)
        .map_or(200_000, |s| s.parse().expect("seed count"));
    let params = CaseGraphParams::CALIBRATED;
    let mut best: Option<(f64, u64)> = None;
    for seed in 0..seeds {
        let g = generate_case_graph(&params, seed).unwrap();
        if g.edge_count() != 299 {
            continue;
        }
        let case_degree: usize = (0..params.cases).map(|v| g.degree(v)).sum();
        if case_degree != 270 {
            continue;
        }
        let triangles = enumerate_motifs(&g, MotifKind::Triangle, MotifValue::Ones).len() as f64;
        let case_triangles = graph_total(&enumerate_motifs(&g, MotifKind::Triangle, MotifValue::Product));
        let score = (triangles - 170.0).abs() + (case_triangles - 140.0).abs();
        println!("seed {seed}: triangles {triangles}, case triangles {case_triangles}");
        if best.is_none_or(|(s, _)| score < s) {
            best = Some((score, seed));
        }
        if score == 0.0 {
            break;
        }
    }
    match best {
        Some((score, seed)) => println!("best seed {seed} (distance {score})"),
        None => println!("no seed matched the edge and degree totals"),
    }
}
