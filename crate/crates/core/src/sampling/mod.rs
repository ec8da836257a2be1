//! Running walks and turning them into observations.

mod observe;
mod sample_graph;
mod walk;

pub use observe::{
    detect_observations, es3_set, incidence_weights, observe_window, FullS3p, MotifObservation, ObservedS3p,
    S3pProvider, WeightScheme,
};
pub use sample_graph::SampleGraph;
pub use walk::{run_walk, WalkTrace, Walker};
