//! Design-based estimators: graph size from collisions and weighted
//! degrees, incidence-weighted motif totals, ratio parameters and
//! replicate summaries.

mod size;
mod summary;
mod total;

pub use size::{
    count_collisions, estimate_size_cr, estimate_size_gr, estimate_size_grcr, weighted_mean_degree, CollisionStat,
    Extraction, SizeEstimate, SizeMethod,
};
pub use summary::{replicate_summary, ReplicateSummary};
pub use total::{
    combine_windows, estimate_ratio, estimate_total, estimate_total_window, exact_window_expectation, IndicatorRule,
    PpwFallback, RatioEstimate, Target, TotalEstimate, TotalOptions, WeightOptions, WindowEstimate,
};
