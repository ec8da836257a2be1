use crate::error::{Error, Result};

/// Mean, empirical standard deviation and standard error of replicate
/// values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplicateSummary {
    pub count: usize,
    pub mean: f64,
    /// Square root of the unbiased empirical variance.
    pub sd: f64,
    /// `sd / sqrt(count)`.
    pub se: f64,
}

/// Sums run in slice order, so the result depends only on the values and
/// their order.
pub fn replicate_summary(values: &[f64]) -> Result<ReplicateSummary> {
    let count = values.len();
    if count < 2 {
        return Err(Error::TooFewValues { needed: 2, got: count });
    }
    let n = count as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    let sd = (ss / (n - 1.0)).sqrt();
    Ok(ReplicateSummary {
        count,
        mean,
        sd,
        se: sd / n.sqrt(),
    })
}
