//! Normalization and ranking helpers shared across families.

use crate::error::{MeasureError, Result};
use crate::types::{Histogram, Pdf, RealVector};

/// Divides every count by the total number of observations.
pub fn normalize(h: &Histogram) -> Result<Pdf> {
    let total = h.total();
    if total <= 0.0 {
        return Err(MeasureError::ZeroMassHistogram);
    }
    let probs = h.counts().iter().map(|&c| c / total).collect();
    Ok(Pdf::from_normalized_unchecked(probs))
}

/// Ranks entries from 1 (smallest). Tied entries share the average of the
/// ranks they span.
pub fn rank_vector(v: &RealVector) -> RealVector {
    let mut order: Vec<usize> = (0..v.dim()).collect();
    order.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut ranks = vec![0.0; v.dim()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && v[order[end]] == v[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let avg = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = avg;
        }
        start = end;
    }
    RealVector::new(ranks).expect("ranks are finite")
}
