//! Min/max-based comparisons of two PDFs.

use crate::error::{check_dims, MeasureError, Result};
use crate::types::{Pdf, SimDistPair};

struct BinSums {
    min: f64,
    max: f64,
    abs_diff: f64,
    total: f64,
}

fn bin_sums(p: &Pdf, q: &Pdf) -> Result<BinSums> {
    check_dims(p, q)?;
    let mut s = BinSums {
        min: 0.0,
        max: 0.0,
        abs_diff: 0.0,
        total: 0.0,
    };
    for (&a, &b) in p.iter().zip(q.iter()) {
        s.min += a.min(b);
        s.max += a.max(b);
        s.abs_diff += (a - b).abs();
        s.total += a + b;
    }
    Ok(s)
}

/// Histogram intersection `Σ min(p_i, q_i)`; distance `1 − sim`, which on
/// PDFs equals half the L1 distance.
pub fn intersection(p: &Pdf, q: &Pdf) -> Result<SimDistPair> {
    let s = bin_sums(p, q)?;
    Ok(SimDistPair::from_similarity(s.min))
}

/// `Σ (1 − min/max)`; bins where both are zero contribute nothing.
pub fn wave_hedges(p: &Pdf, q: &Pdf) -> Result<f64> {
    check_dims(p, q)?;
    Ok(p.iter()
        .zip(q.iter())
        .filter(|(a, b)| a.max(**b) > 0.0)
        .map(|(a, b)| 1.0 - a.min(*b) / a.max(*b))
        .sum())
}

/// Alternative Wave-Hedges form `Σ |p_i − q_i| / max(p_i, q_i)`.
pub fn wave_hedges_abs(p: &Pdf, q: &Pdf) -> Result<f64> {
    check_dims(p, q)?;
    Ok(p.iter()
        .zip(q.iter())
        .filter(|(a, b)| a.max(**b) > 0.0)
        .map(|(a, b)| (a - b).abs() / a.max(*b))
        .sum())
}

/// Sørensen (Bray-Curtis, Czekanowski): `2Σmin / Σ(p+q)`.
pub fn sorensen(p: &Pdf, q: &Pdf) -> Result<SimDistPair> {
    let s = bin_sums(p, q)?;
    if s.total == 0.0 {
        return Err(MeasureError::DegenerateDenominator);
    }
    Ok(SimDistPair::new(
        2.0 * s.min / s.total,
        s.abs_diff / s.total,
    ))
}

/// Motyka: `Σmin / Σ(p+q)`, half the Sørensen similarity. Self-similarity is
/// ½, so the distance `Σmax / Σ(p+q)` never reaches 0.
pub fn motyka(p: &Pdf, q: &Pdf) -> Result<SimDistPair> {
    let s = bin_sums(p, q)?;
    if s.total == 0.0 {
        return Err(MeasureError::DegenerateDenominator);
    }
    Ok(SimDistPair::new(s.min / s.total, s.max / s.total))
}

/// Kulczynski on PDFs: similarity `Σmin / Σ|p−q|` and its reciprocal
/// distance. Both singular cases are errors: identical inputs make the
/// similarity unbounded and disjoint supports leave the distance undefined.
pub fn kulczynski_pdf(p: &Pdf, q: &Pdf) -> Result<SimDistPair> {
    let s = bin_sums(p, q)?;
    if s.abs_diff == 0.0 {
        return Err(MeasureError::IdenticalInputs);
    }
    if s.min == 0.0 {
        return Err(MeasureError::DisjointSupport);
    }
    Ok(SimDistPair::new(s.min / s.abs_diff, s.abs_diff / s.min))
}

/// Distance half of [`kulczynski_pdf`], defined (as 0) at identical inputs.
pub fn kulczynski_pdf_distance(p: &Pdf, q: &Pdf) -> Result<f64> {
    let s = bin_sums(p, q)?;
    if s.min == 0.0 {
        return Err(MeasureError::DisjointSupport);
    }
    Ok(s.abs_diff / s.min)
}

/// Jaccard distance `Σ(max − min) / Σmax` with Ruzicka similarity `Σmin / Σmax`.
pub fn jaccard_pdf(p: &Pdf, q: &Pdf) -> Result<SimDistPair> {
    let s = bin_sums(p, q)?;
    if s.max == 0.0 {
        return Err(MeasureError::DegenerateDenominator);
    }
    Ok(SimDistPair::new(s.min / s.max, (s.max - s.min) / s.max))
}
