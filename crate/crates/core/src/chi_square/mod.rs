//! χ²-style measures on PDFs, rank and moment correlation on real vectors,
//! and the Mahalanobis distance.

mod mahalanobis;

use serde::{Deserialize, Serialize};

pub use mahalanobis::{estimate_covariance, mahalanobis, CovarianceModel, Inversion};

use crate::error::{check_dims, MeasureError, Result};
use crate::ops::rank_vector;
use crate::types::{Pdf, RealVector, SimDistPair};

/// `Σ (p_i − q_i)² / w_i` where `w` is the expected distribution. Bins where
/// `p_i = q_i` contribute 0 even if `w_i = 0`.
fn weighted_chi2(p: &[f64], q: &[f64], expected: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for (index, ((&a, &b), &w)) in p.iter().zip(q).zip(expected).enumerate() {
        if a == b {
            continue;
        }
        if w == 0.0 {
            return Err(MeasureError::ZeroExpectedBin { index });
        }
        sum += (a - b) * (a - b) / w;
    }
    Ok(sum)
}

/// Pearson χ² `Σ (p_i − q_i)² / q_i`, with `q` as the expected distribution.
pub fn pearson_chi2(p: &Pdf, q: &Pdf) -> Result<f64> {
    check_dims(p, q)?;
    weighted_chi2(p, q, q)
}

/// Neyman χ² `Σ (p_i − q_i)² / p_i`.
pub fn neyman_chi2(p: &Pdf, q: &Pdf) -> Result<f64> {
    check_dims(p, q)?;
    weighted_chi2(p, q, p)
}

/// `Σ (p_i − q_i)² (p_i + q_i) / (p_i q_i)`, which equals
/// `pearson_chi2(p, q) + neyman_chi2(p, q)`.
pub fn additive_symmetric_chi2(p: &Pdf, q: &Pdf) -> Result<f64> {
    check_dims(p, q)?;
    let mut sum = 0.0;
    for (index, (&a, &b)) in p.iter().zip(q.iter()).enumerate() {
        if a == b {
            continue;
        }
        if a == 0.0 || b == 0.0 {
            return Err(MeasureError::ZeroExpectedBin { index });
        }
        sum += (a - b) * (a - b) * (a + b) / (a * b);
    }
    Ok(sum)
}

/// Pearson correlation coefficient over paired entries, from the moment
/// form `(E[PQ] − E[P]E[Q]) / (σ_P σ_Q)`, clamped to `[−1, 1]`.
pub fn pearson_correlation(p: &RealVector, q: &RealVector) -> Result<f64> {
    check_dims(p, q)?;
    let n = p.dim() as f64;
    let (mp, mq) = (p.iter().sum::<f64>() / n, q.iter().sum::<f64>() / n);
    // centred sums are numerically safer than raw second moments
    let (mut cov, mut vp, mut vq) = (0.0, 0.0, 0.0);
    for (&a, &b) in p.iter().zip(q.iter()) {
        let (da, db) = (a - mp, b - mq);
        cov += da * db;
        vp += da * da;
        vq += db * db;
    }
    if vp == 0.0 || vq == 0.0 {
        return Err(MeasureError::ZeroVariance);
    }
    Ok((cov / (vp.sqrt() * vq.sqrt())).clamp(-1.0, 1.0))
}

/// Denominator used by [`spearman`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpearmanMode {
    /// `n(n − 1)`, as printed in the catalog. Correlations can fall below −1.
    #[default]
    Paper,
    /// `n(n² − 1)`, the textbook coefficient, bounded by `[−1, 1]` without ties.
    Classic,
}

/// Spearman distance `6 Σ (rank p_i − rank q_i)² / denom` and correlation
/// `1 − distance`. Ties get average ranks.
pub fn spearman(p: &RealVector, q: &RealVector, mode: SpearmanMode) -> Result<SimDistPair> {
    check_dims(p, q)?;
    let n = p.dim();
    if n < 2 {
        return Err(MeasureError::InsufficientSamples(n));
    }
    let (rp, rq) = (rank_vector(p), rank_vector(q));
    let ssd: f64 = rp
        .iter()
        .zip(rq.iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    let n = n as f64;
    let denom = match mode {
        SpearmanMode::Paper => n * (n - 1.0),
        SpearmanMode::Classic => n * (n * n - 1.0),
    };
    Ok(SimDistPair::from_distance(6.0 * ssd / denom))
}

/// Σ over bins with `p_i + q_i > 0` of `f(p_i, q_i)`.
fn sum_nonzero(p: &[f64], q: &[f64], f: impl Fn(f64, f64) -> f64) -> f64 {
    p.iter()
        .zip(q)
        .filter(|(&a, &b)| a + b > 0.0)
        .map(|(&a, &b)| f(a, b))
        .sum()
}

/// Triangular discrimination `Σ (p − q)² / (p + q)`; doubled when
/// `probabilistic_symmetric` is set.
pub fn squared_chi2(p: &Pdf, q: &Pdf, probabilistic_symmetric: bool) -> Result<f64> {
    check_dims(p, q)?;
    let s = sum_nonzero(p, q, |a, b| (a - b) * (a - b) / (a + b));
    Ok(if probabilistic_symmetric { 2.0 * s } else { s })
}

fn squared_ratio_sum(p: &[f64], q: &[f64]) -> f64 {
    sum_nonzero(p, q, |a, b| {
        let r = (a - b) / (a + b);
        r * r
    })
}

/// `2 Σ (p − q)² / (p + q)²`.
pub fn divergence_distance(p: &Pdf, q: &Pdf) -> Result<f64> {
    check_dims(p, q)?;
    Ok(2.0 * squared_ratio_sum(p, q))
}

/// Clark's coefficient of divergence `√(Σ (p − q)² / (p + q)²)`.
pub fn clark(p: &Pdf, q: &Pdf) -> Result<f64> {
    check_dims(p, q)?;
    Ok(squared_ratio_sum(p, q).sqrt())
}
