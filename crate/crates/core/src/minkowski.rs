//! The L_p ladder and the L1-normalization variants.

use serde::{Deserialize, Serialize};

use crate::error::{check_dims, MeasureError, Result};
use crate::types::{FeatureRanges, RealVector};

/// Minkowski order: a finite `p ≥ 1` or infinity (Chebyshev).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PExponent {
    Finite(f64),
    Infinity,
}

impl PExponent {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Self::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(Self::Finite(p))
        } else {
            Err(MeasureError::InvalidExponent(p))
        }
    }
}

fn abs_diffs<'a>(p: &'a [f64], q: &'a [f64]) -> impl Iterator<Item = f64> + 'a {
    p.iter().zip(q).map(|(a, b)| (a - b).abs())
}

pub fn minkowski(p: &RealVector, q: &RealVector, exp: PExponent) -> Result<f64> {
    check_dims(p, q)?;
    match exp {
        PExponent::Infinity => Ok(abs_diffs(p, q).fold(0.0, f64::max)),
        PExponent::Finite(e) if e.is_nan() || e < 1.0 => Err(MeasureError::InvalidExponent(e)),
        PExponent::Finite(1.0) => Ok(abs_diffs(p, q).sum()),
        PExponent::Finite(2.0) => Ok(abs_diffs(p, q).map(|d| d * d).sum::<f64>().sqrt()),
        PExponent::Finite(e) => Ok(abs_diffs(p, q)
            .map(|d| d.powf(e))
            .sum::<f64>()
            .powf(1.0 / e)),
    }
}

pub fn squared_euclidean(p: &RealVector, q: &RealVector) -> Result<f64> {
    check_dims(p, q)?;
    Ok(abs_diffs(p, q).map(|d| d * d).sum())
}

/// Mean of `|p_i − q_i| / |R_i|`. A zero-size range only matters when the
/// two values differ there.
pub fn gower(p: &RealVector, q: &RealVector, ranges: &FeatureRanges) -> Result<f64> {
    check_dims(p, q)?;
    if ranges.len() != p.dim() {
        return Err(MeasureError::DimensionMismatch {
            left: p.dim(),
            right: ranges.len(),
        });
    }
    let mut total = 0.0;
    for (i, d) in abs_diffs(p, q).enumerate() {
        if d == 0.0 {
            continue;
        }
        let size = ranges.size(i);
        if size == 0.0 {
            return Err(MeasureError::ZeroRange { index: i });
        }
        total += d / size;
    }
    Ok(total / p.dim() as f64)
}

pub fn soergel(p: &RealVector, q: &RealVector) -> Result<f64> {
    check_dims(p, q)?;
    let denom: f64 = p.iter().zip(q.iter()).map(|(a, b)| a.max(*b)).sum();
    if denom == 0.0 {
        return Err(MeasureError::DegenerateDenominator);
    }
    Ok(abs_diffs(p, q).sum::<f64>() / denom)
}

pub fn kulczynski_vector(p: &RealVector, q: &RealVector) -> Result<f64> {
    check_dims(p, q)?;
    let denom: f64 = p.iter().zip(q.iter()).map(|(a, b)| a.min(*b)).sum();
    if denom == 0.0 {
        return Err(MeasureError::DegenerateDenominator);
    }
    Ok(abs_diffs(p, q).sum::<f64>() / denom)
}

/// Canberra distance; bins where both values are 0 contribute 0. With
/// `adkins`, the sum is divided by the number of bins that are not both 0.
pub fn canberra(p: &RealVector, q: &RealVector, adkins: bool) -> Result<f64> {
    check_dims(p, q)?;
    let mut total = 0.0;
    let mut both_zero = 0usize;
    for (a, b) in p.iter().zip(q.iter()) {
        let denom = a.abs() + b.abs();
        if denom == 0.0 {
            both_zero += 1;
        } else {
            total += (a - b).abs() / denom;
        }
    }
    if !adkins {
        return Ok(total);
    }
    let divisor = p.dim() - both_zero;
    if divisor == 0 {
        return Err(MeasureError::AllZeroAdkins);
    }
    Ok(total / divisor as f64)
}

/// Which Lorentzian formula to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LorentzianMode {
    /// `√(Σ_{i<d} (p_i−q_i)² − (p_d−q_d)²)`, the pseudo-Euclidean form.
    /// It is zero for distinct points on the light cone.
    #[default]
    Paper,
    /// `Σ ln(1 + |p_i − q_i|)`.
    Log,
}

pub fn lorentzian(p: &RealVector, q: &RealVector, mode: LorentzianMode) -> Result<f64> {
    check_dims(p, q)?;
    match mode {
        LorentzianMode::Log => Ok(abs_diffs(p, q).map(f64::ln_1p).sum()),
        LorentzianMode::Paper => {
            let d = p.dim();
            let spatial: f64 = abs_diffs(&p[..d - 1], &q[..d - 1]).map(|x| x * x).sum();
            let last = p[d - 1] - q[d - 1];
            let radicand = spatial - last * last;
            if radicand < 0.0 {
                return Err(MeasureError::NegativeRadicand(radicand));
            }
            Ok(radicand.sqrt())
        }
    }
}
