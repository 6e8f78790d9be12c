//! Validated input carriers shared by every measure family.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{MeasureError, Result};

/// Absolute tolerance on the total mass of a [`Pdf`].
pub const PDF_SUM_TOLERANCE: f64 = 1e-9;

fn check_finite(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(MeasureError::EmptyVector);
    }
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(MeasureError::NonFinite { index }),
        None => Ok(()),
    }
}

/// Dense real feature vector with at least one finite entry.
///
/// Matrices, polynomials over a fixed basis and other finite-dimensional
/// inner-product-space elements are carried here in flattened (row-major)
/// form; `tr(PᵀQ)` of two n×n matrices equals the dot product of their
/// flattened entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        check_finite(&values)?;
        Ok(Self(values))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for RealVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for RealVector {
    type Error = MeasureError;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<RealVector> for Vec<f64> {
    fn from(v: RealVector) -> Self {
        v.0
    }
}

impl From<Pdf> for RealVector {
    fn from(p: Pdf) -> Self {
        RealVector(p.0)
    }
}

/// Raw occurrence counts. Entries are finite and non-negative; a histogram
/// with zero total mass is representable but cannot be normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram(Vec<f64>);

impl Histogram {
    pub fn new(counts: Vec<f64>) -> Result<Self> {
        check_finite(&counts)?;
        if let Some(index) = counts.iter().position(|&c| c < 0.0) {
            return Err(MeasureError::NegativeEntry { index });
        }
        Ok(Self(counts))
    }

    pub fn counts(&self) -> &[f64] {
        &self.0
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// Discrete probability distribution: entries in `[0, 1]` summing to 1
/// within [`PDF_SUM_TOLERANCE`]. Inputs outside the tolerance are rejected,
/// never silently renormalized; use [`crate::normalize`] on a [`Histogram`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Pdf(Vec<f64>);

impl Pdf {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        check_finite(&probs)?;
        if let Some(index) = probs.iter().position(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(MeasureError::OutOfUnitInterval { index });
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PDF_SUM_TOLERANCE {
            return Err(MeasureError::NotNormalized { sum });
        }
        Ok(Self(probs))
    }

    pub(crate) fn from_normalized_unchecked(probs: Vec<f64>) -> Self {
        Self(probs)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }
}

impl Deref for Pdf {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Pdf {
    type Error = MeasureError;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<Pdf> for Vec<f64> {
    fn from(p: Pdf) -> Self {
        p.0
    }
}

/// How the size `|R_i|` of a feature range is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RangeSize {
    /// `high - low`, for continuous features.
    Span,
    /// `high - low + 1`: the number of integer values in the closed range.
    Count,
}

/// Per-feature value ranges used by the Gower distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRanges {
    bounds: Vec<(f64, f64)>,
    size: RangeSize,
}

impl FeatureRanges {
    pub fn new(bounds: Vec<(f64, f64)>, size: RangeSize) -> Result<Self> {
        for (index, &(lo, hi)) in bounds.iter().enumerate() {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(MeasureError::NonFinite { index });
            }
            if lo > hi {
                return Err(MeasureError::InvalidRange { index });
            }
        }
        Ok(Self { bounds, size })
    }

    /// Continuous ranges, sized `high - low`.
    pub fn spans(bounds: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(bounds, RangeSize::Span)
    }

    /// Integer-valued ranges, sized by their number of values.
    pub fn integer_counts(bounds: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(bounds, RangeSize::Count)
    }

    pub fn uniform(dim: usize, low: f64, high: f64, size: RangeSize) -> Result<Self> {
        Self::new(vec![(low, high); dim], size)
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn size_rule(&self) -> RangeSize {
        self.size
    }

    /// `|R_i|` under the configured size rule.
    pub fn size(&self, i: usize) -> f64 {
        let (lo, hi) = self.bounds[i];
        match self.size {
            RangeSize::Span => hi - lo,
            RangeSize::Count => hi - lo + 1.0,
        }
    }

    pub fn contains(&self, v: &[f64]) -> bool {
        v.len() == self.bounds.len()
            && v.iter()
                .zip(&self.bounds)
                .all(|(&x, &(lo, hi))| lo <= x && x <= hi)
    }
}

/// n observations of common dimension d, n ≥ 2.
#[derive(Debug, Clone, PartialEq)]
pub struct DataSample {
    rows: Vec<Vec<f64>>,
    dim: usize,
}

impl DataSample {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(MeasureError::InsufficientSamples(rows.len()));
        }
        let dim = rows[0].len();
        for (row, values) in rows.iter().enumerate() {
            if values.len() != dim {
                return Err(MeasureError::RaggedSample {
                    row,
                    expected: dim,
                    found: values.len(),
                });
            }
            check_finite(values)?;
        }
        Ok(Self { rows, dim })
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Finite sequence of symbols. Text input is split into Unicode scalar values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SymbolString(Vec<char>);

impl SymbolString {
    pub fn new(symbols: Vec<char>) -> Self {
        Self(symbols)
    }

    pub fn symbols(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Deref for SymbolString {
    type Target = [char];

    fn deref(&self) -> &[char] {
        &self.0
    }
}

impl From<&str> for SymbolString {
    fn from(s: &str) -> Self {
        Self(s.chars().collect())
    }
}

impl From<String> for SymbolString {
    fn from(s: String) -> Self {
        Self(s.chars().collect())
    }
}

impl fmt::Display for SymbolString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// Positive weight per symbol (HCS weights, element-cost model weights).
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolWeights<T: Eq + Hash = char>(HashMap<T, f64>);

impl<T: Eq + Hash + fmt::Debug> SymbolWeights<T> {
    pub fn new(weights: HashMap<T, f64>) -> Result<Self> {
        for (sym, &w) in &weights {
            if !(w.is_finite() && w > 0.0) {
                return Err(MeasureError::InvalidWeight(format!("{sym:?}")));
            }
        }
        Ok(Self(weights))
    }

    pub fn uniform<I: IntoIterator<Item = T>>(symbols: I, weight: f64) -> Result<Self> {
        Self::new(symbols.into_iter().map(|s| (s, weight)).collect())
    }

    pub fn get(&self, sym: &T) -> Option<f64> {
        self.0.get(sym).copied()
    }

    pub(crate) fn require(&self, sym: &T) -> Result<f64> {
        self.get(sym)
            .ok_or_else(|| MeasureError::MissingWeight(format!("{sym:?}")))
    }
}

impl<T: Eq + Hash + fmt::Debug> FromIterator<(T, f64)> for SymbolWeights<T> {
    /// Panics on a non-positive weight; use [`SymbolWeights::new`] for
    /// untrusted input.
    fn from_iter<I: IntoIterator<Item = (T, f64)>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect()).expect("symbol weights must be positive")
    }
}

/// A similarity and its complementary distance, as returned by measures
/// that define both.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimDistPair {
    pub similarity: f64,
    pub distance: f64,
}

impl SimDistPair {
    pub fn new(similarity: f64, distance: f64) -> Self {
        Self {
            similarity,
            distance,
        }
    }

    /// Pair whose distance is `1 - similarity`.
    pub fn from_similarity(similarity: f64) -> Self {
        Self::new(similarity, 1.0 - similarity)
    }

    /// Pair whose similarity is `1 - distance`.
    pub fn from_distance(distance: f64) -> Self {
        Self::new(1.0 - distance, distance)
    }
}
