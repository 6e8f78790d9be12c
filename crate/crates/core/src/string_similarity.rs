//! Subsequence, Jaro and N-gram similarities between strings.

use std::collections::BTreeMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{MeasureError, Result};
use crate::types::{SimDistPair, SymbolWeights};

/// Length of a longest common subsequence.
pub fn lcs<T: Eq>(p: &[T], q: &[T]) -> usize {
    let mut prev = vec![0usize; q.len() + 1];
    let mut cur = vec![0usize; q.len() + 1];
    for a in p {
        for (j, b) in q.iter().enumerate() {
            cur[j + 1] = if a == b {
                prev[j] + 1
            } else {
                prev[j + 1].max(cur[j])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[q.len()]
}

/// Largest number of non-overlapping, in-order common blocks of exactly `k`
/// symbols. `lcsk(p, q, 1) == lcs(p, q)`.
pub fn lcsk<T: Eq>(p: &[T], q: &[T], k: usize) -> Result<usize> {
    if k == 0 {
        return Err(MeasureError::InvalidK(k));
    }
    let (n, m) = (p.len(), q.len());
    let mut f = vec![vec![0usize; m + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=m {
            let mut best = f[i - 1][j].max(f[i][j - 1]);
            if i >= k && j >= k && p[i - k..i] == q[j - k..j] {
                best = best.max(f[i - k][j - k] + 1);
            }
            f[i][j] = best;
        }
    }
    Ok(f[n][m])
}

/// Heaviest common subsequence: the maximum total symbol weight over common
/// subsequences. Every symbol that can be matched needs a weight.
pub fn hcs<T: Eq + Hash + std::fmt::Debug>(
    p: &[T],
    q: &[T],
    weights: &SymbolWeights<T>,
) -> Result<f64> {
    let mut prev = vec![0.0f64; q.len() + 1];
    let mut cur = vec![0.0f64; q.len() + 1];
    for a in p {
        for (j, b) in q.iter().enumerate() {
            let skip = prev[j + 1].max(cur[j]);
            cur[j + 1] = if a == b {
                skip.max(prev[j] + weights.require(a)?)
            } else {
                skip
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[q.len()])
}

/// How [`jaro`] counts transpositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JaroMode {
    /// Half the number of matched characters whose positions differ.
    #[default]
    Paper,
    /// Half the number of matched characters that are out of order.
    Standard,
}

/// Greedy Jaro matching: returns matched index pairs `(i, j)` ordered by `i`.
fn jaro_matches<T: Eq>(p: &[T], q: &[T]) -> Vec<(usize, usize)> {
    let window = (p.len().max(q.len()) / 2).saturating_sub(1);
    let mut used = vec![false; q.len()];
    let mut pairs = Vec::new();
    for (i, a) in p.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window + 1).min(q.len());
        if let Some(j) = (lo..hi).find(|&j| !used[j] && q[j] == *a) {
            used[j] = true;
            pairs.push((i, j));
        }
    }
    pairs
}

fn jaro_similarity<T: Eq>(p: &[T], q: &[T], mode: JaroMode) -> f64 {
    let pairs = jaro_matches(p, q);
    let m = pairs.len();
    if m == 0 {
        return 0.0;
    }
    let t = match mode {
        JaroMode::Paper => pairs.iter().filter(|(i, j)| i != j).count(),
        JaroMode::Standard => {
            let mut qs: Vec<usize> = pairs.iter().map(|&(_, j)| j).collect();
            qs.sort_unstable();
            pairs
                .iter()
                .zip(&qs)
                .filter(|(&(i, _), &j)| p[i] != q[j])
                .count()
        }
    } as f64
        / 2.0;
    let m = m as f64;
    (m / p.len() as f64 + m / q.len() as f64 + (m - t) / m) / 3.0
}

/// Jaro similarity and `1 − sim`. Characters match when equal and at most
/// `⌊max(|p|, |q|)/2⌋ − 1` positions apart; with no matches the similarity
/// is 0 (including for two empty strings).
pub fn jaro<T: Eq>(p: &[T], q: &[T], mode: JaroMode) -> SimDistPair {
    SimDistPair::from_similarity(jaro_similarity(p, q, mode))
}

/// Jaro-Winkler: `sim + ℓ · scale · (1 − sim)` with `ℓ` the common prefix
/// length capped at `max_prefix`. `scale` must lie in `[0, 0.25]`.
pub fn jaro_winkler<T: Eq>(
    p: &[T],
    q: &[T],
    scale: f64,
    max_prefix: usize,
    mode: JaroMode,
) -> Result<SimDistPair> {
    if !(0.0..=0.25).contains(&scale) {
        return Err(MeasureError::InvalidScale(scale));
    }
    let sim = jaro_similarity(p, q, mode);
    let prefix = p
        .iter()
        .zip(q)
        .take(max_prefix)
        .take_while(|(a, b)| a == b)
        .count();
    Ok(SimDistPair::from_similarity(
        sim + prefix as f64 * scale * (1.0 - sim),
    ))
}

/// Occurrence counts of the length-`n` windows of a string, kept in sorted
/// order so that the key sequence is the alphabetical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NgramProfile<T: Ord = char> {
    n: usize,
    counts: BTreeMap<Vec<T>, usize>,
}

impl<T: Ord + Clone> NgramProfile<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Distinct N-grams in sorted order.
    pub fn distinct(&self) -> impl Iterator<Item = &[T]> {
        self.counts.keys().map(Vec::as_slice)
    }

    pub fn count(&self, gram: &[T]) -> usize {
        self.counts.get(gram).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Sorted union of the distinct N-grams of both profiles.
    pub fn union_basis<'a>(&'a self, other: &'a Self) -> Vec<&'a [T]> {
        let mut basis: Vec<&[T]> = self.distinct().chain(other.distinct()).collect();
        basis.sort();
        basis.dedup();
        basis
    }

    fn intersection_size(&self, other: &Self) -> usize {
        self.counts
            .keys()
            .filter(|g| other.counts.contains_key(*g))
            .count()
    }
}

/// All `|s| − n + 1` windows of `s`, without padding.
pub fn ngram_profile<T: Ord + Clone>(s: &[T], n: usize) -> Result<NgramProfile<T>> {
    if n == 0 {
        return Err(MeasureError::InvalidN(n));
    }
    let mut counts = BTreeMap::new();
    for w in s.windows(n) {
        *counts.entry(w.to_vec()).or_insert(0) += 1;
    }
    Ok(NgramProfile { n, counts })
}

fn profiles<T: Ord + Clone>(
    p: &[T],
    q: &[T],
    n: usize,
) -> Result<(NgramProfile<T>, NgramProfile<T>)> {
    Ok((ngram_profile(p, n)?, ngram_profile(q, n)?))
}

/// Shared distinct N-grams as similarity; unpaired ones (`|∪| − |∩|`) as
/// distance.
pub fn ngram_measure<T: Ord + Clone>(p: &[T], q: &[T], n: usize) -> Result<SimDistPair> {
    let (a, b) = profiles(p, q, n)?;
    let inter = a.intersection_size(&b);
    let union = a.len() + b.len() - inter;
    Ok(SimDistPair::new(inter as f64, (union - inter) as f64))
}

/// `|∩| / |∪|` over distinct N-grams.
pub fn ngram_jaccard<T: Ord + Clone>(p: &[T], q: &[T], n: usize) -> Result<SimDistPair> {
    let (a, b) = profiles(p, q, n)?;
    let inter = a.intersection_size(&b);
    let union = a.len() + b.len() - inter;
    if union == 0 {
        return Err(MeasureError::EmptyUnion);
    }
    Ok(SimDistPair::from_similarity(inter as f64 / union as f64))
}

/// Cosine similarity of the N-gram count vectors over the sorted union basis.
pub fn ngram_cosine<T: Ord + Clone>(p: &[T], q: &[T], n: usize) -> Result<SimDistPair> {
    let (a, b) = profiles(p, q, n)?;
    if a.is_empty() || b.is_empty() {
        return Err(MeasureError::EmptyProfile);
    }
    let (mut dot, mut na, mut nb) = (0.0, 0.0, 0.0);
    for g in a.union_basis(&b) {
        let (x, y) = (a.count(g) as f64, b.count(g) as f64);
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    Ok(SimDistPair::from_similarity(
        (dot / (na.sqrt() * nb.sqrt())).clamp(-1.0, 1.0),
    ))
}
