//! Edit-system distances between strings: Hamming, Levenshtein,
//! Damerau-Levenshtein and the swap / interchange rearrangement distances,
//! plus cost evaluation of explicit operator sequences.
//!
//! All algorithms are generic over the symbol type; [`SymbolString`] derefs
//! to `[char]` and can be passed directly.
//!
//! [`SymbolString`]: crate::types::SymbolString

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{MeasureError, Result};
use crate::types::SymbolWeights;

/// Largest mismatch count [`interchange_distance`] will search exactly.
pub const INTERCHANGE_LIMIT: usize = 64;

/// Outcome of a rearrangement distance: a number of operations, or the
/// statement that no valid operator sequence converts one string into the
/// other (an infinite distance).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conversion {
    Steps(usize),
    NoConversion,
}

impl Conversion {
    pub fn steps(self) -> Option<usize> {
        match self {
            Conversion::Steps(k) => Some(k),
            Conversion::NoConversion => None,
        }
    }
}

fn check_lengths<T>(p: &[T], q: &[T]) -> Result<()> {
    if p.len() != q.len() {
        return Err(MeasureError::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(())
}

/// Number of positions at which two equal-length strings differ.
pub fn hamming<T: Eq>(p: &[T], q: &[T]) -> Result<usize> {
    check_lengths(p, q)?;
    Ok(p.iter().zip(q).filter(|(a, b)| a != b).count())
}

/// Operation costs for [`levenshtein`]. The unit model is the default.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EditCosts {
    pub substitution: f64,
    pub insertion: f64,
    pub deletion: f64,
}

impl EditCosts {
    pub fn new(substitution: f64, insertion: f64, deletion: f64) -> Result<Self> {
        for (name, c) in [
            ("substitution", substitution),
            ("insertion", insertion),
            ("deletion", deletion),
        ] {
            if !(c.is_finite() && c >= 0.0) {
                return Err(MeasureError::InvalidWeight(name.to_string()));
            }
        }
        Ok(Self {
            substitution,
            insertion,
            deletion,
        })
    }

    pub fn unit() -> Self {
        Self {
            substitution: 1.0,
            insertion: 1.0,
            deletion: 1.0,
        }
    }
}

impl Default for EditCosts {
    fn default() -> Self {
        Self::unit()
    }
}

/// Minimum total cost of substitutions, insertions and deletions turning
/// `p` into `q` (Wagner-Fischer, two rows).
pub fn levenshtein<T: Eq>(p: &[T], q: &[T], costs: &EditCosts) -> f64 {
    let mut prev: Vec<f64> = (0..=q.len()).map(|j| j as f64 * costs.insertion).collect();
    let mut cur = vec![0.0; q.len() + 1];
    for (i, a) in p.iter().enumerate() {
        cur[0] = (i + 1) as f64 * costs.deletion;
        for (j, b) in q.iter().enumerate() {
            let sub = prev[j] + if a == b { 0.0 } else { costs.substitution };
            cur[j + 1] = sub
                .min(prev[j + 1] + costs.deletion)
                .min(cur[j] + costs.insertion);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[q.len()]
}

/// Unit-cost edit distance with adjacent transpositions, in the restricted
/// (optimal string alignment) form: no substring is edited more than once,
/// so `("ca", "abc")` is 3 rather than the unrestricted 2.
pub fn damerau_levenshtein<T: Eq>(p: &[T], q: &[T]) -> usize {
    let (n, m) = (p.len(), q.len());
    let mut d = vec![vec![0usize; m + 1]; n + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for (j, cell) in d[0].iter_mut().enumerate() {
        *cell = j;
    }
    for i in 1..=n {
        for j in 1..=m {
            let cost = usize::from(p[i - 1] != q[j - 1]);
            let mut best = (d[i - 1][j] + 1)
                .min(d[i][j - 1] + 1)
                .min(d[i - 1][j - 1] + cost);
            if i > 1 && j > 1 && p[i - 1] == q[j - 2] && p[i - 2] == q[j - 1] {
                best = best.min(d[i - 2][j - 2] + 1);
            }
            d[i][j] = best;
        }
    }
    d[n][m]
}

/// Minimum number of pairwise disjoint adjacent transpositions converting
/// `p` into `q`.
///
/// The leftmost unresolved mismatch can only be fixed by swapping it with
/// its right neighbour, so a single left-to-right scan is exact.
pub fn swap_distance<T: Eq>(p: &[T], q: &[T]) -> Result<Conversion> {
    check_lengths(p, q)?;
    let (mut i, mut swaps) = (0, 0);
    while i < p.len() {
        if p[i] == q[i] {
            i += 1;
        } else if i + 1 < p.len() && p[i] == q[i + 1] && p[i + 1] == q[i] {
            swaps += 1;
            i += 2;
        } else {
            return Ok(Conversion::NoConversion);
        }
    }
    Ok(Conversion::Steps(swaps))
}

/// Minimum number of arbitrary transpositions converting `p` into `q`.
///
/// Mismatched positions form a directed multigraph with an edge
/// `p_i → q_i` per position. A set of transpositions fixing a cycle of
/// length `c` needs `c − 1` operations, so the answer is
/// `mismatches − (maximum number of cycles in an edge decomposition)`.
/// For duplicate-free strings the decomposition is unique and this is
/// `n − #cycles` of the induced permutation. With repeated symbols the
/// maximum is found by exact memoized search, limited to
/// [`INTERCHANGE_LIMIT`] mismatches.
pub fn interchange_distance<T: Eq + Hash>(p: &[T], q: &[T]) -> Result<Conversion> {
    check_lengths(p, q)?;
    let mut ids: HashMap<&T, usize> = HashMap::new();
    let mut edges = Vec::new();
    for (a, b) in p.iter().zip(q).filter(|(a, b)| a != b) {
        let next = ids.len();
        let u = *ids.entry(a).or_insert(next);
        let next = ids.len();
        let v = *ids.entry(b).or_insert(next);
        edges.push((u, v));
    }
    let k = edges.len();
    let s = ids.len();
    let mut balance = vec![0i64; s];
    for &(u, v) in &edges {
        balance[u] += 1;
        balance[v] -= 1;
    }
    if balance.iter().any(|&b| b != 0) {
        return Ok(Conversion::NoConversion);
    }
    if k > INTERCHANGE_LIMIT {
        return Err(MeasureError::SizeLimit {
            len: k,
            limit: INTERCHANGE_LIMIT,
        });
    }
    let mut counts = vec![0u8; s * s];
    for &(u, v) in &edges {
        counts[u * s + v] += 1;
    }
    let cycles = CycleSearch::new(s).max_cycles(counts);
    Ok(Conversion::Steps(k - cycles))
}

/// Maximum cycle decomposition of a balanced multigraph given as an
/// `s × s` edge-count matrix.
struct CycleSearch {
    s: usize,
    memo: HashMap<Vec<u8>, usize>,
}

impl CycleSearch {
    fn new(s: usize) -> Self {
        Self {
            s,
            memo: HashMap::new(),
        }
    }

    fn max_cycles(&mut self, mut counts: Vec<u8>) -> usize {
        let s = self.s;
        // Opposite edge pairs can always be taken as 2-cycles: if a→b and
        // b→a sat in different cycles, splicing them out yields the 2-cycle
        // plus a closed walk of at least one cycle.
        let mut taken = 0;
        for u in 0..s {
            for v in u + 1..s {
                let t = counts[u * s + v].min(counts[v * s + u]);
                counts[u * s + v] -= t;
                counts[v * s + u] -= t;
                taken += usize::from(t);
            }
        }
        taken + self.search(counts)
    }

    fn search(&mut self, counts: Vec<u8>) -> usize {
        let s = self.s;
        let Some(first) = counts.iter().position(|&c| c > 0) else {
            return 0;
        };
        if let Some(&hit) = self.memo.get(&counts) {
            return hit;
        }
        // The edge `first` lies on some simple cycle of an optimal
        // decomposition (a non-simple closed trail splits into more cycles).
        let (start, next) = (first / s, first % s);
        let mut best = 0;
        let mut path = vec![start, next];
        let mut on_path = vec![false; s];
        on_path[start] = true;
        on_path[next] = true;
        let mut work = counts.clone();
        work[first] -= 1;
        self.extend(&mut work, &mut path, &mut on_path, &mut best);
        self.memo.insert(counts, best);
        best
    }

    fn extend(
        &mut self,
        work: &mut Vec<u8>,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        best: &mut usize,
    ) {
        let s = self.s;
        let (start, tail) = (path[0], *path.last().unwrap());
        for w in 0..s {
            let e = tail * s + w;
            if work[e] == 0 {
                continue;
            }
            if w == start {
                work[e] -= 1;
                let got = 1 + self.search(work.clone());
                *best = (*best).max(got);
                work[e] += 1;
            } else if !on_path[w] {
                work[e] -= 1;
                on_path[w] = true;
                path.push(w);
                self.extend(work, path, on_path, best);
                path.pop();
                on_path[w] = false;
                work[e] += 1;
            }
        }
    }
}

/// Number of transpositions performed in parallel (each position touched at
/// most once) converting `p` into `q`: half the mismatch count, provided the
/// mismatches pair up as `(a, b)` / `(b, a)`.
pub fn parallel_interchange_distance<T: Eq + Hash>(p: &[T], q: &[T]) -> Result<Conversion> {
    check_lengths(p, q)?;
    let mut kinds: HashMap<(&T, &T), i64> = HashMap::new();
    let mut k = 0;
    for (a, b) in p.iter().zip(q).filter(|(a, b)| a != b) {
        k += 1;
        *kinds.entry((a, b)).or_default() += 1;
    }
    let paired = kinds
        .iter()
        .all(|(&(a, b), &n)| kinds.get(&(b, a)).copied().unwrap_or(0) == n);
    Ok(if paired {
        Conversion::Steps(k / 2)
    } else {
        Conversion::NoConversion
    })
}

/// A single rearrangement operator. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "op")]
pub enum RearrangementOp<T = char> {
    /// Replace the symbol at `pos`.
    Substitute {
        pos: usize,
        symbol: T,
    },
    /// Insert `symbol` so that it ends up at `pos` (`len + 1` appends).
    Insert {
        pos: usize,
        symbol: T,
    },
    Delete {
        pos: usize,
    },
    /// Exchange positions `pos` and `pos + 1`.
    Swap {
        pos: usize,
    },
    /// Exchange positions `i ≤ j`.
    Interchange {
        i: usize,
        j: usize,
    },
    /// Reverse the substring `start..=end`.
    Reverse {
        start: usize,
        end: usize,
    },
}

impl<T> RearrangementOp<T> {
    /// Leftmost and rightmost positions the operator acts on.
    fn span(&self) -> (usize, usize) {
        match *self {
            RearrangementOp::Substitute { pos, .. }
            | RearrangementOp::Insert { pos, .. }
            | RearrangementOp::Delete { pos } => (pos, pos),
            RearrangementOp::Swap { pos } => (pos, pos + 1),
            RearrangementOp::Interchange { i, j } => (i, j),
            RearrangementOp::Reverse { start, end } => (start, end),
        }
    }
}

/// Cost model for [`sequence_cost`].
#[derive(Debug, Clone, PartialEq)]
pub enum CostModel<T: Eq + Hash = char> {
    /// Every operation costs 1.
    Unit,
    /// An operation over positions `i..=j` costs `(j − i + 1)^exponent`.
    Length { exponent: f64 },
    /// An operation costs the summed weights of the elements it moves.
    Element(SymbolWeights<T>),
}

/// An ordered list of operators, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OperatorSequence<T = char> {
    pub ops: Vec<RearrangementOp<T>>,
}

impl<T: Clone + Eq> OperatorSequence<T> {
    pub fn new(ops: Vec<RearrangementOp<T>>) -> Self {
        Self { ops }
    }

    /// Swap-distance validity: only swaps, with no two indices equal or
    /// adjacent, so no position is touched twice.
    pub fn is_valid_swap_sequence(&self) -> bool {
        let mut seen = Vec::new();
        for op in &self.ops {
            let RearrangementOp::Swap { pos } = *op else {
                return false;
            };
            if seen.iter().any(|&s: &usize| s.abs_diff(pos) <= 1) {
                return false;
            }
            seen.push(pos);
        }
        true
    }

    /// Parallel-interchange validity: only interchanges, each position used
    /// at most once across the whole sequence.
    pub fn is_valid_parallel_interchange(&self) -> bool {
        let mut used = Vec::new();
        for op in &self.ops {
            let RearrangementOp::Interchange { i, j } = *op else {
                return false;
            };
            if i == j || used.contains(&i) || used.contains(&j) {
                return false;
            }
            used.extend([i, j]);
        }
        true
    }

    /// Applies the sequence to `base`.
    pub fn apply(&self, base: &[T]) -> Result<Vec<T>> {
        let mut s = base.to_vec();
        for (n, op) in self.ops.iter().enumerate() {
            apply_op(&mut s, op).map_err(|msg| {
                MeasureError::InvalidSequence(format!("operator {}: {msg}", n + 1))
            })?;
        }
        Ok(s)
    }
}

fn apply_op<T: Clone>(s: &mut Vec<T>, op: &RearrangementOp<T>) -> std::result::Result<(), String> {
    let len = s.len();
    let in_range = |p: usize| p >= 1 && p <= len;
    match op {
        RearrangementOp::Substitute { pos, symbol } => {
            if !in_range(*pos) {
                return Err(format!("position {pos} outside 1..={len}"));
            }
            s[pos - 1] = symbol.clone();
        }
        RearrangementOp::Insert { pos, symbol } => {
            if *pos < 1 || *pos > len + 1 {
                return Err(format!("insert position {pos} outside 1..={}", len + 1));
            }
            s.insert(pos - 1, symbol.clone());
        }
        RearrangementOp::Delete { pos } => {
            if !in_range(*pos) {
                return Err(format!("position {pos} outside 1..={len}"));
            }
            s.remove(pos - 1);
        }
        RearrangementOp::Swap { pos } => {
            if !in_range(*pos) || !in_range(pos + 1) {
                return Err(format!("swap at {pos} outside 1..{len}"));
            }
            s.swap(pos - 1, *pos);
        }
        RearrangementOp::Interchange { i, j } => {
            if i > j || !in_range(*i) || !in_range(*j) {
                return Err(format!("interchange ({i}, {j}) invalid for length {len}"));
            }
            s.swap(i - 1, j - 1);
        }
        RearrangementOp::Reverse { start, end } => {
            if start > end || !in_range(*start) || !in_range(*end) {
                return Err(format!(
                    "reversal ({start}, {end}) invalid for length {len}"
                ));
            }
            s[start - 1..*end].reverse();
        }
    }
    Ok(())
}

/// Total cost of applying `seq` to `base` under `model`.
///
/// Under the element model, substitutions count the removed and the new
/// symbol, insertions the new one, deletions the removed one, swaps and
/// interchanges the two exchanged symbols, and reversals every symbol in the
/// reversed range.
pub fn sequence_cost<T: Clone + Eq + Hash + std::fmt::Debug>(
    seq: &OperatorSequence<T>,
    model: &CostModel<T>,
    base: &[T],
) -> Result<f64> {
    if let CostModel::Length { exponent } = model {
        if exponent.is_nan() || *exponent < 1.0 {
            return Err(MeasureError::InvalidExponent(*exponent));
        }
    }
    let mut s = base.to_vec();
    let mut total = 0.0;
    for (n, op) in seq.ops.iter().enumerate() {
        let before = s.clone();
        apply_op(&mut s, op)
            .map_err(|msg| MeasureError::InvalidSequence(format!("operator {}: {msg}", n + 1)))?;
        total += match model {
            CostModel::Unit => 1.0,
            CostModel::Length { exponent } => {
                let (i, j) = op.span();
                ((j - i + 1) as f64).powf(*exponent)
            }
            CostModel::Element(w) => {
                let at = |p: usize| w.require(&before[p - 1]);
                match op {
                    RearrangementOp::Substitute { pos, symbol } => at(*pos)? + w.require(symbol)?,
                    RearrangementOp::Insert { symbol, .. } => w.require(symbol)?,
                    RearrangementOp::Delete { pos } => at(*pos)?,
                    RearrangementOp::Swap { pos } => at(*pos)? + at(pos + 1)?,
                    RearrangementOp::Interchange { i, j } => at(*i)? + at(*j)?,
                    RearrangementOp::Reverse { start, end } => {
                        (*start..=*end).map(at).sum::<Result<f64>>()?
                    }
                }
            }
        };
    }
    Ok(total)
}
