//! Exhaustive-search oracles for the string algorithms.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simcat_core::rearrangement::{interchange_distance, levenshtein, Conversion, EditCosts};
use simcat_core::string_similarity::lcsk;

pub fn all_strings(alphabet: &[char], len: usize) -> Vec<Vec<char>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                alphabet.iter().map(move |&c| {
                    let mut t = s.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn all_strings_up_to(alphabet: &[char], max_len: usize) -> Vec<Vec<char>> {
    (0..=max_len)
        .flat_map(|n| all_strings(alphabet, n))
        .collect()
}

/// Distances from `src` to every string reachable by interchanging two
/// positions.
pub fn interchange_bfs(src: &[char]) -> HashMap<Vec<char>, usize> {
    let mut dist = HashMap::from([(src.to_vec(), 0)]);
    let mut queue = VecDeque::from([src.to_vec()]);
    while let Some(s) = queue.pop_front() {
        let d = dist[&s];
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if s[i] == s[j] {
                    continue;
                }
                let mut t = s.clone();
                t.swap(i, j);
                if !dist.contains_key(&t) {
                    dist.insert(t.clone(), d + 1);
                    queue.push_back(t);
                }
            }
        }
    }
    dist
}

/// Longest chain of non-overlapping, order-preserving matching blocks of
/// length `k`, enumerated without memoization.
pub fn lcsk_exhaustive(p: &[char], q: &[char], k: usize) -> usize {
    let mut best = 0;
    for i in 0..p.len() {
        for j in 0..q.len() {
            if i + k <= p.len() && j + k <= q.len() && p[i..i + k] == q[j..j + k] {
                best = best.max(1 + lcsk_exhaustive(&p[i + k..], &q[j + k..], k));
            }
        }
    }
    best
}

/// Cheapest edit sequence from `src` to every string of length at most
/// `max_len`, by Dijkstra over single-symbol edits. Costs are integers.
pub fn edit_search(
    src: &[char],
    alphabet: &[char],
    max_len: usize,
    sub: u32,
    ins: u32,
    del: u32,
) -> HashMap<Vec<char>, u32> {
    let mut dist = HashMap::from([(src.to_vec(), 0u32)]);
    let mut heap = BinaryHeap::from([Reverse((0u32, src.to_vec()))]);
    while let Some(Reverse((d, s))) = heap.pop() {
        if dist[&s] < d {
            continue;
        }
        let mut next = Vec::new();
        for i in 0..s.len() {
            let mut t = s.clone();
            t.remove(i);
            next.push((t, del));
            for &c in alphabet {
                if c != s[i] {
                    let mut t = s.clone();
                    t[i] = c;
                    next.push((t, sub));
                }
            }
        }
        if s.len() < max_len {
            for i in 0..=s.len() {
                for &c in alphabet {
                    let mut t = s.clone();
                    t.insert(i, c);
                    next.push((t, ins));
                }
            }
        }
        for (t, w) in next {
            let nd = d + w;
            if dist.get(&t).is_none_or(|&old| nd < old) {
                dist.insert(t.clone(), nd);
                heap.push(Reverse((nd, t)));
            }
        }
    }
    dist
}

/// Interchange distance against BFS on every anagram pair of length ≤ 8
/// over `abc`. Returns the number of pairs compared.
pub fn check_interchange() -> Result<usize, String> {
    let alphabet = ['a', 'b', 'c'];
    let mut pairs = 0usize;
    for len in 0..=8 {
        // Group strings by composition; BFS once per source string.
        let mut classes: BTreeMap<[usize; 3], Vec<Vec<char>>> = BTreeMap::new();
        for s in all_strings(&alphabet, len) {
            let mut key = [0; 3];
            for c in &s {
                key[alphabet.iter().position(|a| a == c).unwrap()] += 1;
            }
            classes.entry(key).or_default().push(s);
        }
        for class in classes.values() {
            for p in class {
                let dist = interchange_bfs(p);
                for q in class {
                    let got = interchange_distance(p, q).map_err(|e| e.to_string())?;
                    if got != Conversion::Steps(dist[q]) {
                        return Err(format!("{p:?} -> {q:?}: {got:?}, BFS {}", dist[q]));
                    }
                    pairs += 1;
                }
            }
        }
        // A non-anagram pair has no conversion.
        if len > 0 {
            let p = vec!['a'; len];
            let mut q = p.clone();
            q[0] = 'b';
            if interchange_distance(&p, &q) != Ok(Conversion::NoConversion) {
                return Err(format!("{p:?} -> {q:?} should have no conversion"));
            }
        }
    }
    Ok(pairs)
}

/// LCSk against block enumeration on random strings of length ≤ 10.
/// Returns the number of comparisons.
pub fn check_lcsk() -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    let mut compare = |p: &[char], q: &[char], k: usize| {
        let got = lcsk(p, q, k).map_err(|e| e.to_string())?;
        let want = lcsk_exhaustive(p, q, k);
        checked += 1;
        if got == want {
            Ok(())
        } else {
            Err(format!("{p:?} {q:?} k={k}: {got}, enumeration {want}"))
        }
    };
    for _ in 0..400 {
        let alphabet: &[char] = if rng.random_bool(0.5) {
            &['a', 'b']
        } else {
            &['a', 'b', 'c']
        };
        let s = |rng: &mut ChaCha8Rng| -> Vec<char> {
            let n = rng.random_range(0..=10);
            (0..n)
                .map(|_| alphabet[rng.random_range(0..alphabet.len())])
                .collect()
        };
        let (p, q) = (s(&mut rng), s(&mut rng));
        for k in 2..=4 {
            compare(&p, &q, k)?;
        }
    }
    // k = 1 is plain LCS; enumeration is exponential, so keep it short.
    for _ in 0..100 {
        let n = rng.random_range(0..=7);
        let m = rng.random_range(0..=7);
        let p: Vec<char> = (0..n)
            .map(|_| ['a', 'b', 'c'][rng.random_range(0..3)])
            .collect();
        let q: Vec<char> = (0..m)
            .map(|_| ['a', 'b', 'c'][rng.random_range(0..3)])
            .collect();
        compare(&p, &q, 1)?;
    }
    Ok(checked)
}

/// Levenshtein against Dijkstra edit search: every pair over `ab` up to
/// length 6 under three cost settings, plus random sources over `abc`.
/// Returns the number of pairs compared.
pub fn check_levenshtein() -> Result<usize, String> {
    let mut checked = 0;
    let alphabet = ['a', 'b'];
    let strings = all_strings_up_to(&alphabet, 6);
    // Intermediate strings may be one symbol longer than either endpoint.
    for (sub, ins, del) in [(1, 1, 1), (3, 1, 2), (1, 2, 2)] {
        let costs =
            EditCosts::new(sub as f64, ins as f64, del as f64).map_err(|e| e.to_string())?;
        for p in &strings {
            let dist = edit_search(p, &alphabet, 7, sub, ins, del);
            for q in &strings {
                let got = levenshtein(p, q, &costs);
                if got != dist[q] as f64 {
                    return Err(format!(
                        "{p:?} -> {q:?} ({sub},{ins},{del}): {got}, search {}",
                        dist[q]
                    ));
                }
                checked += 1;
            }
        }
    }
    let alphabet = ['a', 'b', 'c'];
    let targets = all_strings_up_to(&alphabet, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let n = rng.random_range(0..=6);
        let p: Vec<char> = (0..n).map(|_| alphabet[rng.random_range(0..3)]).collect();
        let dist = edit_search(&p, &alphabet, 7, 1, 1, 1);
        for q in &targets {
            let got = levenshtein(&p, q, &EditCosts::unit());
            if got != dist[q] as f64 {
                return Err(format!("{p:?} -> {q:?}: {got}, search {}", dist[q]));
            }
            checked += 1;
        }
    }
    Ok(checked)
}
