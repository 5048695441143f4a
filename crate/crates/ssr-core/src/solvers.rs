//! Greedy and exact shortest-superstring solvers.

use std::collections::HashMap;

use thiserror::Error;

use crate::superstring::{merge_in_order, GString, StringSet, Symbol};

/// Default limit on the number of strings for the subset DP.
pub const EXACT_CAP: usize = 18;
/// Limit on the number of strings for permutation enumeration.
pub const BRUTE_CAP: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("{got} strings exceed the solver cap of {cap}")]
    CapExceeded { got: usize, cap: usize },
    #[error("the string set is empty")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub superstring: GString,
    /// Input indices in the order they are merged.
    pub order: Vec<usize>,
    /// Overlap at each of the `order.len() - 1` joins.
    pub overlaps: Vec<usize>,
    pub compression: usize,
}

impl SolveResult {
    fn from_order(set: &StringSet, order: Vec<usize>) -> Self {
        let (symbols, overlaps) = merge_in_order(set.strings(), &order);
        let compression = overlaps.iter().sum();
        SolveResult {
            superstring: GString::new(symbols).expect("nonempty set"),
            order,
            overlaps,
            compression,
        }
    }
}

/// All positive pairwise overlaps, found through a first-letter index.
pub fn overlap_edges(strings: &[GString]) -> Vec<(usize, usize, usize)> {
    let mut by_first: HashMap<&Symbol, Vec<usize>> = HashMap::new();
    for (j, s) in strings.iter().enumerate() {
        by_first.entry(s.first()).or_default().push(j);
    }
    let mut edges = Vec::new();
    for (i, u) in strings.iter().enumerate() {
        let mut best: HashMap<usize, usize> = HashMap::new();
        for start in 1..u.len() {
            let suffix = &u[start..];
            if let Some(cands) = by_first.get(&suffix[0]) {
                for &j in cands {
                    let v = &strings[j];
                    if j != i && suffix.len() < v.len() && v.starts_with(suffix) {
                        best.entry(j).or_insert(suffix.len());
                    }
                }
            }
        }
        let mut row: Vec<(usize, usize, usize)> = best.into_iter().map(|(j, k)| (i, j, k)).collect();
        row.sort_unstable();
        edges.extend(row);
    }
    edges
}

/// Greedy merging: repeatedly joins the pair with the largest overlap whose
/// left member has no successor and right member no predecessor, skipping
/// joins that would close a cycle. Ties go to the lowest (left, right) index pair.
pub fn greedy_superstring(set: &StringSet) -> Result<SolveResult, SolveError> {
    let n = set.len();
    if n == 0 {
        return Err(SolveError::Empty);
    }
    let mut edges = overlap_edges(set.strings());
    edges.sort_by(|a, b| b.2.cmp(&a.2).then(a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
    let mut next = vec![usize::MAX; n];
    let mut has_prev = vec![false; n];
    // chain tail of each chain head, and head of each tail
    let mut head_of = (0..n).collect::<Vec<_>>();
    let mut tail_of = (0..n).collect::<Vec<_>>();
    for (i, j, _) in edges {
        if next[i] != usize::MAX || has_prev[j] {
            continue;
        }
        // i is a tail, j is a head; joining closes a cycle iff they are the same chain
        let hi = head_of[i];
        if hi == j {
            continue;
        }
        let tj = tail_of[j];
        next[i] = j;
        has_prev[j] = true;
        tail_of[hi] = tj;
        head_of[tj] = hi;
    }
    let mut order = Vec::with_capacity(n);
    for h in (0..n).filter(|&h| !has_prev[h]) {
        let mut k = h;
        loop {
            order.push(k);
            if next[k] == usize::MAX {
                break;
            }
            k = next[k];
        }
    }
    Ok(SolveResult::from_order(set, order))
}

fn overlap_matrix(set: &StringSet) -> Vec<Vec<usize>> {
    let n = set.len();
    let mut w = vec![vec![0; n]; n];
    for (i, j, k) in overlap_edges(set.strings()) {
        w[i][j] = k;
    }
    w
}

/// Optimal superstring by dynamic programming over (visited set, last string).
pub fn exact_superstring(set: &StringSet) -> Result<SolveResult, SolveError> {
    exact_superstring_capped(set, EXACT_CAP)
}

pub fn exact_superstring_capped(set: &StringSet, cap: usize) -> Result<SolveResult, SolveError> {
    let n = set.len();
    if n == 0 {
        return Err(SolveError::Empty);
    }
    if n > cap || n > 30 {
        return Err(SolveError::CapExceeded { got: n, cap });
    }
    let w = overlap_matrix(set);
    let order = best_path(&w);
    Ok(SolveResult::from_order(set, order))
}

/// Maximum-weight Hamiltonian path over all start vertices; ties resolved
/// towards lower indices by the scan order.
fn best_path(w: &[Vec<usize>]) -> Vec<usize> {
    let n = w.len();
    let full = (1usize << n) - 1;
    const NONE: i64 = -1;
    let mut dp = vec![NONE; (1 << n) * n];
    for v in 0..n {
        dp[(1 << v) * n + v] = 0;
    }
    for mask in 1..=full {
        for last in 0..n {
            let cur = dp[mask * n + last];
            if cur == NONE {
                continue;
            }
            for nx in 0..n {
                if mask & (1 << nx) != 0 {
                    continue;
                }
                let m2 = mask | (1 << nx);
                let val = cur + w[last][nx] as i64;
                if val > dp[m2 * n + nx] {
                    dp[m2 * n + nx] = val;
                }
            }
        }
    }
    let mut last = (0..n)
        .max_by_key(|&v| (dp[full * n + v], std::cmp::Reverse(v)))
        .expect("n ≥ 1");
    let mut mask = full;
    let mut rev = vec![last];
    while mask.count_ones() > 1 {
        let prev_mask = mask & !(1 << last);
        let target = dp[mask * n + last];
        let prev = (0..n)
            .find(|&p| {
                prev_mask & (1 << p) != 0
                    && dp[prev_mask * n + p] != NONE
                    && dp[prev_mask * n + p] + w[p][last] as i64 == target
            })
            .expect("dp predecessor exists");
        rev.push(prev);
        mask = prev_mask;
        last = prev;
    }
    rev.reverse();
    rev
}

/// Optimal superstring by trying every merge order.
pub fn brute_force_superstring(set: &StringSet) -> Result<SolveResult, SolveError> {
    let n = set.len();
    if n == 0 {
        return Err(SolveError::Empty);
    }
    if n > BRUTE_CAP {
        return Err(SolveError::CapExceeded { got: n, cap: BRUTE_CAP });
    }
    let w = overlap_matrix(set);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = (score(&w, &perm), perm.clone());
    while next_permutation(&mut perm) {
        let s = score(&w, &perm);
        if s > best.0 {
            best = (s, perm.clone());
        }
    }
    Ok(SolveResult::from_order(set, best.1))
}

fn score(w: &[Vec<usize>], perm: &[usize]) -> usize {
    perm.windows(2).map(|p| w[p[0]][p[1]]).sum()
}

/// Advances to the next lexicographic permutation; false after the last one.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}
