//! Overlap graphs, exact MAX-ATSP, and the MIN-(1,2)-ATSP weight transform.

use std::fmt::Write as _;

use thiserror::Error;

use crate::solvers::{next_permutation, overlap_edges};
use crate::superstring::StringSet;

pub const ATSP_CAP: usize = 18;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AtspError {
    #[error("{got} vertices exceed the cap of {cap}")]
    CapExceeded { got: usize, cap: usize },
    #[error("the graph has no vertices")]
    Empty,
    #[error("weight {weight} on ({i},{j}) is outside {{1,2}}")]
    OutOfRange { i: usize, j: usize, weight: u64 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Complete digraph with integer weights; the diagonal is ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    pub labels: Vec<String>,
    weights: Vec<Vec<u64>>,
    /// Whether vertex 0 is the start/end vertex v₀.
    pub has_v0: bool,
}

impl WeightedDigraph {
    pub fn new(n: usize) -> Self {
        WeightedDigraph {
            labels: (0..n).map(|i| i.to_string()).collect(),
            weights: vec![vec![0; n]; n],
            has_v0: false,
        }
    }

    pub fn from_matrix(weights: Vec<Vec<u64>>) -> Self {
        let n = weights.len();
        assert!(weights.iter().all(|r| r.len() == n), "square matrix");
        WeightedDigraph {
            labels: (0..n).map(|i| i.to_string()).collect(),
            weights,
            has_v0: false,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, i: usize, j: usize) -> u64 {
        self.weights[i][j]
    }

    pub fn set_weight(&mut self, i: usize, j: usize, w: u64) {
        self.weights[i][j] = w;
    }

    pub fn tour_weight(&self, tour: &[usize]) -> u64 {
        if tour.len() < 2 {
            return 0;
        }
        (0..tour.len())
            .map(|k| self.weights[tour[k]][tour[(k + 1) % tour.len()]])
            .sum()
    }

    /// `digraph v1`: `n <count>` then `w <i> <j> <weight>` for nonzero off-diagonal weights.
    pub fn to_text(&self) -> String {
        let mut out = String::from("digraph v1\n");
        writeln!(out, "n {}", self.len()).unwrap();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j && self.weights[i][j] != 0 {
                    writeln!(out, "w {i} {j} {}", self.weights[i][j]).unwrap();
                }
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, AtspError> {
        let mut g: Option<WeightedDigraph> = None;
        let mut header = false;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| AtspError::Parse {
                line: n + 1,
                msg: msg.into(),
            };
            if !header {
                if line != "digraph v1" {
                    return Err(err("expected header `digraph v1`"));
                }
                header = true;
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            match (words.as_slice(), g.as_mut()) {
                (["n", count], None) => {
                    g = Some(WeightedDigraph::new(count.parse().map_err(|_| err("bad count"))?));
                }
                (["w", i, j, w], Some(graph)) => {
                    let parse = |s: &str| s.parse::<usize>().map_err(|_| err("bad number"));
                    let (i, j) = (parse(i)?, parse(j)?);
                    if i >= graph.len() || j >= graph.len() {
                        return Err(err("vertex out of range"));
                    }
                    graph.weights[i][j] = w.parse().map_err(|_| err("bad weight"))?;
                }
                _ => return Err(err("expected `n <count>` followed by `w <i> <j> <weight>` lines")),
            }
        }
        g.ok_or(AtspError::Parse {
            line: 0,
            msg: "missing `n <count>`".into(),
        })
    }
}

/// Vertex 0 is v₀ (all incident weights 0); vertex i + 1 is string i with
/// w(u, v) = max_overlap(u, v).
pub fn overlap_graph(set: &StringSet) -> WeightedDigraph {
    let n = set.len() + 1;
    let mut g = WeightedDigraph::new(n);
    g.labels[0] = "v0".into();
    for (i, s) in set.strings().iter().enumerate() {
        g.labels[i + 1] = s.to_string();
    }
    for (i, j, k) in overlap_edges(set.strings()) {
        g.weights[i + 1][j + 1] = k as u64;
    }
    g.has_v0 = true;
    g
}

/// Maps weight 2 to 0 and weight 1 to 1.
pub fn min12_to_max(g: &WeightedDigraph) -> Result<WeightedDigraph, AtspError> {
    let mut out = g.clone();
    for i in 0..g.len() {
        for j in 0..g.len() {
            if i == j {
                continue;
            }
            out.weights[i][j] = match g.weights[i][j] {
                1 => 1,
                2 => 0,
                weight => return Err(AtspError::OutOfRange { i, j, weight }),
            };
        }
    }
    Ok(out)
}

/// Maximum-weight Hamiltonian tour by subset DP from vertex 0.
pub fn exact_max_atsp(g: &WeightedDigraph) -> Result<(u64, Vec<usize>), AtspError> {
    let n = g.len();
    if n == 0 {
        return Err(AtspError::Empty);
    }
    if n > ATSP_CAP {
        return Err(AtspError::CapExceeded { got: n, cap: ATSP_CAP });
    }
    if n == 1 {
        return Ok((0, vec![0]));
    }
    let w = &g.weights;
    // dp over subsets of {1..n-1}; bit k stands for vertex k + 1
    let m = n - 1;
    const NONE: i64 = -1;
    let mut dp = vec![NONE; (1 << m) * m];
    for v in 0..m {
        dp[(1 << v) * m + v] = w[0][v + 1] as i64;
    }
    for mask in 1usize..(1 << m) {
        for last in 0..m {
            let cur = dp[mask * m + last];
            if cur == NONE {
                continue;
            }
            for nx in 0..m {
                if mask & (1 << nx) == 0 {
                    let m2 = mask | (1 << nx);
                    let val = cur + w[last + 1][nx + 1] as i64;
                    if val > dp[m2 * m + nx] {
                        dp[m2 * m + nx] = val;
                    }
                }
            }
        }
    }
    let full = (1 << m) - 1;
    let (best, mut last) = (0..m)
        .map(|v| (dp[full * m + v] + w[v + 1][0] as i64, v))
        .max_by_key(|&(val, v)| (val, std::cmp::Reverse(v)))
        .expect("m ≥ 1");
    let mut tour = vec![last + 1];
    let mut mask = full;
    while mask.count_ones() > 1 {
        let prev_mask = mask & !(1 << last);
        let target = dp[mask * m + last];
        let prev = (0..m)
            .find(|&p| {
                prev_mask & (1 << p) != 0
                    && dp[prev_mask * m + p] != NONE
                    && dp[prev_mask * m + p] + w[p + 1][last + 1] as i64 == target
            })
            .expect("dp predecessor exists");
        tour.push(prev + 1);
        mask = prev_mask;
        last = prev;
    }
    tour.push(0);
    tour.reverse();
    Ok((best as u64, tour))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    Max,
    Min,
}

/// Optimal tour weight by enumerating every tour through vertex 0.
pub fn brute_force_tour(g: &WeightedDigraph, objective: Objective) -> Result<u64, AtspError> {
    let n = g.len();
    if n == 0 {
        return Err(AtspError::Empty);
    }
    if n > 10 {
        return Err(AtspError::CapExceeded { got: n, cap: 10 });
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best: Option<u64> = None;
    loop {
        let mut tour = vec![0];
        tour.extend_from_slice(&rest);
        let w = g.tour_weight(&tour);
        best = Some(match (best, objective) {
            (None, _) => w,
            (Some(b), Objective::Max) => b.max(w),
            (Some(b), Objective::Min) => b.min(w),
        });
        if !next_permutation(&mut rest) {
            break;
        }
    }
    Ok(best.expect("at least one tour"))
}
