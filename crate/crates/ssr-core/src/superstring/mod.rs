//! Letters, strings, overlaps and the substring-free sets they form.

mod symbol;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::Deref;

use thiserror::Error;

pub use symbol::{valid_name, AuxTag, Branch, Name, Symbol, SymbolKind, TerminalTag, VarTag};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StringError {
    #[error("strings must contain at least one letter")]
    Empty,
    #[error("overlap of {k} letters does not match")]
    OverlapMismatch { k: usize },
    #[error("duplicate string `{0}`")]
    Duplicate(String),
    #[error("`{inner}` is a substring of `{outer}`")]
    NotSubstringFree { inner: String, outer: String },
    #[error("string `{0}` does not occur in the superstring")]
    NotASuperstring(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A nonempty sequence of letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GString(Vec<Symbol>);

impl GString {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self, StringError> {
        if symbols.is_empty() {
            return Err(StringError::Empty);
        }
        Ok(GString(symbols))
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn first(&self) -> &Symbol {
        &self.0[0]
    }

    pub fn last(&self) -> &Symbol {
        &self.0[self.0.len() - 1]
    }
}

impl Deref for GString {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl fmt::Display for GString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for GString {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let symbols = s
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<Symbol>, _>>()?;
        GString::new(symbols).map_err(|e| e.to_string())
    }
}

/// Largest k < min(|u|, |v|) such that the k-suffix of u equals the k-prefix of v.
pub fn max_overlap(u: &[Symbol], v: &[Symbol]) -> usize {
    let cap = u.len().min(v.len()).saturating_sub(1);
    (1..=cap).rev().find(|&k| u[u.len() - k..] == v[..k]).unwrap_or(0)
}

/// Joins `u` and `v`, sharing `k` letters.
pub fn merge(u: &[Symbol], v: &[Symbol], k: usize) -> Result<GString, StringError> {
    if k > u.len() || k > v.len() || u[u.len() - k..] != v[..k] {
        return Err(StringError::OverlapMismatch { k });
    }
    let mut out = Vec::with_capacity(u.len() + v.len() - k);
    out.extend_from_slice(u);
    out.extend_from_slice(&v[k..]);
    GString::new(out)
}

/// Merges `order` left to right with maximal pairwise overlaps. Returns the
/// string and the overlap used at each join.
pub fn merge_in_order(strings: &[GString], order: &[usize]) -> (Vec<Symbol>, Vec<usize>) {
    let mut out: Vec<Symbol> = Vec::new();
    let mut overlaps = Vec::with_capacity(order.len().saturating_sub(1));
    let mut prev: Option<usize> = None;
    for &i in order {
        let s = &strings[i];
        let k = prev.map_or(0, |p| max_overlap(&strings[p], s));
        if prev.is_some() {
            overlaps.push(k);
        }
        out.extend_from_slice(&s[k..]);
        prev = Some(i);
    }
    (out, overlaps)
}

/// Naive occurrence test, for ad hoc checks.
pub fn contains(s: &[Symbol], t: &[Symbol]) -> bool {
    t.len() <= s.len() && s.windows(t.len()).any(|w| w == t)
}

/// Leftmost start position of every string of `strings` inside `s`, or `None`
/// for strings that do not occur.
pub fn leftmost_occurrences(s: &[Symbol], strings: &[GString]) -> Vec<Option<usize>> {
    let lengths: HashSet<usize> = strings.iter().map(|t| t.len()).collect();
    let mut first: HashMap<&[Symbol], usize> = HashMap::new();
    for &len in &lengths {
        if len > s.len() {
            continue;
        }
        for (pos, w) in s.windows(len).enumerate() {
            first.entry(w).or_insert(pos);
        }
    }
    strings.iter().map(|t| first.get(&t[..]).copied()).collect()
}

pub fn is_superstring(s: &[Symbol], set: &StringSet) -> bool {
    leftmost_occurrences(s, set.strings()).iter().all(Option::is_some)
}

/// Σ|s_i| − |s|.
pub fn compression(set: &StringSet, s: &[Symbol]) -> Result<i64, StringError> {
    let occ = leftmost_occurrences(s, set.strings());
    if let Some(i) = occ.iter().position(Option::is_none) {
        return Err(StringError::NotASuperstring(set.strings()[i].to_string()));
    }
    Ok(set.total_letters() as i64 - s.len() as i64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitStats {
    pub counts: BTreeMap<Symbol, usize>,
    pub max: usize,
}

impl OrbitStats {
    /// Symbols reaching the maximum orbit.
    pub fn argmax(&self) -> impl Iterator<Item = &Symbol> {
        self.counts.iter().filter(move |(_, &c)| c == self.max).map(|(s, _)| s)
    }
}

pub fn orbit_stats(strings: &[GString]) -> OrbitStats {
    let mut counts = BTreeMap::new();
    for s in strings {
        for sym in s.iter() {
            *counts.entry(sym.clone()).or_insert(0) += 1;
        }
    }
    let max = counts.values().copied().max().unwrap_or(0);
    OrbitStats { counts, max }
}

/// A duplicate-free, substring-free list of strings.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StringSet {
    strings: Vec<GString>,
}

impl StringSet {
    pub fn new(strings: Vec<GString>) -> Result<Self, StringError> {
        let mut members: HashMap<&[Symbol], usize> = HashMap::with_capacity(strings.len());
        for (i, s) in strings.iter().enumerate() {
            if members.insert(&s[..], i).is_some() {
                return Err(StringError::Duplicate(s.to_string()));
            }
        }
        for outer in &strings {
            for len in 1..outer.len() {
                for w in outer.windows(len) {
                    if let Some(&i) = members.get(w) {
                        return Err(StringError::NotSubstringFree {
                            inner: strings[i].to_string(),
                            outer: outer.to_string(),
                        });
                    }
                }
            }
        }
        Ok(StringSet { strings })
    }

    pub fn strings(&self) -> &[GString] {
        &self.strings
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn total_letters(&self) -> usize {
        self.strings.iter().map(|s| s.len()).sum()
    }

    pub fn max_len(&self) -> usize {
        self.strings.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn alphabet_size(&self) -> usize {
        orbit_stats(&self.strings).counts.len()
    }

    /// Renders in the `sset v1` format.
    pub fn to_sset(&self) -> String {
        let mut out = String::from("sset v1\n");
        for s in &self.strings {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the `sset v1` format, rejecting duplicates and substring relations.
    pub fn from_sset(text: &str) -> Result<Self, StringError> {
        StringSet::new(parse_sset_lines(text)?)
    }
}

/// Reads the string lines of an `sset v1` document without set validation.
pub fn parse_sset_lines(text: &str) -> Result<Vec<GString>, StringError> {
    let mut header_seen = false;
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if !header_seen {
            if line != "sset v1" {
                return Err(StringError::Parse {
                    line: n + 1,
                    msg: "expected header `sset v1`".into(),
                });
            }
            header_seen = true;
            continue;
        }
        let s: GString = line.parse().map_err(|msg| StringError::Parse { line: n + 1, msg })?;
        out.push(s);
    }
    if !header_seen {
        return Err(StringError::Parse {
            line: 0,
            msg: "missing header `sset v1`".into(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(codes: &[u32]) -> GString {
        GString::new(codes.iter().map(|&c| Symbol::aux(c, AuxTag::C)).collect()).unwrap()
    }

    #[test]
    fn overlap_examples() {
        assert_eq!(max_overlap(&g(&[1, 2, 3]), &g(&[2, 3, 4])), 2);
        assert_eq!(max_overlap(&g(&[1, 2]), &g(&[3, 4])), 0);
        assert_eq!(max_overlap(&g(&[1, 2]), &g(&[1, 2])), 0);
        assert_eq!(max_overlap(&g(&[1, 1]), &g(&[1, 1])), 1);
    }

    #[test]
    fn merge_checks_letters() {
        assert_eq!(merge(&g(&[1, 2, 3]), &g(&[2, 3, 4]), 2).unwrap(), g(&[1, 2, 3, 4]));
        assert_eq!(merge(&g(&[1]), &g(&[2]), 0).unwrap(), g(&[1, 2]));
        assert_eq!(
            merge(&g(&[1, 2]), &g(&[3, 4]), 1),
            Err(StringError::OverlapMismatch { k: 1 })
        );
    }

    #[test]
    fn set_validation() {
        assert!(matches!(
            StringSet::new(vec![g(&[1, 2]), g(&[1, 2])]),
            Err(StringError::Duplicate(_))
        ));
        assert!(matches!(
            StringSet::new(vec![g(&[1, 2, 3]), g(&[2, 3])]),
            Err(StringError::NotSubstringFree { .. })
        ));
        let set = StringSet::new(vec![g(&[1, 2, 3]), g(&[2, 3, 4])]).unwrap();
        assert!(is_superstring(&g(&[1, 2, 3, 4]), &set));
        assert!(!is_superstring(&g(&[1, 2, 3]), &set));
        assert_eq!(compression(&set, &g(&[1, 2, 3, 4])), Ok(2));
        assert_eq!(compression(&set, &g(&[1, 2, 3, 2, 3, 4])), Ok(0));
    }

    #[test]
    fn orbits() {
        let st = orbit_stats(&[g(&[1, 2]), g(&[2, 3])]);
        assert_eq!(st.max, 2);
        assert_eq!(st.argmax().collect::<Vec<_>>(), vec![&Symbol::aux(2, AuxTag::C)]);
        assert_eq!(orbit_stats(&[]).max, 0);
    }

    #[test]
    fn sset_round_trip() {
        let x: Name = "x".into();
        let s = GString::new(vec![
            Symbol::var(&x, 3, VarTag::M0),
            Symbol::terminal(&x, TerminalTag::Cl),
            Symbol::aux(5, AuxTag::A2),
            Symbol::var(&x, 7, VarTag::R1Alpha),
        ])
        .unwrap();
        assert_eq!(s.to_string(), "v:x.3:m0 c:x:Cl e:5:A2 v:x.7:r1a");
        let set = StringSet::new(vec![s]).unwrap();
        let text = set.to_sset();
        assert_eq!(StringSet::from_sset(&text).unwrap(), set);
        assert!(StringSet::from_sset("v:x.3:m0\n").is_err());
        assert!(StringSet::from_sset("sset v1\nv:x.0:m0\n").is_err());
    }
}
