//! Line-oriented `key=value` run reports.

use std::fmt::{self, Write as _};
use std::time::Duration;

use ssr_core::hybrid::Counts;
use ssr_core::superstring::{orbit_stats, StringSet};

/// A formula check: `lhs <= rhs` (or `>=`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub formula: String,
    pub lhs: i64,
    pub at_least: bool,
    pub rhs: i64,
}

impl Check {
    pub fn at_most(name: &'static str, formula: impl Into<String>, lhs: usize, rhs: usize) -> Self {
        Check {
            name,
            formula: formula.into(),
            lhs: lhs as i64,
            at_least: false,
            rhs: rhs as i64,
        }
    }

    pub fn at_least(name: &'static str, formula: impl Into<String>, lhs: usize, rhs: usize) -> Self {
        Check {
            at_least: true,
            ..Check::at_most(name, formula, lhs, rhs)
        }
    }

    pub fn equal(name: &'static str, formula: impl Into<String>, lhs: usize, rhs: usize) -> [Self; 2] {
        let formula = formula.into();
        [
            Check::at_most(name, formula.clone(), lhs, rhs),
            Check::at_least(name, formula, lhs, rhs),
        ]
    }

    pub fn ok(&self) -> bool {
        if self.at_least {
            self.lhs >= self.rhs
        } else {
            self.lhs <= self.rhs
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "check name={} formula=\"{}\" lhs={} op={} rhs={} ok={}",
            self.name,
            self.formula,
            self.lhs,
            if self.at_least { ">=" } else { "<=" },
            self.rhs,
            self.ok()
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunReport {
    pub stats: Vec<(&'static str, String)>,
    pub stages: Vec<(String, Vec<(&'static str, String)>)>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub timings: Vec<(String, Duration)>,
}

impl RunReport {
    pub fn instance(&mut self, counts: Counts, set: &StringSet) {
        self.stats = vec![
            ("n", counts.n.to_string()),
            ("m2", counts.m2.to_string()),
            ("m3", counts.m3.to_string()),
            ("strings", set.len().to_string()),
            ("alphabet", set.alphabet_size().to_string()),
            ("letters", set.total_letters().to_string()),
            ("max_orbit", orbit_stats(set.strings()).max.to_string()),
            ("max_len", set.max_len().to_string()),
        ];
    }

    pub fn stage(&mut self, name: impl Into<String>, fields: Vec<(&'static str, String)>) {
        self.stages.push((name.into(), fields));
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn time(&mut self, name: impl Into<String>, d: Duration) {
        self.timings.push((name.into(), d));
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }

    pub fn render(&self, with_timings: bool) -> String {
        let mut out = String::new();
        if !self.stats.is_empty() {
            out.push_str("instance");
            for (k, v) in &self.stats {
                write!(out, " {k}={v}").unwrap();
            }
            out.push('\n');
        }
        for (name, fields) in &self.stages {
            write!(out, "stage name={name}").unwrap();
            for (k, v) in fields {
                write!(out, " {k}={v}").unwrap();
            }
            out.push('\n');
        }
        for c in &self.checks {
            writeln!(out, "{c}").unwrap();
        }
        for n in &self.notes {
            writeln!(out, "note {n}").unwrap();
        }
        if with_timings {
            for (name, d) in &self.timings {
                writeln!(out, "time stage={name} ms={:.3}", d.as_secs_f64() * 1e3).unwrap();
            }
        }
        writeln!(out, "result ok={}", self.all_ok()).unwrap();
        out
    }
}
