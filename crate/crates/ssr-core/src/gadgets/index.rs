use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{EquationGadget, GadgetKind};
use crate::hybrid::{Equation, HybridInstance};
use crate::superstring::GString;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndexError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("index does not match the reduction")]
    Mismatch,
}

/// Links every string of S_H to the gadget that owns it.
#[derive(Clone, Debug)]
pub struct GadgetIndex {
    pub gadgets: Vec<EquationGadget>,
    /// Global string indices of each gadget, in the gadget's local order.
    pub members: Vec<Vec<usize>>,
    /// (gadget, local index) of each global string.
    pub owner: Vec<(usize, usize)>,
    lookup: HashMap<Equation, usize>,
}

impl GadgetIndex {
    pub(super) fn build(gadgets: Vec<EquationGadget>) -> (Vec<GString>, GadgetIndex) {
        let mut strings = Vec::new();
        let mut members = Vec::with_capacity(gadgets.len());
        let mut owner = Vec::new();
        let mut lookup = HashMap::with_capacity(gadgets.len());
        for (g, gadget) in gadgets.iter().enumerate() {
            lookup.insert(gadget.equation, g);
            let ids: Vec<usize> = (strings.len()..strings.len() + gadget.strings.len()).collect();
            for (local, s) in gadget.strings.iter().enumerate() {
                strings.push(s.clone());
                owner.push((g, local));
            }
            members.push(ids);
        }
        (
            strings,
            GadgetIndex {
                gadgets,
                members,
                owner,
                lookup,
            },
        )
    }

    pub fn of_equation(&self, eq: Equation) -> Option<usize> {
        self.lookup.get(&eq).copied()
    }

    pub fn len(&self) -> usize {
        self.gadgets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gadgets.is_empty()
    }

    /// Renders the `gidx v1` sidecar; string numbers are 1-based lines of the `sset v1` body.
    pub fn to_gidx(&self, h: &HybridInstance) -> String {
        let mut out = String::from("gidx v1\n");
        for (g, gadget) in self.gadgets.iter().enumerate() {
            write!(
                out,
                "gadget {} {}",
                equation_id(h, gadget.equation),
                gadget.kind.as_str()
            )
            .unwrap();
            for &s in &self.members[g] {
                write!(out, " {}", s + 1).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Checks a `gidx v1` document against this index.
    pub fn check_gidx(&self, h: &HybridInstance, text: &str) -> Result<(), IndexError> {
        let mut rows = Vec::new();
        let mut header = false;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if !header {
                if line != "gidx v1" {
                    return Err(IndexError::Parse {
                        line: n + 1,
                        msg: "expected header `gidx v1`".into(),
                    });
                }
                header = true;
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            if words.len() < 4 || words[0] != "gadget" {
                return Err(IndexError::Parse {
                    line: n + 1,
                    msg: "expected `gadget <eq-id> <kind> <strings...>`".into(),
                });
            }
            let ids = words[3..]
                .iter()
                .map(|w| w.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| IndexError::Parse {
                    line: n + 1,
                    msg: "bad string number".into(),
                })?;
            rows.push((words[1].to_string(), words[2].to_string(), ids));
        }
        if rows.len() != self.gadgets.len() {
            return Err(IndexError::Mismatch);
        }
        for (g, (id, kind, ids)) in rows.iter().enumerate() {
            let gadget = &self.gadgets[g];
            let expected: Vec<usize> = self.members[g].iter().map(|s| s + 1).collect();
            if *id != equation_id(h, gadget.equation) || kind != gadget.kind.as_str() || *ids != expected {
                return Err(IndexError::Mismatch);
            }
        }
        Ok(())
    }
}

/// Text identifier of an equation: `circle:<name>:<pos>`, `border:<name>`,
/// `match:<name>:<i>:<j>` or `eq3:<index>`.
pub fn equation_id(h: &HybridInstance, eq: Equation) -> String {
    match eq {
        Equation::Circle { circle, pos } => format!("circle:{}:{pos}", h.circle(circle).name()),
        Equation::Border { circle } => format!("border:{}", h.circle(circle).name()),
        Equation::Matching { circle, i, j } => format!("match:{}:{i}:{j}", h.circle(circle).name()),
        Equation::Three { index } => format!("eq3:{index}"),
    }
}

impl GadgetKind {
    pub fn is_pair(self) -> bool {
        matches!(self, GadgetKind::Circle | GadgetKind::Matching)
    }
}
