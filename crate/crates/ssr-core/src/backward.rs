//! Superstring → normed superstring → assignment.

use std::collections::HashMap;

use thiserror::Error;

use crate::assembly::{AlignmentPlan, Choice, Engine};
use crate::forward::plan_from_gadget_bits;
use crate::gadgets::{AlignmentName, EquationGadget, GadgetKind, Reduction};
use crate::hybrid::{Assignment, Equation, HybridInstance, VarRef};
use crate::superstring::{leftmost_occurrences, merge_in_order, Branch, GString, Symbol};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BackwardError {
    #[error("string {0} of the reduction does not occur in the superstring")]
    MissingString(usize),
    #[error("gadget {0} has no alignment bit")]
    NotAPairGadget(usize),
    #[error("normalization exceeded its step budget of {0}")]
    StepBudget(usize),
    #[error("normalization could not reach length {target}; best was {best}")]
    Stuck { target: usize, best: usize },
    #[error("the normed superstring does not belong to this reduction")]
    Unreadable,
}

/// Leftmost occurrences of every reduction string in one superstring.
struct Occurrences {
    start: Vec<usize>,
    // strings whose leftmost occurrence ends at / starts at a position
    ends_at: HashMap<usize, Vec<usize>>,
    starts_at: HashMap<usize, Vec<usize>>,
}

impl Occurrences {
    fn new(s: &[Symbol], red: &Reduction) -> Result<Self, BackwardError> {
        let strings = red.strings.strings();
        let occ = leftmost_occurrences(s, strings);
        let mut start = Vec::with_capacity(strings.len());
        let mut ends_at: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut starts_at: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, o) in occ.into_iter().enumerate() {
            let p = o.ok_or(BackwardError::MissingString(i))?;
            start.push(p);
            ends_at.entry(p + strings[i].len() - 1).or_default().push(i);
            starts_at.entry(p).or_default().push(i);
        }
        Ok(Occurrences {
            start,
            ends_at,
            starts_at,
        })
    }

    fn end(&self, red: &Reduction, i: usize) -> usize {
        self.start[i] + red.strings.strings()[i].len() - 1
    }

    /// A string of another gadget shares exactly the first letter of `i`.
    fn touched_left(&self, red: &Reduction, i: usize) -> bool {
        let g = red.index.owner[i].0;
        self.ends_at
            .get(&self.start[i])
            .is_some_and(|v| v.iter().any(|&j| red.index.owner[j].0 != g))
    }

    /// A string of another gadget shares exactly the last letter of `i`.
    fn touched_right(&self, red: &Reduction, i: usize) -> bool {
        let g = red.index.owner[i].0;
        self.starts_at
            .get(&self.end(red, i))
            .is_some_and(|v| v.iter().any(|&j| red.index.owner[j].0 != g))
    }

    /// `b` follows `a` sharing exactly `k` letters.
    fn joined(&self, red: &Reduction, a: usize, b: usize, k: usize) -> bool {
        self.start[a] + red.strings.strings()[a].len() == self.start[b] + k
    }
}

/// Simple alignments of a pair-like gadget with the bit each stands for.
fn options(gadget: &EquationGadget) -> Vec<(bool, Vec<AlignmentName>)> {
    use AlignmentName::*;
    match gadget.kind {
        GadgetKind::Border => vec![
            (false, vec![BorderLeft(false), BorderRight(false)]),
            (true, vec![BorderLeft(true), BorderRight(true)]),
        ],
        _ => match gadget.split {
            Some(bridged) => vec![
                (!bridged, vec![AlignmentName::bit(!bridged)]),
                (bridged, vec![Split(Branch::Alpha)]),
                (bridged, vec![Split(Branch::Beta)]),
            ],
            None => vec![(false, vec![Zero]), (true, vec![One])],
        },
    }
}

/// Simple-alignment bit of gadget `g` in `s`, or `None` when the gadget's
/// strings are not merged as one of its simple alignments.
fn joined_bit(occ: &Occurrences, red: &Reduction, g: usize) -> Option<bool> {
    let gadget = red.gadget(g);
    let ids = &red.index.members[g];
    let mut votes = Vec::new();
    for (value, names) in options(gadget) {
        for name in names {
            let a = gadget.alignment(name);
            if a.order
                .windows(2)
                .all(|w| occ.joined(red, ids[w[0]], ids[w[1]], a.overlap))
            {
                votes.push(value);
            }
        }
    }
    match votes.as_slice() {
        [] => None,
        [v, rest @ ..] if rest.iter().all(|r| r == v) => Some(*v),
        _ => None,
    }
}

/// Majority criterion: for each value, count the unit boundaries of its
/// alignment that strings of other gadgets touch by one letter; ties give 0.
fn majority_bit(occ: &Occurrences, red: &Reduction, g: usize) -> bool {
    let gadget = red.gadget(g);
    let ids = &red.index.members[g];
    let mut score = [0usize; 2];
    for (value, names) in options(gadget) {
        let count: usize = names
            .iter()
            .map(|&name| {
                let order = &gadget.alignment(name).order;
                let first = ids[order[0]];
                let last = ids[*order.last().expect("nonempty unit")];
                occ.touched_left(red, first) as usize + occ.touched_right(red, last) as usize
            })
            .sum();
        let slot = &mut score[value as usize];
        *slot = (*slot).max(count);
    }
    score[1] > score[0]
}

fn read_bit(occ: &Occurrences, red: &Reduction, g: usize) -> bool {
    joined_bit(occ, red, g).unwrap_or_else(|| majority_bit(occ, red, g))
}

/// The alignment bit that `s` uses for circle, border or matching gadget `g`:
/// the simple alignment its strings are merged in, or else the majority criterion.
pub fn detect_alignment(s: &[Symbol], red: &Reduction, g: usize) -> Result<bool, BackwardError> {
    if g >= red.index.len() || red.gadget(g).kind == GadgetKind::Three {
        return Err(BackwardError::NotAPairGadget(g));
    }
    let occ = Occurrences::new(s, red)?;
    Ok(read_bit(&occ, red, g))
}

/// A superstring in which every gadget appears as one of its simple alignments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormedSuperstring {
    pub string: GString,
    /// Alignment used by each gadget.
    pub plan: AlignmentPlan,
    /// Length after each transformation step, starting with the input length.
    pub trace: Vec<usize>,
}

/// Rewrites `s` into a normed superstring of the reduction that is no longer than `s`.
///
/// Steps: replay the strings in order of leftmost occurrence with maximal
/// overlaps; read each circle and border gadget's alignment bit; re-lay every
/// gadget as a simple alignment, giving matching and three-variable gadgets
/// their most profitable alignment; then flip single circle bits while that
/// shortens the result, until it is no longer than the replay.
pub fn normalize(s: &[Symbol], h: &HybridInstance, red: &Reduction) -> Result<NormedSuperstring, BackwardError> {
    let occ = Occurrences::new(s, red)?;
    let engine = Engine::new(h, red);
    let mut trace = vec![s.len()];

    let mut order: Vec<usize> = (0..occ.start.len()).collect();
    order.sort_by_key(|&i| (occ.start[i], i));
    let replay = merge_in_order(red.strings.strings(), &order).0.len();
    trace.push(replay);

    let mut circle_order: Vec<usize> = (0..h.circles().len()).collect();
    circle_order.sort_by_key(|&c| (occ.start[red.index.members[engine.border(c)][0]], c));

    let bits: HashMap<Equation, bool> = red
        .index
        .gadgets
        .iter()
        .enumerate()
        .filter(|(_, gd)| matches!(gd.kind, GadgetKind::Circle | GadgetKind::Border))
        .map(|(g, gd)| (gd.equation, read_bit(&occ, red, g)))
        .collect();
    let mut plan = plan_from_gadget_bits(&engine, |eq| bits.get(&eq).copied().unwrap_or(false), circle_order);
    let mut assembly = engine.assemble(&plan);
    trace.push(assembly.superstring.len());

    let flippable: Vec<usize> = red
        .index
        .gadgets
        .iter()
        .enumerate()
        .filter(|(_, gd)| matches!(gd.kind, GadgetKind::Circle | GadgetKind::Border))
        .map(|(g, _)| g)
        .collect();
    let budget = red.index.len() * red.index.len();
    let mut steps = 0;
    while assembly.superstring.len() > replay {
        let mut improved = false;
        for &g in &flippable {
            steps += 1;
            if steps > budget {
                return Err(BackwardError::StepBudget(budget));
            }
            let mut choices = plan.choices.clone();
            choices[g] = Choice::Bit(!plan.bit(g));
            engine.complete(&mut choices);
            let candidate = AlignmentPlan {
                choices,
                circle_order: plan.circle_order.clone(),
            };
            let next = engine.assemble(&candidate);
            if next.superstring.len() < assembly.superstring.len() {
                plan = candidate;
                assembly = next;
                trace.push(assembly.superstring.len());
                improved = true;
                if assembly.superstring.len() <= replay {
                    break;
                }
            }
        }
        if !improved {
            return Err(BackwardError::Stuck {
                target: replay,
                best: assembly.superstring.len(),
            });
        }
    }
    Ok(NormedSuperstring {
        string: assembly.superstring,
        plan,
        trace,
    })
}

/// Alignment bits around a matching edge or three-variable equation: one
/// (X_p, X_{p+1}) pair per variable, the bits of the gadgets ending and starting at x_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constellation {
    pub equation: Equation,
    pub pairs: Vec<(bool, bool)>,
}

impl Constellation {
    pub fn is_consistent(&self) -> bool {
        self.pairs.iter().all(|(a, b)| a == b)
    }
}

/// Constellations of every matching and three-variable equation.
pub fn constellations(
    ns: &NormedSuperstring,
    h: &HybridInstance,
    red: &Reduction,
) -> Result<Vec<Constellation>, BackwardError> {
    if ns.plan.choices.len() != red.index.len() || ns.plan.circle_order.len() != h.circles().len() {
        return Err(BackwardError::Unreadable);
    }
    let engine = Engine::new(h, red);
    let choices = &ns.plan.choices;
    let pair = |v: VarRef| (engine.bit_at(choices, v), engine.bit_after(choices, v));
    let mut out = Vec::new();
    for eq in h.equations() {
        let (vars, _) = h.equation_vars(eq);
        match eq {
            Equation::Matching { .. } | Equation::Three { .. } => out.push(Constellation {
                equation: eq,
                pairs: vars.into_iter().map(pair).collect(),
            }),
            _ => {}
        }
    }
    Ok(out)
}

/// The assignment ψ_s read off a normed superstring.
///
/// Every variable starts at the alignment bit X_p of the gadget ending on it.
/// For a matching edge {i, j} with X_i ≠ X_j: if X_i ≠ X_{i+1}, x_i is flipped;
/// otherwise, if X_j ≠ X_{j+1}, x_j is flipped. For a three-variable equation
/// whose constellation is inconsistent, the first inconsistent contact is
/// flipped when the X_1 bits violate the equation.
pub fn extract_assignment(
    ns: &NormedSuperstring,
    h: &HybridInstance,
    red: &Reduction,
) -> Result<Assignment, BackwardError> {
    let engine = Engine::new(h, red);
    let choices = &ns.plan.choices;
    let mut psi = Assignment::zeros(h);
    for (c, circle) in h.circles().iter().enumerate() {
        for p in 1..=circle.len() {
            let v = VarRef::new(c, p);
            psi.set(v, engine.bit_at(choices, v));
        }
    }
    for con in constellations(ns, h, red)? {
        let (vars, rhs) = h.equation_vars(con.equation);
        match con.equation {
            Equation::Matching { .. } => {
                let [(xi, xi1), (xj, xj1)] = [con.pairs[0], con.pairs[1]];
                if xi != xj {
                    if xi != xi1 {
                        psi.set(vars[0], !xi);
                    } else if xj != xj1 {
                        psi.set(vars[1], !xj);
                    }
                }
            }
            Equation::Three { .. } => {
                if let Some(alpha) = con.pairs.iter().position(|(a, b)| a != b) {
                    let parity = con.pairs.iter().fold(false, |acc, (a, _)| acc ^ a);
                    if parity != rhs {
                        psi.set(vars[alpha], !con.pairs[alpha].0);
                    }
                }
            }
            _ => {}
        }
    }
    Ok(psi)
}
