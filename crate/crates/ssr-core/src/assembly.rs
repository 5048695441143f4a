//! Turns a per-gadget choice of simple alignments into a superstring.
//!
//! Each circle becomes one backbone `L Cl · s_l · g_2 · … · g_N · s_r · Cr R`.
//! Junction p sits between the unit ending on x_p and the unit starting on x_p;
//! matching and three-variable units are assigned to the junction whose letters
//! they carry and are either spliced into it or appended after all circles.

use std::collections::HashMap;

use crate::gadgets::{AlignmentName, GadgetKind, Reduction};
use crate::hybrid::{Equation, HybridInstance, VarRef};
use crate::superstring::{max_overlap, merge, Branch, GString, Symbol};

/// Choice of alignment for one gadget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Choice {
    /// Circle, border and matching gadgets.
    Bit(bool),
    /// Three-variable gadgets: one alignment of S^A and one of S^B.
    Three { a: AlignmentName, b: AlignmentName },
}

/// Per-gadget alignment choices plus the order in which circles are laid out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlignmentPlan {
    pub choices: Vec<Choice>,
    pub circle_order: Vec<usize>,
}

impl AlignmentPlan {
    pub fn bit(&self, g: usize) -> bool {
        match self.choices[g] {
            Choice::Bit(b) => b,
            Choice::Three { .. } => panic!("gadget {g} is not a pair gadget"),
        }
    }
}

/// What a placed unit is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitKind {
    Alignment(AlignmentName),
    TerminalLeft,
    TerminalRight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitId {
    pub gadget: usize,
    pub kind: UnitKind,
}

/// A unit as laid out in the assembled superstring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub unit: UnitId,
    pub start: usize,
    /// Letters shared with the previously placed unit.
    pub joined_by: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assembly {
    pub superstring: GString,
    pub placements: Vec<Placement>,
}

#[derive(Clone, Debug)]
struct CircleLayout {
    border: usize,
    // gadget of g_p at index p - 1 (index 0 is the border gadget)
    ending_at: Vec<usize>,
}

/// Best local arrangement found at one junction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Arrangement {
    pub e_variant: usize,
    pub inserted: Vec<usize>,
    pub detached: Vec<usize>,
    pub gain: usize,
}

/// Precomputed gadget positions of one reduction.
#[derive(Clone, Debug)]
pub(crate) struct Engine<'a> {
    pub h: &'a HybridInstance,
    pub red: &'a Reduction,
    circles: Vec<CircleLayout>,
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (k, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

fn chain_gain(units: &[&GString], order: &[usize]) -> usize {
    order.windows(2).map(|w| max_overlap(units[w[0]], units[w[1]])).sum()
}

/// Maximizes the letters shared at a junction between one of the `e`
/// variants and `s`, splicing any ordered subset of `units` between them and
/// chaining the rest on their own.
pub(crate) fn arrange(e: &[&GString], s: &GString, units: &[&GString]) -> Arrangement {
    let n = units.len();
    let mut best: Option<Arrangement> = None;
    for (ev, e_str) in e.iter().enumerate() {
        for mask in 0u32..(1 << n) {
            let inside: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let outside: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) == 0).collect();
            let mut best_out = (0, outside.clone());
            for p in permutations(&outside) {
                let g = chain_gain(units, &p);
                if g > best_out.0 {
                    best_out = (g, p);
                }
            }
            for p in permutations(&inside) {
                let through = match (p.first(), p.last()) {
                    (Some(&f), Some(&l)) => {
                        max_overlap(e_str, units[f]) + chain_gain(units, &p) + max_overlap(units[l], s)
                    }
                    _ => max_overlap(e_str, s),
                };
                let gain = through + best_out.0;
                if best.as_ref().is_none_or(|b| gain > b.gain) {
                    best = Some(Arrangement {
                        e_variant: ev,
                        inserted: p,
                        detached: best_out.1.clone(),
                        gain,
                    });
                }
            }
        }
    }
    best.expect("at least one end variant")
}

/// Roles of a three-variable gadget's contacts.
const ROLE_X: usize = 0;
const ROLE_Y: usize = 1;
const ROLE_Z: usize = 2;

impl<'a> Engine<'a> {
    pub fn new(h: &'a HybridInstance, red: &'a Reduction) -> Self {
        let idx = &red.index;
        let circles = h
            .circles()
            .iter()
            .enumerate()
            .map(|(c, circle)| {
                let border = idx
                    .of_equation(Equation::Border { circle: c })
                    .expect("reduction built from this instance");
                let mut ending_at = vec![border];
                for p in 2..=circle.len() {
                    ending_at.push(
                        idx.of_equation(Equation::Circle { circle: c, pos: p - 1 })
                            .expect("reduction built from this instance"),
                    );
                }
                CircleLayout { border, ending_at }
            })
            .collect();
        Engine { h, red, circles }
    }

    pub fn border(&self, c: usize) -> usize {
        self.circles[c].border
    }

    /// Gadget of g_p: the border gadget for p = 1, else the circle equation x_{p-1} ⊕ x_p.
    pub fn ending_at(&self, v: VarRef) -> usize {
        self.circles[v.circle].ending_at[v.pos as usize - 1]
    }

    /// Gadget of the fragment starting at x_p: g_{p+1}, or the border for p = N.
    pub fn starting_at(&self, v: VarRef) -> usize {
        let n = self.h.circle(v.circle).len();
        if v.pos == n {
            self.circles[v.circle].border
        } else {
            self.circles[v.circle].ending_at[v.pos as usize]
        }
    }

    fn unit(&self, u: UnitId) -> &'a GString {
        let g = self.red.gadget(u.gadget);
        match u.kind {
            UnitKind::Alignment(name) => &g.alignment(name).merged,
            UnitKind::TerminalLeft => &g.strings[0],
            UnitKind::TerminalRight => &g.strings[5],
        }
    }

    /// Variants of the unit ending at junction `v`.
    fn end_units(&self, plan: &[Choice], v: VarRef) -> Vec<UnitId> {
        let g = self.ending_at(v);
        let bit = bit_of(plan, g);
        let gadget = self.red.gadget(g);
        let kinds = if v.pos == 1 {
            vec![AlignmentName::BorderLeft(bit)]
        } else if gadget.split == Some(bit) {
            vec![AlignmentName::Split(Branch::Alpha), AlignmentName::Split(Branch::Beta)]
        } else {
            vec![AlignmentName::bit(bit)]
        };
        kinds
            .into_iter()
            .map(|k| UnitId {
                gadget: g,
                kind: UnitKind::Alignment(k),
            })
            .collect()
    }

    /// Unit starting at junction `v`; `branch` selects among split variants.
    fn start_unit(&self, plan: &[Choice], v: VarRef, branch: Branch) -> UnitId {
        let g = self.starting_at(v);
        let bit = bit_of(plan, g);
        let kind = if v.pos == self.h.circle(v.circle).len() {
            AlignmentName::BorderRight(bit)
        } else if self.red.gadget(g).split == Some(bit) {
            AlignmentName::Split(branch)
        } else {
            AlignmentName::bit(bit)
        };
        UnitId {
            gadget: g,
            kind: UnitKind::Alignment(kind),
        }
    }

    /// Junction of every matching and three-variable unit selected by `plan`.
    fn assigned_units(&self, plan: &[Choice]) -> HashMap<VarRef, Vec<UnitId>> {
        let mut out: HashMap<VarRef, Vec<UnitId>> = HashMap::new();
        for (g, gadget) in self.red.index.gadgets.iter().enumerate() {
            for (v, name) in self.units_of(g, gadget.equation, plan[g]) {
                out.entry(v).or_default().push(UnitId {
                    gadget: g,
                    kind: UnitKind::Alignment(name),
                });
            }
        }
        out
    }

    fn units_of(&self, _g: usize, eq: Equation, choice: Choice) -> Vec<(VarRef, AlignmentName)> {
        match (eq, choice) {
            (Equation::Matching { circle, i, j }, Choice::Bit(b)) => {
                let pos = if b { i } else { j };
                vec![(VarRef::new(circle, pos), AlignmentName::bit(b))]
            }
            (Equation::Three { index }, Choice::Three { a, b }) => {
                let vars = self.h.eq3()[index].vars;
                let at = |name: AlignmentName| match name {
                    AlignmentName::AY => vars[ROLE_Y],
                    AlignmentName::BZ => vars[ROLE_Z],
                    _ => vars[ROLE_X],
                };
                vec![(at(a), a), (at(b), b)]
            }
            _ => Vec::new(),
        }
    }

    /// Gain at junction `v` when it holds `units`, with the default split branch on the start side.
    fn junction_gain(&self, plan: &[Choice], v: VarRef, units: &[UnitId]) -> usize {
        let e: Vec<&GString> = self.end_units(plan, v).into_iter().map(|u| self.unit(u)).collect();
        let s = self.unit(self.start_unit(plan, v, Branch::Alpha));
        let us: Vec<&GString> = units.iter().map(|&u| self.unit(u)).collect();
        arrange(&e, s, &us).gain
    }

    /// Letters gained by gadget `g` at the junctions its units touch.
    pub fn local_gain(&self, plan: &[Choice], g: usize, choice: Choice) -> usize {
        let eq = self.red.gadget(g).equation;
        let mut by_junction: Vec<(VarRef, Vec<UnitId>)> = Vec::new();
        for (v, name) in self.units_of(g, eq, choice) {
            let unit = UnitId {
                gadget: g,
                kind: UnitKind::Alignment(name),
            };
            match by_junction.iter_mut().find(|(w, _)| *w == v) {
                Some((_, list)) => list.push(unit),
                None => by_junction.push((v, vec![unit])),
            }
        }
        // junctions the gadget could touch but does not under this choice still count their base gain
        let touched: Vec<VarRef> = match eq {
            Equation::Matching { circle, i, j } => vec![VarRef::new(circle, i), VarRef::new(circle, j)],
            Equation::Three { index } => self.h.eq3()[index].vars.to_vec(),
            _ => Vec::new(),
        };
        touched
            .into_iter()
            .map(|v| {
                let units = by_junction
                    .iter()
                    .find(|(w, _)| *w == v)
                    .map(|(_, u)| u.clone())
                    .unwrap_or_default();
                self.junction_gain(plan, v, &units)
            })
            .sum()
    }

    /// Lays out the plan. Junctions are resolved from the end of each circle
    /// backwards so that a split unit's variant is fixed before the junction in
    /// front of it is arranged.
    pub fn assemble(&self, plan: &AlignmentPlan) -> Assembly {
        let choices = &plan.choices;
        let assigned = self.assigned_units(choices);
        let mut out: Vec<Symbol> = Vec::new();
        let mut placements: Vec<Placement> = Vec::new();
        let mut detached: Vec<Vec<UnitId>> = Vec::new();
        for &c in &plan.circle_order {
            let n = self.h.circle(c).len();
            // per junction: chosen end unit and spliced units
            let mut ends: Vec<UnitId> = vec![
                UnitId {
                    gadget: 0,
                    kind: UnitKind::TerminalLeft,
                };
                n as usize + 1
            ];
            let mut spliced: Vec<Vec<UnitId>> = vec![Vec::new(); n as usize + 1];
            let mut next_start = self.start_unit(choices, VarRef::new(c, n), Branch::Alpha);
            for p in (1..=n).rev() {
                let v = VarRef::new(c, p);
                let e_ids = self.end_units(choices, v);
                let units = assigned.get(&v).cloned().unwrap_or_default();
                let e: Vec<&GString> = e_ids.iter().map(|&u| self.unit(u)).collect();
                let us: Vec<&GString> = units.iter().map(|&u| self.unit(u)).collect();
                let arr = arrange(&e, self.unit(next_start), &us);
                ends[p as usize] = e_ids[arr.e_variant];
                spliced[p as usize] = arr.inserted.iter().map(|&i| units[i]).collect();
                if !arr.detached.is_empty() {
                    detached.push(arr.detached.iter().map(|&i| units[i]).collect());
                }
                next_start = ends[p as usize];
            }
            let border = self.circles[c].border;
            let mut sequence = vec![UnitId {
                gadget: border,
                kind: UnitKind::TerminalLeft,
            }];
            for p in 1..=n as usize {
                sequence.push(ends[p]);
                sequence.extend(spliced[p].iter().copied());
            }
            sequence.push(self.start_unit(choices, VarRef::new(c, n), Branch::Alpha));
            sequence.push(UnitId {
                gadget: border,
                kind: UnitKind::TerminalRight,
            });
            self.append_chain(&mut out, &mut placements, &sequence);
        }
        detached.sort_by_key(|chain| chain.iter().map(|u| u.gadget).min());
        for chain in detached {
            self.append_chain(&mut out, &mut placements, &chain);
        }
        Assembly {
            superstring: GString::new(out).expect("plans place at least one unit"),
            placements,
        }
    }

    fn append_chain(&self, out: &mut Vec<Symbol>, placements: &mut Vec<Placement>, chain: &[UnitId]) {
        let mut prev: Option<&GString> = None;
        for &u in chain {
            let s = self.unit(u);
            let k = prev.map_or(0, |p| max_overlap(p, s));
            let start = out.len() - k;
            let merged = merge(out, s, k).expect("overlap taken from the units themselves");
            *out = merged.into_symbols();
            placements.push(Placement {
                unit: u,
                start,
                joined_by: k,
            });
            prev = Some(s);
        }
    }

    /// Completes `plan` by choosing every matching and three-variable alignment
    /// that maximizes the letters gained at its junctions, given the circle and
    /// border bits already in `plan`. Ties go to the case-rule choice.
    pub fn complete(&self, plan: &mut [Choice]) {
        for (g, gadget) in self.red.index.gadgets.iter().enumerate() {
            let options: Vec<Choice> = match gadget.kind {
                GadgetKind::Matching => vec![Choice::Bit(false), Choice::Bit(true)],
                GadgetKind::Three => {
                    let mut v = Vec::with_capacity(9);
                    for a in [AlignmentName::AX, AlignmentName::AY, AlignmentName::ALeft] {
                        for b in [AlignmentName::BX, AlignmentName::BZ, AlignmentName::BRight] {
                            v.push(Choice::Three { a, b });
                        }
                    }
                    v
                }
                _ => continue,
            };
            let pref = self.rule_choice(plan, g);
            let mut best = (self.local_gain(plan, g, pref), pref);
            for o in options {
                let gain = self.local_gain(plan, g, o);
                if gain > best.0 {
                    best = (gain, o);
                }
            }
            plan[g] = best.1;
        }
    }

    /// Alignment bit of the gadget ending at `v`.
    pub fn bit_at(&self, plan: &[Choice], v: VarRef) -> bool {
        bit_of(plan, self.ending_at(v))
    }

    /// Alignment bit of the gadget starting at `v`.
    pub fn bit_after(&self, plan: &[Choice], v: VarRef) -> bool {
        bit_of(plan, self.starting_at(v))
    }

    /// The alignment choice the case rules name for gadget `g`, given circle bits.
    pub fn rule_choice(&self, plan: &[Choice], g: usize) -> Choice {
        match self.red.gadget(g).equation {
            Equation::Matching { circle, i, .. } => Choice::Bit(self.bit_after(plan, VarRef::new(circle, i))),
            Equation::Three { index } => {
                let eq = self.h.eq3()[index];
                let bridged = !eq.rhs;
                let on: Vec<bool> = eq.vars.iter().map(|&v| self.bit_after(plan, v) == bridged).collect();
                use AlignmentName::*;
                let (a, b) = match (on[ROLE_X], on[ROLE_Y], on[ROLE_Z]) {
                    (true, true, true) => (AY, BZ),
                    (true, true, false) => (AY, BX),
                    (true, false, true) => (AX, BZ),
                    (false, true, true) => (AY, BZ),
                    (true, false, false) | (false, false, true) => (AX, BZ),
                    (false, true, false) => (AY, BX),
                    (false, false, false) => (ALeft, BRight),
                };
                Choice::Three { a, b }
            }
            _ => plan[g],
        }
    }
}

fn bit_of(plan: &[Choice], g: usize) -> bool {
    match plan[g] {
        Choice::Bit(b) => b,
        Choice::Three { .. } => panic!("gadget {g} has no alignment bit"),
    }
}
