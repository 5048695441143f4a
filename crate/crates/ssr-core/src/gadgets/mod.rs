//! String gadgets for the four equation types and their simple alignments.
//!
//! Every variable position has a *direct* value and a *bridged* value. A
//! checker that is the smaller end of its matching edge has direct value 0, the
//! larger end has direct value 1; a contact has direct value equal to the
//! right-hand side of its three-variable equation. The letters at the two ends
//! of a position's circle fragments are `m<d>` for the direct value and
//! `r<b>` / `l<b>` for the bridged one, so consecutive fragments share a
//! letter exactly when they agree on the direct value, and a matching or
//! three-variable unit is needed to connect them on the bridged value.

mod index;

use std::fmt;

use thiserror::Error;

use crate::hybrid::{Equation, HybridInstance, VarRef};
use crate::superstring::{
    max_overlap, merge, orbit_stats, AuxTag, Branch, GString, StringError, StringSet, Symbol, TerminalTag, VarTag,
};

pub use index::{equation_id, GadgetIndex, IndexError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetVariant {
    /// Three-variable gadgets of six strings of length 6.
    A6,
    /// Length-4 gadgets; the circle equation in front of each equation's first
    /// contact is replaced by three strings.
    B4,
}

impl GadgetVariant {
    /// Per-equation constant C in the length base 5·m2 + C·m3 + 7·n.
    pub fn three_var_constant(self) -> usize {
        match self {
            GadgetVariant::A6 => 22,
            GadgetVariant::B4 => 16,
        }
    }

    /// Per-equation constant in the compression base 3·m2 + C·m3 + 5·n.
    pub fn compression_constant(self) -> usize {
        match self {
            GadgetVariant::A6 => 14,
            GadgetVariant::B4 => 12,
        }
    }

    /// Letters per three-variable equation in the total letter count.
    pub fn three_var_letters(self) -> usize {
        match self {
            GadgetVariant::A6 => 36,
            GadgetVariant::B4 => 28,
        }
    }

    fn cyclic_overlap(self) -> usize {
        match self {
            GadgetVariant::A6 => 3,
            GadgetVariant::B4 => 2,
        }
    }
}

impl std::str::FromStr for GadgetVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a6" => Ok(GadgetVariant::A6),
            "b4" => Ok(GadgetVariant::B4),
            _ => Err(format!("unknown gadget variant `{s}`")),
        }
    }
}

impl fmt::Display for GadgetVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GadgetVariant::A6 => "a6",
            GadgetVariant::B4 => "b4",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    Circle,
    Border,
    Matching,
    Three,
}

impl GadgetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GadgetKind::Circle => "circle",
            GadgetKind::Border => "border",
            GadgetKind::Matching => "matching",
            GadgetKind::Three => "three",
        }
    }
}

/// Named simple alignments.
///
/// For three-variable gadgets the names follow the right-hand side 0 reading:
/// `AX`/`BX` bridge the first contact x on the bridged value, `AY` bridges y,
/// `BZ` bridges z, `ALeft`/`BRight` are the halves of the direct-value
/// alignment and `Joint` is their union.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlignmentName {
    Zero,
    One,
    /// Bridged-value alignments of a split circle gadget (B4).
    Split(Branch),
    BorderLeft(bool),
    BorderRight(bool),
    AX,
    AY,
    ALeft,
    BX,
    BZ,
    BRight,
    Joint,
}

impl AlignmentName {
    pub fn bit(b: bool) -> Self {
        if b {
            AlignmentName::One
        } else {
            AlignmentName::Zero
        }
    }
}

impl fmt::Display for AlignmentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlignmentName::Zero => f.write_str("0"),
            AlignmentName::One => f.write_str("1"),
            AlignmentName::Split(Branch::Alpha) => f.write_str("split-alpha"),
            AlignmentName::Split(Branch::Beta) => f.write_str("split-beta"),
            AlignmentName::BorderLeft(b) => write!(f, "left-{}", *b as u8),
            AlignmentName::BorderRight(b) => write!(f, "right-{}", *b as u8),
            AlignmentName::AX => f.write_str("A-x"),
            AlignmentName::AY => f.write_str("A-y"),
            AlignmentName::ALeft => f.write_str("A-left"),
            AlignmentName::BX => f.write_str("B-x"),
            AlignmentName::BZ => f.write_str("B-z"),
            AlignmentName::BRight => f.write_str("B-right"),
            AlignmentName::Joint => f.write_str("joint"),
        }
    }
}

/// A simple alignment: gadget strings merged in `order`, consecutive members
/// sharing `overlap` letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alignment {
    pub name: AlignmentName,
    pub order: Vec<usize>,
    pub overlap: usize,
    pub merged: GString,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationGadget {
    pub equation: Equation,
    pub kind: GadgetKind,
    pub strings: Vec<GString>,
    pub alignments: Vec<Alignment>,
    /// For split circle gadgets, the bridged value of the contact they end on.
    pub split: Option<bool>,
}

impl EquationGadget {
    pub fn alignment(&self, name: AlignmentName) -> &Alignment {
        self.alignments
            .iter()
            .find(|a| a.name == name)
            .unwrap_or_else(|| panic!("gadget {:?} has no alignment {name}", self.equation))
    }

    pub fn letters(&self) -> usize {
        self.strings.iter().map(|s| s.len()).sum()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GadgetError {
    #[error("{{{i},{j}}} is not a matching edge of circle {circle}")]
    NotAnEdge { circle: usize, i: u32, j: u32 },
    #[error("position {pos} is not valid for a circle equation of circle {circle}")]
    BadPosition { circle: usize, pos: u32 },
    #[error("merge failed while building alignment {0}")]
    Merge(String),
    #[error("string set is not valid: {0}")]
    Set(#[from] StringError),
    #[error("letter total {got} differs from the expected {expected}")]
    LetterTotal { got: usize, expected: usize },
    #[error("maximal orbit {0} exceeds 8")]
    Orbit(usize),
}

/// Letter decorations for the variables of one instance.
pub(crate) struct Letters<'a> {
    h: &'a HybridInstance,
}

impl<'a> Letters<'a> {
    pub(crate) fn new(h: &'a HybridInstance) -> Self {
        Letters { h }
    }

    fn sym(&self, v: VarRef, tag: VarTag) -> Symbol {
        Symbol::var(self.h.circle(v.circle).name(), v.pos, tag)
    }

    pub(crate) fn direct(&self, v: VarRef) -> bool {
        self.h.is_large(v)
    }

    /// Letter opening the circle fragment that starts at `v` with value `bit`.
    pub(crate) fn left(&self, v: VarRef, bit: bool) -> Symbol {
        if bit == self.direct(v) {
            self.sym(v, VarTag::middle(bit))
        } else {
            self.sym(v, VarTag::left(bit))
        }
    }

    /// Letter closing the circle fragment that ends at `v` with value `bit`.
    pub(crate) fn right(&self, v: VarRef, bit: bool) -> Symbol {
        if bit == self.direct(v) {
            self.sym(v, VarTag::middle(bit))
        } else {
            self.sym(v, VarTag::right(bit))
        }
    }

    /// Split right letter of a contact on its bridged value.
    pub(crate) fn split(&self, v: VarRef, branch: Branch) -> Symbol {
        self.sym(v, VarTag::split(!self.direct(v), branch))
    }

    fn terminal(&self, circle: usize, tag: TerminalTag) -> Symbol {
        Symbol::terminal(self.h.circle(circle).name(), tag)
    }
}

fn gs(symbols: Vec<Symbol>) -> GString {
    GString::new(symbols).expect("gadget strings are nonempty")
}

fn chain(strings: &[GString], name: AlignmentName, order: &[usize], overlap: usize) -> Result<Alignment, GadgetError> {
    let mut merged = strings[order[0]].clone();
    let mut prev = &strings[order[0]];
    for &i in &order[1..] {
        let next = &strings[i];
        if max_overlap(prev, next) != overlap {
            return Err(GadgetError::Merge(name.to_string()));
        }
        merged = merge(&merged, next, overlap).map_err(|_| GadgetError::Merge(name.to_string()))?;
        prev = next;
    }
    Ok(Alignment {
        name,
        order: order.to_vec(),
        overlap,
        merged,
    })
}

/// Two strings P, Q of length 4: the 1-alignment is P·Q, the 0-alignment Q·P.
fn pair_gadget(equation: Equation, kind: GadgetKind, p: GString, q: GString) -> Result<EquationGadget, GadgetError> {
    let strings = vec![p, q];
    let alignments = vec![
        chain(&strings, AlignmentName::Zero, &[1, 0], 2)?,
        chain(&strings, AlignmentName::One, &[0, 1], 2)?,
    ];
    Ok(EquationGadget {
        equation,
        kind,
        strings,
        alignments,
        split: None,
    })
}

/// Gadget of the matching equation x_i ⊕ x_j = 0; the endpoints may be given in either order.
pub fn matching_gadget(h: &HybridInstance, circle: usize, i: u32, j: u32) -> Result<EquationGadget, GadgetError> {
    let (i, j) = (i.min(j), i.max(j));
    if i == 0 || h.circle(circle).partner(i) != Some(j) {
        return Err(GadgetError::NotAnEdge { circle, i, j });
    }
    let lt = Letters::new(h);
    let (vi, vj) = (VarRef::new(circle, i), VarRef::new(circle, j));
    // i is the smaller end (bridged value 1), j the larger (bridged value 0)
    let mj = gs(vec![
        lt.right(vj, false),
        lt.left(vj, false),
        lt.right(vi, true),
        lt.left(vi, true),
    ]);
    let mi = gs(vec![
        lt.right(vi, true),
        lt.left(vi, true),
        lt.right(vj, false),
        lt.left(vj, false),
    ]);
    pair_gadget(Equation::Matching { circle, i, j }, GadgetKind::Matching, mi, mj)
}

/// Gadget of the circle equation x_pos ⊕ x_{pos+1} = 0, 1 ≤ pos < len.
pub fn circle_gadget(h: &HybridInstance, circle: usize, pos: u32) -> Result<EquationGadget, GadgetError> {
    if pos == 0 || pos >= h.circle(circle).len() {
        return Err(GadgetError::BadPosition { circle, pos });
    }
    let lt = Letters::new(h);
    let (a, b) = (VarRef::new(circle, pos), VarRef::new(circle, pos + 1));
    let (a1, a0, b1, b0) = (
        lt.left(a, true),
        lt.left(a, false),
        lt.right(b, true),
        lt.right(b, false),
    );
    let p = gs(vec![a1.clone(), b1.clone(), a0.clone(), b0.clone()]);
    let q = gs(vec![a0, b0, a1, b1]);
    pair_gadget(Equation::Circle { circle, pos }, GadgetKind::Circle, p, q)
}

/// Replacement for the circle equation ending at contact `x` (B4): three
/// strings aligned cyclically by two letters; the bridged value of `x` has two
/// alignments, one per split letter.
fn split_circle_gadget(h: &HybridInstance, x: VarRef) -> Result<EquationGadget, GadgetError> {
    let lt = Letters::new(h);
    let prev = VarRef::new(x.circle, x.pos - 1);
    let bridged = !lt.direct(x);
    let (ab, ad) = (lt.left(prev, bridged), lt.left(prev, !bridged));
    let (alpha, beta) = (lt.split(x, Branch::Alpha), lt.split(x, Branch::Beta));
    let m = lt.right(x, !bridged);
    let strings = vec![
        gs(vec![ab.clone(), beta.clone(), ab.clone(), alpha.clone()]),
        gs(vec![ab.clone(), alpha, ad.clone(), m.clone()]),
        gs(vec![ad, m, ab, beta]),
    ];
    let alignments = vec![
        chain(&strings, AlignmentName::bit(!bridged), &[2, 0, 1], 2)?,
        chain(&strings, AlignmentName::Split(Branch::Alpha), &[1, 2, 0], 2)?,
        chain(&strings, AlignmentName::Split(Branch::Beta), &[0, 1, 2], 2)?,
    ];
    Ok(EquationGadget {
        equation: Equation::Circle {
            circle: x.circle,
            pos: x.pos - 1,
        },
        kind: GadgetKind::Circle,
        strings,
        alignments,
        split: Some(bridged),
    })
}

/// Gadget of the border equation x_1 ⊕ x_len = 0: two terminals and two pairs.
pub fn border_gadget(h: &HybridInstance, circle: usize) -> Result<EquationGadget, GadgetError> {
    let lt = Letters::new(h);
    let n = h.circle(circle).len();
    let (first, last) = (VarRef::new(circle, 1), VarRef::new(circle, n));
    let (cl, cr) = (
        lt.terminal(circle, TerminalTag::Cl),
        lt.terminal(circle, TerminalTag::Cr),
    );
    let (rho0, rho1) = (lt.right(first, false), lt.right(first, true));
    let (lam0, lam1) = (lt.left(last, false), lt.left(last, true));
    let strings = vec![
        gs(vec![lt.terminal(circle, TerminalTag::L), cl.clone()]),
        gs(vec![cl.clone(), rho0.clone(), lam1.clone(), cr.clone()]),
        gs(vec![lam1, cr.clone(), cl.clone(), rho0]),
        gs(vec![cl.clone(), rho1.clone(), lam0.clone(), cr.clone()]),
        gs(vec![lam0, cr.clone(), cl, rho1]),
        gs(vec![cr, lt.terminal(circle, TerminalTag::R)]),
    ];
    let alignments = vec![
        chain(&strings, AlignmentName::BorderLeft(false), &[1, 2], 2)?,
        chain(&strings, AlignmentName::BorderRight(false), &[4, 3], 2)?,
        chain(&strings, AlignmentName::BorderLeft(true), &[3, 4], 2)?,
        chain(&strings, AlignmentName::BorderRight(true), &[2, 1], 2)?,
    ];
    Ok(EquationGadget {
        equation: Equation::Border { circle },
        kind: GadgetKind::Border,
        strings,
        alignments,
        split: None,
    })
}

/// Gadget of the three-variable equation `index`. Under B4 the second value is
/// the replacement for the circle equation ending at the equation's first contact.
pub fn three_var_gadget(
    h: &HybridInstance,
    index: usize,
    variant: GadgetVariant,
) -> Result<(EquationGadget, Option<EquationGadget>), GadgetError> {
    let lt = Letters::new(h);
    let eq = h.eq3()[index];
    let [x, y, z] = eq.vars;
    let bridged = !eq.rhs;
    let e = index as u32;
    let aux = |t: AuxTag| Symbol::aux(e, t);
    let (lx, ly, lz) = (lt.left(x, bridged), lt.left(y, bridged), lt.left(z, bridged));
    let (ry, rz) = (lt.right(y, bridged), lt.right(z, bridged));
    let m = lt.left(x, !bridged);
    let c = aux(AuxTag::C);
    let strings = match variant {
        GadgetVariant::A6 => {
            let rx = lt.right(x, bridged);
            let (a1, a2, a3) = (aux(AuxTag::A1), aux(AuxTag::A2), aux(AuxTag::A3));
            let (b1, b2, b3) = (aux(AuxTag::B1), aux(AuxTag::B2), aux(AuxTag::B3));
            vec![
                gs(vec![
                    rx.clone(),
                    a1.clone(),
                    lx.clone(),
                    ry.clone(),
                    a2.clone(),
                    ly.clone(),
                ]),
                gs(vec![ry, a2, ly, m.clone(), a3.clone(), c.clone()]),
                gs(vec![m.clone(), a3, c.clone(), rx.clone(), a1, lx.clone()]),
                gs(vec![
                    rx.clone(),
                    b1.clone(),
                    lx.clone(),
                    rz.clone(),
                    b2.clone(),
                    lz.clone(),
                ]),
                gs(vec![rz, b2, lz, c.clone(), b3.clone(), m.clone()]),
                gs(vec![c, b3, m, rx, b1, lx]),
            ]
        }
        GadgetVariant::B4 => {
            let (ra, rb) = (lt.split(x, Branch::Alpha), lt.split(x, Branch::Beta));
            vec![
                gs(vec![ra.clone(), lx.clone(), ry.clone(), ly.clone()]),
                gs(vec![ry, ly, m.clone(), c.clone()]),
                gs(vec![m.clone(), c.clone(), ra, lx.clone()]),
                gs(vec![rb.clone(), lx.clone(), rz.clone(), lz.clone()]),
                gs(vec![rz, lz, c.clone(), m.clone()]),
                gs(vec![c, m, rb, lx]),
            ]
        }
    };
    let k = variant.cyclic_overlap();
    let mut alignments = vec![
        chain(&strings, AlignmentName::AX, &[0, 1, 2], k)?,
        chain(&strings, AlignmentName::AY, &[1, 2, 0], k)?,
        chain(&strings, AlignmentName::ALeft, &[2, 0, 1], k)?,
        chain(&strings, AlignmentName::BX, &[3, 4, 5], k)?,
        chain(&strings, AlignmentName::BZ, &[4, 5, 3], k)?,
        chain(&strings, AlignmentName::BRight, &[5, 3, 4], k)?,
    ];
    let left = alignments[2].merged.clone();
    let right = alignments[5].merged.clone();
    if max_overlap(&left, &right) != 1 {
        return Err(GadgetError::Merge(AlignmentName::Joint.to_string()));
    }
    let joint = merge(&left, &right, 1).map_err(|_| GadgetError::Merge(AlignmentName::Joint.to_string()))?;
    alignments.push(Alignment {
        name: AlignmentName::Joint,
        order: vec![2, 0, 1, 5, 3, 4],
        overlap: k,
        merged: joint,
    });
    let gadget = EquationGadget {
        equation: Equation::Three { index },
        kind: GadgetKind::Three,
        strings,
        alignments,
        split: None,
    };
    let replacement = match variant {
        GadgetVariant::A6 => None,
        GadgetVariant::B4 => Some(split_circle_gadget(h, x)?),
    };
    Ok((gadget, replacement))
}

/// The reduction instance S_H together with its gadget index.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub variant: GadgetVariant,
    pub strings: StringSet,
    pub index: GadgetIndex,
}

/// Σ|s| over S_H predicted by the letter accounting: 12n + 8m2 + (36 | 28)m3.
pub fn expected_letters(h: &HybridInstance, variant: GadgetVariant) -> usize {
    let c = h.counts();
    12 * c.n + 8 * c.m2 + variant.three_var_letters() * c.m3
}

/// Builds S_H = ⋃ S(g) over all equations of `h`.
pub fn reduce(h: &HybridInstance, variant: GadgetVariant) -> Result<Reduction, GadgetError> {
    let mut gadgets = Vec::new();
    let mut replaced = std::collections::HashMap::new();
    let mut threes = Vec::new();
    for e in 0..h.eq3().len() {
        let (g, rep) = three_var_gadget(h, e, variant)?;
        if let Some(rep) = rep {
            replaced.insert(rep.equation, rep);
        }
        threes.push(g);
    }
    let mut threes = threes.into_iter();
    for eq in h.equations() {
        let g = match eq {
            Equation::Circle { circle, pos } => match replaced.remove(&eq) {
                Some(rep) => rep,
                None => circle_gadget(h, circle, pos)?,
            },
            Equation::Border { circle } => border_gadget(h, circle)?,
            Equation::Matching { circle, i, j } => matching_gadget(h, circle, i, j)?,
            Equation::Three { .. } => threes.next().expect("one gadget per equation"),
        };
        gadgets.push(g);
    }
    let (strings, index) = GadgetIndex::build(gadgets);
    let strings = StringSet::new(strings)?;
    let got = strings.total_letters();
    let expected = expected_letters(h, variant);
    if got != expected {
        return Err(GadgetError::LetterTotal { got, expected });
    }
    let orbit = orbit_stats(strings.strings()).max;
    if orbit > 8 {
        return Err(GadgetError::Orbit(orbit));
    }
    Ok(Reduction {
        variant,
        strings,
        index,
    })
}

impl Reduction {
    pub fn gadget(&self, g: usize) -> &EquationGadget {
        &self.index.gadgets[g]
    }
}
