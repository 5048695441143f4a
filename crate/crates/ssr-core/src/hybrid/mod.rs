//! Hybrid instances: circles of checker and contact variables, perfect
//! matchings on the checkers, and three-variable equations on the contacts.

mod format;
mod gen;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::superstring::{valid_name, Name};

pub use format::{parse_assignment, write_assignment};
pub use gen::{random_e3, replicate, template_triple};

/// Circle name, length and the 1-based position pairs joined by matching edges.
pub type CirclePart = (Name, u32, Vec<(u32, u32)>);

/// Spacing of contact positions on a circle.
pub const CONTACT_STRIDE: u32 = 7;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HybridError {
    #[error("variable `{name}` occurs {count} times, expected 3")]
    OccurrenceCount { name: String, count: usize },
    #[error("invalid name `{0}`")]
    BadName(String),
    #[error("duplicate circle `{0}`")]
    DuplicateCircle(String),
    #[error("unknown circle `{0}`")]
    UnknownCircle(String),
    #[error("circle `{name}` has length {len}, expected a positive multiple of 7")]
    BadLength { name: String, len: u32 },
    #[error("circle `{circle}`: {msg}")]
    BadMatching { circle: String, msg: String },
    #[error("position {pos} on circle `{circle}` is not a contact")]
    NotAContact { circle: String, pos: u32 },
    #[error("contact {0} is used by more than one three-variable equation")]
    ContactReused(String),
    #[error("contact {0} is not used by any three-variable equation")]
    ContactUnused(String),
    #[error("assignment does not match the instance shape")]
    AssignmentShape,
    #[error("assignment is missing variable {0}")]
    MissingVariable(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// One equation `a ⊕ b ⊕ c = rhs` of an E3-LIN system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E3Equation {
    pub vars: [Name; 3],
    pub rhs: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct E3LinInstance {
    pub equations: Vec<E3Equation>,
}

impl E3LinInstance {
    pub fn new(equations: Vec<E3Equation>) -> Self {
        E3LinInstance { equations }
    }

    /// Variables in order of first appearance.
    pub fn variables(&self) -> Vec<Name> {
        let mut seen = HashMap::new();
        let mut out = Vec::new();
        for eq in &self.equations {
            for v in &eq.vars {
                if seen.insert(v.clone(), ()).is_none() {
                    out.push(v.clone());
                }
            }
        }
        out
    }

    pub fn occurrences(&self) -> HashMap<Name, usize> {
        let mut occ = HashMap::new();
        for eq in &self.equations {
            for v in &eq.vars {
                *occ.entry(v.clone()).or_insert(0) += 1;
            }
        }
        occ
    }

    pub fn to_text(&self) -> String {
        format::write_e3(self)
    }

    pub fn from_text(text: &str) -> Result<Self, HybridError> {
        format::parse_e3(text)
    }
}

/// A variable of a Hybrid instance: position `pos` (1-based) on circle `circle`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarRef {
    pub circle: usize,
    pub pos: u32,
}

impl VarRef {
    pub fn new(circle: usize, pos: u32) -> Self {
        VarRef { circle, pos }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    name: Name,
    // partner[p - 1] is the matching partner of checker p, 0 for contacts
    partner: Vec<u32>,
}

impl Circle {
    pub fn name(&self) -> &Name {
        &self.name
    }

    pub fn len(&self) -> u32 {
        self.partner.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    /// Number of contacts, the occurrence count of the owning E3 variable.
    pub fn occurrences(&self) -> u32 {
        self.len() / CONTACT_STRIDE
    }

    pub fn is_contact(&self, pos: u32) -> bool {
        pos.is_multiple_of(CONTACT_STRIDE)
    }

    pub fn contacts(&self) -> impl Iterator<Item = u32> {
        (1..=self.occurrences()).map(|nu| nu * CONTACT_STRIDE)
    }

    pub fn partner(&self, pos: u32) -> Option<u32> {
        match self.partner[pos as usize - 1] {
            0 => None,
            p => Some(p),
        }
    }

    /// Matching edges as (i, j) with i < j, sorted by i.
    pub fn matching(&self) -> Vec<(u32, u32)> {
        (1..=self.len())
            .filter_map(|i| self.partner(i).filter(|&j| i < j).map(|j| (i, j)))
            .collect()
    }

    /// Position following `pos` cyclically.
    pub fn next(&self, pos: u32) -> u32 {
        if pos == self.len() {
            1
        } else {
            pos + 1
        }
    }

    fn with_matching(name: Name, len: u32, edges: &[(u32, u32)]) -> Result<Self, HybridError> {
        if len == 0 || !len.is_multiple_of(CONTACT_STRIDE) {
            return Err(HybridError::BadLength {
                name: name.to_string(),
                len,
            });
        }
        let bad = |msg: String| HybridError::BadMatching {
            circle: name.to_string(),
            msg,
        };
        let mut partner = vec![0u32; len as usize];
        for &(i, j) in edges {
            for p in [i, j] {
                if p == 0 || p > len {
                    return Err(bad(format!("position {p} out of range")));
                }
                if p % CONTACT_STRIDE == 0 {
                    return Err(bad(format!("contact {p} cannot be matched")));
                }
                if partner[p as usize - 1] != 0 {
                    return Err(bad(format!("position {p} matched twice")));
                }
            }
            if i == j {
                return Err(bad(format!("loop at {i}")));
            }
            partner[i as usize - 1] = j;
            partner[j as usize - 1] = i;
        }
        if let Some(p) = (1..=len).find(|&p| p % CONTACT_STRIDE != 0 && partner[p as usize - 1] == 0) {
            return Err(bad(format!("checker {p} is unmatched")));
        }
        Ok(Circle { name, partner })
    }
}

/// Three-variable equation over contacts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThreeEq {
    pub vars: [VarRef; 3],
    pub rhs: bool,
}

/// The equations of a Hybrid instance, in canonical enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Equation {
    /// x_pos ⊕ x_{pos+1} = 0 for pos in 1..len.
    Circle {
        circle: usize,
        pos: u32,
    },
    /// x_1 ⊕ x_len = 0.
    Border {
        circle: usize,
    },
    Matching {
        circle: usize,
        i: u32,
        j: u32,
    },
    Three {
        index: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchingStrategy {
    /// Pair consecutive checkers, skipping contacts.
    Adjacent,
    /// Pair the k-th checker with the (k + c/2)-th, c the checker count.
    Shifted,
}

impl MatchingStrategy {
    fn edges(self, len: u32) -> Vec<(u32, u32)> {
        let checkers: Vec<u32> = (1..=len).filter(|p| p % CONTACT_STRIDE != 0).collect();
        let half = checkers.len() / 2;
        match self {
            MatchingStrategy::Adjacent => checkers.chunks(2).map(|c| (c[0], c[1])).collect(),
            MatchingStrategy::Shifted => (0..half).map(|k| (checkers[k], checkers[k + half])).collect(),
        }
    }
}

impl std::str::FromStr for MatchingStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "adjacent" => Ok(MatchingStrategy::Adjacent),
            "shifted" => Ok(MatchingStrategy::Shifted),
            _ => Err(format!("unknown matching strategy `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub strategy: MatchingStrategy,
    /// Accept variables occurring any positive number of times.
    pub any_occurrence_count: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            strategy: MatchingStrategy::Adjacent,
            any_occurrence_count: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counts {
    pub n: usize,
    pub m2: usize,
    pub m3: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HybridInstance {
    circles: Vec<Circle>,
    eq3: Vec<ThreeEq>,
    // (equation index, role 0..3) per contact, keyed by circle then contact ordinal
    contact_of: Vec<Vec<(usize, usize)>>,
    counts: Counts,
}

/// Maps an E3-LIN system to a Hybrid instance.
pub fn build_hybrid(e3: &E3LinInstance, opts: BuildOptions) -> Result<HybridInstance, HybridError> {
    let vars = e3.variables();
    let occ = e3.occurrences();
    for v in &vars {
        if !valid_name(v) {
            return Err(HybridError::BadName(v.to_string()));
        }
        let count = occ[v];
        if count != 3 && !opts.any_occurrence_count {
            return Err(HybridError::OccurrenceCount {
                name: v.to_string(),
                count,
            });
        }
    }
    let index: HashMap<Name, usize> = vars.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let mut circles = Vec::with_capacity(vars.len());
    for v in &vars {
        let len = CONTACT_STRIDE * occ[v] as u32;
        circles.push(Circle::with_matching(v.clone(), len, &opts.strategy.edges(len))?);
    }
    let mut seen = vec![0u32; vars.len()];
    let mut eq3 = Vec::with_capacity(e3.equations.len());
    for eq in &e3.equations {
        let refs = eq.vars.clone().map(|v| {
            let c = index[&v];
            seen[c] += 1;
            VarRef::new(c, CONTACT_STRIDE * seen[c])
        });
        eq3.push(ThreeEq {
            vars: refs,
            rhs: eq.rhs,
        });
    }
    HybridInstance::new(circles, eq3)
}

impl HybridInstance {
    fn new(circles: Vec<Circle>, eq3: Vec<ThreeEq>) -> Result<Self, HybridError> {
        let mut contact_of: Vec<Vec<Option<(usize, usize)>>> =
            circles.iter().map(|c| vec![None; c.occurrences() as usize]).collect();
        for (e, eq) in eq3.iter().enumerate() {
            for (role, v) in eq.vars.iter().enumerate() {
                let circle = &circles[v.circle];
                if v.pos == 0 || v.pos > circle.len() || !circle.is_contact(v.pos) {
                    return Err(HybridError::NotAContact {
                        circle: circle.name.to_string(),
                        pos: v.pos,
                    });
                }
                let slot = &mut contact_of[v.circle][(v.pos / CONTACT_STRIDE) as usize - 1];
                if slot.is_some() {
                    return Err(HybridError::ContactReused(format!("{}.{}", circle.name, v.pos)));
                }
                *slot = Some((e, role));
            }
        }
        let contact_of = contact_of
            .into_iter()
            .enumerate()
            .map(|(c, slots)| {
                slots
                    .into_iter()
                    .enumerate()
                    .map(|(k, s)| {
                        s.ok_or_else(|| {
                            HybridError::ContactUnused(format!(
                                "{}.{}",
                                circles[c].name,
                                (k as u32 + 1) * CONTACT_STRIDE
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let m2 = circles.iter().map(|c| c.len() as usize + c.matching().len()).sum();
        let counts = Counts {
            n: circles.len(),
            m2,
            m3: eq3.len(),
        };
        Ok(HybridInstance {
            circles,
            eq3,
            contact_of,
            counts,
        })
    }

    /// Assembles an instance from explicit parts, validating every structural invariant.
    pub fn from_parts(circles: Vec<CirclePart>, eq3: Vec<ThreeEq>) -> Result<Self, HybridError> {
        let mut names = HashMap::new();
        let mut built = Vec::with_capacity(circles.len());
        for (name, len, edges) in circles {
            if !valid_name(&name) {
                return Err(HybridError::BadName(name.to_string()));
            }
            if names.insert(name.clone(), ()).is_some() {
                return Err(HybridError::DuplicateCircle(name.to_string()));
            }
            built.push(Circle::with_matching(name, len, &edges)?);
        }
        HybridInstance::new(built, eq3)
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn circle(&self, c: usize) -> &Circle {
        &self.circles[c]
    }

    pub fn eq3(&self) -> &[ThreeEq] {
        &self.eq3
    }

    pub fn counts(&self) -> Counts {
        self.counts
    }

    pub fn num_variables(&self) -> usize {
        self.circles.iter().map(|c| c.len() as usize).sum()
    }

    pub fn circle_index(&self, name: &str) -> Option<usize> {
        self.circles.iter().position(|c| &*c.name == name)
    }

    /// The three-variable equation using contact `v` and the role (0, 1, 2) of `v` in it.
    pub fn contact_equation(&self, v: VarRef) -> Option<(usize, usize)> {
        if !self.circles[v.circle].is_contact(v.pos) {
            return None;
        }
        Some(self.contact_of[v.circle][(v.pos / CONTACT_STRIDE) as usize - 1])
    }

    /// Whether `v` is the larger end of its matching edge or, for a contact,
    /// belongs to an equation with right-hand side 1.
    pub fn is_large(&self, v: VarRef) -> bool {
        match self.circles[v.circle].partner(v.pos) {
            Some(p) => p < v.pos,
            None => {
                let (e, _) = self.contact_equation(v).expect("contact without equation");
                self.eq3[e].rhs
            }
        }
    }

    pub fn var_name(&self, v: VarRef) -> String {
        format!("{}.{}", self.circles[v.circle].name, v.pos)
    }

    pub fn equations(&self) -> Vec<Equation> {
        let mut out = Vec::new();
        for (c, circle) in self.circles.iter().enumerate() {
            out.extend((1..circle.len()).map(|pos| Equation::Circle { circle: c, pos }));
            out.push(Equation::Border { circle: c });
            out.extend(
                circle
                    .matching()
                    .into_iter()
                    .map(|(i, j)| Equation::Matching { circle: c, i, j }),
            );
        }
        out.extend((0..self.eq3.len()).map(|index| Equation::Three { index }));
        out
    }

    /// Variables of an equation and its right-hand side.
    pub fn equation_vars(&self, eq: Equation) -> (Vec<VarRef>, bool) {
        match eq {
            Equation::Circle { circle, pos } => (vec![VarRef::new(circle, pos), VarRef::new(circle, pos + 1)], false),
            Equation::Border { circle } => (
                vec![VarRef::new(circle, 1), VarRef::new(circle, self.circles[circle].len())],
                false,
            ),
            Equation::Matching { circle, i, j } => (vec![VarRef::new(circle, i), VarRef::new(circle, j)], false),
            Equation::Three { index } => (self.eq3[index].vars.to_vec(), self.eq3[index].rhs),
        }
    }

    pub fn is_satisfied(&self, eq: Equation, phi: &Assignment) -> bool {
        let (vars, rhs) = self.equation_vars(eq);
        vars.iter().fold(false, |acc, &v| acc ^ phi.get(v)) == rhs
    }

    /// Number of unsatisfied equations of all four types.
    pub fn unsat_count(&self, phi: &Assignment) -> Result<usize, HybridError> {
        if !phi.fits(self) {
            return Err(HybridError::AssignmentShape);
        }
        Ok(self
            .equations()
            .into_iter()
            .filter(|&eq| !self.is_satisfied(eq, phi))
            .count())
    }

    pub fn to_text(&self) -> String {
        format::write_hybrid(self)
    }

    pub fn from_text(text: &str) -> Result<Self, HybridError> {
        format::parse_hybrid(text)
    }

    /// Same instance with circles listed in `order` (a permutation of circle indices).
    pub fn permute_circles(&self, order: &[usize]) -> HybridInstance {
        let mut inverse = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        let circles = order.iter().map(|&c| self.circles[c].clone()).collect();
        let eq3 = self
            .eq3
            .iter()
            .map(|e| ThreeEq {
                vars: e.vars.map(|v| VarRef::new(inverse[v.circle], v.pos)),
                rhs: e.rhs,
            })
            .collect();
        HybridInstance::new(circles, eq3).expect("permutation preserves validity")
    }
}

/// A total 0/1 assignment to the variables of one Hybrid instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    bits: Vec<Vec<bool>>,
}

impl Assignment {
    pub fn zeros(h: &HybridInstance) -> Self {
        Assignment {
            bits: h.circles.iter().map(|c| vec![false; c.len() as usize]).collect(),
        }
    }

    pub fn random<R: rand::Rng>(h: &HybridInstance, rng: &mut R) -> Self {
        Assignment {
            bits: h
                .circles
                .iter()
                .map(|c| (0..c.len()).map(|_| rng.gen()).collect())
                .collect(),
        }
    }

    /// Every variable of a circle gets the owning E3 variable's value.
    pub fn from_e3_values(h: &HybridInstance, values: &[bool]) -> Self {
        Assignment {
            bits: h
                .circles
                .iter()
                .zip(values)
                .map(|(c, &b)| vec![b; c.len() as usize])
                .collect(),
        }
    }

    pub fn get(&self, v: VarRef) -> bool {
        self.bits[v.circle][v.pos as usize - 1]
    }

    pub fn set(&mut self, v: VarRef, bit: bool) {
        self.bits[v.circle][v.pos as usize - 1] = bit;
    }

    pub fn flip(&mut self, v: VarRef) {
        let b = &mut self.bits[v.circle][v.pos as usize - 1];
        *b = !*b;
    }

    pub fn circle_bits(&self, c: usize) -> &[bool] {
        &self.bits[c]
    }

    pub fn fits(&self, h: &HybridInstance) -> bool {
        self.bits.len() == h.circles.len()
            && self
                .bits
                .iter()
                .zip(&h.circles)
                .all(|(b, c)| b.len() == c.len() as usize)
    }

    /// Same assignment under a circle permutation (see [`HybridInstance::permute_circles`]).
    pub fn permute_circles(&self, order: &[usize]) -> Assignment {
        Assignment {
            bits: order.iter().map(|&c| self.bits[c].clone()).collect(),
        }
    }

    pub(crate) fn from_bits(bits: Vec<Vec<bool>>) -> Self {
        Assignment { bits }
    }
}

impl fmt::Display for Counts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} m2={} m3={}", self.n, self.m2, self.m3)
    }
}
