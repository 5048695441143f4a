use std::fmt;
use std::sync::Arc;

/// Shared, cheaply cloned identifier for circles and variables.
pub type Name = Arc<str>;

/// Returns true if `s` can be used as a circle or variable name in the text formats.
pub fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    VarLetter,
    CircleTerminal,
    Eq3Aux,
}

/// Which of the two split right letters of a contact variable (variant B4 only).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Alpha,
    Beta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarTag {
    M0,
    M1,
    L0,
    L1,
    R0,
    R1,
    R1Alpha,
    R1Beta,
    R0Alpha,
    R0Beta,
}

impl VarTag {
    pub fn middle(bit: bool) -> Self {
        if bit {
            VarTag::M1
        } else {
            VarTag::M0
        }
    }

    pub fn left(bit: bool) -> Self {
        if bit {
            VarTag::L1
        } else {
            VarTag::L0
        }
    }

    pub fn right(bit: bool) -> Self {
        if bit {
            VarTag::R1
        } else {
            VarTag::R0
        }
    }

    pub fn split(bit: bool, branch: Branch) -> Self {
        match (bit, branch) {
            (true, Branch::Alpha) => VarTag::R1Alpha,
            (true, Branch::Beta) => VarTag::R1Beta,
            (false, Branch::Alpha) => VarTag::R0Alpha,
            (false, Branch::Beta) => VarTag::R0Beta,
        }
    }

    pub fn is_split(self) -> bool {
        matches!(
            self,
            VarTag::R1Alpha | VarTag::R1Beta | VarTag::R0Alpha | VarTag::R0Beta
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VarTag::M0 => "m0",
            VarTag::M1 => "m1",
            VarTag::L0 => "l0",
            VarTag::L1 => "l1",
            VarTag::R0 => "r0",
            VarTag::R1 => "r1",
            VarTag::R1Alpha => "r1a",
            VarTag::R1Beta => "r1b",
            VarTag::R0Alpha => "r0a",
            VarTag::R0Beta => "r0b",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "m0" => VarTag::M0,
            "m1" => VarTag::M1,
            "l0" => VarTag::L0,
            "l1" => VarTag::L1,
            "r0" => VarTag::R0,
            "r1" => VarTag::R1,
            "r1a" => VarTag::R1Alpha,
            "r1b" => VarTag::R1Beta,
            "r0a" => VarTag::R0Alpha,
            "r0b" => VarTag::R0Beta,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TerminalTag {
    L,
    R,
    Cl,
    Cr,
}

impl TerminalTag {
    pub fn as_str(self) -> &'static str {
        match self {
            TerminalTag::L => "L",
            TerminalTag::R => "R",
            TerminalTag::Cl => "Cl",
            TerminalTag::Cr => "Cr",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "L" => TerminalTag::L,
            "R" => TerminalTag::R,
            "Cl" => TerminalTag::Cl,
            "Cr" => TerminalTag::Cr,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AuxTag {
    A1,
    A2,
    A3,
    B1,
    B2,
    B3,
    C,
}

impl AuxTag {
    pub fn as_str(self) -> &'static str {
        match self {
            AuxTag::A1 => "A1",
            AuxTag::A2 => "A2",
            AuxTag::A3 => "A3",
            AuxTag::B1 => "B1",
            AuxTag::B2 => "B2",
            AuxTag::B3 => "B3",
            AuxTag::C => "C",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "A1" => AuxTag::A1,
            "A2" => AuxTag::A2,
            "A3" => AuxTag::A3,
            "B1" => AuxTag::B1,
            "B2" => AuxTag::B2,
            "B3" => AuxTag::B3,
            "C" => AuxTag::C,
            _ => return None,
        })
    }
}

/// One alphabet letter. Equality is structural over (kind, owner, tag).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// Decorated letter of variable `pos` (1-based) on circle `circle`.
    Var {
        circle: Name,
        pos: u32,
        tag: VarTag,
    },
    Terminal {
        circle: Name,
        tag: TerminalTag,
    },
    /// Auxiliary letter of the three-variable equation with index `eq`.
    Aux {
        eq: u32,
        tag: AuxTag,
    },
}

impl Symbol {
    pub fn var(circle: &Name, pos: u32, tag: VarTag) -> Self {
        Symbol::Var {
            circle: circle.clone(),
            pos,
            tag,
        }
    }

    pub fn terminal(circle: &Name, tag: TerminalTag) -> Self {
        Symbol::Terminal {
            circle: circle.clone(),
            tag,
        }
    }

    pub fn aux(eq: u32, tag: AuxTag) -> Self {
        Symbol::Aux { eq, tag }
    }

    pub fn kind(&self) -> SymbolKind {
        match self {
            Symbol::Var { .. } => SymbolKind::VarLetter,
            Symbol::Terminal { .. } => SymbolKind::CircleTerminal,
            Symbol::Aux { .. } => SymbolKind::Eq3Aux,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Var { circle, pos, tag } => write!(f, "v:{circle}.{pos}:{}", tag.as_str()),
            Symbol::Terminal { circle, tag } => write!(f, "c:{circle}:{}", tag.as_str()),
            Symbol::Aux { eq, tag } => write!(f, "e:{eq}:{}", tag.as_str()),
        }
    }
}

impl std::str::FromStr for Symbol {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("malformed symbol `{s}`");
        let mut parts = s.split(':');
        let (kind, owner, tag) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(k), Some(o), Some(t), None) => (k, o, t),
            _ => return Err(bad()),
        };
        match kind {
            "v" => {
                let (circle, pos) = owner.rsplit_once('.').ok_or_else(bad)?;
                let pos: u32 = pos.parse().map_err(|_| bad())?;
                if !valid_name(circle) || pos == 0 {
                    return Err(bad());
                }
                let tag = VarTag::parse(tag).ok_or_else(bad)?;
                Ok(Symbol::Var {
                    circle: circle.into(),
                    pos,
                    tag,
                })
            }
            "c" => {
                if !valid_name(owner) {
                    return Err(bad());
                }
                let tag = TerminalTag::parse(tag).ok_or_else(bad)?;
                Ok(Symbol::Terminal {
                    circle: owner.into(),
                    tag,
                })
            }
            "e" => {
                let eq: u32 = owner.parse().map_err(|_| bad())?;
                let tag = AuxTag::parse(tag).ok_or_else(bad)?;
                Ok(Symbol::Aux { eq, tag })
            }
            _ => Err(bad()),
        }
    }
}
