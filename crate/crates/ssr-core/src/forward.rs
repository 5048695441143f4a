//! Assignment → superstring.

use thiserror::Error;

use crate::assembly::Engine;
pub use crate::assembly::{AlignmentPlan, Assembly, Choice, Placement, UnitId, UnitKind};
use crate::gadgets::{AlignmentName, Reduction};
use crate::hybrid::{Assignment, Equation, HybridError, HybridInstance, VarRef};
use crate::superstring::{is_superstring, GString};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForwardError {
    #[error(transparent)]
    Hybrid(#[from] HybridError),
    #[error("assembled string is not a superstring of the reduction")]
    NotASuperstring,
    #[error("circle order is not a permutation of the circles")]
    BadCircleOrder,
}

/// Circle and border gadgets take the alignment of φ on the variable they end
/// on (x_{i+1} for x_i ⊕ x_{i+1}, x_1 for the border). Matching and
/// three-variable gadgets take the alignment that shares the most letters at
/// the junctions they touch, falling back to the case rules on ties.
pub fn plan_from_assignment(
    h: &HybridInstance,
    red: &Reduction,
    phi: &Assignment,
) -> Result<AlignmentPlan, ForwardError> {
    if !phi.fits(h) {
        return Err(HybridError::AssignmentShape.into());
    }
    let engine = Engine::new(h, red);
    Ok(plan_with(&engine, |v| phi.get(v), (0..h.circles().len()).collect()))
}

/// Plan whose circle and border bits are `bit(x_p)` for the variable each gadget ends on.
pub(crate) fn plan_with(engine: &Engine, bit: impl Fn(VarRef) -> bool, circle_order: Vec<usize>) -> AlignmentPlan {
    plan_from_gadget_bits(
        engine,
        |eq| match eq {
            Equation::Circle { circle, pos } => bit(VarRef::new(circle, pos + 1)),
            Equation::Border { circle } => bit(VarRef::new(circle, 1)),
            _ => false,
        },
        circle_order,
    )
}

/// Plan with the given circle and border bits, completed by [`Engine::complete`].
pub(crate) fn plan_from_gadget_bits(
    engine: &Engine,
    bit: impl Fn(Equation) -> bool,
    circle_order: Vec<usize>,
) -> AlignmentPlan {
    let mut choices: Vec<Choice> = engine
        .red
        .index
        .gadgets
        .iter()
        .map(|g| match g.equation {
            Equation::Three { .. } => Choice::Three {
                a: AlignmentName::ALeft,
                b: AlignmentName::BRight,
            },
            eq => Choice::Bit(bit(eq)),
        })
        .collect();
    engine.complete(&mut choices);
    AlignmentPlan { choices, circle_order }
}

/// Executes a plan and checks the result covers every string.
pub fn execute(h: &HybridInstance, red: &Reduction, plan: &AlignmentPlan) -> Result<Assembly, ForwardError> {
    let mut seen = vec![false; h.circles().len()];
    if plan.circle_order.len() != seen.len() || plan.choices.len() != red.index.len() {
        return Err(ForwardError::BadCircleOrder);
    }
    for &c in &plan.circle_order {
        if c >= seen.len() || std::mem::replace(&mut seen[c], true) {
            return Err(ForwardError::BadCircleOrder);
        }
    }
    let assembly = Engine::new(h, red).assemble(plan);
    if !is_superstring(&assembly.superstring, &red.strings) {
        return Err(ForwardError::NotASuperstring);
    }
    Ok(assembly)
}

/// The superstring s_φ.
pub fn build_superstring(h: &HybridInstance, red: &Reduction, phi: &Assignment) -> Result<GString, ForwardError> {
    let plan = plan_from_assignment(h, red, phi)?;
    Ok(execute(h, red, &plan)?.superstring)
}
