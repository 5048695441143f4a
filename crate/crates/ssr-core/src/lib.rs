//! Reduction from the Hybrid problem (linear equations mod 2 on circles) to
//! the shortest superstring and maximal compression problems.
//!
//! The pipeline is: [`hybrid::build_hybrid`] → [`gadgets::reduce`] →
//! [`forward::build_superstring`] for an assignment, and
//! [`backward::normalize`] → [`backward::extract_assignment`] for an arbitrary
//! superstring. [`solvers`] and [`atsp`] provide exact oracles.

pub mod atsp;
pub mod backward;
pub mod bounds;
pub mod forward;
pub mod gadgets;
pub mod hybrid;
pub mod solvers;
pub mod superstring;

mod assembly;

pub use gadgets::{reduce, GadgetVariant, Reduction};
pub use hybrid::{build_hybrid, Assignment, HybridInstance};
pub use superstring::{GString, StringSet, Symbol};
