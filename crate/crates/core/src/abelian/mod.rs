//! Finite abelian groups as explicit products of cyclic factors, and a
//! bounded slice of the integers with exact, overflow-checked arithmetic.

mod group;
mod window;

pub use group::{Elements, GroupElement, GroupSpec, DEFAULT_ELEMENT_CAP};
pub use window::{checked_add, checked_mul, checked_neg, IntegerWindow};
