//! Multiplications compatible with a fixed addition.
//!
//! On a finite abelian group a distributive multiplication is bilinear, so it
//! is pinned down by the products of the standard generators
//! ([`StructureConstants`]). Over a window of `Z` multiplications are opaque
//! functions ([`IntMul`]) and distributivity has to be checked directly.

mod blackbox;
mod constants;

pub use blackbox::{
    check_distributivity_blackbox, check_distributivity_blackbox_seeded, DistributivityReport,
    DistributivityViolation, IntMul, Side, DEFAULT_SEED,
};
pub use constants::{RingStructure, StructureConstants};
