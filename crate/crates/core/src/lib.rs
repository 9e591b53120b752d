//! Ring multiplications that are compatible with a fixed abelian addition.
//!
//! The crate covers four related pieces:
//!
//! * [`abelian`]: finite abelian groups `Z/n_1 x ... x Z/n_k` and a bounded,
//!   overflow-checked window of the integers.
//! * [`structure`]: bilinear multiplications given by structure constants,
//!   ring-axiom checks, and black-box distributivity checks over windows of `Z`.
//! * [`scaled`]: the family `n * m = a.n.m`, its unitality, recovery of the
//!   scale from an arbitrary distributive multiplication, and the same
//!   construction over a finite base ring.
//! * [`matrix`]: square matrices over `Z/m` carrying both the standard and
//!   the entrywise (Hadamard) product.
//! * [`enumeration`]: exhaustive search for every ring multiplication on a
//!   small finite abelian group, with a full-table oracle for tiny carriers.

pub mod abelian;
pub mod enumeration;
mod error;
pub mod matrix;
pub mod scaled;
pub mod structure;

pub use abelian::{GroupElement, GroupSpec, IntegerWindow};
pub use error::{Error, Result};
pub use structure::{RingStructure, StructureConstants};
