//! Exact computations with finitely generated abelian groups, embedded
//! monoids and the combinatorial data of Mori dream spaces.
//!
//! All arithmetic is done with arbitrary precision integers and rationals.

pub mod abelian;
pub mod dd;
pub mod error;
pub mod fujita;
pub mod integer;
pub mod lattice;
pub mod lp;
pub mod mds;
pub mod monoid;
pub mod polyhedral;

pub use error::{Error, Result};
