//! Finite-scale tools for studying the reducts of the random partial order.

pub mod bits;
pub mod canonical;
pub mod format;
pub mod generic;
pub mod poset;
pub mod reducts;
pub mod sample;
pub mod transforms;
pub mod verify;

pub use bits::Bits;
pub use poset::{FinitePoset, PairRel, PosetError};
