//! Orbits over constants, canonical maps, behaviors and clean skeletons.

mod behavior;
mod orbits;
mod skeleton;

pub use behavior::*;
pub use orbits::*;
pub use skeleton::*;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error("element {element} out of range for poset of size {n}")]
    IndexOutOfRange { element: usize, n: usize },
    #[error("no block has label {0}")]
    UnknownLabel(OrbitLabel),
    #[error("blocks must be distinct")]
    SameBlock,
    #[error("map must have one image per source element ({expected}), got {found}")]
    MapLength { expected: usize, found: usize },
    #[error("map is not injective: {a} and {b} both go to {image}")]
    NotInjective { a: usize, b: usize, image: usize },
    #[error("map is not canonical: {0}")]
    NotCanonical(CanonicalWitness),
    #[error("ordered poset invalid: {0}")]
    Order(String),
    #[error("no slice member for block {0}")]
    EmptyBlock(OrbitLabel),
    #[error("certification failed: {0}")]
    Certification(String),
}

pub(crate) fn check_elements(n: usize, elems: &[usize]) -> Result<(), CanonicalError> {
    match elems.iter().find(|&&e| e >= n) {
        Some(&element) => Err(CanonicalError::IndexOutOfRange { element, n }),
        None => Ok(()),
    }
}
