//! Finite partial groupoids given by multiplication tables.

mod construct;
mod green;
mod groupoid;
mod partition;

pub use construct::{direct_product, Induced};
pub use green::{GreenRelation, GreenTables, Strictness};
pub use groupoid::{PartialGroupoid, Semigroup};
pub use partition::Partition;

use alloc::string::String;
use thiserror::Error;

/// Element ids run from `1` to `n`; `0` never denotes an element.
pub type Element = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("a partial groupoid needs at least one element")]
    Empty,
    #[error("table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("table entry {value} at ({row}, {col}) is not in 0..={n}")]
    EntryOutOfRange { row: Element, col: Element, value: usize, n: usize },
    #[error("element {0} is out of range")]
    ElementOutOfRange(Element),
    #[error("subset is empty")]
    EmptySubset,
    #[error("not a semigroup: {0}")]
    NotASemigroup(SemigroupViolation),
    #[error("element {0} is not idempotent")]
    NotIdempotent(Element),
    #[error("partition is not a congruence: {x} ~ {x2} and {y} ~ {y2} but {x}*{y} and {x2}*{y2} lie in different classes")]
    NotACongruence { x: Element, x2: Element, y: Element, y2: Element },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

/// Why a table fails to be a semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemigroupViolation {
    /// `x * y` is undefined.
    Undefined { x: Element, y: Element },
    /// `(x * y) * z != x * (y * z)`.
    NotAssociative { x: Element, y: Element, z: Element },
}

impl core::fmt::Display for SemigroupViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SemigroupViolation::Undefined { x, y } => write!(f, "product {x}*{y} is undefined"),
            SemigroupViolation::NotAssociative { x, y, z } => {
                write!(f, "({x}*{y})*{z} != {x}*({y}*{z})")
            }
        }
    }
}
