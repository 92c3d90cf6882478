//! First-order logic over partial groupoids.
//!
//! The only non-logical symbol is the ternary product relation `x*y = z`,
//! which is false whenever the product is undefined. Equality is a primitive
//! atom. Green's relations and ω-identities may appear as macro atoms; they
//! are evaluated directly and [`expand_macros`] rewrites them into the core
//! fragment (`*`, `=`, `not`, `or`, `exists`).

mod eval;
mod expand;
mod formula;
mod parse;
mod transform;

pub use eval::{evaluate, evaluate_sentence, Evaluator, Witness};
pub use expand::{expand_macros, green_formula};
pub use formula::{Formula, Fresh};
pub use parse::parse_formula;
pub use transform::{
    quotient_rewrite, quotient_rewrite_open, relativize, relativize_open, semigroup_sentence,
    Relation,
};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use thiserror::Error;

use crate::algebra::Element;
use crate::omega::OmegaError;

/// Values of free variables.
pub type Assignment = BTreeMap<String, Element>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("identifiers starting with '$' are reserved (byte {0})")]
    ReservedIdentifier(usize),
    #[error(transparent)]
    Identity(#[from] OmegaError),
    #[error("variable {0} is not bound")]
    UnboundVariable(String),
    #[error("variable {var} is assigned {value}, which is not an element")]
    ElementOutOfRange { var: String, value: Element },
    #[error("relation must have free variables among {expected:?}, found {found:?}")]
    ArityMismatch { expected: Vec<String>, found: Vec<String> },
}
