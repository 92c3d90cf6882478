//! Deciding membership of finite partial groupoids and semigroups in
//! first-order definable classes and classical pseudovarieties.
//!
//! Inputs are multiplication tables ([`PartialGroupoid`]). On top of the
//! table layer sit
//!
//! * [`logic`]: first-order formulas with multiplication as the only
//!   predicate, their evaluation, macro expansion, relativization to
//!   definable subsets and rewriting through definable congruences;
//! * [`omega`]: ω-terms and ω-identities and their compilation to formulas;
//! * [`catalog`]: named pseudovarieties and class operators with a uniform
//!   membership API;
//! * [`ea`]: the Rees-matrix / incidence-graph decision procedure for the
//!   pseudovariety of semigroups whose idempotent-generated subsemigroup is
//!   aperiodic;
//! * [`gen`]: test instance generators (reachability reduction, random
//!   transformation semigroups, DFA transition semigroups).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod catalog;
pub mod ea;
pub mod gen;
pub mod logic;
pub mod omega;

pub use algebra::{
    AlgebraError, Element, GreenRelation, GreenTables, Induced, Partition, PartialGroupoid,
    Semigroup,
};
pub use catalog::{check_membership, Membership, VarietySpec};
pub use logic::{evaluate, parse_formula, Assignment, Formula};
pub use omega::{parse_identity, OmegaIdentity, OmegaTerm};
