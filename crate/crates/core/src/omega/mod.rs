//! ω-terms and ω-identities.
//!
//! Terms are built from variables, concatenation and the ω-power; an
//! assignment of variables to semigroup elements extends to terms by
//! multiplying and taking idempotent powers.

mod compile;
mod parse;

pub use compile::{identity_to_formula, term_to_formula, xi_formula};
pub(crate) use compile::identity_formula_with;
pub use parse::{parse_basis, parse_identity, parse_term};

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use thiserror::Error;

use crate::algebra::{Element, GreenRelation, GreenTables, PartialGroupoid, Semigroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmegaError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable {0} is not bound")]
    UnboundVariable(String),
    #[error("element {0} is out of range")]
    ElementOutOfRange(Element),
    #[error("identity variable list does not cover {0}")]
    MissingVariable(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OmegaTerm {
    Var(String),
    Concat(Box<OmegaTerm>, Box<OmegaTerm>),
    Omega(Box<OmegaTerm>),
}

impl OmegaTerm {
    pub fn var(name: &str) -> OmegaTerm {
        OmegaTerm::Var(name.into())
    }

    pub fn concat(a: OmegaTerm, b: OmegaTerm) -> OmegaTerm {
        OmegaTerm::Concat(Box::new(a), Box::new(b))
    }

    pub fn omega(a: OmegaTerm) -> OmegaTerm {
        OmegaTerm::Omega(Box::new(a))
    }

    /// Variables in order of first occurrence.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            OmegaTerm::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            OmegaTerm::Concat(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            OmegaTerm::Omega(a) => a.collect_vars(out),
        }
    }

    pub fn has_omega(&self) -> bool {
        match self {
            OmegaTerm::Var(_) => false,
            OmegaTerm::Concat(a, b) => a.has_omega() || b.has_omega(),
            OmegaTerm::Omega(_) => true,
        }
    }

    pub fn rename(&self, map: &BTreeMap<String, String>) -> OmegaTerm {
        match self {
            OmegaTerm::Var(v) => OmegaTerm::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
            OmegaTerm::Concat(a, b) => OmegaTerm::concat(a.rename(map), b.rename(map)),
            OmegaTerm::Omega(a) => OmegaTerm::omega(a.rename(map)),
        }
    }

    fn slots(&self, vars: &[String]) -> SlotTerm {
        match self {
            OmegaTerm::Var(v) => {
                SlotTerm::Var(vars.iter().position(|w| w == v).expect("variable listed"))
            }
            OmegaTerm::Concat(a, b) => {
                SlotTerm::Concat(Box::new(a.slots(vars)), Box::new(b.slots(vars)))
            }
            OmegaTerm::Omega(a) => SlotTerm::Omega(Box::new(a.slots(vars))),
        }
    }
}

impl fmt::Display for OmegaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaTerm::Var(v) => f.write_str(v),
            OmegaTerm::Concat(a, b) => {
                write!(f, "{a} ")?;
                if matches!(**b, OmegaTerm::Concat(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            OmegaTerm::Omega(a) => match **a {
                OmegaTerm::Concat(..) => write!(f, "({a})^w"),
                _ => write!(f, "{a}^w"),
            },
        }
    }
}

/// An equation `lhs = rhs` between ω-terms over an ordered variable list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OmegaIdentity {
    lhs: OmegaTerm,
    rhs: OmegaTerm,
    vars: Vec<String>,
}

impl OmegaIdentity {
    /// Variables are listed in order of first occurrence, left side first.
    pub fn new(lhs: OmegaTerm, rhs: OmegaTerm) -> Self {
        let mut vars = lhs.vars();
        for v in rhs.vars() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        OmegaIdentity { lhs, rhs, vars }
    }

    /// Uses an explicit variable order, which must cover both sides.
    pub fn with_vars(lhs: OmegaTerm, rhs: OmegaTerm, vars: Vec<String>) -> Result<Self, OmegaError> {
        for v in lhs.vars().into_iter().chain(rhs.vars()) {
            if !vars.contains(&v) {
                return Err(OmegaError::MissingVariable(v));
            }
        }
        Ok(OmegaIdentity { lhs, rhs, vars })
    }

    pub fn lhs(&self) -> &OmegaTerm {
        &self.lhs
    }

    pub fn rhs(&self) -> &OmegaTerm {
        &self.rhs
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Neither side contains an ω-power.
    pub fn is_equation(&self) -> bool {
        !self.lhs.has_omega() && !self.rhs.has_omega()
    }

    pub fn rename(&self, map: &BTreeMap<String, String>) -> OmegaIdentity {
        let vars: Vec<String> = self
            .vars
            .iter()
            .map(|v| map.get(v).cloned().unwrap_or_else(|| v.clone()))
            .collect();
        let mut dedup: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            if !dedup.contains(&v) {
                dedup.push(v);
            }
        }
        OmegaIdentity { lhs: self.lhs.rename(map), rhs: self.rhs.rename(map), vars: dedup }
    }

    pub(crate) fn slot_pair(&self) -> (SlotTerm, SlotTerm) {
        (self.lhs.slots(&self.vars), self.rhs.slots(&self.vars))
    }
}

impl fmt::Display for OmegaIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// A term whose variables are positions in an identity's variable list.
#[derive(Clone, Debug)]
pub(crate) enum SlotTerm {
    Var(usize),
    Concat(Box<SlotTerm>, Box<SlotTerm>),
    Omega(Box<SlotTerm>),
}

impl SlotTerm {
    pub(crate) fn eval(&self, s: &Semigroup, values: &[Element]) -> Element {
        match self {
            SlotTerm::Var(i) => values[*i],
            SlotTerm::Concat(a, b) => s.mul(a.eval(s, values), b.eval(s, values)),
            SlotTerm::Omega(a) => s.omega(a.eval(s, values)),
        }
    }

    /// Every element `t` for which the compiled formula "term = t" holds.
    /// On semigroups this is the singleton of the term's value; on other
    /// tables it follows the formula literally.
    pub(crate) fn value_set(
        &self,
        g: &PartialGroupoid,
        tables: &GreenTables,
        values: &[Element],
    ) -> Vec<Element> {
        match self {
            SlotTerm::Var(i) => vec![values[*i]],
            SlotTerm::Concat(a, b) => {
                let left = a.value_set(g, tables, values);
                let right = b.value_set(g, tables, values);
                let mut out: Vec<Element> = left
                    .iter()
                    .flat_map(|&x| right.iter().filter_map(move |&y| g.product(x, y)))
                    .collect();
                out.sort_unstable();
                out.dedup();
                out
            }
            SlotTerm::Omega(a) => {
                let inner = a.value_set(g, tables, values);
                g.elements()
                    .filter(|&y| inner.iter().any(|&x| xi_holds(g, tables, x, y)))
                    .collect()
            }
        }
    }
}

/// `y` is the ≤H-maximal idempotent with `xy R y` and `yx L y` among all
/// such idempotents (the characterization of `x^ω` in finite semigroups).
pub(crate) fn xi_holds(g: &PartialGroupoid, tables: &GreenTables, x: Element, y: Element) -> bool {
    let stable = |t: Element| {
        g.product(x, t).is_some_and(|xt| tables.holds(GreenRelation::R, xt, t))
            && g.product(t, x).is_some_and(|tx| tables.holds(GreenRelation::L, tx, t))
    };
    g.is_idempotent(y)
        && stable(y)
        && g.elements().all(|z| {
            z == y || !g.is_idempotent(z) || !tables.holds(GreenRelation::LeqH, y, z) || !stable(z)
        })
}

/// Relational truth of an identity under `values` (positions of the
/// identity's variable list), matching its compiled formula on any table.
pub(crate) fn identity_holds_relational(
    g: &PartialGroupoid,
    tables: &GreenTables,
    lhs: &SlotTerm,
    rhs: &SlotTerm,
    values: &[Element],
) -> bool {
    match (lhs, rhs) {
        (_, SlotTerm::Var(y)) => lhs.value_set(g, tables, values).contains(&values[*y]),
        (SlotTerm::Var(x), _) => rhs.value_set(g, tables, values).contains(&values[*x]),
        _ => {
            let a = lhs.value_set(g, tables, values);
            let b = rhs.value_set(g, tables, values);
            a.iter().any(|t| b.binary_search(t).is_ok())
        }
    }
}

/// Value of `t` under the assignment `h`.
pub fn eval_term(
    s: &Semigroup,
    t: &OmegaTerm,
    h: &BTreeMap<String, Element>,
) -> Result<Element, OmegaError> {
    match t {
        OmegaTerm::Var(v) => {
            let x = *h.get(v).ok_or_else(|| OmegaError::UnboundVariable(v.clone()))?;
            if !s.contains(x) {
                return Err(OmegaError::ElementOutOfRange(x));
            }
            Ok(x)
        }
        OmegaTerm::Concat(a, b) => Ok(s.mul(eval_term(s, a, h)?, eval_term(s, b, h)?)),
        OmegaTerm::Omega(a) => Ok(s.omega(eval_term(s, a, h)?)),
    }
}

/// The lexicographically first assignment (over the identity's variable
/// order, values ascending) violating the identity.
pub fn find_counterexample(s: &Semigroup, id: &OmegaIdentity) -> Option<BTreeMap<String, Element>> {
    let (lhs, rhs) = id.slot_pair();
    let k = id.vars().len();
    let n = s.order();
    let mut values = vec![1; k];
    loop {
        if lhs.eval(s, &values) != rhs.eval(s, &values) {
            return Some(id.vars().iter().cloned().zip(values).collect());
        }
        // odometer, last variable fastest
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if values[i] < n {
                values[i] += 1;
                break;
            }
            values[i] = 1;
        }
    }
}

pub fn satisfies_identity(s: &Semigroup, id: &OmegaIdentity) -> bool {
    find_counterexample(s, id).is_none()
}
