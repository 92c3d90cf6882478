use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::GreenRelation;
use crate::omega::OmegaIdentity;

/// First-order formulas over the ternary product relation `x*y = z`, with
/// equality and two kinds of macro atoms (Green's relations, ω-identities).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// `x*y = z`: the product is defined and equals `z`.
    Mult(String, String, String),
    Eq(String, String),
    Green(GreenRelation, String, String),
    /// An ω-identity whose variables are the formula's variables.
    Identity(OmegaIdentity),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn mult(x: &str, y: &str, z: &str) -> Formula {
        Formula::Mult(x.to_owned(), y.to_owned(), z.to_owned())
    }

    pub fn eq(x: &str, y: &str) -> Formula {
        Formula::Eq(x.to_owned(), y.to_owned())
    }

    pub fn green(rel: GreenRelation, x: &str, y: &str) -> Formula {
        Formula::Green(rel, x.to_owned(), y.to_owned())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn exists(v: &str, f: Formula) -> Formula {
        Formula::Exists(v.to_owned(), Box::new(f))
    }

    pub fn forall(v: &str, f: Formula) -> Formula {
        Formula::Forall(v.to_owned(), Box::new(f))
    }

    /// Left-nested conjunction; `None` for an empty iterator.
    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    pub fn or_all(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::or)
    }

    /// `forall v1 ... forall vk: f`, with `v1` outermost.
    pub fn forall_all<S: AsRef<str>>(vars: &[S], f: Formula) -> Formula {
        vars.iter().rev().fold(f, |acc, v| Formula::forall(v.as_ref(), acc))
    }

    pub fn exists_all<S: AsRef<str>>(vars: &[S], f: Formula) -> Formula {
        vars.iter().rev().fold(f, |acc, v| Formula::exists(v.as_ref(), acc))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut add = |v: &String, bound: &Vec<String>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            Formula::Mult(x, y, z) => {
                add(x, bound);
                add(y, bound);
                add(z, bound);
            }
            Formula::Eq(x, y) | Formula::Green(_, x, y) => {
                add(x, bound);
                add(y, bound);
            }
            Formula::Identity(id) => {
                for v in id.vars() {
                    add(v, bound);
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Only `Mult`, `Eq`, `Not`, `Or` and `Exists` nodes.
    pub fn is_core(&self) -> bool {
        match self {
            Formula::Mult(..) | Formula::Eq(..) => true,
            Formula::Not(f) | Formula::Exists(_, f) => f.is_core(),
            Formula::Or(a, b) => a.is_core() && b.is_core(),
            _ => false,
        }
    }

    /// Whether macro atoms occur.
    pub fn has_macros(&self) -> bool {
        match self {
            Formula::Mult(..) | Formula::Eq(..) => false,
            Formula::Green(..) | Formula::Identity(_) => true,
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.has_macros(),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.has_macros() || b.has_macros()
            }
        }
    }

    /// Maximal nesting of quantifiers (macros count as depth 0).
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Mult(..) | Formula::Eq(..) | Formula::Green(..) | Formula::Identity(_) => 0,
            Formula::Not(f) => f.quantifier_depth(),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.quantifier_depth().max(b.quantifier_depth())
            }
            Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.quantifier_depth(),
        }
    }

    /// Number of atom occurrences.
    pub fn atom_count(&self) -> usize {
        match self {
            Formula::Mult(..) | Formula::Eq(..) | Formula::Green(..) | Formula::Identity(_) => 1,
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.atom_count(),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.atom_count() + b.atom_count()
            }
        }
    }

    /// Top-level conjuncts, flattening nested `And`.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::And(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
                other => out.push(other),
            }
        }
        out
    }

    fn visit_names(&self, f: &mut impl FnMut(&str)) {
        match self {
            Formula::Mult(x, y, z) => {
                f(x);
                f(y);
                f(z);
            }
            Formula::Eq(x, y) | Formula::Green(_, x, y) => {
                f(x);
                f(y);
            }
            Formula::Identity(id) => id.vars().iter().for_each(|v| f(v)),
            Formula::Not(g) => g.visit_names(f),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit_names(f);
                b.visit_names(f);
            }
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                f(v);
                g.visit_names(f);
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_names(&mut |v| {
            out.insert(v.to_owned());
        });
        out
    }

    /// Capture-avoiding renaming: free variables are mapped through `map`
    /// (unmapped ones are kept) and every bound variable gets a fresh name.
    pub fn rename(&self, map: &BTreeMap<String, String>, fresh: &mut Fresh) -> Formula {
        let mut scope: Vec<(String, String)> = Vec::new();
        self.rename_in(map, &mut scope, fresh)
    }

    fn rename_in(
        &self,
        map: &BTreeMap<String, String>,
        scope: &mut Vec<(String, String)>,
        fresh: &mut Fresh,
    ) -> Formula {
        let look = |v: &String, scope: &Vec<(String, String)>| -> String {
            if let Some((_, to)) = scope.iter().rev().find(|(from, _)| from == v) {
                return to.clone();
            }
            map.get(v).cloned().unwrap_or_else(|| v.clone())
        };
        match self {
            Formula::Mult(x, y, z) => {
                Formula::Mult(look(x, scope), look(y, scope), look(z, scope))
            }
            Formula::Eq(x, y) => Formula::Eq(look(x, scope), look(y, scope)),
            Formula::Green(r, x, y) => Formula::Green(*r, look(x, scope), look(y, scope)),
            Formula::Identity(id) => {
                let m: BTreeMap<String, String> =
                    id.vars().iter().map(|v| (v.clone(), look(v, scope))).collect();
                Formula::Identity(id.rename(&m))
            }
            Formula::Not(f) => Formula::not(f.rename_in(map, scope, fresh)),
            Formula::Or(a, b) => {
                Formula::or(a.rename_in(map, scope, fresh), b.rename_in(map, scope, fresh))
            }
            Formula::And(a, b) => {
                Formula::and(a.rename_in(map, scope, fresh), b.rename_in(map, scope, fresh))
            }
            Formula::Implies(a, b) => {
                Formula::implies(a.rename_in(map, scope, fresh), b.rename_in(map, scope, fresh))
            }
            Formula::Iff(a, b) => {
                Formula::iff(a.rename_in(map, scope, fresh), b.rename_in(map, scope, fresh))
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                let new = fresh.var();
                scope.push((v.clone(), new.clone()));
                let body = f.rename_in(map, scope, fresh);
                scope.pop();
                match self {
                    Formula::Exists(..) => Formula::Exists(new, Box::new(body)),
                    _ => Formula::Forall(new, Box::new(body)),
                }
            }
        }
    }
}

/// Generator of reserved variable names `$1`, `$2`, ... .
#[derive(Clone, Debug)]
pub struct Fresh {
    next: usize,
}

impl Fresh {
    pub fn new() -> Self {
        Fresh { next: 1 }
    }

    /// Starts above every reserved name occurring in the given formulas.
    pub fn above<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Self {
        let mut fresh = Fresh::new();
        for f in formulas {
            f.visit_names(&mut |v| fresh.reserve(v));
        }
        fresh
    }

    /// Makes sure `name` is never produced.
    pub fn reserve(&mut self, name: &str) {
        if let Some(k) = name.strip_prefix('$').and_then(|d| d.parse::<usize>().ok()) {
            self.next = self.next.max(k + 1);
        }
    }

    pub fn var(&mut self) -> String {
        let v = format!("${}", self.next);
        self.next += 1;
        v
    }
}

impl Default for Fresh {
    fn default() -> Self {
        Fresh::new()
    }
}

impl Formula {
    fn is_atomic(&self) -> bool {
        matches!(
            self,
            Formula::Mult(..) | Formula::Eq(..) | Formula::Green(..) | Formula::Identity(_)
        )
    }
}

struct Child<'a>(&'a Formula);

impl fmt::Display for Child<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_atomic() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "({})", self.0)
        }
    }
}

/// Prints in the formula language; non-atomic operands are parenthesized so
/// the output parses back to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Mult(x, y, z) => write!(f, "{x}*{y} = {z}"),
            Formula::Eq(x, y) => write!(f, "{x} = {y}"),
            Formula::Green(r, x, y) => write!(f, "{x} {r} {y}"),
            Formula::Identity(id) => write!(f, "[{id}]"),
            Formula::Not(g) => write!(f, "not {}", Child(g)),
            Formula::Or(a, b) => write!(f, "{} or {}", Child(a), Child(b)),
            Formula::And(a, b) => write!(f, "{} and {}", Child(a), Child(b)),
            Formula::Implies(a, b) => write!(f, "{} -> {}", Child(a), Child(b)),
            Formula::Iff(a, b) => write!(f, "{} <-> {}", Child(a), Child(b)),
            Formula::Exists(v, g) => write!(f, "exists {v}: {g}"),
            Formula::Forall(v, g) => write!(f, "forall {v}: {g}"),
        }
    }
}
