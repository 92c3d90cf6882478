use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;

use super::expand::expand_with;
use super::{parse_formula, FoError, Formula, Fresh};

/// A binary relation given by a formula whose free variables are among
/// the two parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    formula: Formula,
    x: String,
    y: String,
}

impl Relation {
    pub fn new(formula: Formula, x: &str, y: &str) -> Result<Self, FoError> {
        let free = formula.free_vars();
        if x == y || free.iter().any(|v| v != x && v != y) {
            return Err(FoError::ArityMismatch {
                expected: vec![x.to_string(), y.to_string()],
                found: free.into_iter().collect(),
            });
        }
        Ok(Relation { formula, x: x.to_string(), y: y.to_string() })
    }

    /// Parses a formula in the variables `x` and `y`.
    pub fn parse(src: &str) -> Result<Self, FoError> {
        Relation::new(parse_formula(src)?, "x", "y")
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn params(&self) -> (&str, &str) {
        (&self.x, &self.y)
    }

    /// `ψ(a, b)` with every bound variable renamed apart.
    pub fn instantiate(&self, a: &str, b: &str, fresh: &mut Fresh) -> Formula {
        let map: BTreeMap<String, String> =
            [(self.x.clone(), a.to_string()), (self.y.clone(), b.to_string())].into();
        self.formula.rename(&map, fresh)
    }
}

/// The semigroup axioms: totality and associativity.
pub fn semigroup_sentence() -> Formula {
    parse_formula(
        "(forall x: forall y: exists z: x*y = z) and \
         (forall x: forall y: forall z: exists u: exists v: exists w: \
            x*y = u and u*z = v and x*w = v and y*z = w)",
    )
    .expect("well-formed")
}

fn relativize_in(f: &Formula, psi: &Relation, c: &str, fresh: &mut Fresh) -> Formula {
    match f {
        Formula::Mult(..) | Formula::Eq(..) | Formula::Green(..) | Formula::Identity(_) => f.clone(),
        Formula::Not(g) => Formula::not(relativize_in(g, psi, c, fresh)),
        Formula::Or(a, b) => Formula::or(relativize_in(a, psi, c, fresh), relativize_in(b, psi, c, fresh)),
        Formula::And(a, b) => {
            Formula::and(relativize_in(a, psi, c, fresh), relativize_in(b, psi, c, fresh))
        }
        Formula::Implies(a, b) => {
            Formula::implies(relativize_in(a, psi, c, fresh), relativize_in(b, psi, c, fresh))
        }
        Formula::Iff(a, b) => {
            Formula::iff(relativize_in(a, psi, c, fresh), relativize_in(b, psi, c, fresh))
        }
        Formula::Exists(v, g) => {
            let guard = psi.instantiate(c, v, fresh);
            Formula::exists(v, Formula::and(guard, relativize_in(g, psi, c, fresh)))
        }
        Formula::Forall(v, g) => {
            let guard = psi.instantiate(c, v, fresh);
            Formula::forall(v, Formula::implies(guard, relativize_in(g, psi, c, fresh)))
        }
    }
}

/// `φ'(c, z̄)`: every quantifier of `phi` is bounded to `{t : ψ(c, t)}`.
///
/// Macros in `phi` are expanded first so that they are read inside the
/// restricted structure; `psi` is used as given. Returns the formula and the
/// name chosen for `c`.
pub fn relativize_open(phi: &Formula, psi: &Relation) -> (Formula, String) {
    let mut fresh = Fresh::above([phi, psi.formula()]);
    let core = expand_with(phi, &mut fresh);
    let c = fresh.var();
    let body = relativize_in(&core, psi, &c, &mut fresh);
    (body, c)
}

/// `φ_S ∧ ∀c: φ'(c)`, true on a semigroup iff every set
/// `T_c = {t : ψ(c, t)}` induces a partial groupoid satisfying `phi`.
///
/// With `guard_nonempty`, empty sets are skipped:
/// `φ_S ∧ ∀c: (∃t: ψ(c, t)) → φ'(c)`.
pub fn relativize(phi: &Formula, psi: &Relation, guard_nonempty: bool) -> Formula {
    let (body, c) = relativize_open(phi, psi);
    let mut fresh = Fresh::above([&body]);
    let inner = if guard_nonempty {
        let t = fresh.var();
        let nonempty = Formula::exists(&t, psi.instantiate(&c, &t, &mut fresh));
        Formula::implies(nonempty, body)
    } else {
        body
    };
    Formula::and(semigroup_sentence(), Formula::forall(&c, inner))
}

fn quotient_in(f: &Formula, psi: &Relation, fresh: &mut Fresh) -> Formula {
    match f {
        Formula::Mult(x, y, z) => {
            let w = fresh.var();
            let tail = psi.instantiate(&w, z, fresh);
            Formula::exists(&w, Formula::and(Formula::mult(x, y, &w), tail))
        }
        Formula::Eq(x, y) => psi.instantiate(x, y, fresh),
        Formula::Green(..) | Formula::Identity(_) => unreachable!("macros are expanded first"),
        Formula::Not(g) => Formula::not(quotient_in(g, psi, fresh)),
        Formula::Or(a, b) => Formula::or(quotient_in(a, psi, fresh), quotient_in(b, psi, fresh)),
        Formula::And(a, b) => Formula::and(quotient_in(a, psi, fresh), quotient_in(b, psi, fresh)),
        Formula::Implies(a, b) => {
            Formula::implies(quotient_in(a, psi, fresh), quotient_in(b, psi, fresh))
        }
        Formula::Iff(a, b) => Formula::iff(quotient_in(a, psi, fresh), quotient_in(b, psi, fresh)),
        Formula::Exists(v, g) => Formula::exists(v, quotient_in(g, psi, fresh)),
        Formula::Forall(v, g) => Formula::forall(v, quotient_in(g, psi, fresh)),
    }
}

/// `φ'`: `phi` read in the quotient by the congruence `psi`. Products
/// `x*y = z` become `∃w: x*y = w ∧ ψ(w, z)` and equalities `x = y` become
/// `ψ(x, y)`.
pub fn quotient_rewrite_open(phi: &Formula, psi: &Relation) -> Formula {
    let mut fresh = Fresh::above([phi, psi.formula()]);
    let core = expand_with(phi, &mut fresh);
    quotient_in(&core, psi, &mut fresh)
}

/// `φ_S ∧ φ'`; on a semigroup where `psi` is a congruence this holds iff
/// the quotient satisfies `phi`.
pub fn quotient_rewrite(phi: &Formula, psi: &Relation) -> Formula {
    Formula::and(semigroup_sentence(), quotient_rewrite_open(phi, psi))
}
