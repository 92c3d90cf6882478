use alloc::borrow::ToOwned;

use super::{OmegaIdentity, OmegaTerm};
use crate::algebra::GreenRelation;
use crate::logic::{Formula, Fresh};

/// A formula with free variables `a` and `y` stating that `y` is the
/// ω-power of `a` (valid in every finite semigroup).
pub fn xi_formula(a: &str, y: &str, fresh: &mut Fresh) -> Formula {
    let stable = |t: &str, fresh: &mut Fresh| {
        let p = fresh.var();
        let q = fresh.var();
        Formula::and(
            Formula::exists(
                &p,
                Formula::and(Formula::mult(a, t, &p), Formula::green(GreenRelation::R, &p, t)),
            ),
            Formula::exists(
                &q,
                Formula::and(Formula::mult(t, a, &q), Formula::green(GreenRelation::L, &q, t)),
            ),
        )
    };
    let z = fresh.var();
    let y_stable = stable(y, fresh);
    let z_stable = stable(&z, fresh);
    let Formula::And(z_right, z_left) = z_stable else { unreachable!() };
    let maximal = Formula::forall(
        &z,
        Formula::or_all([
            Formula::eq(y, &z),
            Formula::not(Formula::mult(&z, &z, &z)),
            Formula::not(Formula::green(GreenRelation::LeqH, y, &z)),
            Formula::not(*z_right),
            Formula::not(*z_left),
        ])
        .expect("non-empty"),
    );
    Formula::and(Formula::and(Formula::mult(y, y, y), y_stable), maximal)
}

/// A formula with free variables those of `term` plus `target`, true
/// exactly when `target` is the value of `term`.
pub fn term_to_formula(term: &OmegaTerm, target: &str, fresh: &mut Fresh) -> Formula {
    match term {
        OmegaTerm::Var(x) => Formula::eq(x, target),
        OmegaTerm::Concat(w1, w2) => {
            let a = fresh.var();
            let b = fresh.var();
            let body = Formula::and(
                Formula::and(term_to_formula(w1, &a, fresh), term_to_formula(w2, &b, fresh)),
                Formula::mult(&a, &b, target),
            );
            Formula::exists(&a, Formula::exists(&b, body))
        }
        OmegaTerm::Omega(w) => {
            let a = fresh.var();
            let inner = term_to_formula(w, &a, fresh);
            let xi = xi_formula(&a, target, fresh);
            Formula::exists(&a, Formula::and(inner, xi))
        }
    }
}

pub(crate) fn identity_formula_with(id: &OmegaIdentity, fresh: &mut Fresh) -> Formula {
    match (id.lhs(), id.rhs()) {
        (lhs, OmegaTerm::Var(y)) => term_to_formula(lhs, y, fresh),
        (OmegaTerm::Var(x), rhs) => term_to_formula(rhs, x, fresh),
        (lhs, rhs) => {
            let t = fresh.var();
            let body = Formula::and(term_to_formula(lhs, &t, fresh), term_to_formula(rhs, &t, fresh));
            Formula::exists(&t, body)
        }
    }
}

/// Compiles `id` to a formula over its variables that holds exactly for
/// the satisfying assignments; `close` universally quantifies all of them.
///
/// The output uses Green macro atoms; `expand_macros` removes them.
pub fn identity_to_formula(id: &OmegaIdentity, close: bool) -> Formula {
    let mut fresh = Fresh::new();
    for v in id.vars() {
        fresh.reserve(v);
    }
    let body = identity_formula_with(id, &mut fresh);
    if close {
        let vars: alloc::vec::Vec<_> = id.vars().iter().map(|v| v.to_owned()).collect();
        Formula::forall_all(&vars, body)
    } else {
        body
    }
}
