use alloc::boxed::Box;

use super::{Formula, Fresh};
use crate::algebra::GreenRelation;
use crate::omega::identity_formula_with;

fn neg(f: Formula) -> Formula {
    match f {
        Formula::Not(inner) => *inner,
        other => Formula::Not(Box::new(other)),
    }
}

fn or(a: Formula, b: Formula) -> Formula {
    Formula::or(a, b)
}

fn and(a: Formula, b: Formula) -> Formula {
    neg(or(neg(a), neg(b)))
}

fn exists(v: &str, f: Formula) -> Formula {
    Formula::exists(v, f)
}

/// Core-fragment formula for `x rel y`.
///
/// ```text
/// x <=R y   x = y or exists z: y*z = x
/// x <=L y   x = y or exists z: z*y = x
/// x <=J y   x <=R y or x <=L y or exists z: exists u: z*y = u and exists w: u*w = x
/// x <=H y   x <=R y and x <=L y
/// ```
/// and each equivalence is its preorder in both directions.
pub fn green_formula(rel: GreenRelation, x: &str, y: &str, fresh: &mut Fresh) -> Formula {
    use GreenRelation::*;
    match rel {
        LeqR => {
            let z = fresh.var();
            or(Formula::eq(x, y), exists(&z, Formula::mult(y, &z, x)))
        }
        LeqL => {
            let z = fresh.var();
            or(Formula::eq(x, y), exists(&z, Formula::mult(&z, y, x)))
        }
        LeqJ => {
            let r = green_formula(LeqR, x, y, fresh);
            let l = green_formula(LeqL, x, y, fresh);
            let (z, u, w) = (fresh.var(), fresh.var(), fresh.var());
            let two_sided = exists(
                &z,
                exists(
                    &u,
                    and(Formula::mult(&z, y, &u), exists(&w, Formula::mult(&u, &w, x))),
                ),
            );
            or(or(r, l), two_sided)
        }
        LeqH => and(green_formula(LeqR, x, y, fresh), green_formula(LeqL, x, y, fresh)),
        R | L | J | H => {
            let leq = rel.preorder();
            and(green_formula(leq, x, y, fresh), green_formula(leq, y, x, fresh))
        }
    }
}

fn core(f: &Formula, fresh: &mut Fresh) -> Formula {
    match f {
        Formula::Mult(..) | Formula::Eq(..) => f.clone(),
        Formula::Green(rel, x, y) => green_formula(*rel, x, y, fresh),
        Formula::Identity(id) => {
            let compiled = identity_formula_with(id, fresh);
            core(&compiled, fresh)
        }
        Formula::Not(g) => neg(core(g, fresh)),
        Formula::Or(a, b) => or(core(a, fresh), core(b, fresh)),
        Formula::And(a, b) => and(core(a, fresh), core(b, fresh)),
        Formula::Implies(a, b) => or(neg(core(a, fresh)), core(b, fresh)),
        Formula::Iff(a, b) => {
            let (a, b) = (core(a, fresh), core(b, fresh));
            or(and(a.clone(), b.clone()), and(neg(a), neg(b)))
        }
        Formula::Exists(v, g) => exists(v, core(g, fresh)),
        Formula::Forall(v, g) => neg(exists(v, neg(core(g, fresh)))),
    }
}

/// Rewrites macro atoms and derived connectives into the core fragment.
/// Introduced variables are fresh `$k` names.
pub fn expand_macros(f: &Formula) -> Formula {
    let mut fresh = Fresh::above([f]);
    core(f, &mut fresh)
}

/// Like [`expand_macros`] with a caller-owned name supply.
pub(crate) fn expand_with(f: &Formula, fresh: &mut Fresh) -> Formula {
    core(f, fresh)
}
