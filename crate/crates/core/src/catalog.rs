//! Named classes of finite semigroups and class operators.
//!
//! Each class is realized as a first-order sentence, a finite basis of
//! ω-identities, or a dedicated algorithm. Operators act on formulas: the
//! local operators restrict a sentence to definable subsets, the Mal'cev
//! operators read it through a definable congruence.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use thiserror::Error;

use crate::algebra::{AlgebraError, PartialGroupoid, Semigroup, SemigroupViolation};
use crate::ea::{self, EaReport};
use crate::logic::{
    parse_formula, quotient_rewrite, relativize, semigroup_sentence, Assignment, Evaluator,
    FoError, Formula, Relation, Witness,
};
use crate::omega::{find_counterexample, parse_identity, OmegaIdentity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown variety {0:?}")]
    UnknownVariety(String),
    #[error("operator {operator} cannot be applied to {inner}: it is not given by a formula")]
    UnsupportedRealization { operator: Operator, inner: String },
    #[error("not a semigroup: {0}")]
    NotASemigroup(SemigroupViolation),
    #[error("bad variety expression at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error(transparent)]
    Logic(#[from] FoError),
}

/// Dedicated decision procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Idempotent-generated subsemigroup is aperiodic.
    Ea,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Ea => f.write_str("EA"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    /// Regular J-classes are subsemigroups in the class.
    D,
    /// Local monoids `eSe` are in the class.
    L,
    /// Regular H-classes are groups in the class.
    Hbar,
    /// Quotient by `RM` is in the class.
    MalcevK,
    /// Quotient by `LM` is in the class.
    MalcevD,
    /// Quotient by `RM ∩ LM` is in the class.
    MalcevN,
    /// Quotient by `GGM` is in the class.
    MalcevLI,
    /// Quotient by `AGGM` is in the class.
    MalcevLG,
}

impl Operator {
    pub const ALL: [Operator; 8] = [
        Operator::D,
        Operator::L,
        Operator::Hbar,
        Operator::MalcevK,
        Operator::MalcevD,
        Operator::MalcevN,
        Operator::MalcevLI,
        Operator::MalcevLG,
    ];

    /// Local operators restrict to subsets; the others take quotients.
    pub fn is_local(self) -> bool {
        matches!(self, Operator::D | Operator::L | Operator::Hbar)
    }

    /// The defining relation `ψ(x, y)`: the subsets `{y : ψ(x, y)}` for
    /// local operators, the congruence otherwise.
    pub fn relation(self) -> Relation {
        match self {
            Operator::D => Relation::parse("x*x = x and x J y"),
            Operator::L => Relation::parse("x*x = x and exists z: exists u: x*z = u and u*x = y"),
            Operator::Hbar => Relation::parse("x*x = x and x H y"),
            Operator::MalcevK => Ok(congruence(Congruence::Rm)),
            Operator::MalcevD => Ok(congruence(Congruence::Lm)),
            Operator::MalcevN => Ok(congruence(Congruence::RmLm)),
            Operator::MalcevLI => Ok(congruence(Congruence::Ggm)),
            Operator::MalcevLG => Ok(congruence(Congruence::Aggm)),
        }
        .expect("well-formed")
    }

    /// Notation in variety expressions, e.g. `D(_)` or `K@_`.
    pub fn symbol(self) -> &'static str {
        match self {
            Operator::D => "D",
            Operator::L => "L",
            Operator::Hbar => "Hbar",
            Operator::MalcevK => "K@",
            Operator::MalcevD => "D@",
            Operator::MalcevN => "N@",
            Operator::MalcevLI => "LI@",
            Operator::MalcevLG => "LG@",
        }
    }

    fn apply_name(self, inner: &str) -> String {
        if self.is_local() {
            format!("{}({inner})", self.symbol())
        } else {
            format!("{}{inner}", self.symbol())
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// The congruences used by the Mal'cev operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Congruence {
    Rm,
    Lm,
    /// `RM ∩ LM`.
    RmLm,
    Ggm,
    Aggm,
}

impl Congruence {
    pub const ALL: [Congruence; 5] =
        [Congruence::Rm, Congruence::Lm, Congruence::RmLm, Congruence::Ggm, Congruence::Aggm];
}

const RHO: &str = "(exists e: e*e = e and e J x)";

/// The congruence as a relation in `s` and `t`.
///
/// ```text
/// s RM t    forall x: ρ(x) -> not (xs J x or xt J x) or xs = xt
/// s LM t    forall x: ρ(x) -> not (sx J x or tx J x) or sx = tx
/// s GGM t   forall x y: ρ(x) and x J y -> not (xsy J x or xty J x) or xsy = xty
/// s AGGM t  forall x y: ρ(x) and x J y -> (xsy J x <-> xty J x)
/// ```
/// with `ρ(x) = exists e: ee = e and e J x`.
pub fn congruence(c: Congruence) -> Relation {
    let rm = format!(
        "forall x: {RHO} -> exists p: exists q: x*s = p and x*t = q and \
         (not (p J x or q J x) or p = q)"
    );
    let lm = format!(
        "forall x: {RHO} -> exists p: exists q: s*x = p and t*x = q and \
         (not (p J x or q J x) or p = q)"
    );
    let two_sided = |tail: &str| {
        format!(
            "forall x: forall y: ({RHO} and x J y) -> exists p: exists q: exists p2: exists q2: \
             x*s = p and p*y = p2 and x*t = q and q*y = q2 and {tail}"
        )
    };
    let src = match c {
        Congruence::Rm => rm,
        Congruence::Lm => lm,
        Congruence::RmLm => format!("({rm}) and ({lm})"),
        Congruence::Ggm => two_sided("(not (p2 J x or q2 J x) or p2 = q2)"),
        Congruence::Aggm => two_sided("(p2 J x <-> q2 J x)"),
    };
    Relation::new(parse_formula(&src).expect("well-formed"), "s", "t").expect("binary")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realization {
    Sentence(Formula),
    IdentityBasis(Vec<OmegaIdentity>),
    Algorithm(Algorithm),
    Derived { operator: Operator, inner: Box<VarietySpec>, sentence: Formula },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietySpec {
    pub name: String,
    pub realization: Realization,
    pub description: String,
}

impl VarietySpec {
    /// A sentence defining the class, if the realization is logical.
    /// Identity bases give `φ_S` and the closed identity macros.
    pub fn sentence(&self) -> Option<Formula> {
        match &self.realization {
            Realization::Sentence(f) => Some(f.clone()),
            Realization::IdentityBasis(ids) => Some(basis_sentence(ids)),
            Realization::Derived { sentence, .. } => Some(sentence.clone()),
            Realization::Algorithm(_) => None,
        }
    }
}

fn basis_sentence(ids: &[OmegaIdentity]) -> Formula {
    ids.iter().fold(semigroup_sentence(), |acc, id| {
        Formula::and(acc, Formula::forall_all(id.vars(), Formula::Identity(id.clone())))
    })
}

/// `φ_S ∧ ∀x ∀y: x H y → x = y`.
pub fn aperiodic_sentence() -> Formula {
    with_s("forall x: forall y: x H y -> x = y")
}

fn with_s(rest: &str) -> Formula {
    Formula::and(semigroup_sentence(), parse_formula(rest).expect("well-formed"))
}

fn monoid_sentence() -> Formula {
    with_s("exists x: forall y: x*y = y and y*x = y")
}

pub const BUILTIN_NAMES: [&str; 13] =
    ["PGoid", "Goid", "S", "I", "M", "G", "B", "O", "A", "D", "K", "N", "EA"];

pub fn builtin(name: &str) -> Result<VarietySpec, CatalogError> {
    let sentence = |f: Formula| Realization::Sentence(f);
    let (realization, description) = match name {
        "PGoid" => (sentence(parse_formula("exists x: x = x").expect("ok")), "partial groupoids"),
        "Goid" => (
            sentence(parse_formula("forall x: forall y: exists z: x*y = z").expect("ok")),
            "groupoids (total operation)",
        ),
        "S" => (sentence(semigroup_sentence()), "semigroups"),
        "I" => (sentence(with_s("forall x: forall y: x = y")), "trivial semigroups"),
        "M" => (sentence(monoid_sentence()), "monoids"),
        "G" => (
            sentence(Formula::and(
                monoid_sentence(),
                parse_formula(
                    "exists x: forall y: exists z: x*y = y and y*x = y and y*z = x and z*y = x",
                )
                .expect("ok"),
            )),
            "groups",
        ),
        "B" => (sentence(with_s("forall x: x*x = x")), "bands"),
        "O" => (
            sentence(with_s(
                "forall x: forall y: (x*x = x and y*y = y) -> exists z: x*y = z and z*z = z",
            )),
            "orthodox semigroups (idempotents closed under product)",
        ),
        "A" => (
            Realization::IdentityBasis(alloc::vec![parse_identity("x^w x = x^w").expect("ok")]),
            "aperiodic semigroups",
        ),
        "D" => (
            sentence(with_s("forall e: forall x: e*e = e -> e*x = e")),
            "idempotents are right zeros (ex = e)",
        ),
        "K" => (
            sentence(with_s("forall e: forall x: e*e = e -> x*e = e")),
            "idempotents are left zeros (xe = e)",
        ),
        "N" => (
            sentence(with_s("forall x: forall y: [x^w y = x^w] and [y x^w = x^w]")),
            "nilpotent semigroups (idempotents are zeros)",
        ),
        "EA" => (
            Realization::Algorithm(Algorithm::Ea),
            "idempotent-generated subsemigroup is aperiodic",
        ),
        _ => return Err(CatalogError::UnknownVariety(name.to_owned())),
    };
    Ok(VarietySpec { name: name.to_owned(), realization, description: description.to_owned() })
}

/// The class obtained by applying `op` to `inner`.
pub fn apply_operator(op: Operator, inner: VarietySpec) -> Result<VarietySpec, CatalogError> {
    let Some(phi) = inner.sentence() else {
        return Err(CatalogError::UnsupportedRealization { operator: op, inner: inner.name });
    };
    let psi = op.relation();
    let sentence = if op.is_local() { relativize(&phi, &psi, true) } else { quotient_rewrite(&phi, &psi) };
    let description = match op {
        Operator::D => "regular J-classes are subsemigroups in ",
        Operator::L => "local monoids eSe are in ",
        Operator::Hbar => "regular H-classes are groups in ",
        Operator::MalcevK => "quotient by RM is in ",
        Operator::MalcevD => "quotient by LM is in ",
        Operator::MalcevN => "quotient by RM and LM is in ",
        Operator::MalcevLI => "quotient by GGM is in ",
        Operator::MalcevLG => "quotient by AGGM is in ",
    };
    Ok(VarietySpec {
        name: op.apply_name(&inner.name),
        description: format!("{description}{}", inner.name),
        realization: Realization::Derived { operator: op, inner: Box::new(inner), sentence },
    })
}

/// Parses expressions such as `A`, `D(A)`, `Hbar(G)`, `K@D(A)`.
pub fn parse_variety(src: &str) -> Result<VarietySpec, CatalogError> {
    let mut p = ExprParser { src, pos: 0 };
    let spec = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(spec)
}

struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, message: &str) -> CatalogError {
        CatalogError::Syntax { position: self.pos, message: message.to_owned() }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<VarietySpec, CatalogError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !c.is_ascii_alphanumeric())
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return Err(self.error("expected a variety name"));
        }
        let ident = &self.src[start..start + len];
        self.pos += len;
        if self.eat('@') {
            let op = match ident {
                "K" => Operator::MalcevK,
                "D" => Operator::MalcevD,
                "N" => Operator::MalcevN,
                "LI" => Operator::MalcevLI,
                "LG" => Operator::MalcevLG,
                _ => {
                    self.pos = start;
                    return Err(self.error("unknown Mal'cev prefix (use K, D, N, LI or LG)"));
                }
            };
            let inner = self.expr()?;
            return apply_operator(op, inner);
        }
        if self.eat('(') {
            let op = match ident {
                "D" => Operator::D,
                "L" => Operator::L,
                "Hbar" => Operator::Hbar,
                _ => {
                    self.pos = start;
                    return Err(self.error("unknown operator (use D, L or Hbar)"));
                }
            };
            let inner = self.expr()?;
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
            return apply_operator(op, inner);
        }
        builtin(ident)
    }
}

impl FromStr for VarietySpec {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, CatalogError> {
        parse_variety(s)
    }
}

/// Why a structure is not in a class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipWitness {
    /// A failing conjunct of the defining sentence.
    Sentence(Witness),
    /// A violated identity of the basis with the first violating values.
    Identity { identity: OmegaIdentity, assignment: Assignment },
    /// Per-J-class trace of the decision procedure.
    Ea(EaReport),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub witness: Option<MembershipWitness>,
}

impl Membership {
    fn yes() -> Self {
        Membership { member: true, witness: None }
    }

    fn no(w: MembershipWitness) -> Self {
        Membership { member: false, witness: Some(w) }
    }
}

fn require_semigroup(g: &PartialGroupoid) -> Result<Semigroup, CatalogError> {
    Semigroup::new(g.clone()).map_err(|e| match e {
        AlgebraError::NotASemigroup(v) => CatalogError::NotASemigroup(v),
        other => unreachable!("{other}"),
    })
}

/// Decides membership of `g` in `spec`.
///
/// Sentences are evaluated on any partial groupoid; identity bases and
/// algorithms need a semigroup.
pub fn check_membership(g: &PartialGroupoid, spec: &VarietySpec) -> Result<Membership, CatalogError> {
    match &spec.realization {
        Realization::Sentence(f) | Realization::Derived { sentence: f, .. } => {
            Ok(match Evaluator::new(g).counterexample(f)? {
                None => Membership::yes(),
                Some(w) => Membership::no(MembershipWitness::Sentence(w)),
            })
        }
        Realization::IdentityBasis(ids) => {
            let s = require_semigroup(g)?;
            for id in ids {
                if let Some(assignment) = find_counterexample(&s, id) {
                    return Ok(Membership::no(MembershipWitness::Identity {
                        identity: id.clone(),
                        assignment,
                    }));
                }
            }
            Ok(Membership::yes())
        }
        Realization::Algorithm(Algorithm::Ea) => {
            let s = require_semigroup(g)?;
            let report = ea::is_in_ea(&s);
            Ok(if report.member { Membership::yes() } else { Membership::no(MembershipWitness::Ea(report)) })
        }
    }
}

impl fmt::Display for MembershipWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |f: &mut fmt::Formatter<'_>, a: &Assignment| {
            let parts: Vec<String> = a.iter().map(|(k, v)| format!("{k}={v}")).collect();
            f.write_str(&parts.join(", "))
        };
        match self {
            MembershipWitness::Sentence(w) => {
                write!(f, "fails: {}", w.conjunct)?;
                if !w.assignment.is_empty() {
                    f.write_str(" at ")?;
                    show(f, &w.assignment)?;
                }
                Ok(())
            }
            MembershipWitness::Identity { identity, assignment } => {
                write!(f, "identity {identity} fails at ")?;
                show(f, assignment)
            }
            MembershipWitness::Ea(report) => match report.offending() {
                Some(c) => write!(f, "J-class of {} fails: {}", c.class_min_id, c.describe()),
                None => f.write_str("not in EA"),
            },
        }
    }
}
