//! Membership in the class of finite semigroups whose idempotent-generated
//! subsemigroup is aperiodic.
//!
//! Every regular J-class is put in Rees coordinates; the class passes iff
//! every cycle of its incidence graph has trivial label. A spanning forest
//! reduces this to one check per non-forest edge.

mod graph;
mod rees;

pub use graph::{
    cycle_check, spanning_forest, CycleFailure, CycleReport, DisjointSets, Edge, EdgeOrder,
    IncidenceGraph, Vertex,
};
pub use rees::{rees_representation, FiniteGroup, ReesMatrixSemigroup, Sandwich, Triple};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use thiserror::Error;

use crate::algebra::{Element, GreenRelation, Semigroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EaError {
    #[error("element {0} is not idempotent")]
    NotIdempotent(Element),
    #[error("element {0} is out of range")]
    ElementOutOfRange(Element),
    #[error("edge set is not a spanning forest")]
    NotAForest,
}

/// Outcome for one regular J-class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JClassReport {
    pub class_min_id: Element,
    pub idempotent: Element,
    pub a_size: usize,
    pub b_size: usize,
    pub g_size: usize,
    pub edges: usize,
    pub bridges: usize,
    pub verdict: bool,
    /// Offending cycle with vertices as parent element ids.
    pub offending: Option<OffendingCycle>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffendingCycle {
    /// `(b, a)` as parent ids.
    pub bridge: (Element, Element),
    /// Parent ids along the closed walk, starting at `b`.
    pub cycle: Vec<Element>,
    /// Label as a parent element of the structure group.
    pub label: Element,
}

impl JClassReport {
    pub fn describe(&self) -> String {
        match &self.offending {
            None => String::from("all cycles have label 1"),
            Some(o) => {
                let path: Vec<String> = o.cycle.iter().map(|x| format!("{x}")).collect();
                format!(
                    "bridge ({}, {}) closes cycle {} with label {}",
                    o.bridge.0,
                    o.bridge.1,
                    path.join(" -> "),
                    o.label
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EaReport {
    pub member: bool,
    pub classes: Vec<JClassReport>,
}

impl EaReport {
    /// The first failing J-class.
    pub fn offending(&self) -> Option<&JClassReport> {
        self.classes.iter().find(|c| !c.verdict)
    }
}

fn offending_in_parent(r: &ReesMatrixSemigroup, f: &CycleFailure) -> OffendingCycle {
    let id = |v: &Vertex| match *v {
        Vertex::A(a) => r.a_indices()[a],
        Vertex::B(b) => r.b_indices()[b],
    };
    OffendingCycle {
        bridge: (r.b_indices()[f.bridge.b], r.a_indices()[f.bridge.a]),
        cycle: f.cycle.iter().map(id).collect(),
        label: r.group().elements()[f.label],
    }
}

/// Checks the J-class of idempotent `e` with the given edge order.
pub fn check_j_class(s: &Semigroup, e: Element, order: &EdgeOrder) -> Result<JClassReport, EaError> {
    let r = rees_representation(s, e)?;
    let ig = IncidenceGraph::new(&r);
    let forest = spanning_forest(&ig, order);
    let report = cycle_check(&ig, &forest)?;
    Ok(JClassReport {
        class_min_id: r.j_class()[0],
        idempotent: e,
        a_size: r.a_indices().len(),
        b_size: r.b_indices().len(),
        g_size: r.group().order(),
        edges: ig.edges().len(),
        bridges: report.bridges,
        verdict: report.passed(),
        offending: report.failure.as_ref().map(|f| offending_in_parent(&r, f)),
    })
}

/// Runs the cycle test on every regular J-class, using its least
/// idempotent and the lexicographically first spanning forest.
pub fn is_in_ea(s: &Semigroup) -> EaReport {
    is_in_ea_with(s, &EdgeOrder::Lexicographic)
}

/// As [`is_in_ea`] with forests built in the given edge order.
pub fn is_in_ea_with(s: &Semigroup, order: &EdgeOrder) -> EaReport {
    let classes: Vec<JClassReport> = s
        .j_classes(true)
        .iter()
        .map(|class| {
            let e = *class.iter().find(|&&x| s.is_idempotent(x)).expect("regular");
            check_j_class(s, e, order).expect("idempotent")
        })
        .collect();
    EaReport { member: classes.iter().all(|c| c.verdict), classes }
}

/// Direct check: the subsemigroup generated by the idempotents is
/// H-trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceEa {
    pub member: bool,
    /// Size of the idempotent-generated subsemigroup.
    pub generated: usize,
    /// Two distinct H-related elements of that subsemigroup (parent ids).
    pub witness: Option<(Element, Element)>,
}

pub fn brute_force_ea(s: &Semigroup) -> BruteForceEa {
    let gens = s.idempotents();
    let subset = s.generated_subset(&gens).expect("finite semigroups have idempotents");
    let induced = s.induced_partial(&subset).expect("non-empty");
    let t = Semigroup::new(induced.groupoid.clone()).expect("closed subset of a semigroup");
    let witness = t.elements().find_map(|x| {
        t.elements()
            .find(|&y| y > x && t.green().holds(GreenRelation::H, x, y))
            .map(|y| (induced.to_parent(x), induced.to_parent(y)))
    });
    BruteForceEa { member: witness.is_none(), generated: subset.len(), witness }
}

/// Classes that coincide on Rees matrix semigroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReesVariety {
    Ea,
    /// Join of aperiodic semigroups and groups.
    AJoinG,
    /// Semidirect product of aperiodic semigroups and groups.
    ASemidirectG,
}

impl fmt::Display for ReesVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReesVariety::Ea => "EA",
            ReesVariety::AJoinG => "AvG",
            ReesVariety::ASemidirectG => "A*G",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesClassification {
    pub variety: ReesVariety,
    pub member: bool,
    /// The verdict is only meaningful for Rees matrix semigroups.
    pub scope: &'static str,
}

/// The three classes agree on Rees matrix semigroups; all use the cycle
/// test.
pub fn classify_rees(r: &ReesMatrixSemigroup, variety: ReesVariety) -> ReesClassification {
    let ig = IncidenceGraph::new(r);
    let forest = spanning_forest(&ig, &EdgeOrder::Lexicographic);
    let member = cycle_check(&ig, &forest).expect("spanning forest").passed();
    ReesClassification { variety, member, scope: "Rees-scope only" }
}
