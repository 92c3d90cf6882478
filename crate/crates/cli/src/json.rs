//! JSON renderings of library results. Keys are sorted, so output is
//! byte-stable for a given input.

use fomember_core::algebra::{GreenRelation, Semigroup};
use fomember_core::catalog::{Membership, MembershipWitness};
use fomember_core::ea::{BruteForceEa, EaReport, JClassReport};
use fomember_core::{Assignment, PartialGroupoid};
use serde_json::{json, Map, Value};

pub fn assignment(a: &Assignment) -> Value {
    Value::Object(a.iter().map(|(k, v)| (k.clone(), json!(v))).collect::<Map<_, _>>())
}

pub fn j_class(c: &JClassReport) -> Value {
    let mut v = json!({
        "class_min_id": c.class_min_id,
        "idempotent": c.idempotent,
        "a_size": c.a_size,
        "b_size": c.b_size,
        "g_size": c.g_size,
        "edges": c.edges,
        "bridges": c.bridges,
        "verdict": c.verdict,
    });
    if let Some(o) = &c.offending {
        v["offending_cycle"] = json!({
            "bridge": [o.bridge.0, o.bridge.1],
            "cycle": o.cycle,
            "label": o.label,
        });
    }
    v
}

pub fn ea_report(r: &EaReport) -> Value {
    json!({
        "member": r.member,
        "classes": r.classes.iter().map(j_class).collect::<Vec<_>>(),
    })
}

pub fn brute_force(r: &BruteForceEa) -> Value {
    json!({
        "member": r.member,
        "generated": r.generated,
        "witness": r.witness.map(|(x, y)| vec![x, y]),
    })
}

pub fn witness(w: &MembershipWitness) -> Value {
    match w {
        MembershipWitness::Sentence(w) => json!({
            "kind": "sentence",
            "conjunct": w.conjunct.to_string(),
            "assignment": assignment(&w.assignment),
        }),
        MembershipWitness::Identity { identity, assignment: a } => json!({
            "kind": "identity",
            "identity": identity.to_string(),
            "assignment": assignment(a),
        }),
        MembershipWitness::Ea(r) => json!({
            "kind": "ea",
            "classes": r.classes.iter().map(j_class).collect::<Vec<_>>(),
        }),
    }
}

pub fn membership(variety: &str, m: &Membership) -> Value {
    json!({
        "variety": variety,
        "member": m.member,
        "witness": m.witness.as_ref().map(witness),
    })
}

pub fn table(g: &PartialGroupoid) -> Value {
    json!({
        "order": g.order(),
        "table": g.elements().map(|x| g.row(x)).collect::<Vec<_>>(),
    })
}

/// J-classes as grids: rows are R-classes, columns L-classes, cells the
/// H-classes, all ordered by least element.
pub fn egg_box(s: &Semigroup) -> Vec<EggBox> {
    let r = s.classes(GreenRelation::R);
    let l = s.classes(GreenRelation::L);
    s.j_classes(false)
        .into_iter()
        .map(|class| {
            let mut rows: Vec<usize> = class.iter().map(|&x| r.class_of(x)).collect();
            rows.sort_unstable();
            rows.dedup();
            let mut cols: Vec<usize> = class.iter().map(|&x| l.class_of(x)).collect();
            cols.sort_unstable();
            cols.dedup();
            let cells = rows
                .iter()
                .map(|&ri| {
                    cols.iter()
                        .map(|&ci| {
                            class
                                .iter()
                                .copied()
                                .filter(|&x| r.class_of(x) == ri && l.class_of(x) == ci)
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let regular = class.iter().any(|&x| s.is_idempotent(x));
            EggBox { elements: class, regular, cells }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EggBox {
    pub elements: Vec<usize>,
    pub regular: bool,
    /// `cells[row][col]` is an H-class.
    pub cells: Vec<Vec<Vec<usize>>>,
}

impl EggBox {
    pub fn to_json(&self) -> Value {
        json!({ "elements": self.elements, "regular": self.regular, "cells": self.cells })
    }

    /// Boxed grid, idempotents starred.
    pub fn render(&self, s: &Semigroup) -> String {
        let text: Vec<Vec<String>> = self
            .cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|h| {
                        h.iter()
                            .map(|&x| if s.is_idempotent(x) { format!("{x}*") } else { x.to_string() })
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect()
            })
            .collect();
        let width = text.iter().flatten().map(String::len).max().unwrap_or(0);
        let cols = self.cells.first().map_or(0, Vec::len);
        let rule = format!("+{}\n", format!("{}+", "-".repeat(width + 2)).repeat(cols));
        let mut out = rule.clone();
        for row in &text {
            out.push('|');
            for cell in row {
                out.push_str(&format!(" {cell:<width$} |"));
            }
            out.push('\n');
            out.push_str(&rule);
        }
        out
    }
}
